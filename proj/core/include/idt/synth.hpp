#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "idt/formula.hpp"
#include "idt/graph.hpp"

namespace idt {

/// Erdos-Renyi graphs G(n, p) with two atoms: U0 is always 1, U1 is 1 with
/// probability 1/2 per node. A graph is labeled 1 iff it satisfies
/// `label_formula`. Graph i is drawn from derive_seed(seed, i).
Dataset gen_er_dataset(std::size_t count, std::size_t n, double p, const Formula& label_formula, std::uint64_t seed);

enum class Shape : std::uint8_t { kWheel, kHouse, kGrid };
inline constexpr std::array<Shape, 3> kAllShapes = {Shape::kWheel, Shape::kHouse, Shape::kGrid};

std::string_view shape_name(Shape s) noexcept;
/// WHEEL: hub 0 joined to the 5-cycle 1..5. HOUSE: square 0-1-2-3 with the
/// apex 4 joined to 0 and 1. GRID: 3x3 lattice, node 3r+c.
Graph shape_graph(Shape s);

/// Barabasi-Albert tree: nodes 0 and 1 joined, then every further node
/// attaches to one existing node chosen with probability proportional to
/// its degree.
Graph barabasi_albert_tree(std::size_t nodes, std::uint64_t seed);

struct BaMultiShapesOptions {
  std::size_t base_nodes = 40;
};

/// BA base graph plus a subset of the three shapes, each appended after the
/// base nodes (in WHEEL, HOUSE, GRID order) and joined by one edge from a
/// random shape node to a random base node. Label 0 iff exactly two shapes
/// are present. Labels are balanced (count/2 graphs of class 0, in shuffled
/// order); within a class the subset is uniform. One atom U0, always 1.
Dataset gen_bamultishapes(std::size_t count, std::uint64_t seed, const BaMultiShapesOptions& options = {});

}  // namespace idt
