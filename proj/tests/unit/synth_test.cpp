#include <algorithm>
#include <map>
#include <numeric>

#include "doctest.h"
#include "idt/semantics.hpp"
#include "idt/synth.hpp"
#include "idt/syntax.hpp"

using namespace idt;

namespace {

std::vector<std::size_t> sorted_degrees(const Graph& g) {
  auto d = degree_vector(g);
  std::sort(d.begin(), d.end());
  return d;
}

bool connected(const Graph& g) {
  if (g.node_count() == 0) return true;
  std::vector<bool> seen(g.node_count());
  std::vector<std::size_t> stack = {0};
  seen[0] = true;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (auto w : g.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

}  // namespace

TEST_CASE("ER labels follow the label formula") {
  const auto f = parse_formula("A U1 > 1");
  const auto ds = gen_er_dataset(200, 10, 0.3, f, 42);
  CHECK(ds.size() == 200);
  CHECK(ds.num_classes == 2);
  CHECK(ds.feature_count == 2);
  ds.validate();
  std::size_t ones = 0;
  for (const auto& lg : ds.graphs) {
    CHECK(lg.graph.node_count() == 10);
    CHECK(lg.label == (eval_graph(lg.graph, lg.features, f) ? 1U : 0U));
    for (std::size_t v = 0; v < 10; ++v) CHECK(lg.features.at(v, 0) == 1);
    ones += lg.label;
  }
  CHECK(ones > 0);
  CHECK(ones < 200);
  CHECK(gen_er_dataset(200, 10, 0.3, f, 42) == ds);
  CHECK(!(gen_er_dataset(200, 10, 0.3, f, 43) == ds));
}

TEST_CASE("ER edge density") {
  const auto f = Formula::top();
  for (const auto& lg : gen_er_dataset(5, 6, 0.0, f, 1).graphs) CHECK(lg.graph.edge_count() == 0);
  for (const auto& lg : gen_er_dataset(5, 6, 1.0, f, 1).graphs) CHECK(lg.graph.edge_count() == 15);
  std::size_t edges = 0, pairs = 0, ones = 0, cells = 0;
  for (const auto& lg : gen_er_dataset(200, 20, 0.5, f, 2).graphs) {
    edges += lg.graph.edge_count();
    pairs += 190;
    for (std::size_t v = 0; v < 20; ++v) ones += lg.features.at(v, 1);
    cells += 20;
  }
  CHECK(static_cast<double>(edges) / static_cast<double>(pairs) == doctest::Approx(0.5).epsilon(0.02));
  CHECK(static_cast<double>(ones) / static_cast<double>(cells) == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("shape graphs") {
  CHECK(shape_name(Shape::kWheel) == "wheel");
  CHECK(shape_name(Shape::kHouse) == "house");
  CHECK(shape_name(Shape::kGrid) == "grid");
  CHECK(sorted_degrees(shape_graph(Shape::kWheel)) == std::vector<std::size_t>{3, 3, 3, 3, 3, 5});
  CHECK(sorted_degrees(shape_graph(Shape::kHouse)) == std::vector<std::size_t>{2, 2, 2, 3, 3});
  CHECK(sorted_degrees(shape_graph(Shape::kGrid)) == std::vector<std::size_t>{2, 2, 2, 2, 3, 3, 3, 3, 4});
  CHECK(shape_graph(Shape::kWheel).edge_count() == 10);
  CHECK(shape_graph(Shape::kHouse).edge_count() == 6);
  CHECK(shape_graph(Shape::kGrid).edge_count() == 12);
}

TEST_CASE("Barabasi-Albert trees") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = barabasi_albert_tree(40, seed);
    CHECK(g.node_count() == 40);
    CHECK(g.edge_count() == 39);
    CHECK(connected(g));
  }
  CHECK(barabasi_albert_tree(40, 5) == barabasi_albert_tree(40, 5));
}

TEST_CASE("BAMultiShapes-style data") {
  const auto ds = gen_bamultishapes(200, 3);
  ds.validate();
  CHECK(ds.feature_count == 1);
  std::size_t zeros = 0;
  std::map<std::size_t, std::size_t> sizes;
  for (const auto& lg : ds.graphs) {
    zeros += lg.label == 0;
    const auto n = lg.graph.node_count();
    const std::size_t extra = n - 40;
    // Node and edge totals identify the subset: wheel 6/10, house 5/6, grid 9/12,
    // plus one attaching edge per shape.
    int matches = 0;
    for (unsigned mask = 0; mask < 8; ++mask) {
      const std::size_t nodes = (mask & 1 ? 6 : 0) + (mask & 2 ? 5 : 0) + (mask & 4 ? 9 : 0);
      const std::size_t shapes = static_cast<std::size_t>(__builtin_popcount(mask));
      const std::size_t edges = 39 + (mask & 1 ? 10 : 0) + (mask & 2 ? 6 : 0) + (mask & 4 ? 12 : 0) + shapes;
      if (nodes != extra || edges != lg.graph.edge_count()) continue;
      ++matches;
      CHECK(lg.label == (shapes == 2 ? 0U : 1U));
    }
    CHECK(matches == 1);
    CHECK(connected(lg.graph));
    ++sizes[n];
  }
  CHECK(zeros == 100);
  CHECK(sizes.count(60) == 1);  // all three shapes
  CHECK(gen_bamultishapes(200, 3) == ds);
}
