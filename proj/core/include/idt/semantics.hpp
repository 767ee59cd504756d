#pragma once

#include <cstdint>
#include <vector>

#include "idt/formula.hpp"
#include "idt/graph.hpp"

namespace idt {

/// Entry v is 1 iff (G, v) satisfies the formula.
using NodeVector = std::vector<std::uint8_t>;

/// Matrix semantics: every threshold test is a matrix-vector product of the
/// modal parameter's matrix with the child's indicator vector, compared
/// against the threshold. A relative test divides by |eps_S(v)| and is false
/// when that neighbourhood is empty. Throws DataError when an atom index is
/// not below u.cols().
NodeVector eval_nodes(const Graph& g, const FeatureMatrix& u, const Formula& f);

/// G satisfies f iff every node does. The empty graph satisfies everything.
bool eval_graph(const Graph& g, const FeatureMatrix& u, const Formula& f);

/// Reference semantics by explicit enumeration of eps_S(v) and recursive
/// satisfaction checks. Exponential in depth; intended as a test oracle.
NodeVector eval_nodes_reference(const Graph& g, const FeatureMatrix& u, const Formula& f);

}  // namespace idt
