#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "idt/decision_tree.hpp"
#include "idt/formula.hpp"

namespace idt {

/// The formula "S U_source > threshold" a split performs, with the pool
/// column as atom.
Formula split_formula(const SplitTest& split);

/// A formula true at exactly the nodes routed to one of `leaves` (node
/// indices of leaves in `tree`), built from the split literals on the paths
/// and simplified.
Formula leafset_formula(const DecisionTree& tree, std::span<const std::size_t> leaves);

struct LeafSet {
  std::vector<std::size_t> leaves;  // sorted node indices
  Formula formula;
};

/// Agglomerative clustering of a tree's leaves by the Euclidean distance of
/// their prediction vectors (a cluster is represented by the unweighted mean
/// of its leaves' vectors; ties go to the earliest pair). Returns the k
/// singletons in left-to-right order followed by the k-1 merged clusters in
/// creation order.
std::vector<LeafSet> cluster_leaf_sets(const DecisionTree& tree);

}  // namespace idt
