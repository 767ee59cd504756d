#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "idt/feature_table.hpp"
#include "idt/rational.hpp"

namespace idt {

/// Internal-node test: value(column) > threshold. Rows passing the test go
/// right. COUNT thresholds are integers, RATIO thresholds lie in (0, 1).
struct SplitTest {
  FeatureColumn feature;
  Rational threshold;

  friend bool operator==(const SplitTest&, const SplitTest&) = default;
};

struct TreeNode {
  std::optional<SplitTest> split;
  std::int32_t left = -1;   // test false
  std::int32_t right = -1;  // test true
  std::vector<double> value;  // mean target of the training rows
  std::size_t samples = 0;
  double sse = 0.0;  // sum of squared deviations from `value`
  /// Training rows that reached this leaf (empty for internal nodes and for
  /// trees loaded from disk).
  std::vector<std::uint32_t> rows;
  /// Class predicted by graph-level trees; -1 elsewhere.
  std::int32_t label = -1;

  bool is_leaf() const noexcept { return !split.has_value(); }
};

/// Binary regression tree. nodes[0] is the root; nodes are stored in
/// pre-order with the false branch first.
struct DecisionTree {
  std::vector<TreeNode> nodes;

  const TreeNode& root() const { return nodes.front(); }
  /// Leaf node indices, left to right.
  std::vector<std::size_t> leaves() const;
  std::size_t leaf_count() const;
  std::size_t depth() const;
};

struct FitOptions {
  std::optional<std::size_t> max_depth;
  std::size_t min_rows_leaf = 1;
  /// Candidate columns; all columns when absent.
  std::optional<std::vector<std::size_t>> feature_mask;
};

/// Greedy CART on squared error. At every node the split minimizing the
/// summed squared error of the two children wins; ties go to the lowest
/// column index, then the lowest threshold. Thresholds are midpoints between
/// adjacent distinct values (floored for COUNT columns). Deterministic.
DecisionTree fit_tree(const FeatureTable& table, const FitOptions& options);

/// Minimal cost-complexity pruning with penalty alpha on raw squared error:
/// repeatedly collapses the internal node with the smallest
/// (sse(t) - sse(leaves of t)) / (|leaves of t| - 1) while that is <= alpha.
DecisionTree prune_ccp(const DecisionTree& tree, double alpha);

/// Index of the leaf reached by a table row. Throws DataError when a split's
/// column is missing from the table.
std::size_t tree_leaf(const DecisionTree& tree, const FeatureTable& table, std::size_t row);
std::span<const double> tree_predict(const DecisionTree& tree, const FeatureTable& table, std::size_t row);

/// max(1, round(rate * cols)) distinct columns drawn uniformly, sorted.
std::vector<std::size_t> random_feature_mask(std::size_t cols, double rate, std::uint64_t seed);

}  // namespace idt
