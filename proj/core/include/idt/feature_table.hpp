#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "idt/formula.hpp"
#include "idt/graph.hpp"
#include "idt/modal.hpp"
#include "idt/rational.hpp"

namespace idt {

enum class ValueKind : std::uint8_t { kCount, kRatio };

/// Column "S U_j": for a row v, COUNT is |{w in eps_S(v) : U_j(w)}| and RATIO
/// is that count over |eps_S(v)| (0 for an empty neighbourhood). `source` is
/// an index into the feature pool.
struct FeatureColumn {
  Modal modal = Modal::kId;
  std::size_t source = 0;
  ValueKind kind = ValueKind::kCount;

  friend auto operator<=>(const FeatureColumn&, const FeatureColumn&) = default;
};

/// A graph with its current pool of node features (original atoms plus any
/// appended formula indicators).
struct GraphView {
  const Graph* graph = nullptr;
  const FeatureMatrix* features = nullptr;
};

/// Row-major real matrix of regression targets.
struct TargetMatrix {
  std::size_t dim = 0;
  std::vector<double> values;

  std::size_t rows() const noexcept { return dim == 0 ? 0 : values.size() / dim; }
  std::span<const double> row(std::size_t r) const { return {values.data() + r * dim, dim}; }
};

/// Training table: one row per node (or per graph), columns ordered as
/// modals x pool x {COUNT, RATIO}, plus one target vector per row.
class FeatureTable {
 public:
  /// Node-level table (per_graph = false) or graph-level table (per_graph =
  /// true, modals must be {ONE}; since ONE-quantified values are the same at
  /// every node, one row per graph is exact). The pool is the feature matrix
  /// of each graph; every graph must have pool_size columns.
  static FeatureTable build(std::span<const GraphView> graphs, std::size_t pool_size, std::span<const Modal> modals,
                            bool per_graph);

  /// Same, with the pool given as formulas evaluated on each graph's atoms.
  static FeatureTable build(const std::vector<LabeledGraph>& graphs, const std::vector<Formula>& pool,
                            std::span<const Modal> modals, bool per_graph);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return columns_.size(); }
  const FeatureColumn& column(std::size_t c) const { return columns_[c]; }
  const std::vector<FeatureColumn>& columns() const noexcept { return columns_; }
  std::optional<std::size_t> find_column(const FeatureColumn& col) const;

  std::uint32_t count(std::size_t row, std::size_t col) const { return counts_[group_[col]][row]; }
  /// |eps_S(v)| for the column's modal parameter.
  std::uint32_t neighborhood_size(std::size_t row, std::size_t col) const {
    return sizes_[modal_slot_[col]][row];
  }
  Rational exact_value(std::size_t row, std::size_t col) const;
  double value(std::size_t row, std::size_t col) const;
  /// value > threshold, exactly.
  bool exceeds(std::size_t row, std::size_t col, const Rational& threshold) const;

  void set_targets(TargetMatrix targets);
  const TargetMatrix& targets() const noexcept { return targets_; }

 private:
  std::size_t rows_ = 0;
  std::vector<FeatureColumn> columns_;
  std::vector<std::size_t> group_;       // column -> counts_ slot
  std::vector<std::size_t> modal_slot_;  // column -> sizes_ slot
  std::vector<std::vector<std::uint32_t>> counts_;
  std::vector<std::vector<std::uint32_t>> sizes_;
  std::map<FeatureColumn, std::size_t> index_;
  TargetMatrix targets_;
};

}  // namespace idt
