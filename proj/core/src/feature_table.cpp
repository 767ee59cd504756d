#include "idt/feature_table.hpp"

#include <string>

#include "idt/error.hpp"
#include "idt/semantics.hpp"

namespace idt {

FeatureTable FeatureTable::build(std::span<const GraphView> graphs, std::size_t pool_size,
                                 std::span<const Modal> modals, bool per_graph) {
  if (per_graph && (modals.size() != 1 || modals[0] != Modal::kOne)) {
    throw InvariantError("graph-level tables only support the modal parameter 1");
  }
  FeatureTable t;
  for (const auto& gv : graphs) {
    if (gv.features->cols() != pool_size) {
      throw DataError("graph has " + std::to_string(gv.features->cols()) + " pool columns, expected " +
                      std::to_string(pool_size));
    }
    t.rows_ += per_graph ? 1 : gv.graph->node_count();
  }

  t.counts_.assign(modals.size() * pool_size, {});
  t.sizes_.assign(modals.size(), {});
  for (std::size_t mi = 0; mi < modals.size(); ++mi) {
    auto& sizes = t.sizes_[mi];
    sizes.reserve(t.rows_);
    for (std::size_t j = 0; j < pool_size; ++j) t.counts_[mi * pool_size + j].reserve(t.rows_);
    for (const auto& gv : graphs) {
      const Graph& g = *gv.graph;
      if (per_graph) {
        sizes.push_back(static_cast<std::uint32_t>(g.node_count()));
        for (std::size_t j = 0; j < pool_size; ++j) {
          std::uint32_t total = 0;
          for (auto b : gv.features->column(j)) total += b;
          t.counts_[mi * pool_size + j].push_back(total);
        }
        continue;
      }
      const auto ns = neighborhood_sizes(g, modals[mi]);
      sizes.insert(sizes.end(), ns.begin(), ns.end());
      for (std::size_t j = 0; j < pool_size; ++j) {
        const auto c = modal_counts(g, modals[mi], gv.features->column(j));
        auto& dst = t.counts_[mi * pool_size + j];
        dst.insert(dst.end(), c.begin(), c.end());
      }
    }
    for (std::size_t j = 0; j < pool_size; ++j) {
      for (ValueKind kind : {ValueKind::kCount, ValueKind::kRatio}) {
        const FeatureColumn col{modals[mi], j, kind};
        t.index_.emplace(col, t.columns_.size());
        t.columns_.push_back(col);
        t.group_.push_back(mi * pool_size + j);
        t.modal_slot_.push_back(mi);
      }
    }
  }
  return t;
}

FeatureTable FeatureTable::build(const std::vector<LabeledGraph>& graphs, const std::vector<Formula>& pool,
                                 std::span<const Modal> modals, bool per_graph) {
  std::vector<FeatureMatrix> matrices;
  matrices.reserve(graphs.size());
  for (const auto& lg : graphs) {
    FeatureMatrix m(lg.graph.node_count(), 0);
    for (const auto& f : pool) m.append_column(eval_nodes(lg.graph, lg.features, f));
    matrices.push_back(std::move(m));
  }
  std::vector<GraphView> views;
  for (std::size_t i = 0; i < graphs.size(); ++i) views.push_back({&graphs[i].graph, &matrices[i]});
  return build(views, pool.size(), modals, per_graph);
}

std::optional<std::size_t> FeatureTable::find_column(const FeatureColumn& col) const {
  if (auto it = index_.find(col); it != index_.end()) return it->second;
  return std::nullopt;
}

Rational FeatureTable::exact_value(std::size_t row, std::size_t col) const {
  const std::uint32_t c = count(row, col);
  if (columns_[col].kind == ValueKind::kCount) return Rational(c);
  const std::uint32_t s = neighborhood_size(row, col);
  return s == 0 ? Rational(0) : Rational(c, s);
}

double FeatureTable::value(std::size_t row, std::size_t col) const {
  const std::uint32_t c = count(row, col);
  if (columns_[col].kind == ValueKind::kCount) return c;
  const std::uint32_t s = neighborhood_size(row, col);
  return s == 0 ? 0.0 : static_cast<double>(c) / static_cast<double>(s);
}

bool FeatureTable::exceeds(std::size_t row, std::size_t col, const Rational& threshold) const {
  const std::uint32_t c = count(row, col);
  if (columns_[col].kind == ValueKind::kCount) return Rational(c) > threshold;
  return threshold.ratio_exceeds(c, neighborhood_size(row, col));
}

void FeatureTable::set_targets(TargetMatrix targets) {
  if (targets.dim == 0 || targets.values.size() != targets.dim * rows_) {
    throw DataError("target matrix has " + std::to_string(targets.rows()) + " rows, table has " +
                    std::to_string(rows_));
  }
  targets_ = std::move(targets);
}

}  // namespace idt
