#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "idt/decision_tree.hpp"
#include "idt/feature_table.hpp"
#include "idt/formula.hpp"
#include "idt/graph.hpp"
#include "idt/leaf_sets.hpp"
#include "idt/modal.hpp"
#include "idt/semantics.hpp"

namespace idt {

struct IdtConfig {
  /// Number of intermediate layers when no activation dumps drive learning.
  std::size_t layers = 3;
  std::size_t trees_per_layer = 4;
  std::size_t layer_depth = 2;
  std::size_t layer_min_rows_leaf = 1;
  /// Fraction of table columns each intermediate tree may split on.
  double feature_rate = 0.5;
  double ccp_alpha = 0.005;
  std::size_t final_min_rows_leaf = 5;
  std::optional<std::size_t> final_max_depth;
  std::vector<Modal> layer_modals = {Modal::kId, Modal::kAdj, Modal::kIdPlusAdj};
  std::uint64_t seed = 0;
  /// Worker threads for the trees of one layer.
  std::size_t jobs = 1;
};

/// Feature pool bookkeeping. Entries 0..atom_count-1 are the original atoms;
/// later entries are formulas whose atoms refer to earlier pool entries.
/// Structurally identical formulas are stored once, and Atom(k) resolves to
/// entry k.
class FormulaPool {
 public:
  explicit FormulaPool(std::size_t atom_count);
  std::size_t size() const noexcept { return size_; }
  std::optional<std::size_t> find(const Formula& f) const;
  /// Index of `f`, appending it when new. `added` reports whether it was.
  std::size_t intern(const Formula& f, bool* added = nullptr);

 private:
  std::size_t size_;
  std::map<Formula, std::size_t> index_;
};

struct IdtLayer {
  /// Pool size before this layer's formulas; splits use sources below it.
  std::size_t pool_offset = 0;
  std::vector<DecisionTree> trees;
  std::vector<std::vector<LeafSet>> leaf_sets;              // per tree
  std::vector<std::vector<std::size_t>> leaf_set_columns;   // pool entry per leaf set
  /// New pool entries pool_offset, pool_offset+1, ...
  std::vector<Formula> emitted;
};

/// Iterated decision tree for graph classification. Pool layout: original
/// atoms, then base formulas (Boolean combinations of atoms, used by compiled
/// IDTs), then each layer's emitted formulas in order. The final tree splits
/// on graph-level rows with the modal parameter 1 and its leaves carry class
/// labels.
struct Idt {
  std::size_t atom_count = 0;
  std::size_t num_classes = 2;
  std::vector<Formula> base_formulas;
  std::vector<IdtLayer> layers;
  DecisionTree final_tree;
  IdtConfig config;
  /// Pool entry whose node-level truth is the node classifier (compiled IDTs).
  std::optional<std::size_t> node_output;

  std::size_t pool_size() const;
  /// Formula of pool entry k in terms of earlier entries (Atom(k) for atoms).
  Formula pool_formula(std::size_t k) const;
};

/// Throws InvariantError if the layering constraint or any index bound fails.
void validate_idt(const Idt& idt);

/// Node-level targets for one layer: rows follow graph order, node order.
/// Learns one layer on the given graphs (whose pools have pool.size()
/// columns), registering emitted formulas in `pool`.
IdtLayer learn_idt_layer(std::span<const GraphView> graphs, FormulaPool& pool, const TargetMatrix& targets,
                         const IdtConfig& config, std::size_t layer_index);

/// Graph-level tree with modal 1 over the full pool, pruned, with class
/// labels (argmax of the leaf's mean target, lowest class on ties).
DecisionTree learn_final_tree(std::span<const GraphView> graphs, std::size_t pool_size, const TargetMatrix& targets,
                              const IdtConfig& config);

/// Targets for every layer. `layers` holds node-level targets per
/// intermediate layer; `final` holds graph-level targets.
struct LayerTargets {
  std::vector<TargetMatrix> layers;
  TargetMatrix final;
};

/// One-hot labels broadcast to every node, for every layer.
LayerTargets true_label_targets(const std::vector<LabeledGraph>& graphs, std::size_t num_classes,
                                std::size_t layer_count);
TargetMatrix one_hot_graph_targets(const std::vector<LabeledGraph>& graphs, std::size_t num_classes);

Idt learn_idt(const std::vector<LabeledGraph>& graphs, std::size_t num_classes, const LayerTargets& targets,
              const IdtConfig& config);

/// Feature matrix extended with every pool entry of the IDT.
FeatureMatrix extend_pool(const Idt& idt, const Graph& g, const FeatureMatrix& u);

std::size_t idt_predict(const Idt& idt, const Graph& g, const FeatureMatrix& u);
/// Truth of the node_output entry at every node. Throws InvariantError if the
/// IDT has none.
NodeVector idt_node_predict(const Idt& idt, const Graph& g, const FeatureMatrix& u);

/// Drops trees, leaf sets, layers, and pool entries the final tree does not
/// depend on, and renumbers the pool. Predictions are unchanged.
Idt compact(const Idt& idt);

/// Pool entry k rewritten over the original atoms only.
Formula expand_pool_entry(const Idt& idt, std::size_t k);

/// Per class, a formula over original atoms that a non-empty graph satisfies
/// iff the IDT predicts that class.
std::vector<Formula> class_rules(const Idt& idt);

}  // namespace idt
