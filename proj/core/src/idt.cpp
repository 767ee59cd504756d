#include "idt/idt.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <string>
#include <thread>

#include "idt/error.hpp"
#include "idt/random.hpp"
#include "idt/simplify.hpp"

namespace idt {

FormulaPool::FormulaPool(std::size_t atom_count) : size_(atom_count) {
  for (std::size_t k = 0; k < atom_count; ++k) index_.emplace(Formula::atom(k), k);
}

std::optional<std::size_t> FormulaPool::find(const Formula& f) const {
  if (auto it = index_.find(f); it != index_.end()) return it->second;
  return std::nullopt;
}

std::size_t FormulaPool::intern(const Formula& f, bool* added) {
  auto [it, inserted] = index_.emplace(f, size_);
  if (inserted) ++size_;
  if (added) *added = inserted;
  return it->second;
}

std::size_t Idt::pool_size() const {
  std::size_t n = atom_count + base_formulas.size();
  for (const auto& layer : layers) n += layer.emitted.size();
  return n;
}

Formula Idt::pool_formula(std::size_t k) const {
  if (k < atom_count) return Formula::atom(k);
  k -= atom_count;
  if (k < base_formulas.size()) return base_formulas[k];
  k -= base_formulas.size();
  for (const auto& layer : layers) {
    if (k < layer.emitted.size()) return layer.emitted[k];
    k -= layer.emitted.size();
  }
  throw InvariantError("pool entry out of range");
}

namespace {

void check(bool ok, const std::string& what) {
  if (!ok) throw InvariantError("invalid IDT: " + what);
}

void check_tree(const DecisionTree& tree, std::size_t source_bound, bool graph_level, const std::string& where) {
  check(!tree.nodes.empty(), where + " has no nodes");
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const auto& node = tree.nodes[i];
    if (node.is_leaf()) {
      check(node.left < 0 && node.right < 0, where + " leaf with children");
      continue;
    }
    const auto n = static_cast<std::int32_t>(tree.nodes.size());
    check(node.left > static_cast<std::int32_t>(i) && node.left < n && node.right > static_cast<std::int32_t>(i) &&
              node.right < n,
          where + " child index out of order");
    check(node.split->feature.source < source_bound, where + " splits on a formula that is not yet available");
    if (graph_level) check(node.split->feature.modal == Modal::kOne, where + " uses a modal parameter other than 1");
    if (node.split->feature.kind == ValueKind::kRatio) {
      check(node.split->threshold > Rational(0) && node.split->threshold < Rational(1),
            where + " has a relative threshold outside (0, 1)");
    } else {
      check(node.split->threshold.is_integer() && node.split->threshold >= Rational(0),
            where + " has a non-integral count threshold");
    }
  }
  if (graph_level) {
    for (auto leaf : tree.leaves()) check(tree.nodes[leaf].label >= 0, where + " leaf without class label");
  }
}

}  // namespace

void validate_idt(const Idt& idt) {
  for (const auto& f : idt.base_formulas) {
    check(formula_depth(f) == 0 && atom_bound(f) <= idt.atom_count, "base formula must be a Boolean combination of atoms");
  }
  std::size_t offset = idt.atom_count + idt.base_formulas.size();
  for (std::size_t li = 0; li < idt.layers.size(); ++li) {
    const auto& layer = idt.layers[li];
    const std::string where = "layer " + std::to_string(li);
    check(layer.pool_offset == offset, where + " pool offset mismatch");
    check(layer.leaf_sets.size() == layer.trees.size() && layer.leaf_set_columns.size() == layer.trees.size(),
          where + " leaf-set bookkeeping does not match its trees");
    for (std::size_t t = 0; t < layer.trees.size(); ++t) {
      check_tree(layer.trees[t], offset, false, where + " tree " + std::to_string(t));
      check(layer.leaf_sets[t].size() == layer.leaf_set_columns[t].size(), where + " leaf-set column count");
      for (std::size_t s = 0; s < layer.leaf_sets[t].size(); ++s) {
        for (auto leaf : layer.leaf_sets[t][s].leaves) {
          check(leaf < layer.trees[t].nodes.size() && layer.trees[t].nodes[leaf].is_leaf(),
                where + " leaf set names a non-leaf");
        }
        check(layer.leaf_set_columns[t][s] < offset + layer.emitted.size(), where + " leaf-set column out of range");
      }
    }
    for (const auto& f : layer.emitted) check(atom_bound(f) <= offset, where + " formula refers to a later entry");
    offset += layer.emitted.size();
  }
  check_tree(idt.final_tree, offset, true, "final tree");
  for (auto leaf : idt.final_tree.leaves()) {
    check(static_cast<std::size_t>(idt.final_tree.nodes[leaf].label) < idt.num_classes, "final label out of range");
  }
  if (idt.node_output) check(*idt.node_output < offset, "node output out of range");
}

namespace {

template <class Fn>
void parallel_for(std::size_t count, std::size_t jobs, Fn&& fn) {
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(count, 1));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (failure) std::rethrow_exception(failure);
}

void label_leaves(DecisionTree& tree) {
  for (auto& node : tree.nodes) {
    if (!node.is_leaf()) continue;
    const auto best = std::max_element(node.value.begin(), node.value.end());
    node.label = static_cast<std::int32_t>(best - node.value.begin());
  }
}

}  // namespace

IdtLayer learn_idt_layer(std::span<const GraphView> graphs, FormulaPool& pool, const TargetMatrix& targets,
                         const IdtConfig& config, std::size_t layer_index) {
  FeatureTable table = FeatureTable::build(graphs, pool.size(), config.layer_modals, false);
  table.set_targets(targets);
  IdtLayer layer;
  layer.pool_offset = pool.size();
  const std::size_t tree_count = std::max<std::size_t>(1, config.trees_per_layer);
  layer.trees.resize(tree_count);
  layer.leaf_sets.resize(tree_count);
  parallel_for(tree_count, config.jobs, [&](std::size_t t) {
    FitOptions options;
    options.max_depth = config.layer_depth;
    options.min_rows_leaf = config.layer_min_rows_leaf;
    options.feature_mask = random_feature_mask(table.cols(), config.feature_rate, derive_seed(config.seed, layer_index, t));
    layer.trees[t] = fit_tree(table, options);
    layer.leaf_sets[t] = cluster_leaf_sets(layer.trees[t]);
  });
  layer.leaf_set_columns.resize(tree_count);
  for (std::size_t t = 0; t < tree_count; ++t) {
    for (const auto& set : layer.leaf_sets[t]) {
      bool added = false;
      const auto column = pool.intern(set.formula, &added);
      if (added) layer.emitted.push_back(set.formula);
      layer.leaf_set_columns[t].push_back(column);
    }
  }
  return layer;
}

DecisionTree learn_final_tree(std::span<const GraphView> graphs, std::size_t pool_size, const TargetMatrix& targets,
                              const IdtConfig& config) {
  const Modal one[] = {Modal::kOne};
  FeatureTable table = FeatureTable::build(graphs, pool_size, one, true);
  table.set_targets(targets);
  FitOptions options;
  options.max_depth = config.final_max_depth;
  options.min_rows_leaf = config.final_min_rows_leaf;
  DecisionTree tree = prune_ccp(fit_tree(table, options), config.ccp_alpha);
  label_leaves(tree);
  return tree;
}

TargetMatrix one_hot_graph_targets(const std::vector<LabeledGraph>& graphs, std::size_t num_classes) {
  TargetMatrix t;
  t.dim = num_classes;
  t.values.assign(graphs.size() * num_classes, 0.0);
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    if (graphs[i].label >= num_classes) throw DataError("graph label out of range");
    t.values[i * num_classes + graphs[i].label] = 1.0;
  }
  return t;
}

LayerTargets true_label_targets(const std::vector<LabeledGraph>& graphs, std::size_t num_classes,
                                std::size_t layer_count) {
  TargetMatrix nodes;
  nodes.dim = num_classes;
  for (const auto& lg : graphs) {
    for (std::size_t v = 0; v < lg.graph.node_count(); ++v) {
      for (std::size_t c = 0; c < num_classes; ++c) nodes.values.push_back(c == lg.label ? 1.0 : 0.0);
    }
  }
  LayerTargets out;
  out.layers.assign(layer_count, nodes);
  out.final = one_hot_graph_targets(graphs, num_classes);
  return out;
}

Idt learn_idt(const std::vector<LabeledGraph>& graphs, std::size_t num_classes, const LayerTargets& targets,
              const IdtConfig& config) {
  if (graphs.empty()) throw DataError("cannot learn from an empty dataset");
  Idt idt;
  idt.atom_count = graphs.front().features.cols();
  idt.num_classes = num_classes;
  idt.config = config;
  std::vector<FeatureMatrix> pools;
  pools.reserve(graphs.size());
  std::size_t total_nodes = 0;
  for (const auto& lg : graphs) {
    if (lg.features.cols() != idt.atom_count) throw DataError("graphs disagree on the number of node features");
    pools.push_back(lg.features);
    total_nodes += lg.graph.node_count();
  }
  std::vector<GraphView> views;
  for (std::size_t i = 0; i < graphs.size(); ++i) views.push_back({&graphs[i].graph, &pools[i]});

  FormulaPool pool(idt.atom_count);
  for (std::size_t li = 0; li < targets.layers.size(); ++li) {
    if (targets.layers[li].rows() != total_nodes) {
      throw DataError("layer " + std::to_string(li) + " targets have " + std::to_string(targets.layers[li].rows()) +
                      " rows, dataset has " + std::to_string(total_nodes) + " nodes");
    }
    IdtLayer layer = learn_idt_layer(views, pool, targets.layers[li], config, li);
    for (std::size_t i = 0; i < graphs.size(); ++i) {
      for (const auto& f : layer.emitted) pools[i].append_column(eval_nodes(graphs[i].graph, pools[i], f));
    }
    idt.layers.push_back(std::move(layer));
  }
  if (targets.final.rows() != graphs.size()) throw DataError("final targets do not match the graph count");
  idt.final_tree = learn_final_tree(views, pool.size(), targets.final, config);
  for (auto leaf : idt.final_tree.leaves()) {
    auto& node = idt.final_tree.nodes[leaf];
    if (static_cast<std::size_t>(node.label) >= num_classes) node.label = static_cast<std::int32_t>(num_classes - 1);
  }
  validate_idt(idt);
  return idt;
}

FeatureMatrix extend_pool(const Idt& idt, const Graph& g, const FeatureMatrix& u) {
  if (u.cols() != idt.atom_count) {
    throw DataError("graph has " + std::to_string(u.cols()) + " node features, model expects " +
                    std::to_string(idt.atom_count));
  }
  if (u.rows() != g.node_count()) throw DataError("feature rows do not match the node count");
  FeatureMatrix pool = u;
  for (const auto& f : idt.base_formulas) pool.append_column(eval_nodes(g, pool, f));
  for (const auto& layer : idt.layers) {
    for (const auto& f : layer.emitted) pool.append_column(eval_nodes(g, pool, f));
  }
  return pool;
}

std::size_t idt_predict(const Idt& idt, const Graph& g, const FeatureMatrix& u) {
  const FeatureMatrix pool = extend_pool(idt, g, u);
  const auto& nodes = idt.final_tree.nodes;
  std::size_t i = 0;
  while (!nodes[i].is_leaf()) {
    const auto& split = *nodes[i].split;
    std::uint64_t count = 0;
    for (auto b : pool.column(split.feature.source)) count += b;
    const bool pass = split.feature.kind == ValueKind::kCount ? Rational(static_cast<std::int64_t>(count)) > split.threshold
                                                              : split.threshold.ratio_exceeds(count, g.node_count());
    i = static_cast<std::size_t>(pass ? nodes[i].right : nodes[i].left);
  }
  return static_cast<std::size_t>(nodes[i].label);
}

NodeVector idt_node_predict(const Idt& idt, const Graph& g, const FeatureMatrix& u) {
  if (!idt.node_output) throw InvariantError("IDT has no node-level output");
  const FeatureMatrix pool = extend_pool(idt, g, u);
  const auto col = pool.column(*idt.node_output);
  return NodeVector(col.begin(), col.end());
}

namespace {

// Memoized rewriting of pool entries over the original atoms; only the
// entries actually reached are expanded.
class Expander {
 public:
  explicit Expander(const Idt& idt) : idt_(idt), memo_(idt.pool_size()) {}

  const Formula& operator()(std::size_t k) {
    if (k >= memo_.size()) throw InvariantError("pool entry out of range");
    if (!memo_[k]) {
      if (k < idt_.atom_count) {
        memo_[k] = Formula::atom(k);
      } else {
        const Formula f = idt_.pool_formula(k);
        std::vector<Formula> replacement(atom_bound(f));
        for (auto j : atoms_of(f)) replacement[j] = (*this)(j);
        memo_[k] = simplify(substitute_atoms(f, replacement));
      }
    }
    return *memo_[k];
  }

 private:
  const Idt& idt_;
  std::vector<std::optional<Formula>> memo_;
};

}  // namespace

Formula expand_pool_entry(const Idt& idt, std::size_t k) { return Expander(idt)(k); }

std::vector<Formula> class_rules(const Idt& idt) {
  Expander expand(idt);
  std::vector<Formula> rules;
  const auto leaves = idt.final_tree.leaves();
  for (std::size_t c = 0; c < idt.num_classes; ++c) {
    std::vector<std::size_t> members;
    for (auto leaf : leaves) {
      if (static_cast<std::size_t>(idt.final_tree.nodes[leaf].label) == c) members.push_back(leaf);
    }
    const Formula f = leafset_formula(idt.final_tree, members);
    std::vector<Formula> replacement(atom_bound(f));
    for (auto j : atoms_of(f)) replacement[j] = expand(j);
    rules.push_back(simplify(substitute_atoms(f, replacement)));
  }
  return rules;
}

}  // namespace idt
