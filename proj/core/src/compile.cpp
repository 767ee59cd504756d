#include "idt/compile.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "idt/error.hpp"

namespace idt {

namespace {

Formula lift(const Formula& f, std::size_t depth);

// A maximal subformula shallower than its level is padded as a whole.
Formula norm(const Formula& f, std::size_t depth) {
  if (formula_depth(f) < depth) return Formula::count_gt(Modal::kId, lift(f, depth - 1), 0);
  switch (f.kind()) {
    case Formula::Kind::kAnd:
      return Formula::conj(norm(f.lhs(), depth), norm(f.rhs(), depth));
    case Formula::Kind::kOr:
      return Formula::disj(norm(f.lhs(), depth), norm(f.rhs(), depth));
    case Formula::Kind::kNot:
      return Formula::negate(norm(f.child(), depth));
    case Formula::Kind::kCountGt:
      return Formula::count_gt(f.modal(), lift(f.child(), depth - 1), f.count_threshold());
    case Formula::Kind::kRatioGt:
      return Formula::ratio_gt(f.modal(), lift(f.child(), depth - 1), f.ratio_threshold());
    default:
      break;
  }
  throw InvariantError("unknown formula kind");
}

Formula lift(const Formula& f, std::size_t depth) { return depth == 0 ? f : norm(f, depth); }

// Distinct items in first-seen order.
template <class T>
struct OrderedSet {
  std::vector<T> items;
  std::map<T, std::size_t> index;

  std::size_t add(const T& x) {
    auto [it, inserted] = index.emplace(x, items.size());
    if (inserted) items.push_back(x);
    return it->second;
  }
};

// Guards of a Boolean combination, by level (top level = depth).
void collect(const Formula& f, std::size_t level, std::vector<OrderedSet<Formula>>& guards) {
  switch (f.kind()) {
    case Formula::Kind::kAnd:
    case Formula::Kind::kOr:
      collect(f.lhs(), level, guards);
      collect(f.rhs(), level, guards);
      return;
    case Formula::Kind::kNot:
      collect(f.child(), level, guards);
      return;
    case Formula::Kind::kCountGt:
    case Formula::Kind::kRatioGt:
      guards[level].add(f);
      if (level > 1) collect(f.child(), level - 1, guards);
      return;
    default:
      throw InvariantError("unnormalized position in compiled formula");
  }
}

bool eval_assignment(const Formula& f, const std::map<Formula, std::size_t>& guard_index,
                     const std::vector<bool>& assignment) {
  switch (f.kind()) {
    case Formula::Kind::kTop:
      return true;
    case Formula::Kind::kAnd:
      return eval_assignment(f.lhs(), guard_index, assignment) && eval_assignment(f.rhs(), guard_index, assignment);
    case Formula::Kind::kOr:
      return eval_assignment(f.lhs(), guard_index, assignment) || eval_assignment(f.rhs(), guard_index, assignment);
    case Formula::Kind::kNot:
      return !eval_assignment(f.child(), guard_index, assignment);
    case Formula::Kind::kCountGt:
    case Formula::Kind::kRatioGt:
      return assignment[guard_index.at(f)];
    default:
      throw InvariantError("unnormalized position in compiled formula");
  }
}

// Perfect tree over `splits`, pre-order, false branch first. Leaf i (left to
// right) carries the assignment whose bit j (guard 0 most significant) is
// the outcome of split j.
DecisionTree perfect_tree(const std::vector<SplitTest>& splits, std::vector<std::vector<bool>>& assignments,
                          std::vector<std::size_t>& leaf_nodes) {
  DecisionTree tree;
  std::vector<bool> current(splits.size());
  auto grow = [&](auto&& self, std::size_t level) -> std::size_t {
    const std::size_t index = tree.nodes.size();
    tree.nodes.emplace_back();
    if (level == splits.size()) {
      assignments.push_back(current);
      leaf_nodes.push_back(index);
      return index;
    }
    tree.nodes[index].split = splits[level];
    current[level] = false;
    const auto l = self(self, level + 1);
    tree.nodes[index].left = static_cast<std::int32_t>(l);
    current[level] = true;
    const auto r = self(self, level + 1);
    tree.nodes[index].right = static_cast<std::int32_t>(r);
    return index;
  };
  grow(grow, 0);
  return tree;
}

}  // namespace

Formula normalize_depth(const Formula& f, std::size_t depth) {
  if (depth == 0 || formula_depth(f) > depth) throw InvariantError("normalization depth too small");
  return norm(f, depth);
}

Idt compile_formula_to_idt(const Formula& f, std::size_t atom_count) {
  const std::size_t k = std::max<std::size_t>(1, formula_depth(f));
  const Formula target = normalize_depth(f, k);
  const Formula complement = Formula::negate(target);

  std::vector<OrderedSet<Formula>> guards(k + 1);
  collect(target, k, guards);
  for (std::size_t level = 1; level <= k; ++level) {
    if (guards[level].items.size() > kMaxGuardsPerLevel) {
      throw LimitError("level " + std::to_string(level) + " needs " + std::to_string(guards[level].items.size()) +
                       " distinct guards, the limit is " + std::to_string(kMaxGuardsPerLevel));
    }
  }

  Idt idt;
  idt.atom_count = std::max(atom_count, atom_bound(f));
  idt.num_classes = 2;
  FormulaPool pool(idt.atom_count);
  // Children of level-1 guards are Boolean combinations of atoms.
  for (const auto& g : guards[1].items) {
    bool added = false;
    pool.intern(g.child(), &added);
    if (added) idt.base_formulas.push_back(g.child());
  }

  std::map<Formula, std::size_t> column_of;  // emitted targets of the previous layer
  for (std::size_t level = 1; level <= k; ++level) {
    const auto& level_guards = guards[level].items;
    std::vector<SplitTest> splits;
    for (const auto& g : level_guards) {
      const std::size_t source = level == 1 ? *pool.find(g.child()) : column_of.at(g.child());
      if (g.kind() == Formula::Kind::kCountGt) {
        splits.push_back({{g.modal(), source, ValueKind::kCount}, Rational(static_cast<std::int64_t>(g.count_threshold()))});
      } else {
        splits.push_back({{g.modal(), source, ValueKind::kRatio}, g.ratio_threshold()});
      }
    }
    std::vector<Formula> targets;
    if (level == k) {
      targets = {target, complement};
    } else {
      OrderedSet<Formula> children;
      for (const auto& g : guards[level + 1].items) children.add(g.child());
      targets = children.items;
    }

    IdtLayer layer;
    layer.pool_offset = pool.size();
    std::vector<std::vector<bool>> assignments;
    std::vector<std::size_t> leaf_nodes;
    layer.trees.push_back(perfect_tree(splits, assignments, leaf_nodes));
    const auto& tree = layer.trees.back();
    auto& sets = layer.leaf_sets.emplace_back();
    auto& columns = layer.leaf_set_columns.emplace_back();
    std::map<Formula, std::size_t> next_columns;
    for (const auto& t : targets) {
      LeafSet set;
      for (std::size_t i = 0; i < leaf_nodes.size(); ++i) {
        if (eval_assignment(t, guards[level].index, assignments[i])) set.leaves.push_back(leaf_nodes[i]);
      }
      set.formula = leafset_formula(tree, set.leaves);
      bool added = false;
      const auto column = pool.intern(set.formula, &added);
      if (added) layer.emitted.push_back(set.formula);
      next_columns[t] = column;
      columns.push_back(column);
      sets.push_back(std::move(set));
    }
    column_of = std::move(next_columns);
    idt.layers.push_back(std::move(layer));
  }

  // G satisfies f iff no node satisfies the complement.
  DecisionTree final_tree;
  final_tree.nodes.resize(3);
  final_tree.nodes[0].split = SplitTest{{Modal::kOne, column_of.at(complement), ValueKind::kCount}, Rational(0)};
  final_tree.nodes[0].left = 1;
  final_tree.nodes[0].right = 2;
  final_tree.nodes[1].label = 1;
  final_tree.nodes[1].value = {0.0, 1.0};
  final_tree.nodes[2].label = 0;
  final_tree.nodes[2].value = {1.0, 0.0};
  idt.final_tree = std::move(final_tree);
  idt.node_output = column_of.at(target);
  validate_idt(idt);
  return idt;
}

}  // namespace idt
