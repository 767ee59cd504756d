#include "idt/leaf_sets.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "idt/error.hpp"
#include "idt/simplify.hpp"

namespace idt {

Formula split_formula(const SplitTest& split) {
  const auto& f = split.feature;
  if (f.kind == ValueKind::kCount) {
    const auto n = split.threshold.floor();
    if (n < 0) return Formula::top();
    return Formula::count_gt(f.modal, Formula::atom(f.source), static_cast<std::uint64_t>(n));
  }
  return Formula::ratio_gt(f.modal, Formula::atom(f.source), split.threshold);
}

namespace {

Formula build(const DecisionTree& tree, std::size_t i, const std::set<std::size_t>& members) {
  const TreeNode& node = tree.nodes[i];
  if (node.is_leaf()) return members.contains(i) ? Formula::top() : Formula::bottom();
  const Formula l = build(tree, static_cast<std::size_t>(node.left), members);
  const Formula r = build(tree, static_cast<std::size_t>(node.right), members);
  const Formula top = Formula::top();
  const Formula bottom = Formula::bottom();
  if (l == r) return l;
  const Formula lit = split_formula(*node.split);
  if (l == bottom) return r == top ? lit : Formula::conj(lit, r);
  if (r == bottom) return l == top ? Formula::negate(lit) : Formula::conj(Formula::negate(lit), l);
  if (l == top) return Formula::disj(Formula::negate(lit), r);
  if (r == top) return Formula::disj(lit, l);
  return Formula::disj(Formula::conj(lit, r), Formula::conj(Formula::negate(lit), l));
}

}  // namespace

Formula leafset_formula(const DecisionTree& tree, std::span<const std::size_t> leaves) {
  std::set<std::size_t> members;
  for (auto i : leaves) {
    if (i >= tree.nodes.size() || !tree.nodes[i].is_leaf()) throw InvariantError("leaf set names a non-leaf node");
    members.insert(i);
  }
  return simplify(build(tree, 0, members));
}

std::vector<LeafSet> cluster_leaf_sets(const DecisionTree& tree) {
  struct Cluster {
    std::vector<std::size_t> leaves;
    std::vector<double> center;
    bool active = true;
  };
  std::vector<Cluster> clusters;
  for (auto leaf : tree.leaves()) clusters.push_back({{leaf}, tree.nodes[leaf].value, true});
  std::size_t active = clusters.size();
  while (active > 1) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0;
    std::size_t bj = 0;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      if (!clusters[i].active) continue;
      for (std::size_t j = i + 1; j < clusters.size(); ++j) {
        if (!clusters[j].active) continue;
        double d = 0.0;
        for (std::size_t k = 0; k < clusters[i].center.size(); ++k) {
          const double e = clusters[i].center[k] - clusters[j].center[k];
          d += e * e;
        }
        if (d < best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    }
    Cluster merged;
    merged.leaves = clusters[bi].leaves;
    merged.leaves.insert(merged.leaves.end(), clusters[bj].leaves.begin(), clusters[bj].leaves.end());
    std::sort(merged.leaves.begin(), merged.leaves.end());
    merged.center.assign(clusters[bi].center.size(), 0.0);
    for (auto leaf : merged.leaves) {
      const auto& v = tree.nodes[leaf].value;
      for (std::size_t k = 0; k < v.size(); ++k) merged.center[k] += v[k];
    }
    for (auto& c : merged.center) c /= static_cast<double>(merged.leaves.size());
    clusters[bi].active = clusters[bj].active = false;
    clusters.push_back(std::move(merged));
    --active;
  }
  std::vector<LeafSet> out;
  out.reserve(clusters.size());
  for (auto& c : clusters) out.push_back({c.leaves, leafset_formula(tree, c.leaves)});
  return out;
}

}  // namespace idt
