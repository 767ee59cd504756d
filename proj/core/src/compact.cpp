#include <algorithm>
#include <limits>
#include <set>

#include "idt/error.hpp"
#include "idt/idt.hpp"

namespace idt {

namespace {

constexpr std::size_t kDropped = std::numeric_limits<std::size_t>::max();

struct Owner {
  std::size_t layer = 0;
  std::size_t tree = 0;
  std::size_t set = 0;
};

// Rebuilds `tree` keeping only splits that separate leaves with different
// membership in `sets`. `leaf_map` receives old leaf -> new leaf.
DecisionTree collapse(const DecisionTree& tree, const std::vector<const LeafSet*>& sets,
                      std::vector<std::size_t>& leaf_map) {
  std::vector<std::vector<bool>> signature(tree.nodes.size());
  for (auto leaf : tree.leaves()) {
    signature[leaf].resize(sets.size());
    for (std::size_t s = 0; s < sets.size(); ++s) {
      signature[leaf][s] = std::binary_search(sets[s]->leaves.begin(), sets[s]->leaves.end(), leaf);
    }
  }
  leaf_map.assign(tree.nodes.size(), kDropped);
  DecisionTree out;
  auto uniform = [&](std::size_t i) {
    std::vector<std::size_t> stack{i};
    const std::vector<bool>* first = nullptr;
    while (!stack.empty()) {
      const auto j = stack.back();
      stack.pop_back();
      if (tree.nodes[j].is_leaf()) {
        if (first && *first != signature[j]) return false;
        first = &signature[j];
      } else {
        stack.push_back(static_cast<std::size_t>(tree.nodes[j].left));
        stack.push_back(static_cast<std::size_t>(tree.nodes[j].right));
      }
    }
    return true;
  };
  auto rebuild = [&](auto&& self, std::size_t i) -> std::size_t {
    const std::size_t index = out.nodes.size();
    out.nodes.push_back(tree.nodes[i]);
    if (tree.nodes[i].is_leaf()) {
      leaf_map[i] = index;
      return index;
    }
    if (uniform(i)) {
      auto& node = out.nodes[index];
      node.split.reset();
      node.left = node.right = -1;
      node.rows.clear();
      std::vector<std::size_t> stack{i};
      while (!stack.empty()) {
        const auto j = stack.back();
        stack.pop_back();
        if (tree.nodes[j].is_leaf()) {
          leaf_map[j] = index;
          node.rows.insert(node.rows.end(), tree.nodes[j].rows.begin(), tree.nodes[j].rows.end());
        } else {
          stack.push_back(static_cast<std::size_t>(tree.nodes[j].left));
          stack.push_back(static_cast<std::size_t>(tree.nodes[j].right));
        }
      }
      std::sort(node.rows.begin(), node.rows.end());
      return index;
    }
    const auto l = self(self, static_cast<std::size_t>(tree.nodes[i].left));
    out.nodes[index].left = static_cast<std::int32_t>(l);
    const auto r = self(self, static_cast<std::size_t>(tree.nodes[i].right));
    out.nodes[index].right = static_cast<std::int32_t>(r);
    return index;
  };
  rebuild(rebuild, 0);
  return out;
}

void add_split_sources(const DecisionTree& tree, std::set<std::size_t>& out) {
  for (const auto& node : tree.nodes) {
    if (!node.is_leaf()) out.insert(node.split->feature.source);
  }
}

}  // namespace

Idt compact(const Idt& idt) {
  const std::size_t base_end = idt.atom_count + idt.base_formulas.size();
  std::vector<Owner> owner(idt.pool_size());
  for (std::size_t li = 0; li < idt.layers.size(); ++li) {
    const auto& layer = idt.layers[li];
    for (std::size_t t = layer.trees.size(); t-- > 0;) {
      for (std::size_t s = layer.leaf_sets[t].size(); s-- > 0;) {
        const auto c = layer.leaf_set_columns[t][s];
        if (c >= layer.pool_offset) owner[c] = {li, t, s};
      }
    }
  }

  // Per layer and tree, the leaf sets that must survive.
  auto kept_sets = [&](const std::set<std::size_t>& needed) {
    std::vector<std::vector<std::vector<std::size_t>>> kept(idt.layers.size());
    for (std::size_t li = 0; li < idt.layers.size(); ++li) kept[li].resize(idt.layers[li].trees.size());
    for (auto c : needed) {
      if (c < base_end) continue;
      const auto& o = owner[c];
      kept[o.layer][o.tree].push_back(o.set);
    }
    return kept;
  };

  std::set<std::size_t> needed;
  add_split_sources(idt.final_tree, needed);
  if (idt.node_output) needed.insert(*idt.node_output);
  std::vector<std::vector<std::vector<std::size_t>>> kept;
  std::vector<std::vector<DecisionTree>> collapsed;
  std::vector<std::vector<std::vector<std::size_t>>> leaf_maps;
  while (true) {
    const std::size_t before = needed.size();
    for (std::vector<std::size_t> work(needed.begin(), needed.end()); !work.empty();) {
      const auto c = work.back();
      work.pop_back();
      if (c < idt.atom_count) continue;
      for (auto j : atoms_of(idt.pool_formula(c))) {
        if (needed.insert(j).second) work.push_back(j);
      }
    }
    kept = kept_sets(needed);
    collapsed.assign(idt.layers.size(), {});
    leaf_maps.assign(idt.layers.size(), {});
    for (std::size_t li = 0; li < idt.layers.size(); ++li) {
      const auto& layer = idt.layers[li];
      collapsed[li].resize(layer.trees.size());
      leaf_maps[li].resize(layer.trees.size());
      for (std::size_t t = 0; t < layer.trees.size(); ++t) {
        if (kept[li][t].empty()) continue;
        std::sort(kept[li][t].begin(), kept[li][t].end());
        std::vector<const LeafSet*> sets;
        for (auto s : kept[li][t]) sets.push_back(&layer.leaf_sets[t][s]);
        collapsed[li][t] = collapse(layer.trees[t], sets, leaf_maps[li][t]);
        add_split_sources(collapsed[li][t], needed);
      }
    }
    if (needed.size() == before) break;
  }

  std::vector<std::size_t> map(idt.pool_size(), kDropped);
  std::size_t next = 0;
  for (; next < idt.atom_count; ++next) map[next] = next;
  Idt out;
  out.atom_count = idt.atom_count;
  out.num_classes = idt.num_classes;
  out.config = idt.config;
  for (std::size_t b = 0; b < idt.base_formulas.size(); ++b) {
    if (!needed.contains(idt.atom_count + b)) continue;
    map[idt.atom_count + b] = next++;
    out.base_formulas.push_back(idt.base_formulas[b]);
  }
  auto remap_tree = [&](DecisionTree tree) {
    for (auto& node : tree.nodes) {
      if (node.is_leaf()) continue;
      auto& src = node.split->feature.source;
      if (map[src] == kDropped) throw InvariantError("compaction dropped a referenced formula");
      src = map[src];
    }
    return tree;
  };
  auto remap_formula = [&](const Formula& f) {
    for (auto j : atoms_of(f)) {
      if (map[j] == kDropped) throw InvariantError("compaction dropped a referenced formula");
    }
    return remap_atoms(f, map);
  };
  for (std::size_t li = 0; li < idt.layers.size(); ++li) {
    const auto& layer = idt.layers[li];
    IdtLayer nl;
    nl.pool_offset = next;
    for (std::size_t e = 0; e < layer.emitted.size(); ++e) {
      const auto c = layer.pool_offset + e;
      if (!needed.contains(c)) continue;
      map[c] = next++;
    }
    for (std::size_t e = 0; e < layer.emitted.size(); ++e) {
      if (needed.contains(layer.pool_offset + e)) nl.emitted.push_back(remap_formula(layer.emitted[e]));
    }
    for (std::size_t t = 0; t < layer.trees.size(); ++t) {
      if (kept[li][t].empty()) continue;
      nl.trees.push_back(remap_tree(collapsed[li][t]));
      auto& sets = nl.leaf_sets.emplace_back();
      auto& columns = nl.leaf_set_columns.emplace_back();
      for (auto s : kept[li][t]) {
        const auto& old = layer.leaf_sets[t][s];
        LeafSet set;
        for (auto leaf : old.leaves) set.leaves.push_back(leaf_maps[li][t][leaf]);
        std::sort(set.leaves.begin(), set.leaves.end());
        set.leaves.erase(std::unique(set.leaves.begin(), set.leaves.end()), set.leaves.end());
        set.formula = remap_formula(old.formula);
        sets.push_back(std::move(set));
        columns.push_back(map[layer.leaf_set_columns[t][s]]);
      }
    }
    if (!nl.trees.empty()) out.layers.push_back(std::move(nl));
  }
  out.final_tree = remap_tree(idt.final_tree);
  if (idt.node_output) out.node_output = map[*idt.node_output];
  validate_idt(out);
  return out;
}

}  // namespace idt
