#include <algorithm>

#include "doctest.h"
#include "generators.hpp"
#include "idt/leaf_sets.hpp"
#include "idt/semantics.hpp"
#include "idt/syntax.hpp"

using namespace idt;

namespace {

// Root "A U1 > 0"; false -> leaf 1; true -> "A U1 > 1" with leaves 3 (false)
// and 4 (true).
DecisionTree example_tree() {
  DecisionTree t;
  t.nodes.resize(5);
  t.nodes[0].split = SplitTest{{Modal::kAdj, 1, ValueKind::kCount}, Rational(0)};
  t.nodes[0].left = 1;
  t.nodes[0].right = 2;
  t.nodes[2].split = SplitTest{{Modal::kAdj, 1, ValueKind::kCount}, Rational(1)};
  t.nodes[2].left = 3;
  t.nodes[2].right = 4;
  t.nodes[1].value = {0.0};
  t.nodes[3].value = {1.0};
  t.nodes[4].value = {0.2};
  return t;
}

DecisionTree scalar_leaves(const std::vector<double>& values) {
  // Left-leaning comb: internal nodes split on I U_i > 0.
  DecisionTree t;
  const std::size_t k = values.size();
  std::size_t next = 0;
  auto build = [&](auto&& self, std::size_t i) -> std::size_t {
    const std::size_t index = t.nodes.size();
    t.nodes.emplace_back();
    if (i + 1 == k) {
      t.nodes[index].value = {values[next++]};
      return index;
    }
    t.nodes[index].split = SplitTest{{Modal::kId, i, ValueKind::kCount}, Rational(0)};
    const std::size_t leaf = t.nodes.size();
    t.nodes.emplace_back();
    t.nodes[leaf].value = {values[next++]};
    t.nodes[index].left = static_cast<std::int32_t>(leaf);
    t.nodes[index].right = static_cast<std::int32_t>(self(self, i + 1));
    return index;
  };
  build(build, 0);
  return t;
}

}  // namespace

TEST_CASE("leaf-set formulas of the two-split layer") {
  const auto t = example_tree();
  const std::vector<std::size_t> m0 = {1}, m1 = {4}, m2 = {1, 4}, m3 = {3}, all = {1, 3, 4};
  CHECK(render_formula(leafset_formula(t, m0)) == "A U1 = 0");
  CHECK(render_formula(leafset_formula(t, m1)) == "A U1 > 1");
  CHECK(render_formula(leafset_formula(t, m2)) == "!(A U1 = 1)");
  CHECK(render_formula(leafset_formula(t, m3)) == "A U1 = 1");
  CHECK(leafset_formula(t, all) == Formula::top());
  const std::vector<std::size_t> internal = {2};
  CHECK_THROWS(leafset_formula(t, internal));
}

TEST_CASE("clustering merges the closest predictions first") {
  const auto t = scalar_leaves({0.1, 0.15, 0.9});
  const auto sets = cluster_leaf_sets(t);
  const auto leaves = t.leaves();
  REQUIRE(sets.size() == 5);
  CHECK(sets[0].leaves == std::vector<std::size_t>{leaves[0]});
  CHECK(sets[1].leaves == std::vector<std::size_t>{leaves[1]});
  CHECK(sets[2].leaves == std::vector<std::size_t>{leaves[2]});
  CHECK(sets[3].leaves == std::vector<std::size_t>{leaves[0], leaves[1]});
  CHECK(sets[4].leaves.size() == 3);
  CHECK(sets[4].formula == Formula::top());

  DecisionTree single;
  single.nodes.resize(1);
  single.nodes[0].value = {0.3};
  const auto one = cluster_leaf_sets(single);
  REQUIRE(one.size() == 1);
  CHECK(one[0].formula == Formula::top());

  CHECK(cluster_leaf_sets(scalar_leaves({0.0, 1.0, 0.5, 3.0})).size() == 7);
}

TEST_CASE("leaf-set law and formula faithfulness on random trees") {
  Rng rng(31);
  for (int trial = 0; trial < 150; ++trial) {
    std::vector<LabeledGraph> graphs(3);
    std::vector<GraphView> views;
    TargetMatrix y;
    y.dim = 2;
    for (auto& lg : graphs) {
      const std::size_t n = 1 + rng.uniform_index(8);
      lg.graph = testing::random_graph(rng, n, 0.4);
      lg.features = testing::random_features(rng, n, 2);
      for (std::size_t v = 0; v < n; ++v) {
        y.values.push_back(rng.uniform01());
        y.values.push_back(lg.features.at(v, 0));
      }
    }
    for (const auto& lg : graphs) views.push_back({&lg.graph, &lg.features});
    const Modal modals[] = {Modal::kId, Modal::kAdj, Modal::kIdPlusAdj, Modal::kOne};
    auto table = FeatureTable::build(views, 2, modals, false);
    table.set_targets(y);
    FitOptions o;
    o.max_depth = 1 + rng.uniform_index(4);
    const auto tree = fit_tree(table, o);
    const auto sets = cluster_leaf_sets(tree);
    REQUIRE(sets.size() == 2 * tree.leaf_count() - 1);
    // Each formula holds exactly at the rows routed to its leaves.
    for (const auto& set : sets) {
      std::size_t row = 0;
      for (const auto& lg : graphs) {
        const auto truth = eval_nodes(lg.graph, lg.features, set.formula);
        for (std::size_t v = 0; v < truth.size(); ++v, ++row) {
          const auto leaf = tree_leaf(tree, table, row);
          const bool member = std::binary_search(set.leaves.begin(), set.leaves.end(), leaf);
          REQUIRE(static_cast<bool>(truth[v]) == member);
        }
      }
    }
  }
}
