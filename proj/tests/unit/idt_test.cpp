#include <algorithm>
#include <string>
#include <vector>

#include "doctest.h"
#include "generators.hpp"
#include "idt/error.hpp"
#include "idt/idt.hpp"
#include "idt/idt_io.hpp"
#include "idt/semantics.hpp"
#include "idt/synth.hpp"
#include "idt/syntax.hpp"

using namespace idt;

namespace {

LabeledGraph example_graph() {
  LabeledGraph lg;
  const std::vector<Edge> edges = {{0, 1}, {0, 2}, {1, 2}, {1, 3}};
  lg.graph = Graph::from_edges(4, edges);
  lg.features = FeatureMatrix::from_rows({{0, 1}, {1, 0}, {0, 0}, {1, 1}});
  return lg;
}

TargetMatrix scalar_targets(std::vector<double> values) {
  TargetMatrix t;
  t.dim = 1;
  t.values = std::move(values);
  return t;
}

IdtConfig single_tree_config(std::vector<Modal> modals) {
  IdtConfig c;
  c.trees_per_layer = 1;
  c.feature_rate = 1.0;
  c.layer_modals = std::move(modals);
  return c;
}

std::vector<std::string> rendered(const IdtLayer& layer) {
  std::vector<std::string> out;
  for (const auto& f : layer.emitted) out.push_back(render_formula(f));
  return out;
}

Dataset small_er(std::uint64_t seed, const char* formula, std::size_t count = 120) {
  return gen_er_dataset(count, 8, 0.3, parse_formula(formula), seed);
}

Idt learn_true(const Dataset& ds, const IdtConfig& config) {
  return learn_idt(ds.graphs, ds.num_classes, true_label_targets(ds.graphs, ds.num_classes, config.layers), config);
}

}  // namespace

TEST_CASE("learned layer reproduces the worked leaf sets") {
  // U0 is cleared: on the original U0 the ratio column A U0 separates v1 from
  // v2 as well and wins the tie by column order.
  auto lg = example_graph();
  for (std::size_t v = 0; v < 4; ++v) lg.features.set(v, 0, false);
  const GraphView view{&lg.graph, &lg.features};
  FormulaPool pool(2);
  const auto layer = learn_idt_layer({&view, 1}, pool, scalar_targets({0.0, 0.2, 1.0, 0.0}),
                                     single_tree_config({Modal::kAdj}), 0);
  REQUIRE(layer.trees.size() == 1);
  CHECK(layer.trees[0].leaf_count() == 3);
  const auto names = rendered(layer);
  for (const char* expected : {"A U1 = 0", "A U1 > 1", "!(A U1 = 1)", "A U1 = 1", "T"}) {
    CHECK_MESSAGE(std::find(names.begin(), names.end(), expected) != names.end(), expected);
  }
  CHECK(layer.emitted.size() == 5);
  CHECK(pool.size() == 7);
}

TEST_CASE("constant targets emit only Top") {
  const auto lg = example_graph();
  const GraphView view{&lg.graph, &lg.features};
  FormulaPool pool(2);
  IdtConfig c;
  const auto layer = learn_idt_layer({&view, 1}, pool, scalar_targets({0.5, 0.5, 0.5, 0.5}), c, 0);
  CHECK(layer.trees.size() == 4);
  for (const auto& t : layer.trees) CHECK(t.leaf_count() == 1);
  REQUIRE(layer.emitted.size() == 1);
  CHECK(layer.emitted[0] == Formula::top());
}

TEST_CASE("three two-leaf trees give nine leaf sets") {
  // Every node isolated; the target is U0, so every tree splits on I U0 > 0.
  std::vector<LabeledGraph> graphs(6);
  std::vector<double> y;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    graphs[i].graph = Graph(1);
    graphs[i].features = FeatureMatrix::from_rows({{static_cast<std::uint8_t>(i % 2)}});
    y.push_back(static_cast<double>(i % 2));
  }
  std::vector<GraphView> views;
  for (const auto& g : graphs) views.push_back({&g.graph, &g.features});
  IdtConfig c = single_tree_config({Modal::kId});
  c.trees_per_layer = 3;
  c.layer_depth = 1;
  FormulaPool pool(1);
  const auto layer = learn_idt_layer(views, pool, scalar_targets(y), c, 0);
  std::size_t sets = 0;
  for (std::size_t t = 0; t < 3; ++t) {
    CHECK(layer.trees[t].leaf_count() == 2);
    sets += layer.leaf_sets[t].size();
    CHECK(layer.leaf_set_columns[t] == layer.leaf_set_columns[0]);
  }
  CHECK(sets == 9);
  // Identical formulas share one pool entry; U0 itself is an atom.
  CHECK(layer.emitted.size() == 2);
}

TEST_CASE("second layer counts neighbours satisfying a first-layer formula") {
  auto lg = example_graph();
  for (std::size_t v = 0; v < 4; ++v) lg.features.set(v, 0, false);
  const GraphView view{&lg.graph, &lg.features};
  FormulaPool pool(2);
  Idt idt;
  idt.atom_count = 2;
  idt.layers.push_back(
      learn_idt_layer({&view, 1}, pool, scalar_targets({0.0, 0.2, 1.0, 0.0}), single_tree_config({Modal::kAdj}), 0));
  const auto m2 = pool.find(parse_formula("!(A U1 = 1)"));
  REQUIRE(m2.has_value());

  IdtLayer second;
  second.pool_offset = pool.size();
  DecisionTree t;
  t.nodes.resize(3);
  t.nodes[0].split = SplitTest{{Modal::kAdj, *m2, ValueKind::kCount}, Rational(1)};
  t.nodes[0].left = 1;
  t.nodes[0].right = 2;
  t.nodes[1].value = {0.0};
  t.nodes[2].value = {1.0};
  second.trees.push_back(t);
  second.leaf_sets.push_back(cluster_leaf_sets(t));
  second.leaf_set_columns.emplace_back();
  for (const auto& set : second.leaf_sets[0]) {
    bool added = false;
    second.leaf_set_columns[0].push_back(pool.intern(set.formula, &added));
    if (added) second.emitted.push_back(set.formula);
  }
  idt.layers.push_back(second);
  idt.final_tree.nodes.resize(1);
  idt.final_tree.nodes[0].label = 0;
  validate_idt(idt);

  const auto chi = second.leaf_set_columns[0][1];  // right leaf
  const auto pool_values = extend_pool(idt, lg.graph, lg.features);
  const auto col = pool_values.column(chi);
  CHECK(std::vector<std::uint8_t>(col.begin(), col.end()) == std::vector<std::uint8_t>{0, 1, 1, 0});
  CHECK(eval_nodes(lg.graph, lg.features, expand_pool_entry(idt, chi)) == NodeVector{0, 1, 1, 0});
}

TEST_CASE("single-class data gives a single-leaf final tree") {
  auto ds = small_er(3, "1 U1 > 100", 40);
  for (const auto& g : ds.graphs) REQUIRE(g.label == 0);
  IdtConfig c;
  c.layers = 1;
  const auto idt = learn_true(ds, c);
  CHECK(idt.final_tree.leaf_count() == 1);
  CHECK(idt.final_tree.nodes[0].label == 0);
  const auto small = compact(idt);
  CHECK(small.layers.empty());
  CHECK(idt_predict(small, ds.graphs[0].graph, ds.graphs[0].features) == 0);
}

TEST_CASE("compaction preserves predictions") {
  const auto ds = small_er(5, "A U1 > 1");
  IdtConfig c;
  c.seed = 9;
  const auto idt = learn_true(ds, c);
  const auto small = compact(idt);
  validate_idt(small);
  CHECK(small.pool_size() <= idt.pool_size());
  Rng rng(77);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = rng.uniform_index(12);
    const auto g = testing::random_graph(rng, n, rng.uniform01());
    auto u = testing::random_features(rng, n, 2);
    REQUIRE(idt_predict(idt, g, u) == idt_predict(small, g, u));
  }
  // Class rules over original atoms agree with the classifier.
  const auto rules = class_rules(small);
  REQUIRE(rules.size() == 2);
  for (const auto& lg : ds.graphs) {
    const auto c_pred = idt_predict(small, lg.graph, lg.features);
    CHECK(eval_graph(lg.graph, lg.features, rules[c_pred]));
  }
}

TEST_CASE("model serialization round-trips") {
  const auto ds = small_er(11, "A U1 > 0");
  const auto idt = learn_true(ds, IdtConfig{});
  const auto text = idt_to_json(idt);
  const auto back = idt_from_json(text);
  CHECK(idt_to_json(back) == text);
  for (const auto& lg : ds.graphs) CHECK(idt_predict(back, lg.graph, lg.features) == idt_predict(idt, lg.graph, lg.features));

  auto bumped = text;
  bumped.replace(bumped.find("idt/1"), 5, "idt/9");
  CHECK_THROWS_AS(idt_from_json(bumped), DataError);
  CHECK_THROWS_AS(idt_from_json("{"), DataError);
  CHECK_THROWS_AS(idt_from_json("[]"), DataError);
}

TEST_CASE("validator rejects a split on a later pool entry") {
  const auto ds = small_er(13, "A U1 > 0");
  auto idt = learn_true(ds, IdtConfig{});
  REQUIRE_NOTHROW(validate_idt(idt));
  auto broken = idt;
  auto& root = broken.layers[0].trees[0].nodes[0];
  if (!root.is_leaf()) {
    root.split->feature.source = broken.layers[0].pool_offset;
    CHECK_THROWS_AS(validate_idt(broken), InvariantError);
  }
  broken = idt;
  broken.final_tree.nodes[0].split = SplitTest{{Modal::kAdj, 0, ValueKind::kCount}, Rational(0)};
  broken.final_tree.nodes[0].left = 1;
  broken.final_tree.nodes[0].right = 1;
  CHECK_THROWS_AS(validate_idt(broken), InvariantError);
  broken = idt;
  broken.layers[0].pool_offset += 1;
  CHECK_THROWS_AS(validate_idt(broken), InvariantError);
  // A corrupted document is refused on load.
  auto text = idt_to_json(broken);
  CHECK_THROWS_AS(idt_from_json(text), DataError);
}

TEST_CASE("learning is deterministic, also with several threads") {
  const auto ds = small_er(17, "A (A U1 > 0) > 1");
  IdtConfig c;
  c.seed = 4;
  const auto a = idt_to_json(learn_true(ds, c));
  CHECK(a == idt_to_json(learn_true(ds, c)));
  c.jobs = 3;
  CHECK(a == idt_to_json(learn_true(ds, c)));
  c.jobs = 1;
  c.seed = 5;
  const auto other = learn_true(ds, c);
  CHECK(other.layers.size() == 3);
}

TEST_CASE("target shape errors") {
  const auto ds = small_er(19, "A U1 > 0", 10);
  auto targets = true_label_targets(ds.graphs, 2, 2);
  targets.layers[1].values.pop_back();
  CHECK_THROWS_AS(learn_idt(ds.graphs, 2, targets, IdtConfig{}), DataError);
  CHECK_THROWS_AS(learn_idt({}, 2, targets, IdtConfig{}), DataError);
  const auto model = learn_true(ds, IdtConfig{});
  const auto u = FeatureMatrix(ds.graphs[0].graph.node_count(), 3);
  CHECK_THROWS_AS(idt_predict(model, ds.graphs[0].graph, u), DataError);
}
