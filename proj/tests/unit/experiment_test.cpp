#include <algorithm>
#include <set>

#include "doctest.h"
#include "idt/error.hpp"
#include "idt/experiment.hpp"
#include "idt/semantics.hpp"
#include "idt/synth.hpp"
#include "idt/syntax.hpp"

using namespace idt;

namespace {

// Dumps of a "GNN" that has learned `gnn_rule` instead of the labels; every
// layer and the output are the one-hot prediction.
ActivationDumps rule_dumps(const Dataset& ds, std::size_t layers, const Formula& gnn_rule) {
  ActivationDumps d;
  d.layer_count = layers;
  d.num_classes = ds.num_classes;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto& lg = ds.graphs[i];
    GraphActivations g;
    g.nodes = lg.graph.node_count();
    g.pred = eval_graph(lg.graph, lg.features, gnn_rule) ? 1 : 0;
    for (std::size_t k = 0; k < layers; ++k) {
      g.dims.push_back(ds.num_classes);
      std::vector<float> x(g.nodes * ds.num_classes, 0.0f);
      for (std::size_t v = 0; v < g.nodes; ++v) x[v * ds.num_classes + g.pred] = 1.0f;
      g.layers.push_back(x);
    }
    g.output.assign(ds.num_classes, 0.0f);
    g.output[g.pred] = 1.0f;
    d.graphs.push_back(g);
  }
  return d;
}

}  // namespace

TEST_CASE("fold plans partition the indices") {
  const auto plan = FoldPlan::make(103, 10, 7);
  std::set<std::size_t> seen;
  for (std::size_t f = 0; f < 10; ++f) {
    const auto test = plan.test_indices(f);
    CHECK((test.size() == 10 || test.size() == 11));
    const auto train = plan.train_indices(f);
    CHECK(train.size() + test.size() == 103);
    for (auto i : test) {
      CHECK(seen.insert(i).second);
      CHECK(std::find(train.begin(), train.end(), i) == train.end());
    }
  }
  CHECK(seen.size() == 103);
  CHECK(FoldPlan::make(103, 10, 7).assignment == plan.assignment);
  CHECK(FoldPlan::make(103, 10, 8).assignment != plan.assignment);
  CHECK_THROWS(FoldPlan::make(5, 10, 0));
  CHECK_THROWS(FoldPlan::make(5, 0, 0));
}

TEST_CASE("fold plans from explicit test sets") {
  const auto plan = FoldPlan::from_test_sets(5, {{0, 3}, {1, 2, 4}});
  CHECK(plan.k == 2);
  CHECK(plan.test_indices(1) == std::vector<std::size_t>{1, 2, 4});
  CHECK_THROWS_AS(FoldPlan::from_test_sets(5, {{0, 3}, {1, 2}}), DataError);
  CHECK_THROWS_AS(FoldPlan::from_test_sets(3, {{0, 1}, {1, 2}}), DataError);
}

TEST_CASE("variant tokens") {
  for (auto v : {Variant::kTrue, Variant::kGnn, Variant::kGnnTrue}) {
    CHECK(variant_from_token(variant_token(v)) == v);
  }
  CHECK(variant_name(Variant::kGnnTrue) == "IDT(GNN+True)");
  CHECK(!variant_from_token("gcn").has_value());
  CHECK(variant_needs_activations(Variant::kGnn));
  CHECK(!variant_needs_activations(Variant::kTrue));
}

TEST_CASE("cross-validation on a small dataset") {
  const auto ds = gen_er_dataset(100, 8, 0.3, parse_formula("1 U1 > 3"), 5);
  const auto plan = FoldPlan::make(ds.size(), 5, 1);
  ExperimentConfig config;
  config.idt.layers = 1;

  const auto empty = run_experiment(ds, "er", {}, plan, config);
  CHECK(empty.variants.empty());

  const Variant variants[] = {Variant::kTrue};
  const auto report = run_experiment(ds, "er", variants, plan, config);
  REQUIRE(report.variants.size() == 1);
  const auto& folds = report.variants[0].folds;
  REQUIRE(folds.size() == 5);
  for (const auto& r : folds) {
    CHECK(r.train_size + r.test_size == 100);
    CHECK(!r.fidelity.has_value());
    CHECK(r.rules.size() == 2);
  }
  CHECK(report.variants[0].accuracy().mean >= 0.9);
  CHECK(report.to_text().find("IDT(True)") != std::string::npos);
  CHECK(report.to_json().find("\"accuracy\"") != std::string::npos);

  config.jobs = 2;
  const auto parallel = run_experiment(ds, "er", variants, plan, config);
  CHECK(parallel.to_json() == report.to_json());

  const Variant gnn[] = {Variant::kGnn};
  CHECK_THROWS_AS(run_experiment(ds, "er", gnn, plan, config), DataError);
}

TEST_CASE("distillation from activation dumps reports fidelity") {
  const auto ds = gen_er_dataset(100, 8, 0.3, parse_formula("1 U1 > 3"), 6);
  const auto plan = FoldPlan::make(ds.size(), 5, 2);
  const std::map<std::size_t, ActivationDumps> dumps = {{0, rule_dumps(ds, 2, parse_formula("1 U1 > 4"))}};
  ExperimentConfig config;
  const Variant variants[] = {Variant::kGnn, Variant::kGnnTrue};
  const auto report = run_experiment(ds, "er", variants, plan, config, dumps);
  REQUIRE(report.variants.size() == 2);
  for (const auto& vr : report.variants) {
    REQUIRE(vr.fidelity().has_value());
    CHECK(vr.gnn_accuracy()->mean < 0.95);
    for (const auto& r : vr.folds) CHECK(r.model.layers.size() == 2);
  }
  // The GNN-output variant imitates the GNN; the +True variant the labels.
  CHECK(report.variants[0].fidelity()->mean > report.variants[0].accuracy().mean);
  CHECK(report.variants[1].accuracy().mean > report.variants[1].fidelity()->mean);

  std::map<std::size_t, ActivationDumps> two = {{0, dumps.at(0)}, {1, dumps.at(0)}};
  CHECK_THROWS_AS(run_experiment(ds, "er", variants, plan, config, two), DataError);
}
