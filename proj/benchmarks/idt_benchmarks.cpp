#include <benchmark/benchmark.h>

#include "generators.hpp"
#include "idt/decision_tree.hpp"
#include "idt/feature_table.hpp"
#include "idt/idt.hpp"
#include "idt/semantics.hpp"
#include "idt/synth.hpp"
#include "idt/syntax.hpp"

namespace {

using namespace idt;

void BM_EvalNodes(benchmark::State& state) {
  Rng rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = testing::random_graph(rng, n, 0.1);
  const auto u = testing::random_features(rng, n, 2);
  const auto f = parse_formula("1(A(A U0 > 6) > 0.5) > 0.5 & I+A(!(A U1 = 1)) > 2");
  for (auto _ : state) benchmark::DoNotOptimize(eval_nodes(g, u, f));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_EvalNodes)->Arg(16)->Arg(128)->Arg(1024);

void BM_FitTree(benchmark::State& state) {
  const auto ds = gen_er_dataset(static_cast<std::size_t>(state.range(0)), 13, 0.5, parse_formula("A U1 > 2"), 3);
  std::vector<GraphView> views;
  for (const auto& lg : ds.graphs) views.push_back({&lg.graph, &lg.features});
  const Modal modals[] = {Modal::kId, Modal::kAdj, Modal::kIdPlusAdj};
  auto table = FeatureTable::build(views, 2, modals, false);
  table.set_targets(true_label_targets(ds.graphs, 2, 1).layers[0]);
  FitOptions o;
  o.max_depth = 2;
  for (auto _ : state) benchmark::DoNotOptimize(fit_tree(table, o));
}
BENCHMARK(BM_FitTree)->Arg(100)->Arg(1000);

void BM_LearnIdt(benchmark::State& state) {
  const auto ds = gen_er_dataset(static_cast<std::size_t>(state.range(0)), 13, 0.5, parse_formula("1 U1 > 0.5"), 7);
  const auto targets = true_label_targets(ds.graphs, 2, 3);
  for (auto _ : state) benchmark::DoNotOptimize(learn_idt(ds.graphs, 2, targets, IdtConfig{}));
}
BENCHMARK(BM_LearnIdt)->Arg(200)->Arg(900)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
