#include "idt/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "idt/error.hpp"
#include "idt/random.hpp"
#include "idt/syntax.hpp"
#include "json.hpp"

namespace idt {

FoldPlan FoldPlan::make(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (k == 0 || k > n) throw DataError("need 1 <= folds <= graphs");
  const std::uint64_t key = derive_seed(seed, n, k);
  std::vector<std::pair<std::uint64_t, std::size_t>> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = {mix64(key ^ i), i};
  std::sort(order.begin(), order.end());
  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.assignment.resize(n);
  for (std::size_t r = 0; r < n; ++r) plan.assignment[order[r].second] = r % k;
  return plan;
}

FoldPlan FoldPlan::from_test_sets(std::size_t n, const std::vector<std::vector<std::size_t>>& test_sets) {
  FoldPlan plan;
  plan.k = test_sets.size();
  plan.assignment.assign(n, SIZE_MAX);
  for (std::size_t f = 0; f < test_sets.size(); ++f) {
    for (auto i : test_sets[f]) {
      if (i >= n || plan.assignment[i] != SIZE_MAX) throw DataError("test sets do not partition the dataset");
      plan.assignment[i] = f;
    }
  }
  for (auto a : plan.assignment) {
    if (a == SIZE_MAX) throw DataError("test sets do not cover the dataset");
  }
  return plan;
}

std::vector<std::size_t> FoldPlan::test_indices(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] == fold) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> FoldPlan::train_indices(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] != fold) out.push_back(i);
  }
  return out;
}

std::string_view variant_name(Variant v) noexcept {
  switch (v) {
    case Variant::kTrue:
      return "IDT(True)";
    case Variant::kGnn:
      return "IDT(GNN)";
    case Variant::kGnnTrue:
      return "IDT(GNN+True)";
  }
  return "?";
}

std::string_view variant_token(Variant v) noexcept {
  switch (v) {
    case Variant::kTrue:
      return "true";
    case Variant::kGnn:
      return "gnn";
    case Variant::kGnnTrue:
      return "gnn+true";
  }
  return "?";
}

std::optional<Variant> variant_from_token(std::string_view token) noexcept {
  for (auto v : {Variant::kTrue, Variant::kGnn, Variant::kGnnTrue}) {
    if (variant_token(v) == token) return v;
  }
  return std::nullopt;
}

bool variant_needs_activations(Variant v) noexcept { return v != Variant::kTrue; }

namespace {

std::vector<double> collect(const std::vector<FoldResult>& folds, double FoldResult::*field) {
  std::vector<double> out;
  for (const auto& f : folds) out.push_back(f.*field);
  return out;
}

std::optional<MeanStd> collect_optional(const std::vector<FoldResult>& folds,
                                        std::optional<double> FoldResult::*field) {
  std::vector<double> out;
  for (const auto& f : folds) {
    if (!(f.*field)) return std::nullopt;
    out.push_back(*(f.*field));
  }
  if (out.empty()) return std::nullopt;
  return mean_std(out);
}

}  // namespace

MeanStd VariantReport::accuracy() const { return mean_std(collect(folds, &FoldResult::accuracy)); }
MeanStd VariantReport::macro_f1() const { return mean_std(collect(folds, &FoldResult::macro_f1)); }
std::optional<MeanStd> VariantReport::fidelity() const { return collect_optional(folds, &FoldResult::fidelity); }
std::optional<MeanStd> VariantReport::gnn_accuracy() const {
  return collect_optional(folds, &FoldResult::gnn_accuracy);
}

namespace {

std::string cell(const std::optional<MeanStd>& m) {
  if (!m) return "-";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f ± %.2f", m->mean, m->std);
  return buf;
}

}  // namespace

std::string Report::to_text() const {
  std::ostringstream out;
  out << "dataset " << dataset << ": " << graphs << " graphs, " << num_classes << " classes, " << folds << " folds\n";
  char line[256];
  std::snprintf(line, sizeof line, "%-15s %-13s %-13s %-13s %-13s\n", "model", "accuracy", "macro-F1", "fidelity",
                "GNN accuracy");
  out << line;
  for (const auto& v : variants) {
    // "±" is two bytes in UTF-8, so pad by hand.
    auto pad = [](std::string s) {
      std::size_t width = 0;
      for (unsigned char c : s) width += (c & 0xC0) != 0x80;
      if (width < 13) s.append(13 - width, ' ');
      return s;
    };
    out << pad(std::string(variant_name(v.variant))) << "   " << pad(cell(v.accuracy())) << ' '
        << pad(cell(v.macro_f1())) << ' ' << pad(cell(v.fidelity())) << ' ' << cell(v.gnn_accuracy()) << '\n';
  }
  for (const auto& v : variants) {
    if (v.folds.empty()) continue;
    const auto& first = v.folds.front();
    out << "\n" << variant_name(v.variant) << " compacted rules, fold " << first.fold << ":\n";
    for (std::size_t c = 0; c < first.rules.size(); ++c) out << "  class " << c << ": " << first.rules[c] << '\n';
  }
  return out.str();
}

std::string Report::to_json() const {
  using nlohmann::json;
  json doc = {{"dataset", dataset}, {"graphs", graphs}, {"num_classes", num_classes}, {"folds", folds}};
  json vs = json::array();
  for (const auto& v : variants) {
    json fs = json::array();
    for (const auto& f : v.folds) {
      json j = {{"fold", f.fold},
                {"train_size", f.train_size},
                {"test_size", f.test_size},
                {"accuracy", f.accuracy},
                {"macro_f1", f.macro_f1},
                {"rules", f.rules},
                {"layers", f.model.layers.size()},
                {"compacted_layers", f.compacted.layers.size()}};
      if (f.fidelity) j["fidelity"] = *f.fidelity;
      if (f.gnn_accuracy) j["gnn_accuracy"] = *f.gnn_accuracy;
      fs.push_back(std::move(j));
    }
    json summary = {{"accuracy", {{"mean", v.accuracy().mean}, {"std", v.accuracy().std}}},
                    {"macro_f1", {{"mean", v.macro_f1().mean}, {"std", v.macro_f1().std}}}};
    if (auto fid = v.fidelity()) summary["fidelity"] = {{"mean", fid->mean}, {"std", fid->std}};
    if (auto ga = v.gnn_accuracy()) summary["gnn_accuracy"] = {{"mean", ga->mean}, {"std", ga->std}};
    vs.push_back({{"variant", variant_token(v.variant)}, {"summary", std::move(summary)}, {"folds", std::move(fs)}});
  }
  doc["variants"] = std::move(vs);
  return doc.dump(2) + "\n";
}

LayerTargets variant_targets(const Dataset& dataset, std::span<const std::size_t> indices, Variant variant,
                             const ActivationDumps* dumps, std::size_t true_layers) {
  std::vector<LabeledGraph> graphs;
  graphs.reserve(indices.size());
  for (auto i : indices) graphs.push_back(dataset.graphs[i]);
  if (variant == Variant::kTrue) return true_label_targets(graphs, dataset.num_classes, true_layers);
  if (!dumps) throw DataError(std::string(variant_name(variant)) + " needs activation dumps");
  LayerTargets out;
  for (std::size_t k = 0; k < dumps->layer_count; ++k) {
    TargetMatrix t;
    for (auto i : indices) {
      const auto& g = dumps->graphs.at(i);
      if (t.dim == 0) t.dim = g.dims[k];
      t.values.insert(t.values.end(), g.layers[k].begin(), g.layers[k].end());
    }
    out.layers.push_back(std::move(t));
  }
  if (variant == Variant::kGnn) {
    out.final.dim = dumps->num_classes;
    for (auto i : indices) {
      const auto& o = dumps->graphs.at(i).output;
      out.final.values.insert(out.final.values.end(), o.begin(), o.end());
    }
  } else {
    out.final = one_hot_graph_targets(graphs, dataset.num_classes);
  }
  return out;
}

Report run_experiment(const Dataset& dataset, std::string_view name, std::span<const Variant> variants,
                      const FoldPlan& plan, const ExperimentConfig& config,
                      const std::map<std::size_t, ActivationDumps>& dumps) {
  Report report;
  report.dataset = std::string(name);
  report.graphs = dataset.size();
  report.num_classes = dataset.num_classes;
  report.folds = plan.k;
  if (plan.assignment.size() != dataset.size()) throw DataError("fold plan does not match the dataset size");
  for (auto v : variants) {
    if (variant_needs_activations(v) && dumps.empty()) {
      throw DataError(std::string(variant_name(v)) + " needs activation dumps");
    }
  }
  auto dumps_for = [&](std::size_t fold) -> const ActivationDumps* {
    if (dumps.empty()) return nullptr;
    if (auto it = dumps.find(fold); it != dumps.end()) return &it->second;
    if (dumps.size() == 1) return &dumps.begin()->second;
    throw DataError("no activation dump for fold " + std::to_string(fold));
  };

  for (auto v : variants) {
    VariantReport vr;
    vr.variant = v;
    vr.folds.resize(plan.k);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
      for (std::size_t f = next++; f < plan.k; f = next++) {
        try {
          const auto train = plan.train_indices(f);
          const auto test = plan.test_indices(f);
          for (auto i : train) {
            if (plan.assignment[i] == f) throw InvariantError("held-out graph in the training split");
          }
          const ActivationDumps* d = variant_needs_activations(v) ? dumps_for(f) : nullptr;
          std::vector<LabeledGraph> train_graphs;
          for (auto i : train) train_graphs.push_back(dataset.graphs[i]);
          IdtConfig cfg = config.idt;
          cfg.seed = derive_seed(config.idt.seed, f);
          FoldResult r;
          r.fold = f;
          r.train_size = train.size();
          r.test_size = test.size();
          r.model = learn_idt(train_graphs, dataset.num_classes, variant_targets(dataset, train, v, d, cfg.layers), cfg);
          r.compacted = compact(r.model);
          std::vector<std::size_t> preds, labels, gnn;
          for (auto i : test) {
            const auto& lg = dataset.graphs[i];
            preds.push_back(idt_predict(r.compacted, lg.graph, lg.features));
            labels.push_back(lg.label);
            if (d) gnn.push_back(d->graphs.at(i).pred);
          }
          r.accuracy = accuracy(preds, labels);
          r.macro_f1 = macro_f1(preds, labels, dataset.num_classes);
          if (d) {
            r.fidelity = fidelity(preds, gnn);
            r.gnn_accuracy = accuracy(gnn, labels);
          }
          for (const auto& rule : class_rules(r.compacted)) r.rules.push_back(render_formula(rule));
          vr.folds[f] = std::move(r);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    };
    const std::size_t jobs = std::clamp<std::size_t>(config.jobs, 1, std::max<std::size_t>(plan.k, 1));
    if (jobs == 1) {
      worker();
    } else {
      std::vector<std::thread> threads;
      for (std::size_t j = 0; j < jobs; ++j) threads.emplace_back(worker);
      for (auto& t : threads) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    report.variants.push_back(std::move(vr));
  }
  return report;
}

}  // namespace idt
