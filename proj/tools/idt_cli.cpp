// idt: generate datasets, distill iterated decision trees, check and compile
// formulas, and render learned models.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "idt/activations.hpp"
#include "idt/compile.hpp"
#include "idt/error.hpp"
#include "idt/experiment.hpp"
#include "idt/explain.hpp"
#include "idt/idt_io.hpp"
#include "idt/semantics.hpp"
#include "idt/synth.hpp"
#include "idt/syntax.hpp"
#include "idt/tu_format.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitInternal = 4;
constexpr const char* kVersion = "1.0.0";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw idt::DataError("cannot write " + path.string());
  out << text;
}

// --- gen-data ---------------------------------------------------------------

struct GenOptions {
  std::string kind;
  std::size_t count = 1000;
  std::size_t n = 13;
  double p = 0.5;
  std::string formula = "1 U1 > 0.5";
  std::uint64_t seed = 0;
  std::size_t base_nodes = 40;
  std::string out;
  std::string name;
};

int run_gen_data(const GenOptions& o) {
  idt::Dataset ds;
  json params;
  if (o.kind == "er") {
    const auto f = idt::parse_formula(o.formula);
    ds = idt::gen_er_dataset(o.count, o.n, o.p, f, o.seed);
    params = {{"count", o.count}, {"n", o.n}, {"p", o.p}, {"formula", idt::render_formula(f)}};
  } else {
    idt::BaMultiShapesOptions opts;
    opts.base_nodes = o.base_nodes;
    ds = idt::gen_bamultishapes(o.count, o.seed, opts);
    params = {{"count", o.count}, {"base_nodes", o.base_nodes}, {"attach_edges", 1}, {"shapes", {"wheel", "house", "grid"}}};
  }
  const std::string name = o.name.empty() ? (o.kind == "er" ? "ER" : "BAMultiShapes") : o.name;
  fs::create_directories(o.out);
  idt::write_tu_dataset(ds, o.out, name);
  std::size_t positives = 0;
  for (const auto& g : ds.graphs) positives += g.label == 1;
  const json manifest = {{"tool", "idt"},      {"version", kVersion}, {"generator", o.kind},
                         {"name", name},       {"seed", o.seed},      {"parameters", params},
                         {"graphs", ds.size()}, {"class_1_graphs", positives}};
  write_text(fs::path(o.out) / "manifest.json", manifest.dump(2) + "\n");
  std::cout << "wrote " << ds.size() << " graphs (" << positives << " of class 1) to " << o.out << "\n";
  return 0;
}

// --- distill ----------------------------------------------------------------

struct DistillOptions {
  std::string dataset;
  std::string variant = "true";
  std::string final_target;
  std::string activations;
  std::size_t folds = 10;
  std::uint64_t seed = 0;
  std::string out;
  std::size_t jobs = 1;
  idt::IdtConfig idt;
  std::string layer_modals;
  std::optional<std::size_t> final_max_depth;
};

int run_distill(DistillOptions o) {
  auto variant = idt::variant_from_token(o.variant);
  if (!variant) throw UsageError("unknown variant '" + o.variant + "' (expected true, gnn, or gnn+true)");
  if (!o.final_target.empty()) {
    if (o.final_target != "gnn" && o.final_target != "true") throw UsageError("--final-target must be gnn or true");
    if (*variant == idt::Variant::kTrue && o.final_target == "gnn") {
      throw UsageError("--final-target gnn needs a GNN variant and --activations");
    }
    if (*variant == idt::Variant::kGnn && o.final_target == "true") variant = idt::Variant::kGnnTrue;
    if (*variant == idt::Variant::kGnnTrue && o.final_target == "gnn") variant = idt::Variant::kGnn;
  }
  if (idt::variant_needs_activations(*variant) && o.activations.empty()) {
    throw UsageError(std::string(idt::variant_name(*variant)) + " needs --activations");
  }
  if (!o.layer_modals.empty()) {
    o.idt.layer_modals.clear();
    std::string token;
    std::istringstream in(o.layer_modals);
    while (std::getline(in, token, ',')) {
      const auto m = idt::modal_from_token(token);
      if (!m) throw UsageError("unknown modal parameter '" + token + "'");
      o.idt.layer_modals.push_back(*m);
    }
  }
  o.idt.final_max_depth = o.final_max_depth;
  o.idt.seed = o.seed;
  o.idt.jobs = 1;

  const idt::Dataset ds = idt::load_tu_dataset(o.dataset);
  std::map<std::size_t, idt::ActivationDumps> dumps;
  idt::FoldPlan plan;
  if (!o.activations.empty()) {
    for (const auto& [fold, path] : idt::activation_files(o.activations)) dumps.emplace(fold, idt::load_activations(path, ds));
  }
  // Dumps that record their held-out graphs define the folds, so the GNN and
  // the distilled model see the same splits.
  std::vector<std::vector<std::size_t>> test_sets;
  for (const auto& [fold, d] : dumps) {
    if (!d.test_indices) break;
    if (fold != test_sets.size()) throw idt::DataError("activation folds must be numbered 0..k-1");
    test_sets.push_back(*d.test_indices);
  }
  if (!dumps.empty() && test_sets.size() == dumps.size() && dumps.size() > 1) {
    plan = idt::FoldPlan::from_test_sets(ds.size(), test_sets);
    plan.seed = o.seed;
  } else {
    plan = idt::FoldPlan::make(ds.size(), o.folds, o.seed);
  }
  if (!idt::variant_needs_activations(*variant)) dumps.clear();
  if (o.idt.layers == 0 && dumps.empty()) throw UsageError("--layers must be positive");
  if (!dumps.empty()) o.idt.layers = dumps.begin()->second.layer_count;

  idt::ExperimentConfig cfg;
  cfg.idt = o.idt;
  cfg.jobs = o.jobs;
  const idt::Variant variants[] = {*variant};
  const std::string name = fs::path(o.dataset).lexically_normal().filename().string().empty()
                               ? fs::path(o.dataset).lexically_normal().parent_path().filename().string()
                               : fs::path(o.dataset).lexically_normal().filename().string();
  const idt::Report report = idt::run_experiment(ds, name, variants, plan, cfg, dumps);
  std::cout << report.to_text();

  if (!o.out.empty()) {
    const fs::path out(o.out);
    fs::create_directories(out);
    write_text(out / "report.txt", report.to_text());
    write_text(out / "report.json", report.to_json());
    std::string rules;
    for (const auto& f : report.variants.front().folds) {
      idt::save_idt(f.model, out / ("fold_" + std::to_string(f.fold) + ".idt.json"));
      idt::save_idt(f.compacted, out / ("fold_" + std::to_string(f.fold) + ".compact.idt.json"));
      rules += "fold " + std::to_string(f.fold) + "\n";
      for (std::size_t c = 0; c < f.rules.size(); ++c) rules += "  class " + std::to_string(c) + ": " + f.rules[c] + "\n";
    }
    write_text(out / "rules.txt", rules);
    json modals = json::array();
    for (auto m : o.idt.layer_modals) modals.push_back(idt::modal_token(m));
    const json manifest = {{"tool", "idt"},
                           {"version", kVersion},
                           {"dataset", o.dataset},
                           {"variant", idt::variant_token(*variant)},
                           {"activations", o.activations},
                           {"folds", plan.k},
                           {"seed", o.seed},
                           {"layers", o.idt.layers},
                           {"trees_per_layer", o.idt.trees_per_layer},
                           {"layer_depth", o.idt.layer_depth},
                           {"feature_rate", o.idt.feature_rate},
                           {"ccp_alpha", o.idt.ccp_alpha},
                           {"final_min_rows_leaf", o.idt.final_min_rows_leaf},
                           {"layer_modals", modals}};
    write_text(out / "manifest.json", manifest.dump(2) + "\n");
  }
  return 0;
}

// --- check ------------------------------------------------------------------

int run_check(const std::string& dataset, const std::string& formula, bool nodes) {
  const auto f = idt::parse_formula(formula);
  const idt::Dataset ds = idt::load_tu_dataset(dataset);
  std::size_t satisfied = 0;
  std::size_t agree = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto& lg = ds.graphs[i];
    const auto v = idt::eval_nodes(lg.graph, lg.features, f);
    bool all = true;
    for (auto b : v) all = all && b;
    satisfied += all;
    agree += (all ? 1U : 0U) == lg.label;
    std::cout << "graph " << i << ": " << (all ? "satisfied" : "not satisfied") << ", label " << lg.label;
    if (nodes) {
      std::cout << ", nodes ";
      for (auto b : v) std::cout << static_cast<int>(b);
    }
    std::cout << '\n';
  }
  std::cout << "satisfied: " << satisfied << " of " << ds.size() << " graphs\n";
  std::cout << "agreement with labels (satisfied = class 1): " << agree << " of " << ds.size() << "\n";
  return 0;
}

// --- compile ----------------------------------------------------------------

int run_compile(const std::string& formula, std::size_t atoms, const std::string& out, const std::string& verify) {
  const auto f = idt::parse_formula(formula);
  const idt::Idt model = idt::compile_formula_to_idt(f, atoms);
  std::cout << "compiled " << idt::render_formula(f) << " into " << model.layers.size() << " layer(s), "
            << model.pool_size() - model.atom_count << " pool formula(s)\n";
  if (!out.empty()) idt::save_idt(model, out);
  if (verify.empty()) return 0;
  const idt::Dataset ds = idt::load_tu_dataset(verify);
  std::size_t graph_agree = 0;
  std::size_t node_agree = 0;
  std::size_t node_total = 0;
  for (const auto& lg : ds.graphs) {
    if (lg.features.cols() < model.atom_count) throw idt::DataError("dataset has fewer node features than the formula uses");
    idt::FeatureMatrix u(lg.graph.node_count(), 0);
    for (std::size_t j = 0; j < model.atom_count; ++j) {
      const auto col = lg.features.column(j);
      u.append_column({col.begin(), col.end()});
    }
    const bool expect = idt::eval_graph(lg.graph, u, f);
    graph_agree += (idt::idt_predict(model, lg.graph, u) == 1) == expect;
    const auto want = idt::eval_nodes(lg.graph, u, f);
    const auto got = idt::idt_node_predict(model, lg.graph, u);
    for (std::size_t v = 0; v < want.size(); ++v) node_agree += want[v] == got[v];
    node_total += want.size();
  }
  const double pct = ds.size() == 0 ? 100.0 : 100.0 * static_cast<double>(graph_agree) / static_cast<double>(ds.size());
  std::printf("agreement: %.2f%% of graphs (%zu/%zu), %zu/%zu nodes\n", pct, graph_agree, ds.size(), node_agree,
              node_total);
  return graph_agree == ds.size() && node_agree == node_total ? 0 : 1;
}

// --- explain ----------------------------------------------------------------

int run_explain(const std::string& path, const std::string& dot, bool unicode, bool raw) {
  idt::Idt model = idt::load_idt(path);
  if (!raw) model = idt::compact(model);
  std::cout << idt::explain_text(model, unicode ? idt::Notation::kUnicode : idt::Notation::kAscii);
  if (!dot.empty()) write_text(dot, idt::explain_dot(model));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Iterated decision trees for graph classification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen-data", "Generate a synthetic dataset in TU format");
  gen_cmd->add_option("kind", gen.kind, "er or bamulti")->required()->check(CLI::IsMember({"er", "bamulti"}));
  gen_cmd->add_option("--count", gen.count, "Number of graphs")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--n", gen.n, "Nodes per Erdos-Renyi graph")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--p", gen.p, "Edge probability")->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--formula", gen.formula, "Label formula for er");
  gen_cmd->add_option("--base-nodes", gen.base_nodes, "Barabasi-Albert base size for bamulti")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen.seed, "Random seed");
  gen_cmd->add_option("--out", gen.out, "Output directory")->required();
  gen_cmd->add_option("--name", gen.name, "Dataset file prefix");

  DistillOptions dist;
  auto* dist_cmd = app.add_subcommand("distill", "Cross-validated IDT learning");
  dist_cmd->add_option("--dataset", dist.dataset, "TU dataset directory")->required();
  dist_cmd->add_option("--variant", dist.variant, "true, gnn, or gnn+true");
  dist_cmd->add_option("--final-target", dist.final_target, "gnn or true");
  dist_cmd->add_option("--activations", dist.activations, "idtact/1 file or directory of fold_<k>.act");
  dist_cmd->add_option("--folds", dist.folds, "Number of folds")->check(CLI::PositiveNumber);
  dist_cmd->add_option("--seed", dist.seed, "Random seed");
  dist_cmd->add_option("--out", dist.out, "Directory for models and reports");
  dist_cmd->add_option("--jobs", dist.jobs, "Folds trained in parallel")->check(CLI::PositiveNumber);
  dist_cmd->add_option("--layers", dist.idt.layers, "Intermediate layers without activations");
  dist_cmd->add_option("--trees-per-layer", dist.idt.trees_per_layer)->check(CLI::PositiveNumber);
  dist_cmd->add_option("--layer-depth", dist.idt.layer_depth)->check(CLI::PositiveNumber);
  dist_cmd->add_option("--feature-rate", dist.idt.feature_rate)->check(CLI::Range(0.0, 1.0));
  dist_cmd->add_option("--ccp-alpha", dist.idt.ccp_alpha)->check(CLI::NonNegativeNumber);
  dist_cmd->add_option("--final-min-rows-leaf", dist.idt.final_min_rows_leaf)->check(CLI::PositiveNumber);
  dist_cmd->add_option("--final-max-depth", dist.final_max_depth);
  dist_cmd->add_option("--layer-modals", dist.layer_modals, "Comma-separated modal parameters, e.g. I,A,I+A");

  std::string check_dataset, check_formula;
  bool check_nodes = false;
  auto* check_cmd = app.add_subcommand("check", "Evaluate a formula on every graph of a dataset");
  check_cmd->add_option("--dataset", check_dataset, "TU dataset directory")->required();
  check_cmd->add_option("--formula", check_formula, "Formula text")->required();
  check_cmd->add_flag("--nodes", check_nodes, "Print per-node truth values");

  std::string compile_formula, compile_out, compile_verify;
  std::size_t compile_atoms = 0;
  auto* compile_cmd = app.add_subcommand("compile", "Build an IDT equivalent to a formula");
  compile_cmd->add_option("--formula", compile_formula, "Formula text")->required();
  compile_cmd->add_option("--atoms", compile_atoms, "Number of node features the model accepts");
  compile_cmd->add_option("--out", compile_out, "Model output file");
  compile_cmd->add_option("--verify", compile_verify, "TU dataset to check agreement on");

  std::string explain_path, explain_dot_path;
  bool explain_unicode = false;
  bool explain_raw = false;
  auto* explain_cmd = app.add_subcommand("explain", "Render a model as text trees");
  explain_cmd->add_option("--idt", explain_path, "Model file")->required();
  explain_cmd->add_option("--dot", explain_dot_path, "Also write a Graphviz file");
  explain_cmd->add_flag("--unicode", explain_unicode, "Use unicode connectives");
  explain_cmd->add_flag("--raw", explain_raw, "Skip compaction");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen_cmd) return run_gen_data(gen);
    if (*dist_cmd) return run_distill(dist);
    if (*check_cmd) return run_check(check_dataset, check_formula, check_nodes);
    if (*compile_cmd) return run_compile(compile_formula, compile_atoms, compile_out, compile_verify);
    if (*explain_cmd) return run_explain(explain_path, explain_dot_path, explain_unicode, explain_raw);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const idt::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const idt::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const idt::InvariantError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
