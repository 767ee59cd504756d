#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "idt/activations.hpp"
#include "idt/graph.hpp"
#include "idt/idt.hpp"
#include "idt/metrics.hpp"

namespace idt {

/// Assignment of graph indices to k folds. make() sorts the indices by
/// mix64(derive_seed(seed, n, k) ^ i) (ties by index) and deals the sorted
/// order round-robin, so fold sizes differ by at most one.
struct FoldPlan {
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::vector<std::size_t> assignment;

  static FoldPlan make(std::size_t n, std::size_t k, std::uint64_t seed);
  /// Plan whose fold f is exactly test_sets[f]; the sets must partition 0..n-1.
  static FoldPlan from_test_sets(std::size_t n, const std::vector<std::vector<std::size_t>>& test_sets);

  std::vector<std::size_t> test_indices(std::size_t fold) const;
  std::vector<std::size_t> train_indices(std::size_t fold) const;
};

enum class Variant { kTrue, kGnn, kGnnTrue };

std::string_view variant_name(Variant v) noexcept;     // "IDT(True)", ...
std::string_view variant_token(Variant v) noexcept;    // "true", "gnn", "gnn+true"
std::optional<Variant> variant_from_token(std::string_view token) noexcept;
bool variant_needs_activations(Variant v) noexcept;

struct FoldResult {
  std::size_t fold = 0;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  double accuracy = 0.0;
  double macro_f1 = 0.0;
  std::optional<double> fidelity;
  std::optional<double> gnn_accuracy;
  Idt model;
  Idt compacted;
  /// Per class, the compacted classifier's rule over the original atoms.
  std::vector<std::string> rules;
};

struct VariantReport {
  Variant variant = Variant::kTrue;
  std::vector<FoldResult> folds;

  MeanStd accuracy() const;
  MeanStd macro_f1() const;
  std::optional<MeanStd> fidelity() const;
  std::optional<MeanStd> gnn_accuracy() const;
};

struct Report {
  std::string dataset;
  std::size_t graphs = 0;
  std::size_t num_classes = 0;
  std::size_t folds = 0;
  std::vector<VariantReport> variants;

  std::string to_text() const;
  std::string to_json() const;
};

struct ExperimentConfig {
  IdtConfig idt;
  /// Folds trained concurrently.
  std::size_t jobs = 1;
};

/// Training targets for one variant on the given graph indices. For GNN
/// variants `dumps` supplies X^(1..l) (and X^(l+1) for Variant::kGnn).
LayerTargets variant_targets(const Dataset& dataset, std::span<const std::size_t> indices, Variant variant,
                             const ActivationDumps* dumps, std::size_t true_layers);

/// Inductive cross-validation: for every fold, learns on the other folds only
/// and scores the held-out fold. `dumps` maps fold id to that fold's
/// activations; a single entry under key 0 serves every fold. Throws
/// DataError when a GNN variant has no dumps.
Report run_experiment(const Dataset& dataset, std::string_view name, std::span<const Variant> variants,
                      const FoldPlan& plan, const ExperimentConfig& config,
                      const std::map<std::size_t, ActivationDumps>& dumps = {});

}  // namespace idt
