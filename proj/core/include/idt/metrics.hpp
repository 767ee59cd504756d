#pragma once

#include <cstddef>
#include <span>

namespace idt {

/// Fraction of positions where preds equals labels. Throws
/// std::invalid_argument on empty or unequal-length input.
double accuracy(std::span<const std::size_t> preds, std::span<const std::size_t> labels);

/// Unweighted mean over classes 0..num_classes-1 of per-class F1; a class
/// with precision + recall = 0 scores 0.
double macro_f1(std::span<const std::size_t> preds, std::span<const std::size_t> labels, std::size_t num_classes);

/// Fraction of positions where the model agrees with the GNN.
double fidelity(std::span<const std::size_t> model_preds, std::span<const std::size_t> gnn_preds);

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // population standard deviation
};

MeanStd mean_std(std::span<const double> values);

}  // namespace idt
