#include "idt/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace idt {

namespace {

void check_lengths(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("prediction and reference lengths differ");
  if (a == 0) throw std::invalid_argument("no predictions");
}

}  // namespace

double accuracy(std::span<const std::size_t> preds, std::span<const std::size_t> labels) {
  check_lengths(preds.size(), labels.size());
  std::size_t hits = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) hits += preds[i] == labels[i];
  return static_cast<double>(hits) / static_cast<double>(preds.size());
}

double macro_f1(std::span<const std::size_t> preds, std::span<const std::size_t> labels, std::size_t num_classes) {
  check_lengths(preds.size(), labels.size());
  if (num_classes == 0) throw std::invalid_argument("num_classes must be positive");
  std::vector<double> tp(num_classes), fp(num_classes), fn(num_classes);
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (preds[i] >= num_classes || labels[i] >= num_classes) throw std::invalid_argument("class index out of range");
    if (preds[i] == labels[i]) {
      tp[preds[i]] += 1;
    } else {
      fp[preds[i]] += 1;
      fn[labels[i]] += 1;
    }
  }
  double total = 0.0;
  for (std::size_t c = 0; c < num_classes; ++c) {
    // F1 = 2PR / (P + R) = 2tp / (2tp + fp + fn); zero when tp = 0.
    if (tp[c] > 0) total += 2 * tp[c] / (2 * tp[c] + fp[c] + fn[c]);
  }
  return total / static_cast<double>(num_classes);
}

double fidelity(std::span<const std::size_t> model_preds, std::span<const std::size_t> gnn_preds) {
  return accuracy(model_preds, gnn_preds);
}

MeanStd mean_std(std::span<const double> values) {
  MeanStd out;
  if (values.empty()) return out;
  for (double v : values) out.mean += v;
  out.mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - out.mean) * (v - out.mean);
  out.std = std::sqrt(var / static_cast<double>(values.size()));
  return out;
}

}  // namespace idt
