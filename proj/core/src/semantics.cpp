#include "idt/semantics.hpp"

#include <algorithm>
#include <string>

#include "idt/error.hpp"

namespace idt {

namespace {

NodeVector eval(const Graph& g, const FeatureMatrix& u, const Formula& f) {
  const std::size_t n = g.node_count();
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::kTop: return NodeVector(n, 1);
    case K::kAtom: {
      const auto col = u.column(f.atom_index());
      return NodeVector(col.begin(), col.end());
    }
    case K::kNot: {
      NodeVector x = eval(g, u, f.child());
      for (auto& b : x) b ^= 1;
      return x;
    }
    case K::kAnd: {
      NodeVector x = eval(g, u, f.lhs());
      const NodeVector y = eval(g, u, f.rhs());
      for (std::size_t i = 0; i < n; ++i) x[i] &= y[i];
      return x;
    }
    case K::kOr: {
      NodeVector x = eval(g, u, f.lhs());
      const NodeVector y = eval(g, u, f.rhs());
      for (std::size_t i = 0; i < n; ++i) x[i] |= y[i];
      return x;
    }
    case K::kCountGt: {
      const auto counts = modal_counts(g, f.modal(), eval(g, u, f.child()));
      const std::uint64_t t = f.count_threshold();
      NodeVector out(n);
      for (std::size_t i = 0; i < n; ++i) out[i] = counts[i] > t ? 1 : 0;
      return out;
    }
    case K::kRatioGt: {
      const auto counts = modal_counts(g, f.modal(), eval(g, u, f.child()));
      const auto sizes = neighborhood_sizes(g, f.modal());
      const Rational& p = f.ratio_threshold();
      NodeVector out(n);
      for (std::size_t i = 0; i < n; ++i) out[i] = p.ratio_exceeds(counts[i], sizes[i]) ? 1 : 0;
      return out;
    }
  }
  return {};
}

}  // namespace

NodeVector eval_nodes(const Graph& g, const FeatureMatrix& u, const Formula& f) {
  if (u.rows() != g.node_count()) {
    throw DataError("feature matrix has " + std::to_string(u.rows()) + " rows for a graph of " +
                    std::to_string(g.node_count()) + " nodes");
  }
  if (const std::size_t bound = atom_bound(f); bound > u.cols()) {
    throw DataError("atom U" + std::to_string(bound - 1) + " out of range: only " + std::to_string(u.cols()) +
                    " features");
  }
  return eval(g, u, f);
}

bool eval_graph(const Graph& g, const FeatureMatrix& u, const Formula& f) {
  const NodeVector x = eval_nodes(g, u, f);
  return std::all_of(x.begin(), x.end(), [](std::uint8_t b) { return b == 1; });
}

}  // namespace idt
