#include <set>
#include <string>

#include "idt/error.hpp"
#include "idt/semantics.hpp"

namespace idt {

namespace {

// eps_S(v) spelled out set by set.
std::set<std::size_t> neighborhood(const Graph& g, Modal m, std::size_t v) {
  std::set<std::size_t> all;
  std::set<std::size_t> nbrs;
  for (std::size_t w = 0; w < g.node_count(); ++w) {
    all.insert(w);
    if (g.adjacent(v, w)) nbrs.insert(w);
  }
  std::set<std::size_t> out;
  switch (m) {
    case Modal::kZero: break;
    case Modal::kOne: out = all; break;
    case Modal::kId: out = {v}; break;
    case Modal::kAdj: out = nbrs; break;
    case Modal::kOneMinusId:
      out = all;
      out.erase(v);
      break;
    case Modal::kOneMinusAdj:
      for (auto w : all) {
        if (!nbrs.contains(w)) out.insert(w);
      }
      break;
    case Modal::kIdPlusAdj:
      out = nbrs;
      out.insert(v);
      break;
    case Modal::kOneMinusIdMinusAdj:
      for (auto w : all) {
        if (w != v && !nbrs.contains(w)) out.insert(w);
      }
      break;
  }
  return out;
}

bool satisfies(const Graph& g, const FeatureMatrix& u, const Formula& f, std::size_t v) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::kTop: return true;
    case K::kAtom: return u.at(v, f.atom_index()) == 1;
    case K::kNot: return !satisfies(g, u, f.child(), v);
    case K::kAnd: return satisfies(g, u, f.lhs(), v) && satisfies(g, u, f.rhs(), v);
    case K::kOr: return satisfies(g, u, f.lhs(), v) || satisfies(g, u, f.rhs(), v);
    case K::kCountGt:
    case K::kRatioGt: {
      const auto eps = neighborhood(g, f.modal(), v);
      std::uint64_t hits = 0;
      for (auto w : eps) {
        if (satisfies(g, u, f.child(), w)) ++hits;
      }
      if (f.kind() == K::kCountGt) return hits > f.count_threshold();
      // "more than p * |eps| vertices", compared as hits * den > num * |eps|.
      const Rational& p = f.ratio_threshold();
      if (eps.empty()) return false;
      return static_cast<double>(hits) * static_cast<double>(p.den()) >
             static_cast<double>(p.num()) * static_cast<double>(eps.size());
    }
  }
  return false;
}

}  // namespace

NodeVector eval_nodes_reference(const Graph& g, const FeatureMatrix& u, const Formula& f) {
  if (u.rows() != g.node_count()) throw DataError("feature matrix rows do not match node count");
  if (const std::size_t bound = atom_bound(f); bound > u.cols()) {
    throw DataError("atom U" + std::to_string(bound - 1) + " out of range");
  }
  NodeVector out(g.node_count());
  for (std::size_t v = 0; v < out.size(); ++v) out[v] = satisfies(g, u, f, v) ? 1 : 0;
  return out;
}

}  // namespace idt
