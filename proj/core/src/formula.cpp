#include "idt/formula.hpp"

#include <stdexcept>

#include "idt/error.hpp"

namespace idt {

struct Formula::Node {
  Kind kind = Kind::kTop;
  Modal modal = Modal::kZero;
  std::size_t index = 0;  // atom index or count threshold
  Rational ratio;
  std::unique_ptr<Formula> fa;
  std::unique_ptr<Formula> fb;
};

Formula::Formula() : Formula(top()) {}

Formula Formula::atom(std::size_t index) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kAtom;
  n->index = index;
  return Formula(std::move(n));
}

Formula Formula::top() {
  static const std::shared_ptr<const Node> kTopNode = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::kTop;
    return n;
  }();
  return Formula(kTopNode);
}

Formula Formula::bottom() { return negate(top()); }

Formula Formula::conj(Formula lhs, Formula rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kAnd;
  n->fa = std::make_unique<Formula>(std::move(lhs));
  n->fb = std::make_unique<Formula>(std::move(rhs));
  return Formula(std::move(n));
}

Formula Formula::disj(Formula lhs, Formula rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kOr;
  n->fa = std::make_unique<Formula>(std::move(lhs));
  n->fb = std::make_unique<Formula>(std::move(rhs));
  return Formula(std::move(n));
}

Formula Formula::negate(Formula child) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kNot;
  n->fa = std::make_unique<Formula>(std::move(child));
  return Formula(std::move(n));
}

Formula Formula::count_gt(Modal modal, Formula child, std::uint64_t threshold) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kCountGt;
  n->modal = modal;
  n->index = threshold;
  n->fa = std::make_unique<Formula>(std::move(child));
  return Formula(std::move(n));
}

Formula Formula::ratio_gt(Modal modal, Formula child, Rational p) {
  if (p <= Rational(0) || p >= Rational(1)) {
    throw std::invalid_argument("relative threshold " + p.to_string() + " outside (0, 1)");
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::kRatioGt;
  n->modal = modal;
  n->ratio = p;
  n->fa = std::make_unique<Formula>(std::move(child));
  return Formula(std::move(n));
}

Formula Formula::conj_all(const std::vector<Formula>& parts) {
  if (parts.empty()) return top();
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = conj(acc, parts[i]);
  return acc;
}

Formula Formula::disj_all(const std::vector<Formula>& parts) {
  if (parts.empty()) return bottom();
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = disj(acc, parts[i]);
  return acc;
}

Formula::Kind Formula::kind() const noexcept { return node_->kind; }

bool Formula::is_bottom() const noexcept {
  return node_->kind == Kind::kNot && node_->fa->kind() == Kind::kTop;
}

std::size_t Formula::atom_index() const {
  if (kind() != Kind::kAtom) throw InvariantError("atom_index on a non-atom formula");
  return node_->index;
}

const Formula& Formula::lhs() const {
  if (kind() != Kind::kAnd && kind() != Kind::kOr) throw InvariantError("lhs on a non-binary formula");
  return *node_->fa;
}

const Formula& Formula::rhs() const {
  if (kind() != Kind::kAnd && kind() != Kind::kOr) throw InvariantError("rhs on a non-binary formula");
  return *node_->fb;
}

const Formula& Formula::child() const {
  if (kind() != Kind::kNot && !is_modal()) throw InvariantError("child on a formula without one");
  return *node_->fa;
}

Modal Formula::modal() const {
  if (!is_modal()) throw InvariantError("modal on a non-modal formula");
  return node_->modal;
}

std::uint64_t Formula::count_threshold() const {
  if (kind() != Kind::kCountGt) throw InvariantError("count_threshold on a non-count formula");
  return node_->index;
}

const Rational& Formula::ratio_threshold() const {
  if (kind() != Kind::kRatioGt) throw InvariantError("ratio_threshold on a non-ratio formula");
  return node_->ratio;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  switch (x.kind) {
    case Formula::Kind::kTop: return std::strong_ordering::equal;
    case Formula::Kind::kAtom: return x.index <=> y.index;
    case Formula::Kind::kNot: return *x.fa <=> *y.fa;
    case Formula::Kind::kAnd:
    case Formula::Kind::kOr:
      if (auto c = *x.fa <=> *y.fa; c != 0) return c;
      return *x.fb <=> *y.fb;
    case Formula::Kind::kCountGt:
      if (auto c = x.modal <=> y.modal; c != 0) return c;
      if (auto c = x.index <=> y.index; c != 0) return c;
      return *x.fa <=> *y.fa;
    case Formula::Kind::kRatioGt:
      if (auto c = x.modal <=> y.modal; c != 0) return c;
      if (auto c = x.ratio <=> y.ratio; c != 0) return c;
      return *x.fa <=> *y.fa;
  }
  return std::strong_ordering::equal;
}

bool operator==(const Formula& a, const Formula& b) noexcept { return (a <=> b) == 0; }

std::size_t formula_depth(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::kAtom:
    case Formula::Kind::kTop: return 0;
    case Formula::Kind::kNot: return formula_depth(f.child());
    case Formula::Kind::kAnd:
    case Formula::Kind::kOr: return std::max(formula_depth(f.lhs()), formula_depth(f.rhs()));
    case Formula::Kind::kCountGt:
    case Formula::Kind::kRatioGt: return 1 + formula_depth(f.child());
  }
  return 0;
}

std::size_t atom_bound(const Formula& f) {
  const auto atoms = atoms_of(f);
  return atoms.empty() ? 0 : *atoms.rbegin() + 1;
}

namespace {

void collect_atoms(const Formula& f, std::set<std::size_t>& out) {
  switch (f.kind()) {
    case Formula::Kind::kAtom: out.insert(f.atom_index()); break;
    case Formula::Kind::kTop: break;
    case Formula::Kind::kAnd:
    case Formula::Kind::kOr:
      collect_atoms(f.lhs(), out);
      collect_atoms(f.rhs(), out);
      break;
    default: collect_atoms(f.child(), out); break;
  }
}

template <class Leaf>
Formula rebuild(const Formula& f, const Leaf& on_atom) {
  switch (f.kind()) {
    case Formula::Kind::kAtom: return on_atom(f.atom_index());
    case Formula::Kind::kTop: return f;
    case Formula::Kind::kAnd: return Formula::conj(rebuild(f.lhs(), on_atom), rebuild(f.rhs(), on_atom));
    case Formula::Kind::kOr: return Formula::disj(rebuild(f.lhs(), on_atom), rebuild(f.rhs(), on_atom));
    case Formula::Kind::kNot: return Formula::negate(rebuild(f.child(), on_atom));
    case Formula::Kind::kCountGt:
      return Formula::count_gt(f.modal(), rebuild(f.child(), on_atom), f.count_threshold());
    case Formula::Kind::kRatioGt:
      return Formula::ratio_gt(f.modal(), rebuild(f.child(), on_atom), f.ratio_threshold());
  }
  return f;
}

}  // namespace

std::set<std::size_t> atoms_of(const Formula& f) {
  std::set<std::size_t> out;
  collect_atoms(f, out);
  return out;
}

Formula substitute_atoms(const Formula& f, const std::vector<Formula>& replacement) {
  return rebuild(f, [&](std::size_t j) { return j < replacement.size() ? replacement[j] : Formula::atom(j); });
}

Formula remap_atoms(const Formula& f, const std::vector<std::size_t>& map) {
  return rebuild(f, [&](std::size_t j) {
    if (j >= map.size()) throw InvariantError("atom " + std::to_string(j) + " has no remapping");
    return Formula::atom(map[j]);
  });
}

std::size_t formula_size(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::kAtom:
    case Formula::Kind::kTop: return 1;
    case Formula::Kind::kAnd:
    case Formula::Kind::kOr: return 1 + formula_size(f.lhs()) + formula_size(f.rhs());
    default: return 1 + formula_size(f.child());
  }
}

}  // namespace idt
