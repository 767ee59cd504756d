#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <vector>

#include "idt/modal.hpp"
#include "idt/rational.hpp"

namespace idt {

/// Immutable EMLC% formula. Only the core grammar is represented: atoms, top,
/// the three connectives, and the two threshold tests `S phi > n` (counting)
/// and `S phi > p` (relative, p in (0, 1)). Comparison sugar is desugared by
/// the parser and re-sugared by the printer.
///
/// Copies share structure; a default-constructed Formula is Top.
class Formula {
 public:
  enum class Kind : std::uint8_t { kAtom, kTop, kAnd, kOr, kNot, kCountGt, kRatioGt };

  Formula();

  static Formula atom(std::size_t index);
  static Formula top();
  /// Not(Top); the printer renders it as "!T".
  static Formula bottom();
  static Formula conj(Formula lhs, Formula rhs);
  static Formula disj(Formula lhs, Formula rhs);
  static Formula negate(Formula child);
  static Formula count_gt(Modal modal, Formula child, std::uint64_t n);
  /// Throws std::invalid_argument unless 0 < p < 1.
  static Formula ratio_gt(Modal modal, Formula child, Rational p);

  /// Left-nested conjunction/disjunction; empty input gives Top/bottom.
  static Formula conj_all(const std::vector<Formula>& parts);
  static Formula disj_all(const std::vector<Formula>& parts);

  Kind kind() const noexcept;
  bool is_modal() const noexcept { return kind() == Kind::kCountGt || kind() == Kind::kRatioGt; }
  bool is_bottom() const noexcept;

  std::size_t atom_index() const;
  const Formula& lhs() const;
  const Formula& rhs() const;
  /// Operand of Not, or the quantified formula of a threshold test.
  const Formula& child() const;
  Modal modal() const;
  std::uint64_t count_threshold() const;
  const Rational& ratio_threshold() const;

  /// Structural equality and a total order (used for canonical containers).
  friend bool operator==(const Formula& a, const Formula& b) noexcept;
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Maximal nesting of threshold tests; atoms and Top have depth 0.
std::size_t formula_depth(const Formula& f);

/// Largest atom index plus one (0 if the formula has no atoms).
std::size_t atom_bound(const Formula& f);

std::set<std::size_t> atoms_of(const Formula& f);

/// Replaces Atom(j) by replacement[j] for every j < replacement.size().
Formula substitute_atoms(const Formula& f, const std::vector<Formula>& replacement);

/// Applies `map` to every atom index.
Formula remap_atoms(const Formula& f, const std::vector<std::size_t>& map);

/// Number of AST nodes.
std::size_t formula_size(const Formula& f);

}  // namespace idt
