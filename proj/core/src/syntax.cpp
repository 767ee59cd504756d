#include "idt/syntax.hpp"

#include <cctype>
#include <optional>
#include <stdexcept>

#include "idt/error.hpp"

namespace idt {

namespace {

enum class Cmp { kGt, kLt, kEq, kGe, kLe };

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula parse() {
    Formula f = parse_or();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(pos_, message); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    skip_ws();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (accept("|") || accept("∨")) f = Formula::disj(f, parse_and());
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (accept("&") || accept("∧")) f = Formula::conj(f, parse_unary());
    return f;
  }

  Formula parse_unary() {
    if (accept("!") || accept("¬")) return Formula::negate(parse_unary());
    if (accept("(")) {
      Formula f = parse_or();
      expect(")");
      return f;
    }
    const char c = peek();
    if (c == 'U' || c == 'T') return parse_atom();
    if (c == '0' || c == '1' || c == 'I' || c == 'A') return parse_modal();
    if (c == '\0') fail("unexpected end of input");
    fail(std::string("unexpected character '") + c + "'");
  }

  Formula parse_atom() {
    if (accept("T")) return Formula::top();
    expect("U");
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an atom index after 'U'");
    if (pos_ - start > 9) {
      pos_ = start;
      fail("atom index too large");
    }
    return Formula::atom(std::stoul(std::string(text_.substr(start, pos_ - start))));
  }

  Modal parse_modal_parameter() {
    skip_ws();
    const char c = text_[pos_++];
    if (c == '0') return Modal::kZero;
    if (c == 'A') return Modal::kAdj;
    if (c == 'I') return accept("+") ? (expect("A"), Modal::kIdPlusAdj) : Modal::kId;
    // c == '1'
    if (!accept("-")) return Modal::kOne;
    if (accept("A")) return Modal::kOneMinusAdj;
    expect("I");
    if (accept("-")) {
      expect("A");
      return Modal::kOneMinusIdMinusAdj;
    }
    return Modal::kOneMinusId;
  }

  Formula parse_modal() {
    const Modal modal = parse_modal_parameter();
    Formula child;
    if (accept("(")) {
      child = parse_or();
      expect(")");
    } else {
      const char c = peek();
      if (c != 'U' && c != 'T') fail("expected an atom or '(' after a modal parameter");
      child = parse_atom();
    }
    skip_ws();
    const std::size_t cmp_pos = pos_;
    Cmp cmp;
    if (accept(">=")) {
      cmp = Cmp::kGe;
    } else if (accept("<=")) {
      cmp = Cmp::kLe;
    } else if (accept(">")) {
      cmp = Cmp::kGt;
    } else if (accept("<")) {
      cmp = Cmp::kLt;
    } else if (accept("=")) {
      cmp = Cmp::kEq;
    } else {
      fail("expected a comparison after modal test");
    }
    skip_ws();
    const std::size_t num_pos = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' || text_[pos_] == '/')) {
      ++pos_;
    }
    const std::string_view number = text_.substr(num_pos, pos_ - num_pos);
    if (number.empty()) {
      pos_ = num_pos;
      fail("expected a threshold");
    }
    Rational value;
    try {
      value = Rational::parse(number);
    } catch (const std::exception&) {
      pos_ = num_pos;
      fail("malformed threshold '" + std::string(number) + "'");
    }
    const bool relative = number.find_first_of("./") != std::string_view::npos;
    if (relative) {
      if (value <= Rational(0) || value >= Rational(1)) {
        pos_ = num_pos;
        fail("relative threshold " + std::string(number) + " must lie strictly between 0 and 1");
      }
      return desugar_ratio(modal, child, cmp, value);
    }
    (void)cmp_pos;
    return desugar_count(modal, child, cmp, static_cast<std::uint64_t>(value.num()));
  }

  static Formula desugar_count(Modal m, const Formula& f, Cmp cmp, std::uint64_t n) {
    switch (cmp) {
      case Cmp::kGt: return Formula::count_gt(m, f, n);
      case Cmp::kLe: return Formula::negate(Formula::count_gt(m, f, n));
      case Cmp::kLt: return n == 0 ? Formula::bottom() : Formula::negate(Formula::count_gt(m, f, n - 1));
      case Cmp::kGe: return n == 0 ? Formula::top() : Formula::count_gt(m, f, n - 1);
      case Cmp::kEq:
        if (n == 0) return Formula::negate(Formula::count_gt(m, f, 0));
        return Formula::conj(Formula::count_gt(m, f, n - 1), Formula::negate(Formula::count_gt(m, f, n)));
    }
    return f;
  }

  static Formula desugar_ratio(Modal m, const Formula& f, Cmp cmp, const Rational& p) {
    const Rational q(p.den() - p.num(), p.den());
    switch (cmp) {
      case Cmp::kGt: return Formula::ratio_gt(m, f, p);
      case Cmp::kLe: return Formula::negate(Formula::ratio_gt(m, f, p));
      case Cmp::kLt: return Formula::ratio_gt(m, Formula::negate(f), q);
      case Cmp::kGe: return Formula::negate(Formula::ratio_gt(m, Formula::negate(f), q));
      case Cmp::kEq:
        return Formula::conj(Formula::negate(Formula::ratio_gt(m, f, p)),
                             Formula::negate(Formula::ratio_gt(m, Formula::negate(f), q)));
    }
    return f;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

struct Symbols {
  std::string_view negation;
  std::string_view conjunction;
  std::string_view disjunction;
};

constexpr Symbols kAscii{"!", " & ", " | "};
constexpr Symbols kUnicode{"¬", " ∧ ", " ∨ "};

/// (S f > n-1) & !(S f > n), returned as (modal, child, n).
struct EqualityShape {
  Modal modal;
  const Formula* child;
  std::uint64_t n;
};

std::optional<EqualityShape> match_equality(const Formula& f) {
  if (f.kind() != Formula::Kind::kAnd) return std::nullopt;
  const Formula& a = f.lhs();
  const Formula& b = f.rhs();
  if (a.kind() != Formula::Kind::kCountGt || b.kind() != Formula::Kind::kNot) return std::nullopt;
  const Formula& bc = b.child();
  if (bc.kind() != Formula::Kind::kCountGt) return std::nullopt;
  if (a.modal() != bc.modal() || !(a.child() == bc.child())) return std::nullopt;
  if (bc.count_threshold() != a.count_threshold() + 1) return std::nullopt;
  return EqualityShape{a.modal(), &a.child(), bc.count_threshold()};
}

class Printer {
 public:
  explicit Printer(const Symbols& symbols) : sym_(symbols) {}

  // Precedence of the context: 0 top level, 1 operand of '|', 2 operand of '&', 3 operand of '!'.
  std::string print(const Formula& f, int context) const {
    using K = Formula::Kind;
    switch (f.kind()) {
      case K::kAtom: return "U" + std::to_string(f.atom_index());
      case K::kTop: return "T";
      case K::kCountGt:
      case K::kRatioGt: return wrap_test(modal_test(f), context);
      case K::kNot: {
        const Formula& c = f.child();
        if (c.kind() == K::kCountGt) {
          const std::uint64_t n = c.count_threshold();
          const std::string head = modal_head(c.modal(), c.child());
          return wrap_test(n == 0 ? head + " = 0" : head + " < " + std::to_string(n + 1), context);
        }
        if (c.kind() == K::kRatioGt) {
          return wrap_test(modal_head(c.modal(), c.child()) + " <= " + c.ratio_threshold().to_string(), context);
        }
        return std::string(sym_.negation) + print(c, 3);
      }
      case K::kAnd: {
        if (auto eq = match_equality(f)) {
          return wrap_test(modal_head(eq->modal, *eq->child) + " = " + std::to_string(eq->n), context);
        }
        std::string s = print(f.lhs(), 2) + std::string(sym_.conjunction) + print_right(f.rhs(), K::kAnd, 2);
        return context > 2 ? "(" + s + ")" : s;
      }
      case K::kOr: {
        std::string s = print(f.lhs(), 1) + std::string(sym_.disjunction) + print_right(f.rhs(), K::kOr, 1);
        return context > 1 ? "(" + s + ")" : s;
      }
    }
    return {};
  }

 private:
  // Right operands of the same connective need parentheses to keep the tree shape.
  std::string print_right(const Formula& f, Formula::Kind parent, int context) const {
    if (f.kind() == parent && !match_equality(f)) return "(" + print(f, context) + ")";
    return print(f, context);
  }

  static std::string wrap_test(std::string s, int context) { return context > 0 ? "(" + s + ")" : s; }

  std::string modal_head(Modal m, const Formula& child) const {
    std::string head(modal_token(m));
    if (child.kind() == Formula::Kind::kAtom || child.kind() == Formula::Kind::kTop) {
      return head + " " + print(child, 0);
    }
    return head + "(" + print(child, 0) + ")";
  }

  std::string modal_test(const Formula& f) const {
    const std::string head = modal_head(f.modal(), f.child());
    if (f.kind() == Formula::Kind::kCountGt) return head + " > " + std::to_string(f.count_threshold());
    return head + " > " + f.ratio_threshold().to_string();
  }

  const Symbols& sym_;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

std::string render_formula(const Formula& f, Notation notation) {
  return Printer(notation == Notation::kUnicode ? kUnicode : kAscii).print(f, 0);
}

}  // namespace idt
