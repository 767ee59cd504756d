#include <string>

#include "doctest.h"
#include "generators.hpp"
#include "idt/error.hpp"
#include "idt/syntax.hpp"

using idt::Formula;
using idt::Modal;
using idt::parse_formula;
using idt::Rational;
using idt::render_formula;

namespace {

Formula count(Modal m, Formula f, std::uint64_t n) { return Formula::count_gt(m, std::move(f), n); }
Formula ratio(Modal m, Formula f, Rational p) { return Formula::ratio_gt(m, std::move(f), p); }
Formula u(std::size_t j) { return Formula::atom(j); }

}  // namespace

TEST_CASE("core grammar parses to the expected tree") {
  CHECK(parse_formula("U0") == u(0));
  CHECK(parse_formula("T") == Formula::top());
  CHECK(parse_formula("!T") == Formula::bottom());
  CHECK(parse_formula("U0 & U1 | U2") == Formula::disj(Formula::conj(u(0), u(1)), u(2)));
  CHECK(parse_formula("U0 & (U1 | U2)") == Formula::conj(u(0), Formula::disj(u(1), u(2))));
  CHECK(parse_formula("A U1 > 1") == count(Modal::kAdj, u(1), 1));
  CHECK(parse_formula("1-I-A(U0 & U1) > 3") == count(Modal::kOneMinusIdMinusAdj, Formula::conj(u(0), u(1)), 3));
  CHECK(parse_formula("1 U1 > 0.5") == ratio(Modal::kOne, u(1), Rational(1, 2)));
  CHECK(parse_formula("I+A U0 > 5/12") == ratio(Modal::kIdPlusAdj, u(0), Rational(5, 12)));
  CHECK(parse_formula("¬U0 ∧ U1 ∨ T") == parse_formula("!U0 & U1 | T"));
}

TEST_CASE("comparison sugar desugars to the core grammar") {
  const Formula a = u(1);
  CHECK(parse_formula("A U1 = 0") == Formula::negate(count(Modal::kAdj, a, 0)));
  CHECK(parse_formula("A U1 = 1") == Formula::conj(count(Modal::kAdj, a, 0), Formula::negate(count(Modal::kAdj, a, 1))));
  CHECK(parse_formula("A U1 < 4") == Formula::negate(count(Modal::kAdj, a, 3)));
  CHECK(parse_formula("A U1 < 0") == Formula::bottom());
  CHECK(parse_formula("A U1 <= 2") == Formula::negate(count(Modal::kAdj, a, 2)));
  CHECK(parse_formula("A U1 >= 2") == count(Modal::kAdj, a, 1));
  CHECK(parse_formula("A U1 >= 0") == Formula::top());
  CHECK(parse_formula("1 U1 <= 0.25") == Formula::negate(ratio(Modal::kOne, a, Rational(1, 4))));
  CHECK(parse_formula("1 U1 < 0.25") == ratio(Modal::kOne, Formula::negate(a), Rational(3, 4)));
  CHECK(parse_formula("1 U1 >= 0.25") == Formula::negate(ratio(Modal::kOne, Formula::negate(a), Rational(3, 4))));
}

TEST_CASE("the benchmark formulas parse") {
  CHECK_NOTHROW(parse_formula("1((A U0 < 4) | (A U0 > 9)) > 0"));
  CHECK_NOTHROW(parse_formula("1(A(A U0 > 6) > 0.5) > 0.5"));
  CHECK(parse_formula("A(!(A U1 = 1)) > 1") ==
        count(Modal::kAdj, Formula::negate(parse_formula("A U1 = 1")), 1));
}

TEST_CASE("malformed input reports the offending offset") {
  struct Case {
    const char* text;
    std::size_t offset;
  };
  for (const auto& c : {Case{"A U1 >", 6}, Case{"U", 1}, Case{"U0 &", 4}, Case{"(U0", 3}, Case{"A U1 > 1.5", 7},
                        Case{"U0 U1", 3}, Case{"X", 0}, Case{"1 U0 > 0.0", 7}}) {
    CAPTURE(c.text);
    try {
      parse_formula(c.text);
      FAIL("expected a parse error");
    } catch (const idt::ParseError& e) {
      CHECK(e.offset() == c.offset);
    }
  }
}

TEST_CASE("printer uses sugar for the common desugared shapes") {
  CHECK(render_formula(parse_formula("A U1 = 0")) == "A U1 = 0");
  CHECK(render_formula(parse_formula("A U1 = 1")) == "A U1 = 1");
  CHECK(render_formula(parse_formula("!(A U1 = 1)")) == "!(A U1 = 1)");
  CHECK(render_formula(parse_formula("A U1 < 4")) == "A U1 < 4");
  CHECK(render_formula(parse_formula("1 U1 <= 0.5")) == "1 U1 <= 0.5");
  CHECK(render_formula(parse_formula("A(!(A U1 = 1)) > 1")) == "A(!(A U1 = 1)) > 1");
  CHECK(render_formula(parse_formula("(A U0 < 4) | (A U0 > 9)")) == "(A U0 < 4) | (A U0 > 9)");
  CHECK(render_formula(parse_formula("!U0 & U1"), idt::Notation::kUnicode) == "¬U0 ∧ U1");
}

TEST_CASE("render then parse is the identity on random formulas") {
  idt::Rng rng(11);
  for (int i = 0; i < 3000; ++i) {
    const Formula f = idt::testing::random_formula(rng, rng.uniform_index(4), {3, 5, true});
    for (auto notation : {idt::Notation::kAscii, idt::Notation::kUnicode}) {
      const std::string text = render_formula(f, notation);
      CAPTURE(text);
      REQUIRE(parse_formula(text) == f);
    }
  }
}
