#include <stdexcept>

#include "doctest.h"
#include "idt/rational.hpp"

using idt::Rational;

TEST_CASE("rationals normalize and compare exactly") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(Rational(1, 3) < Rational(34, 100));
  CHECK(Rational(7, 2).floor() == 3);
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("parse accepts integers, decimals, and fractions") {
  CHECK(Rational::parse("12") == Rational(12));
  CHECK(Rational::parse("0.312") == Rational(312, 1000));
  CHECK(Rational::parse("5/12") == Rational(5, 12));
  CHECK(Rational::parse("0.5") == Rational(1, 2));
  for (const char* bad : {"", ".", "1.", "a", "1/0", "1/", "-", "0.5.1", "1e3"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(Rational::parse(bad), std::invalid_argument);
  }
}

TEST_CASE("to_string prints terminating decimals and fractions otherwise") {
  CHECK(Rational(39, 125).to_string() == "0.312");
  CHECK(Rational(1, 2).to_string() == "0.5");
  CHECK(Rational(5, 12).to_string() == "5/12");
  CHECK(Rational(12).to_string() == "12");
  for (const auto& r : {Rational(1, 3), Rational(3, 40), Rational(22, 7), Rational(1, 1024)}) {
    CHECK(Rational::parse(r.to_string()) == r);
  }
}

TEST_CASE("midpoint is exact") {
  CHECK(Rational::midpoint(Rational(1, 3), Rational(1, 2)) == Rational(5, 12));
  CHECK(Rational::midpoint(Rational(2), Rational(3)) == Rational(5, 2));
}

TEST_CASE("ratio_exceeds compares count/size without rounding") {
  const Rational half(1, 2);
  CHECK_FALSE(half.ratio_exceeds(1, 2));
  CHECK(half.ratio_exceeds(2, 3));
  CHECK_FALSE(half.ratio_exceeds(0, 0));
  CHECK_FALSE(Rational(1, 3).ratio_exceeds(1, 3));
  CHECK(Rational(1, 3).ratio_exceeds(2, 5));
  // Brute force against cross multiplication.
  for (std::uint64_t den = 1; den < 12; ++den) {
    for (std::uint64_t num = 1; num < den; ++num) {
      const Rational p(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
      for (std::uint64_t size = 0; size < 14; ++size) {
        for (std::uint64_t count = 0; count <= size; ++count) {
          CHECK(p.ratio_exceeds(count, size) == (size > 0 && count * den > num * size));
        }
      }
    }
  }
}
