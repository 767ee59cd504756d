#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace idt {

/// Exact rational number with a positive denominator, always in lowest terms.
/// Used for relative thresholds so comparisons and serialization are exact.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t numerator, std::int64_t denominator = 1);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  bool is_integer() const noexcept { return den_ == 1; }
  double to_double() const noexcept {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }
  std::int64_t floor() const noexcept;

  /// (a + b) / 2, exact.
  static Rational midpoint(const Rational& a, const Rational& b);

  /// Parses "12", "0.312", "5/12". Throws std::invalid_argument.
  static Rational parse(std::string_view text);

  /// Terminating decimals print as decimals ("0.312"), integers as integers,
  /// everything else as "num/den".
  std::string to_string() const;

  /// True iff count / size > *this, evaluated without division. False for size 0.
  bool ratio_exceeds(std::uint64_t count, std::uint64_t size) const noexcept;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace idt
