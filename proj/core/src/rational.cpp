#include "idt/rational.hpp"

#include <cctype>
#include <numeric>
#include <stdexcept>

namespace idt {

namespace {

__extension__ typedef __int128 Wide;

Rational from_wide(Wide num, Wide den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Wide a = num < 0 ? -num : num;
  Wide b = den;
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  constexpr Wide kMax = INT64_MAX;
  if (num > kMax || num < -kMax || den > kMax) {
    throw std::overflow_error("rational overflow");
  }
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

std::int64_t parse_digits(std::string_view digits) {
  if (digits.empty() || digits.size() > 18) {
    throw std::invalid_argument("bad number '" + std::string(digits) + "'");
  }
  std::int64_t value = 0;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("bad number '" + std::string(digits) + "'");
    }
    value = value * 10 + (c - '0');
  }
  return value;
}

}  // namespace

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) throw std::invalid_argument("zero denominator");
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  const std::int64_t g = std::gcd(numerator, denominator);
  num_ = numerator / (g == 0 ? 1 : g);
  den_ = denominator / (g == 0 ? 1 : g);
}

std::int64_t Rational::floor() const noexcept {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

Rational Rational::midpoint(const Rational& a, const Rational& b) {
  const Wide num = static_cast<Wide>(a.num_) * b.den_ + static_cast<Wide>(b.num_) * a.den_;
  const Wide den = static_cast<Wide>(a.den_) * b.den_ * 2;
  return from_wide(num, den);
}

Rational Rational::parse(std::string_view text) {
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    return Rational(parse_digits(text.substr(0, slash)), parse_digits(text.substr(slash + 1)));
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const std::string_view whole = text.substr(0, dot);
    const std::string_view frac = text.substr(dot + 1);
    if (frac.empty()) throw std::invalid_argument("bad number '" + std::string(text) + "'");
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const std::int64_t w = whole.empty() ? 0 : parse_digits(whole);
    return from_wide(static_cast<Wide>(w) * den + parse_digits(frac), den);
  }
  return Rational(parse_digits(text));
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  std::int64_t d = den_;
  int twos = 0;
  int fives = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++twos;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++fives;
  }
  const int digits = std::max(twos, fives);
  if (d != 1 || digits > 18) {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }
  Wide scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  const bool negative = num_ < 0;
  const Wide scaled = static_cast<Wide>(negative ? -num_ : num_) * (scale / den_);
  const auto whole = static_cast<std::int64_t>(scaled / scale);
  auto frac = static_cast<std::int64_t>(scaled % scale);
  std::string frac_text = std::to_string(frac);
  frac_text.insert(0, static_cast<std::size_t>(digits) - frac_text.size(), '0');
  return (negative ? "-" : "") + std::to_string(whole) + "." + frac_text;
}

bool Rational::ratio_exceeds(std::uint64_t count, std::uint64_t size) const noexcept {
  if (size == 0) return false;
  return static_cast<Wide>(count) * den_ > static_cast<Wide>(num_) * static_cast<Wide>(size);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
  const Wide lhs = static_cast<Wide>(a.num_) * b.den_;
  const Wide rhs = static_cast<Wide>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace idt
