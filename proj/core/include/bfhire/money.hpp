#pragma once

#include <compare>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace bfhire {

using Rational = mpq_class;

/// Fractional digits accepted and emitted for decimal text.
inline constexpr int kDecimalDigits = 6;

/// Parses decimal text ("12", "-0.25", "3.141593") or an exact fraction
/// ("10/3"). Decimal input may carry at most kDecimalDigits fractional digits.
/// Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

/// Fixed-point rendering with exactly `digits` fractional digits, rounded
/// half away from zero.
std::string format_decimal(const Rational& value, int digits = kDecimalDigits);

/// Canonical "p/q" form, or just "p" for integers.
std::string format_exact(const Rational& value);

inline std::strong_ordering compare(const Rational& a, const Rational& b) {
  const int c = cmp(a, b);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

/// A non-negative exact currency amount.
class Money {
 public:
  Money() = default;
  /// Throws std::domain_error when `value` is negative.
  explicit Money(Rational value);
  explicit Money(long amount) : Money(Rational(amount)) {}

  static Money parse(std::string_view text);

  const Rational& value() const noexcept { return value_; }
  bool is_zero() const noexcept { return sgn(value_) == 0; }
  bool is_positive() const noexcept { return sgn(value_) > 0; }

  Money& operator+=(const Money& other);
  /// Throws std::domain_error if the result would be negative.
  Money& operator-=(const Money& other);

  friend Money operator+(Money lhs, const Money& rhs) { return lhs += rhs; }
  friend Money operator-(Money lhs, const Money& rhs) { return lhs -= rhs; }
  /// Scaling by a non-negative factor.
  friend Money operator*(const Money& amount, const Rational& factor);

  friend bool operator==(const Money& a, const Money& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Money& a, const Money& b) {
    return compare(a.value_, b.value_);
  }

  std::string to_string() const { return format_decimal(value_); }

 private:
  Rational value_{0};
};

inline std::ostream& operator<<(std::ostream& os, const Money& m) {
  return os << format_exact(m.value());
}

}  // namespace bfhire
