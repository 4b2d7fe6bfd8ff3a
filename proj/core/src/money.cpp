#include "bfhire/money.hpp"

#include <stdexcept>

namespace bfhire {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

mpz_class pow10(int exponent) {
  mpz_class result;
  mpz_ui_pow_ui(result.get_mpz_t(), 10, static_cast<unsigned long>(exponent));
  return result;
}

[[noreturn]] void reject(std::string_view text, const char* why) {
  throw std::invalid_argument("invalid number '" + std::string(text) + "': " + why);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  Rational result;
  if (const auto slash = body.find('/'); slash != std::string_view::npos) {
    const auto num = body.substr(0, slash);
    const auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) reject(text, "malformed fraction");
    mpz_class d(std::string(den), 10);
    if (d == 0) reject(text, "zero denominator");
    result = Rational(mpz_class(std::string(num), 10), d);
    result.canonicalize();
  } else {
    const auto dot = body.find('.');
    const auto whole = body.substr(0, dot);
    const auto frac = dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
    if (!all_digits(whole)) reject(text, "expected digits");
    if (dot != std::string_view::npos && !all_digits(frac)) reject(text, "expected fractional digits");
    if (frac.size() > static_cast<std::size_t>(kDecimalDigits)) reject(text, "too many fractional digits");
    const int scale = static_cast<int>(frac.size());
    mpz_class digits(std::string(whole) + std::string(frac), 10);
    result = Rational(digits, pow10(scale));
    result.canonicalize();
  }
  if (negative) result = -result;
  return result;
}

std::string format_decimal(const Rational& value, int digits) {
  const mpz_class scale = pow10(digits);
  mpz_class num = abs(value.get_num()) * scale;
  const mpz_class& den = value.get_den();
  // round half away from zero: floor((2n + d) / 2d)
  mpz_class scaled = (2 * num + den) / (2 * den);

  std::string s = scaled.get_str();
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits))
      s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  }
  if (sgn(value) < 0 && scaled != 0) s.insert(0, "-");
  return s;
}

std::string format_exact(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_str();
}

Money::Money(Rational value) : value_(std::move(value)) {
  value_.canonicalize();
  if (sgn(value_) < 0) throw std::domain_error("negative money amount " + format_exact(value_));
}

Money Money::parse(std::string_view text) { return Money(parse_rational(text)); }

Money& Money::operator+=(const Money& other) {
  value_ += other.value_;
  return *this;
}

Money& Money::operator-=(const Money& other) {
  if (cmp(other.value_, value_) > 0)
    throw std::domain_error("money subtraction below zero");
  value_ -= other.value_;
  return *this;
}

Money operator*(const Money& amount, const Rational& factor) {
  if (sgn(factor) < 0) throw std::domain_error("negative money scale factor");
  return Money(Rational(amount.value_ * factor));
}

}  // namespace bfhire
