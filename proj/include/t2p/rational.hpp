#pragma once

#include <boost/functional/hash.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace t2p {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational scalar used for every numeric quantity in the toolkit:
// fluent values, plan times, durations and the discretization quantum.
// Always kept in lowest terms with a positive denominator (the backing
// boost type maintains that canonical form).
class Rational {
public:
  Rational() : value_(0) {}
  Rational(int v) : value_(v) {}
  Rational(long long v) : value_(v) {}
  Rational(const BigInt &num, const BigInt &den)
      : value_(boost::multiprecision::cpp_rational(num, den)) {
    if (den == 0)
      throw std::invalid_argument("rational with zero denominator");
  }

  static Rational from_raw(boost::multiprecision::cpp_rational v) {
    Rational r;
    r.value_ = std::move(v);
    return r;
  }

  // Accepts integers ("4", "-7"), fractions ("3/2", "-3/2") and plain
  // decimals ("2.50", ".5"). Returns nullopt on anything else.
  static std::optional<Rational> parse(std::string_view text);

  BigInt numerator() const { return boost::multiprecision::numerator(value_); }
  BigInt denominator() const {
    return boost::multiprecision::denominator(value_);
  }

  bool is_integer() const { return denominator() == 1; }
  bool is_zero() const { return value_ == 0; }
  int sign() const { return value_.sign(); }

  Rational operator-() const { return from_raw(-value_); }
  Rational operator+(const Rational &o) const {
    return from_raw(value_ + o.value_);
  }
  Rational operator-(const Rational &o) const {
    return from_raw(value_ - o.value_);
  }
  Rational operator*(const Rational &o) const {
    return from_raw(value_ * o.value_);
  }
  // Callers are expected to reject zero divisors first; this throws to keep
  // the invariant visible in debug runs.
  Rational operator/(const Rational &o) const {
    if (o.is_zero())
      throw std::domain_error("rational division by zero");
    return from_raw(value_ / o.value_);
  }
  Rational &operator+=(const Rational &o) {
    value_ += o.value_;
    return *this;
  }

  auto operator<=>(const Rational &o) const {
    return value_ < o.value_   ? std::strong_ordering::less
           : value_ > o.value_ ? std::strong_ordering::greater
                               : std::strong_ordering::equal;
  }
  bool operator==(const Rational &o) const { return value_ == o.value_; }

  // Exact quotient when `this` is an integer multiple of `d`.
  std::optional<BigInt> exact_quotient(const Rational &d) const {
    if (d.is_zero())
      return std::nullopt;
    boost::multiprecision::cpp_rational q = value_ / d.value_;
    if (boost::multiprecision::denominator(q) != 1)
      return std::nullopt;
    return boost::multiprecision::numerator(q);
  }

  // "p/q" in lowest terms, or just "p" for integers.
  std::string str() const {
    if (is_integer())
      return numerator().str();
    return numerator().str() + "/" + denominator().str();
  }

  std::size_t hash() const {
    boost::hash<boost::multiprecision::cpp_rational> h;
    return h(value_);
  }

  friend std::ostream &operator<<(std::ostream &os, const Rational &r) {
    return os << r.str();
  }

private:
  boost::multiprecision::cpp_rational value_;
};

inline std::optional<Rational> Rational::parse(std::string_view text) {
  if (text.empty())
    return std::nullopt;
  std::string s(text);
  bool negative = false;
  std::size_t pos = 0;
  if (s[0] == '-' || s[0] == '+') {
    negative = s[0] == '-';
    pos = 1;
  }
  if (pos >= s.size())
    return std::nullopt;
  auto digits_only = [](std::string_view v) {
    if (v.empty())
      return false;
    for (char c : v)
      if (c < '0' || c > '9')
        return false;
    return true;
  };
  std::string body = s.substr(pos);
  Rational result;
  if (auto slash = body.find('/'); slash != std::string::npos) {
    std::string num = body.substr(0, slash), den = body.substr(slash + 1);
    if (!digits_only(num) || !digits_only(den))
      return std::nullopt;
    BigInt d(den);
    if (d == 0)
      return std::nullopt;
    result = Rational(BigInt(num), d);
  } else if (auto dot = body.find('.'); dot != std::string::npos) {
    std::string whole = body.substr(0, dot), frac = body.substr(dot + 1);
    if (whole.empty() && frac.empty())
      return std::nullopt;
    if ((!whole.empty() && !digits_only(whole)) ||
        (!frac.empty() && !digits_only(frac)))
      return std::nullopt;
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i)
      scale *= 10;
    BigInt w = whole.empty() ? BigInt(0) : BigInt(whole);
    BigInt f = frac.empty() ? BigInt(0) : BigInt(frac);
    result = Rational(w * scale + f, scale);
  } else {
    if (!digits_only(body))
      return std::nullopt;
    result = Rational(BigInt(body), 1);
  }
  return negative ? -result : result;
}

inline BigInt big_gcd(const BigInt &a, const BigInt &b) {
  return boost::multiprecision::gcd(a, b);
}
inline BigInt big_lcm(const BigInt &a, const BigInt &b) {
  return boost::multiprecision::lcm(a, b);
}

} // namespace t2p
