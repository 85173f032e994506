#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "padicmp/error.hpp"

namespace padicmp {

using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision signed fraction, always in lowest terms with a
/// positive denominator. Zero is 0/1. Equality is structural.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  explicit Rational(BigInt n) : num_(std::move(n)), den_(1) {}
  Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

  const BigInt& num() const noexcept { return num_; }
  const BigInt& den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_integer() const noexcept { return den_ == 1; }
  int sign() const noexcept { return num_.sign(); }

  /// Parses "a", "-a" or "a/b". Whitespace is not accepted.
  static Rational parse(std::string_view s) {
    if (s.empty()) fail(ErrorCode::ParseError, "empty rational");
    auto slash = s.find('/');
    BigInt n = parse_int(s.substr(0, slash), s);
    if (slash == std::string_view::npos) return Rational(std::move(n));
    BigInt d = parse_int(s.substr(slash + 1), s);
    if (d.is_zero()) fail(ErrorCode::DivisionByZero, "zero denominator in '" + std::string(s) + "'");
    return Rational(std::move(n), std::move(d));
  }

  /// Canonical form: "a/b" in lowest terms, "a" when b = 1.
  std::string str() const {
    if (den_ == 1) return num_.str();
    return num_.str() + "/" + den_.str();
  }

  Rational operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
  }

  Rational& operator+=(const Rational& o) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    normalize();
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) fail(ErrorCode::DivisionByZero, "division by zero rational");
    num_ *= o.den_;
    den_ *= o.num_;
    normalize();
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    BigInt lhs = a.num_ * b.den_;
    BigInt rhs = b.num_ * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

  std::size_t hash() const {
    return std::hash<std::string>{}(str());
  }

 private:
  static BigInt parse_int(std::string_view part, std::string_view whole) {
    std::size_t i = 0;
    bool neg = false;
    if (!part.empty() && (part[0] == '-' || part[0] == '+')) {
      neg = part[0] == '-';
      i = 1;
    }
    if (i == part.size()) fail(ErrorCode::ParseError, "malformed rational '" + std::string(whole) + "'");
    BigInt v = 0;
    for (; i < part.size(); ++i) {
      char c = part[i];
      if (c < '0' || c > '9') fail(ErrorCode::ParseError, "malformed rational '" + std::string(whole) + "'");
      v = v * 10 + (c - '0');
    }
    return neg ? BigInt(-v) : v;
  }

  void normalize() {
    if (den_.is_zero()) fail(ErrorCode::DivisionByZero, "zero denominator");
    if (den_.sign() < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    if (num_.is_zero()) {
      den_ = 1;
      return;
    }
    BigInt g = boost::multiprecision::gcd(num_, den_);
    if (g != 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  BigInt num_;
  BigInt den_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }

/// base^e for an integer base and a signed exponent.
inline Rational power(const BigInt& base, long long e) {
  if (e == 0) return Rational(1);
  BigInt v = boost::multiprecision::pow(base, static_cast<unsigned>(e < 0 ? -e : e));
  if (e > 0) return Rational(std::move(v));
  return Rational(BigInt(1), std::move(v));
}

inline Rational power(std::uint64_t base, long long e) { return power(BigInt(base), e); }

}  // namespace padicmp

template <>
struct std::hash<padicmp::Rational> {
  std::size_t operator()(const padicmp::Rational& r) const { return r.hash(); }
};
