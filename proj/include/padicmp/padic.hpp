#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "padicmp/error.hpp"
#include "padicmp/prime.hpp"
#include "padicmp/rational.hpp"

namespace padicmp {

namespace detail {

/// Multiplicity of p in a nonzero integer.
inline long long int_ord(BigInt n, std::uint64_t p) {
  if (n.sign() < 0) n = -n;
  long long k = 0;
  BigInt q, r;
  const BigInt bp(p);
  for (;;) {
    boost::multiprecision::divide_qr(n, bp, q, r);
    if (!r.is_zero()) return k;
    n.swap(q);
    ++k;
  }
}

inline std::uint64_t mod_p(const BigInt& n, std::uint64_t p) {
  BigInt r = n % BigInt(p);
  if (r.sign() < 0) r += p;
  return r.convert_to<std::uint64_t>();
}

}  // namespace detail

/// ord_p(x): exponent of p in the factorization of the nonzero rational x.
inline long long ord(const Rational& x, Prime p) {
  if (x.is_zero()) fail(ErrorCode::OrdOfZero, "ord of zero is undefined");
  return detail::int_ord(x.num(), p) - detail::int_ord(x.den(), p);
}

/// The p-adic absolute value, kept symbolic: either zero or p^exponent.
class PAdicAbs {
 public:
  static PAdicAbs zero(Prime p) { return PAdicAbs(p, std::nullopt); }
  static PAdicAbs pow(Prime p, long long exponent) { return PAdicAbs(p, exponent); }

  Prime prime() const noexcept { return p_; }
  bool is_zero() const noexcept { return !exponent_.has_value(); }
  /// Exponent e of p^e; only meaningful when !is_zero().
  long long exponent() const { return exponent_.value(); }

  Rational value() const { return exponent_ ? power(p_.value(), *exponent_) : Rational(0); }

  friend bool operator==(const PAdicAbs& a, const PAdicAbs& b) {
    return a.p_ == b.p_ && a.exponent_ == b.exponent_;
  }

  /// Order for values over the same prime; zero is least.
  friend std::strong_ordering operator<=>(const PAdicAbs& a, const PAdicAbs& b) {
    if (a.p_ != b.p_) fail(ErrorCode::InvariantBreach, "comparing absolute values over different primes");
    if (a.is_zero() || b.is_zero()) return !a.is_zero() <=> !b.is_zero();
    return *a.exponent_ <=> *b.exponent_;
  }

  friend PAdicAbs operator*(const PAdicAbs& a, const PAdicAbs& b) {
    if (a.p_ != b.p_) fail(ErrorCode::InvariantBreach, "multiplying absolute values over different primes");
    if (a.is_zero() || b.is_zero()) return zero(a.p_);
    return pow(a.p_, *a.exponent_ + *b.exponent_);
  }

 private:
  PAdicAbs(Prime p, std::optional<long long> e) : p_(p), exponent_(e) {}

  Prime p_;
  std::optional<long long> exponent_;
};

/// |x|_p = p^(-ord_p x), |0|_p = 0.
inline PAdicAbs padic_abs(const Rational& x, Prime p) {
  if (x.is_zero()) return PAdicAbs::zero(p);
  return PAdicAbs::pow(p, -ord(x, p));
}

/// d_p(x, y) = |x - y|_p as an exact rational.
inline Rational dp(const Rational& x, const Rational& y, Prime p) { return padic_abs(x - y, p).value(); }

/// Finite window of a p-adic expansion: digits[i] is the coefficient of
/// p^(low + i).
struct DigitWindow {
  Prime p;
  long long low = 0;
  std::vector<std::uint64_t> digits;

  long long high() const { return low + static_cast<long long>(digits.size()) - 1; }

  std::uint64_t at(long long k) const {
    if (k < low || k > high()) fail(ErrorCode::BadWindow, "digit index outside window");
    return digits[static_cast<std::size_t>(k - low)];
  }

  /// Sum of d_k p^k over the window.
  Rational partial_sum() const {
    Rational s;
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (digits[i] != 0) s += Rational(static_cast<long long>(digits[i])) * power(p.value(), low + static_cast<long long>(i));
    }
    return s;
  }

  /// Positional rendering, most significant digit first, leading zeros
  /// above d_0 dropped: 17 in base 3 prints "122". Digits of primes above
  /// 10 are separated by spaces.
  std::string str() const {
    std::string out;
    bool started = false;
    const bool wide = p.value() > 10;
    for (long long k = high(); k >= low; --k) {
      std::uint64_t d = at(k);
      if (!started && d == 0 && k > 0) continue;
      if (started && wide && k != -1) out += ' ';
      if (k == -1 && low < 0) out += '.';
      out += std::to_string(d);
      started = true;
    }
    return out;
  }
};

/// Digits d_low..d_high of x in Q_p, where low = min(0, ord_p x). The
/// partial sum agrees with x to p-adic absolute value at most p^-(high+1).
inline DigitWindow digits(const Rational& x, Prime p, long long high_index) {
  long long low = x.is_zero() ? 0 : std::min<long long>(0, ord(x, p));
  if (high_index < low) {
    fail(ErrorCode::BadWindow, "high index " + std::to_string(high_index) + " below low index " + std::to_string(low));
  }
  const std::uint64_t pv = p.value();
  // y is a p-adic integer whose digit i is the digit low+i of x.
  Rational y = x * power(pv, -low);
  DigitWindow w{p, low, {}};
  w.digits.reserve(static_cast<std::size_t>(high_index - low + 1));
  for (long long k = low; k <= high_index; ++k) {
    std::uint64_t a = detail::mod_p(y.num(), pv);
    std::uint64_t b = detail::mod_p(y.den(), pv);
    std::uint64_t d = detail::mulmod(a, detail::powmod(b, pv - 2, pv), pv);
    w.digits.push_back(d);
    y = (y - Rational(BigInt(d))) / Rational(BigInt(pv));
  }
  return w;
}

/// |a_n - a_{n+1}|_p for consecutive terms of a finite prefix. Data only:
/// no convergence verdict is drawn.
inline std::vector<Rational> cauchy_profile(std::span<const Rational> prefix, Prime p) {
  if (prefix.size() < 2) fail(ErrorCode::TooShort, "a Cauchy profile needs at least two terms");
  std::vector<Rational> out;
  out.reserve(prefix.size() - 1);
  for (std::size_t i = 0; i + 1 < prefix.size(); ++i) out.push_back(dp(prefix[i], prefix[i + 1], p));
  return out;
}

}  // namespace padicmp
