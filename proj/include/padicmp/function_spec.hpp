#pragma once

#include <algorithm>
#include <cmath>
#include <iterator>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "padicmp/error.hpp"
#include "padicmp/prime.hpp"
#include "padicmp/rational.hpp"

namespace padicmp {

class FunctionSpec;

namespace fn {

/// Finite table. Lookups outside the table are DomainMiss.
struct Tabulated {
  std::map<Rational, Rational> table;
};

struct Point {
  Rational x;
  Rational y;
  friend bool operator==(const Point&, const Point&) = default;
};

enum class Tail { Constant, LinearContinuation };

/// Continuous piecewise-linear function through strictly increasing
/// breakpoints starting at x = 0. Past the last breakpoint it is either
/// constant or continues the last segment.
struct PiecewiseLinear {
  std::vector<Point> points;
  Tail tail = Tail::Constant;
};

/// f(0) = 0, f(x) = 1/x.
struct Reciprocal {};

/// f(x) = x / (1 + x).
struct Canonical {};

/// f(p^n) = q^n for every integer n, linear between consecutive powers of p.
struct PowerMap {
  Prime p;
  Prime q;
};

/// F(p_k^n) = p_{k+1}^n over all primes, linear between consecutive prime
/// powers. Evaluation is limited to [1/C, C] where C is the largest prime
/// power not exceeding `bound`.
struct PrimeShift {
  std::uint32_t bound = 1'000'000;
};

/// Psi_p: zero at 0, f(p^m) on [p^m, p^{m+1}).
struct StepPsi {
  std::shared_ptr<const FunctionSpec> inner;
  Prime p;
};

/// Right-continuous step function: 0 at 0, `below` on (0, x_0), y_i on
/// [x_i, x_{i+1}), y_last from x_last on.
struct Step {
  Rational below;
  std::vector<Point> steps;
};

}  // namespace fn

/// An exactly evaluable candidate f: R+ -> R+.
class FunctionSpec {
 public:
  using Variant = std::variant<fn::Tabulated, fn::PiecewiseLinear, fn::Reciprocal, fn::Canonical,
                               fn::PowerMap, fn::PrimeShift, fn::StepPsi, fn::Step>;

  explicit FunctionSpec(Variant v) : v_(std::move(v)) { validate(); }

  const Variant& variant() const noexcept { return v_; }

  template <class T>
  const T* as() const noexcept {
    return std::get_if<T>(&v_);
  }

  std::string_view kind() const {
    static constexpr std::string_view names[] = {"tabulated",  "piecewise_linear", "reciprocal", "canonical",
                                                 "power_map",  "prime_shift",      "psi_step",   "step"};
    return names[v_.index()];
  }

  Rational operator()(const Rational& x) const;

  /// Same as operator() but a tabulated miss yields nothing.
  std::optional<Rational> try_eval(const Rational& x) const {
    try {
      return (*this)(x);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::DomainMiss) return std::nullopt;
      throw;
    }
  }

  /// Abscissae where the function changes shape (breakpoints, step edges,
  /// table keys). Empty for the analytic variants.
  std::vector<Rational> breakpoints() const;

 private:
  void validate() const;

  Variant v_;
};

namespace detail {

/// Largest m with p^m <= x, for x > 0.
inline long long floor_log(const Rational& x, std::uint64_t p) {
  auto bits = [](const BigInt& v) { return static_cast<double>(boost::multiprecision::msb(v)); };
  double est = (bits(x.num()) - bits(x.den())) / std::log2(static_cast<double>(p));
  auto m = static_cast<long long>(std::floor(est));
  while (power(p, m) > x) --m;
  while (power(p, m + 1) <= x) ++m;
  return m;
}

inline Rational lerp(const Rational& x0, const Rational& y0, const Rational& x1, const Rational& y1,
                     const Rational& x) {
  return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
}

inline std::uint32_t largest_prime_power_at_most(const Sieve& s, std::uint32_t n) {
  while (n > 1 && !s.prime_power_base(n)) --n;
  return n;
}

inline std::optional<std::uint32_t> smallest_prime_power_at_least(const Sieve& s, std::uint32_t n, std::uint32_t cap) {
  if (n <= 1) return 1;
  for (; n <= cap; ++n) {
    if (s.prime_power_base(n)) return n;
  }
  return std::nullopt;
}

/// F on the integer point m = p^k (or 1).
inline BigInt shift_integer_point(const Sieve& s, std::uint32_t m) {
  if (m == 1) return 1;
  std::uint32_t p = *s.prime_power_base(m);
  unsigned k = 0;
  for (std::uint32_t t = m; t > 1; t /= p) ++k;
  auto q = s.next_prime(p);
  if (!q) fail(ErrorCode::AboveCeiling, "next prime after " + std::to_string(p) + " is beyond the sieve");
  return boost::multiprecision::pow(BigInt(*q), k);
}

class PrimeShiftTable {
 public:
  explicit PrimeShiftTable(std::uint32_t bound)
      : sieve_(Sieve::shared(bound * 2 + 2)),
        ceiling_(largest_prime_power_at_most(*sieve_, bound)) {}

  std::uint32_t ceiling() const { return ceiling_; }

  Rational eval(const Rational& x) const {
    if (x.is_zero()) return Rational(0);
    if (x >= Rational(1)) return eval_at_least_one(x);
    if (x < Rational(BigInt(1), BigInt(ceiling_))) {
      fail(ErrorCode::BelowFloor, x.str() + " is below the evaluation floor 1/" + std::to_string(ceiling_));
    }
    // Points below 1 are 1/m for prime powers m; F(1/m) = 1/F(m).
    Rational t = Rational(1) / x;
    auto [lo_m, hi_m] = bracket(t);
    Rational lo_x(BigInt(1), BigInt(hi_m));
    Rational hi_x(BigInt(1), BigInt(lo_m));
    Rational lo_y(BigInt(1), shift_integer_point(*sieve_, hi_m));
    Rational hi_y(BigInt(1), shift_integer_point(*sieve_, lo_m));
    if (lo_x == hi_x) return lo_y;
    return lerp(lo_x, lo_y, hi_x, hi_y, x);
  }

 private:
  Rational eval_at_least_one(const Rational& x) const {
    if (x > Rational(ceiling_)) {
      fail(ErrorCode::AboveCeiling, x.str() + " exceeds the evaluation ceiling " + std::to_string(ceiling_));
    }
    auto [lo, hi] = bracket(x);
    Rational lo_y(shift_integer_point(*sieve_, lo));
    if (lo == hi) return lo_y;
    return lerp(Rational(lo), lo_y, Rational(hi), Rational(shift_integer_point(*sieve_, hi)), x);
  }

  /// Consecutive prime powers (1 counts) around t in [1, ceiling].
  std::pair<std::uint32_t, std::uint32_t> bracket(const Rational& t) const {
    BigInt fl = t.num() / t.den();
    auto f = fl.convert_to<std::uint32_t>();
    std::uint32_t lo = largest_prime_power_at_most(*sieve_, f);
    if (t.is_integer() && lo == f) return {lo, lo};
    auto hi = smallest_prime_power_at_least(*sieve_, f + 1, ceiling_);
    if (!hi) fail(ErrorCode::AboveCeiling, "no prime power above " + t.str() + " within the sieve");
    return {lo, *hi};
  }

  std::shared_ptr<const Sieve> sieve_;
  std::uint32_t ceiling_;
};

inline const PrimeShiftTable& prime_shift_table(std::uint32_t bound) {
  static std::mutex mu;
  static std::map<std::uint32_t, std::unique_ptr<PrimeShiftTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[bound];
  if (!slot) slot = std::make_unique<PrimeShiftTable>(bound);
  return *slot;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace detail

inline Rational FunctionSpec::operator()(const Rational& x) const {
  if (x.sign() < 0) fail(ErrorCode::NegativeInput, "cannot evaluate at negative " + x.str());
  return std::visit(
      detail::overloaded{
          [&](const fn::Tabulated& t) -> Rational {
            auto it = t.table.find(x);
            if (it == t.table.end()) fail(ErrorCode::DomainMiss, x.str() + " is not in the table");
            return it->second;
          },
          [&](const fn::PiecewiseLinear& pl) -> Rational {
            const auto& pts = pl.points;
            auto it = std::upper_bound(pts.begin(), pts.end(), x,
                                       [](const Rational& v, const fn::Point& pt) { return v < pt.x; });
            // it points past the last breakpoint <= x; pts[0].x == 0 so it != begin.
            auto i = static_cast<std::size_t>(it - pts.begin()) - 1;
            if (pts[i].x == x) return pts[i].y;
            if (i + 1 < pts.size()) return detail::lerp(pts[i].x, pts[i].y, pts[i + 1].x, pts[i + 1].y, x);
            if (pl.tail == fn::Tail::Constant) return pts.back().y;
            const auto& a = pts[pts.size() - 2];
            const auto& b = pts.back();
            return detail::lerp(a.x, a.y, b.x, b.y, x);
          },
          [&](const fn::Reciprocal&) -> Rational { return x.is_zero() ? Rational(0) : Rational(1) / x; },
          [&](const fn::Canonical&) -> Rational { return x / (Rational(1) + x); },
          [&](const fn::PowerMap& pm) -> Rational {
            if (x.is_zero()) return Rational(0);
            long long m = detail::floor_log(x, pm.p);
            Rational lo = power(pm.p.value(), m);
            if (lo == x) return power(pm.q.value(), m);
            return detail::lerp(lo, power(pm.q.value(), m), power(pm.p.value(), m + 1),
                                power(pm.q.value(), m + 1), x);
          },
          [&](const fn::PrimeShift& ps) -> Rational { return detail::prime_shift_table(ps.bound).eval(x); },
          [&](const fn::StepPsi& s) -> Rational {
            if (x.is_zero()) return Rational(0);
            return (*s.inner)(power(s.p.value(), detail::floor_log(x, s.p)));
          },
          [&](const fn::Step& s) -> Rational {
            if (x.is_zero()) return Rational(0);
            auto it = std::upper_bound(s.steps.begin(), s.steps.end(), x,
                                       [](const Rational& v, const fn::Point& pt) { return v < pt.x; });
            if (it == s.steps.begin()) return s.below;
            return std::prev(it)->y;
          },
      },
      v_);
}

inline std::vector<Rational> FunctionSpec::breakpoints() const {
  std::vector<Rational> out;
  if (const auto* t = as<fn::Tabulated>()) {
    for (const auto& [k, v] : t->table) out.push_back(k);
  } else if (const auto* pl = as<fn::PiecewiseLinear>()) {
    for (const auto& pt : pl->points) out.push_back(pt.x);
  } else if (const auto* s = as<fn::Step>()) {
    out.emplace_back(0);
    for (const auto& pt : s->steps) out.push_back(pt.x);
  }
  return out;
}

inline void FunctionSpec::validate() const {
  auto nonneg = [](const Rational& v, const char* what) {
    if (v.sign() < 0) fail(ErrorCode::InvalidSpec, std::string(what) + " must be nonnegative, got " + v.str());
  };
  auto increasing_from = [&](const std::vector<fn::Point>& pts, const Rational& start, bool strict_first) {
    Rational prev = start;
    bool first = true;
    for (const auto& pt : pts) {
      nonneg(pt.y, "ordinate");
      bool ok = (first && !strict_first) ? pt.x >= prev : pt.x > prev;
      if (!ok) fail(ErrorCode::InvalidSpec, "abscissae must be strictly increasing at " + pt.x.str());
      prev = pt.x;
      first = false;
    }
  };
  std::visit(detail::overloaded{
                 [&](const fn::Tabulated& t) {
                   if (!t.table.contains(Rational(0))) fail(ErrorCode::InvalidSpec, "table must contain key 0");
                   for (const auto& [k, v] : t.table) {
                     nonneg(k, "table key");
                     nonneg(v, "table value");
                   }
                 },
                 [&](const fn::PiecewiseLinear& pl) {
                   if (pl.points.empty() || !pl.points.front().x.is_zero()) {
                     fail(ErrorCode::InvalidSpec, "piecewise-linear breakpoints must start at x = 0");
                   }
                   increasing_from(pl.points, Rational(0), false);
                   if (pl.tail == fn::Tail::LinearContinuation) {
                     if (pl.points.size() < 2) fail(ErrorCode::InvalidSpec, "linear continuation needs two breakpoints");
                     const auto& a = pl.points[pl.points.size() - 2];
                     const auto& b = pl.points.back();
                     if (b.y < a.y) fail(ErrorCode::InvalidSpec, "linear continuation with negative slope leaves R+");
                   }
                 },
                 [](const fn::Reciprocal&) {},
                 [](const fn::Canonical&) {},
                 [](const fn::PowerMap&) {},
                 [](const fn::PrimeShift& ps) {
                   if (ps.bound < 2 || ps.bound > 50'000'000) fail(ErrorCode::InvalidSpec, "prime shift bound out of range");
                 },
                 [](const fn::StepPsi& s) {
                   if (!s.inner) fail(ErrorCode::InvalidSpec, "psi step needs an inner function");
                 },
                 [&](const fn::Step& s) {
                   nonneg(s.below, "step value");
                   if (!s.steps.empty() && !(s.steps.front().x > Rational(0))) {
                     fail(ErrorCode::InvalidSpec, "step edges must be positive");
                   }
                   increasing_from(s.steps, Rational(0), true);
                 },
             },
             v_);
}

// Constructors for the common shapes.

inline FunctionSpec tabulated(std::map<Rational, Rational> table) {
  return FunctionSpec(fn::Tabulated{std::move(table)});
}

inline FunctionSpec piecewise_linear(std::vector<fn::Point> points, fn::Tail tail = fn::Tail::Constant) {
  return FunctionSpec(fn::PiecewiseLinear{std::move(points), tail});
}

inline FunctionSpec identity() {
  return piecewise_linear({{Rational(0), Rational(0)}, {Rational(1), Rational(1)}}, fn::Tail::LinearContinuation);
}

/// 0 at the origin, c everywhere else.
inline FunctionSpec constant_on_positives(Rational c) { return FunctionSpec(fn::Step{std::move(c), {}}); }

inline FunctionSpec reciprocal() { return FunctionSpec(fn::Reciprocal{}); }
inline FunctionSpec canonical() { return FunctionSpec(fn::Canonical{}); }

inline FunctionSpec step_function(Rational below, std::vector<fn::Point> steps) {
  return FunctionSpec(fn::Step{std::move(below), std::move(steps)});
}

}  // namespace padicmp
