#pragma once

#include <array>
#include <cstdint>
#include <cstdlib>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "padicmp/error.hpp"
#include "padicmp/function_spec.hpp"
#include "padicmp/metric_checks.hpp"
#include "padicmp/padic.hpp"
#include "padicmp/triplets.hpp"

namespace padicmp {

/// Finite stand-in for "all integers" in the p-adic characterizations.
struct ExponentWindow {
  long long lo = -16;
  long long hi = 16;

  ExponentWindow() = default;
  ExponentWindow(long long l, long long h) : lo(l), hi(h) {
    if (lo > hi) fail(ErrorCode::BadWindow, "window " + str() + " is empty");
  }

  /// Parses "lo:hi".
  static ExponentWindow parse(std::string_view s) {
    auto colon = s.find(':');
    if (colon == std::string_view::npos) fail(ErrorCode::ParseError, "window must look like lo:hi");
    auto num = [&](std::string_view part) {
      std::string t(part);
      char* end = nullptr;
      long long v = std::strtoll(t.c_str(), &end, 10);
      if (t.empty() || *end != '\0') fail(ErrorCode::ParseError, "bad window bound '" + t + "'");
      return v;
    };
    return ExponentWindow(num(s.substr(0, colon)), num(s.substr(colon + 1)));
  }

  std::string str() const { return std::to_string(lo) + ":" + std::to_string(hi); }

  friend bool operator==(const ExponentWindow&, const ExponentWindow&) = default;
};

/// Result of a windowed p-adic preservation check. On a pair failure, m < n
/// name the exponents and `witness` holds a rational triple (x, y, z) with
/// images (f(|x-z|_p), f(|z-y|_p), f(|x-y|_p)). On an amenability failure
/// `witness` holds the single offending point.
struct PreservationVerdict {
  bool passed = true;
  ExponentWindow window;
  Failure reason = Failure::None;
  std::optional<long long> m;
  std::optional<long long> n;
  std::optional<Witness> witness;
};

/// Rationals x, y, z with |x-z|_p = |z-y|_p = p^legs and |x-y|_p = p^base,
/// for base < legs. Verified before returning.
inline std::array<Rational, 3> witness_triple(Prime p, long long legs, long long base) {
  if (base >= legs) {
    fail(ErrorCode::BadOrder, "witness triple needs base exponent below leg exponent, got " + std::to_string(base) +
                                  " >= " + std::to_string(legs));
  }
  const long long k = legs - base;
  const std::uint64_t pv = p.value();
  Rational x, y, z;
  // Unit legs and base p^-k, then rescale by p^-legs.
  if (pv >= 3) {
    z = 1;
    x = power(pv, k);
    y = -x;
  } else if (k >= 2) {
    z = 1;
    x = power(pv, k - 1);
    y = -x;
  } else {
    z = 0;
    x = 1;
    y = -1;
  }
  Rational scale = power(pv, -legs);
  x *= scale;
  y *= scale;
  z *= scale;
  const Rational want_leg = power(pv, legs);
  const Rational want_base = power(pv, base);
  if (dp(x, z, p) != want_leg || dp(z, y, p) != want_leg || dp(x, y, p) != want_base) {
    fail(ErrorCode::SelfCheckFailed, "witness triple construction did not verify for p=" + std::to_string(pv));
  }
  return {x, y, z};
}

namespace detail {

inline Witness triple_witness(const FunctionSpec& f, Prime p, long long legs, long long base) {
  auto [x, y, z] = witness_triple(p, legs, base);
  Rational a = f(dp(x, z, p)), b = f(dp(z, y, p)), c = f(dp(x, y, p));
  return Witness{{x, y, z}, {a, b, c}};
}

inline std::optional<PreservationVerdict> padic_amenability(const FunctionSpec& f, Prime p, const ExponentWindow& w) {
  PreservationVerdict v;
  v.window = w;
  v.passed = false;
  v.reason = Failure::NotAmenable;
  Rational f0 = f(Rational(0));
  if (!f0.is_zero()) {
    v.witness = Witness{{Rational(0)}, {f0}};
    return v;
  }
  for (long long k = w.lo; k <= w.hi; ++k) {
    Rational x = power(p.value(), k);
    Rational y = f(x);
    if (y.sign() <= 0) {
      v.m = k;
      v.witness = Witness{{x}, {y}};
      return v;
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// f(0) = 0 and 0 < f(p^m) <= 2 f(p^n) for all m < n in the window. Among
/// failing pairs the witness has the smallest gap n - m, then the smallest
/// |n|, then the smallest n.
inline PreservationVerdict check_p_metric_preserving(const FunctionSpec& f, Prime p, const ExponentWindow& w) {
  if (auto bad = detail::padic_amenability(f, p, w)) return *bad;
  std::vector<Rational> vals;
  for (long long k = w.lo; k <= w.hi; ++k) vals.push_back(f(power(p.value(), k)));
  auto at = [&](long long k) -> const Rational& { return vals[static_cast<std::size_t>(k - w.lo)]; };

  PreservationVerdict v;
  v.window = w;
  std::optional<std::pair<long long, long long>> best;
  auto better = [](std::pair<long long, long long> a, std::pair<long long, long long> b) {
    auto key = [](std::pair<long long, long long> mn) {
      return std::array<long long, 3>{mn.second - mn.first, std::llabs(mn.second), mn.second};
    };
    return key(a) < key(b);
  };
  for (long long m = w.lo; m <= w.hi; ++m) {
    for (long long n = m + 1; n <= w.hi; ++n) {
      if (at(m) > Rational(2) * at(n)) {
        std::pair<long long, long long> cand{m, n};
        if (!best || better(cand, *best)) best = cand;
      }
    }
  }
  if (best) {
    v.passed = false;
    v.reason = Failure::Band;
    v.m = best->first;
    v.n = best->second;
    v.witness = detail::triple_witness(f, p, best->second, best->first);
  }
  return v;
}

/// f(0) = 0 and 0 < f(p^n) <= f(p^{n+1}) for all n in [lo, hi - 1].
inline PreservationVerdict check_p_ultrametric_preserving(const FunctionSpec& f, Prime p, const ExponentWindow& w) {
  if (auto bad = detail::padic_amenability(f, p, w)) return *bad;
  PreservationVerdict v;
  v.window = w;
  Rational prev = f(power(p.value(), w.lo));
  for (long long n = w.lo; n < w.hi; ++n) {
    Rational next = f(power(p.value(), n + 1));
    if (prev > next) {
      v.passed = false;
      v.reason = Failure::Decreasing;
      v.m = n;
      v.n = n + 1;
      v.witness = detail::triple_witness(f, p, n + 1, n);
      return v;
    }
    prev = std::move(next);
  }
  return v;
}

/// Re-evaluates a failing verdict: the triple must reproduce its images
/// and the images must violate the condition that was tested.
inline bool reverify(const FunctionSpec& f, Prime p, const PreservationVerdict& v) {
  if (v.passed) return !v.witness.has_value();
  if (!v.witness) return false;
  const auto& a = v.witness->args;
  const auto& im = v.witness->images;
  if (v.reason == Failure::NotAmenable) {
    return a.size() == 1 && f(a[0]) == im[0] && (a[0].is_zero() ? !im[0].is_zero() : im[0].sign() <= 0);
  }
  if (a.size() != 3 || !v.m || !v.n) return false;
  const Rational& x = a[0];
  const Rational& y = a[1];
  const Rational& z = a[2];
  if (dp(x, z, p) != power(p.value(), *v.n) || dp(z, y, p) != power(p.value(), *v.n) ||
      dp(x, y, p) != power(p.value(), *v.m)) {
    return false;
  }
  std::vector<Rational> got{f(dp(x, z, p)), f(dp(z, y, p)), f(dp(x, y, p))};
  if (got != im) return false;
  if (v.reason == Failure::Band) return !is_triangle_triplet(im[0], im[1], im[2]);
  if (v.reason == Failure::Decreasing) return !is_strong_triplet(im[0], im[1], im[2]);
  return false;
}

/// Psi_p built from f: constant f(p^m) on each [p^m, p^{m+1}).
inline FunctionSpec psi_step(const FunctionSpec& f, Prime p) {
  return FunctionSpec(fn::StepPsi{std::make_shared<const FunctionSpec>(f), p});
}

/// Increasing amenable step function g with g(p^n) = f(p^n) across the
/// window, constant f(p^lo) below p^lo and f(p^hi) from p^hi on.
inline FunctionSpec extend_to_ultrametric_preserving(const FunctionSpec& f, Prime p, const ExponentWindow& w) {
  auto v = check_p_ultrametric_preserving(f, p, w);
  if (!v.passed) fail(ErrorCode::NotPreserving, "function is not p-adic ultrametric preserving on window " + w.str());
  std::vector<fn::Point> steps;
  for (long long k = w.lo; k <= w.hi; ++k) {
    Rational x = power(p.value(), k);
    Rational y = f(x);
    steps.push_back({std::move(x), std::move(y)});
  }
  Rational below = steps.front().y;
  return step_function(std::move(below), std::move(steps));
}

/// f*(p^n) = q^n, linear between consecutive powers of p.
inline FunctionSpec prime_swap(Prime p, Prime q) { return FunctionSpec(fn::PowerMap{p, q}); }

/// F(p_k^n) = p_{k+1}^n over all primes, linear elsewhere.
inline FunctionSpec prime_shift(std::uint32_t bound = 1'000'000) { return FunctionSpec(fn::PrimeShift{bound}); }

/// Evaluation floor and ceiling of a prime shift with the given bound.
inline std::pair<Rational, Rational> prime_shift_range(std::uint32_t bound = 1'000'000) {
  auto c = detail::prime_shift_table(bound).ceiling();
  return {Rational(BigInt(1), BigInt(c)), Rational(c)};
}

}  // namespace padicmp
