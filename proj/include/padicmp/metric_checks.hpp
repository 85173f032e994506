#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "padicmp/error.hpp"
#include "padicmp/function_spec.hpp"
#include "padicmp/rational.hpp"
#include "padicmp/triplets.hpp"

namespace padicmp {

enum class Failure { None, NotAmenable, Triangle, StrongTriangle, Decreasing, Band, Euclid };

constexpr std::string_view to_string(Failure f) noexcept {
  switch (f) {
    case Failure::None: return "none";
    case Failure::NotAmenable: return "not_amenable";
    case Failure::Triangle: return "triangle";
    case Failure::StrongTriangle: return "strong_triangle";
    case Failure::Decreasing: return "decreasing";
    case Failure::Band: return "band";
    case Failure::Euclid: return "euclid";
  }
  return "unknown";
}

/// Arguments and their images under f. One argument for amenability
/// failures, two for pair conditions (a < b), three for triplets. Euclid
/// witnesses carry (a, b, a + b).
struct Witness {
  std::vector<Rational> args;
  std::vector<Rational> images;
};

/// Outcome of a check over a finite sample set. A pass certifies the
/// sampled sublanguage only.
struct TripletVerdict {
  bool passed = true;
  Failure reason = Failure::None;
  std::optional<Witness> witness;
  std::string sample_hash;
  std::size_t sample_count = 0;
};

/// Sorted, duplicate-free, nonnegative samples.
class SampleSet {
 public:
  explicit SampleSet(std::vector<Rational> xs, bool require_zero = true) : xs_(std::move(xs)) {
    std::sort(xs_.begin(), xs_.end());
    xs_.erase(std::unique(xs_.begin(), xs_.end()), xs_.end());
    if (!xs_.empty() && xs_.front().sign() < 0) fail(ErrorCode::NegativeInput, "samples must be nonnegative");
    if (require_zero && (xs_.empty() || !xs_.front().is_zero())) fail(ErrorCode::BadSamples, "samples must contain 0");
  }

  const std::vector<Rational>& values() const noexcept { return xs_; }
  std::size_t size() const noexcept { return xs_.size(); }

  SampleSet merged(std::span<const Rational> extra) const {
    std::vector<Rational> all = xs_;
    all.insert(all.end(), extra.begin(), extra.end());
    return SampleSet(std::move(all), false);
  }

  /// FNV-1a over the canonical strings, hex encoded.
  std::string hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](char c) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ULL;
    };
    for (const auto& x : xs_) {
      for (char c : x.str()) mix(c);
      mix(',');
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }

 private:
  std::vector<Rational> xs_;
};

/// Evenly spaced grid {0, step, 2 step, ...} up to and including `upto`.
inline std::vector<Rational> grid(const Rational& step, const Rational& upto) {
  if (step.sign() <= 0) fail(ErrorCode::BadSamples, "grid step must be positive");
  std::vector<Rational> out;
  for (Rational x; x <= upto; x += step) out.push_back(x);
  return out;
}

/// Breakpoints, midpoints of consecutive breakpoints and pairwise sums of
/// breakpoints, all capped at `bound`. Analytic variants get a quarter grid
/// on [0, 4].
inline SampleSet default_samples(const FunctionSpec& f, const Rational& bound = Rational(8)) {
  std::vector<Rational> bp = f.breakpoints();
  if (f.as<fn::Tabulated>()) return SampleSet(bp);
  if (bp.empty()) return SampleSet(grid(Rational(BigInt(1), BigInt(4)), Rational(4)));
  std::vector<Rational> xs{Rational(0)};
  for (std::size_t i = 0; i < bp.size(); ++i) {
    if (bp[i] <= bound) xs.push_back(bp[i]);
    if (i + 1 < bp.size()) {
      Rational mid = (bp[i] + bp[i + 1]) / Rational(2);
      if (mid <= bound) xs.push_back(mid);
    }
    for (std::size_t j = i; j < bp.size(); ++j) {
      Rational s = bp[i] + bp[j];
      if (s <= bound) xs.push_back(s);
    }
  }
  // A point inside the first open interval of a step function.
  if (f.as<fn::Step>() && bp.size() > 1) xs.push_back(bp[1] / Rational(2));
  return SampleSet(std::move(xs));
}

namespace detail {

struct Evaluated {
  std::vector<Rational> xs;
  std::vector<Rational> ys;
};

inline Evaluated evaluate(const FunctionSpec& f, const SampleSet& s) {
  Evaluated e{s.values(), {}};
  e.ys.reserve(e.xs.size());
  for (const auto& x : e.xs) e.ys.push_back(f(x));
  return e;
}

inline std::optional<Witness> amenability_witness(const Evaluated& e) {
  for (std::size_t i = 0; i < e.xs.size(); ++i) {
    bool bad = e.xs[i].is_zero() ? !e.ys[i].is_zero() : e.ys[i].sign() <= 0;
    if (bad) return Witness{{e.xs[i]}, {e.ys[i]}};
  }
  return std::nullopt;
}

/// Lexicographically least (a, b, c) over the sorted samples whose
/// arguments satisfy `domain` but whose images violate `image`.
template <class Domain, class Image>
std::optional<Witness> triple_scan(const Evaluated& e, Domain domain, Image image) {
  const std::size_t n = e.xs.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (!domain(e.xs[i], e.xs[j], e.xs[k])) continue;
        if (!image(e.ys[i], e.ys[j], e.ys[k])) {
          return Witness{{e.xs[i], e.xs[j], e.xs[k]}, {e.ys[i], e.ys[j], e.ys[k]}};
        }
      }
    }
  }
  return std::nullopt;
}

/// Lexicographically least a < b with bad(f(a), f(b)).
template <class Bad>
std::optional<Witness> pair_scan(const Evaluated& e, Bad bad) {
  for (std::size_t i = 0; i < e.xs.size(); ++i) {
    for (std::size_t j = i + 1; j < e.xs.size(); ++j) {
      if (bad(e.ys[i], e.ys[j])) return Witness{{e.xs[i], e.xs[j]}, {e.ys[i], e.ys[j]}};
    }
  }
  return std::nullopt;
}

inline TripletVerdict verdict(const SampleSet& s, Failure reason, std::optional<Witness> w) {
  TripletVerdict v;
  v.passed = reason == Failure::None;
  v.reason = reason;
  v.witness = std::move(w);
  v.sample_hash = s.hash();
  v.sample_count = s.size();
  return v;
}

struct ExactResult {
  Failure reason = Failure::None;
  std::optional<Witness> witness;
};

inline Witness point_witness(const FunctionSpec& f, const Rational& x) { return Witness{{x}, {f(x)}}; }

inline Witness pair_witness(const FunctionSpec& f, const Rational& a, const Rational& b) {
  return Witness{{a, b}, {f(a), f(b)}};
}

/// Exact amenable + increasing test for the piecewise variants, by
/// inspecting ordinates. Witness pairs prefer the caller's samples.
inline std::optional<ExactResult> exact_monotone(const FunctionSpec& f, const Evaluated& user) {
  std::vector<fn::Point> nodes;
  if (const auto* pl = f.as<fn::PiecewiseLinear>()) {
    nodes = pl->points;
  } else if (const auto* st = f.as<fn::Step>()) {
    nodes.push_back({Rational(0), Rational(0)});
    Rational first = st->steps.empty() ? Rational(1) : st->steps.front().x;
    nodes.push_back({first / Rational(2), st->below});
    nodes.insert(nodes.end(), st->steps.begin(), st->steps.end());
  } else {
    return std::nullopt;
  }
  ExactResult r;
  for (const auto& n : nodes) {
    bool bad = n.x.is_zero() ? !n.y.is_zero() : n.y.sign() <= 0;
    if (bad) {
      r.reason = Failure::NotAmenable;
      auto w = amenability_witness(user);
      r.witness = w ? *w : point_witness(f, n.x);
      return r;
    }
  }
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (nodes[i].y < nodes[i - 1].y) {
      r.reason = Failure::Decreasing;
      auto w = pair_scan(user, [](const Rational& fa, const Rational& fb) { return fa > fb; });
      r.witness = w ? *w : pair_witness(f, nodes[i - 1].x, nodes[i].x);
      return r;
    }
  }
  return r;
}

}  // namespace detail

/// Amenability on the samples plus Delta -> Delta over every sampled triple.
inline TripletVerdict check_metric_preserving_sampled(const FunctionSpec& f, const SampleSet& samples) {
  auto e = detail::evaluate(f, samples);
  if (auto w = detail::amenability_witness(e)) return detail::verdict(samples, Failure::NotAmenable, w);
  auto w = detail::triple_scan(e, is_triangle_triplet, is_triangle_triplet);
  return detail::verdict(samples, w ? Failure::Triangle : Failure::None, w);
}

/// Runs an exact amenable-and-increasing test (ordinate inspection for
/// piecewise variants, pairwise on samples otherwise) and a
/// Delta-infinity -> Delta-infinity scan. The two must agree.
inline TripletVerdict check_ultrametric_preserving(const FunctionSpec& f, const SampleSet& samples) {
  auto user = detail::evaluate(f, samples);

  detail::ExactResult direct;
  if (auto exact = detail::exact_monotone(f, user)) {
    direct = *exact;
  } else if (auto w = detail::amenability_witness(user)) {
    direct = {Failure::NotAmenable, w};
  } else if (auto d = detail::pair_scan(user, [](const Rational& fa, const Rational& fb) { return fa > fb; })) {
    direct = {Failure::Decreasing, d};
  }

  // Piecewise variants are scanned on their nodes as well so that both
  // procedures see the same information.
  std::vector<Rational> extra = f.breakpoints();
  if (const auto* st = f.as<fn::Step>()) {
    extra.push_back((st->steps.empty() ? Rational(1) : st->steps.front().x) / Rational(2));
  }
  auto scan_set = samples.merged(extra);
  auto e = detail::evaluate(f, scan_set);
  bool scan_ok = !detail::amenability_witness(e) &&
                 !detail::triple_scan(e, is_strong_triplet, is_strong_triplet);

  if (scan_ok != (direct.reason == Failure::None)) {
    fail(ErrorCode::InvariantBreach, "monotonicity test and strong-triplet scan disagree");
  }
  return detail::verdict(samples, direct.reason, direct.witness);
}

/// Ultrametrics to metrics: f(0) = 0 and 0 < f(a) <= 2 f(b) for sampled
/// 0 < a < b, cross-checked against the Delta-infinity -> Delta scan.
inline TripletVerdict check_ultra_to_metric(const FunctionSpec& f, const SampleSet& samples) {
  auto e = detail::evaluate(f, samples);
  detail::ExactResult band;
  if (auto w = detail::amenability_witness(e)) {
    band = {Failure::NotAmenable, w};
  } else if (auto w2 = detail::pair_scan(e, [](const Rational& fa, const Rational& fb) { return fa > Rational(2) * fb; })) {
    band = {Failure::Band, w2};
  }
  bool scan_ok = !detail::amenability_witness(e) &&
                 !detail::triple_scan(e, is_strong_triplet, is_triangle_triplet);
  if (scan_ok != (band.reason == Failure::None)) {
    fail(ErrorCode::InvariantBreach, "band test and strong-to-triangle scan disagree");
  }
  return detail::verdict(samples, band.reason, band.witness);
}

/// (f(a), f(b), f(a + b)) in Delta for every sampled pair, with f amenable
/// at every point involved.
inline TripletVerdict check_euclid_preserving_sampled(const FunctionSpec& f,
                                                      std::span<const std::pair<Rational, Rational>> pairs) {
  std::vector<Rational> pts{Rational(0)};
  for (const auto& [a, b] : pairs) {
    if (a.sign() < 0 || b.sign() < 0) fail(ErrorCode::NegativeInput, "pair entries must be nonnegative");
    pts.push_back(a);
    pts.push_back(b);
    pts.push_back(a + b);
  }
  SampleSet s(std::move(pts));
  auto e = detail::evaluate(f, s);
  if (auto w = detail::amenability_witness(e)) return detail::verdict(s, Failure::NotAmenable, w);
  std::vector<std::pair<Rational, Rational>> ordered(pairs.begin(), pairs.end());
  std::sort(ordered.begin(), ordered.end());
  for (const auto& [a, b] : ordered) {
    Rational c = a + b;
    Rational fa = f(a), fb = f(b), fc = f(c);
    if (!is_triangle_triplet(fa, fb, fc)) return detail::verdict(s, Failure::Euclid, Witness{{a, b, c}, {fa, fb, fc}});
  }
  return detail::verdict(s, Failure::None, std::nullopt);
}

/// Every ordered pair drawn from `xs`.
inline std::vector<std::pair<Rational, Rational>> all_pairs(std::span<const Rational> xs) {
  std::vector<std::pair<Rational, Rational>> out;
  out.reserve(xs.size() * xs.size());
  for (const auto& a : xs) {
    for (const auto& b : xs) out.emplace_back(a, b);
  }
  return out;
}

struct SufficientReport {
  bool band = false;
  bool concave = false;
  bool subadditive_on_samples = false;
  std::string sample_hash;
};

/// Classical sufficient conditions for metric preservation, evaluated on
/// the samples (concavity exactly for piecewise-linear specs).
inline SufficientReport sufficient_conditions(const FunctionSpec& f, const SampleSet& samples) {
  auto e = detail::evaluate(f, samples);
  SufficientReport r;
  r.sample_hash = samples.hash();

  std::optional<Rational> lo, hi;
  for (std::size_t i = 0; i < e.xs.size(); ++i) {
    if (e.xs[i].is_zero()) continue;
    if (!lo || e.ys[i] < *lo) lo = e.ys[i];
    if (!hi || e.ys[i] > *hi) hi = e.ys[i];
  }
  r.band = lo && lo->sign() > 0 && *hi <= Rational(2) * *lo;

  auto slope = [](const fn::Point& a, const fn::Point& b) { return (b.y - a.y) / (b.x - a.x); };
  if (const auto* pl = f.as<fn::PiecewiseLinear>()) {
    r.concave = true;
    std::optional<Rational> prev;
    for (std::size_t i = 1; i < pl->points.size(); ++i) {
      Rational s = slope(pl->points[i - 1], pl->points[i]);
      if (prev && s > *prev) r.concave = false;
      prev = s;
    }
    if (pl->tail == fn::Tail::Constant && prev && prev->sign() < 0) r.concave = false;
  } else {
    r.concave = true;
    for (std::size_t i = 2; i < e.xs.size(); ++i) {
      fn::Point a{e.xs[i - 2], e.ys[i - 2]}, b{e.xs[i - 1], e.ys[i - 1]}, c{e.xs[i], e.ys[i]};
      if (slope(b, c) > slope(a, b)) {
        r.concave = false;
        break;
      }
    }
  }

  r.subadditive_on_samples = true;
  for (std::size_t i = 0; i < e.xs.size() && r.subadditive_on_samples; ++i) {
    for (std::size_t j = i; j < e.xs.size(); ++j) {
      auto fs = f.try_eval(e.xs[i] + e.xs[j]);
      if (fs && *fs > e.ys[i] + e.ys[j]) {
        r.subadditive_on_samples = false;
        break;
      }
    }
  }
  return r;
}

/// Re-evaluates a failing verdict's witness and confirms it violates the
/// condition named by its reason.
inline bool reverify(const FunctionSpec& f, const TripletVerdict& v) {
  if (v.passed) return !v.witness.has_value();
  if (!v.witness) return false;
  const auto& a = v.witness->args;
  std::vector<Rational> y;
  for (const auto& x : a) y.push_back(f(x));
  if (y != v.witness->images) return false;
  switch (v.reason) {
    case Failure::NotAmenable:
      return a.size() == 1 && (a[0].is_zero() ? !y[0].is_zero() : y[0].sign() <= 0);
    case Failure::Triangle:
      return a.size() == 3 && is_triangle_triplet(a[0], a[1], a[2]) && !is_triangle_triplet(y[0], y[1], y[2]);
    case Failure::StrongTriangle:
      return a.size() == 3 && is_strong_triplet(a[0], a[1], a[2]) && !is_strong_triplet(y[0], y[1], y[2]);
    case Failure::Decreasing:
      return a.size() == 2 && a[0] < a[1] && y[0] > y[1];
    case Failure::Band:
      return a.size() == 2 && a[0] < a[1] && y[0] > Rational(2) * y[1];
    case Failure::Euclid:
      return a.size() == 3 && a[2] == a[0] + a[1] && !is_triangle_triplet(y[0], y[1], y[2]);
    case Failure::None:
      return false;
  }
  return false;
}

}  // namespace padicmp
