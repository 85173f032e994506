#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "padicmp/error.hpp"
#include "padicmp/finite_space.hpp"
#include "padicmp/function_spec.hpp"
#include "padicmp/rational.hpp"

namespace padicmp {

/// A nonempty finite class of finite ultrametric spaces.
class SpaceClass {
 public:
  explicit SpaceClass(std::vector<FiniteUltrametricSpace> spaces) : spaces_(std::move(spaces)) {
    if (spaces_.empty()) fail(ErrorCode::EmptyClass, "a class needs at least one space");
  }

  const std::vector<FiniteUltrametricSpace>& spaces() const noexcept { return spaces_; }
  std::size_t size() const noexcept { return spaces_.size(); }

 private:
  std::vector<FiniteUltrametricSpace> spaces_;
};

/// Binary relation on a sorted finite set of rationals, stored as a dense
/// boolean matrix over ground indices.
class FiniteRelation {
 public:
  FiniteRelation() = default;
  explicit FiniteRelation(std::vector<Rational> ground) : ground_(std::move(ground)) {
    std::sort(ground_.begin(), ground_.end());
    ground_.erase(std::unique(ground_.begin(), ground_.end()), ground_.end());
    bits_.assign(ground_.size() * ground_.size(), 0);
  }

  const std::vector<Rational>& ground() const noexcept { return ground_; }
  std::size_t size() const noexcept { return ground_.size(); }

  std::optional<std::size_t> index_of(const Rational& x) const {
    auto it = std::lower_bound(ground_.begin(), ground_.end(), x);
    if (it == ground_.end() || *it != x) return std::nullopt;
    return static_cast<std::size_t>(it - ground_.begin());
  }

  std::size_t require_index(const Rational& x) const {
    auto i = index_of(x);
    if (!i) fail(ErrorCode::NotInGround, x.str() + " is not in the ground set");
    return *i;
  }

  bool at(std::size_t i, std::size_t j) const { return bits_[i * size() + j] != 0; }
  void set(std::size_t i, std::size_t j) { bits_[i * size() + j] = 1; }

  bool contains(const Rational& s, const Rational& t) const {
    auto i = index_of(s), j = index_of(t);
    return i && j && at(*i, *j);
  }
  void add(const Rational& s, const Rational& t) { set(require_index(s), require_index(t)); }

  /// Pairs in ground order; reflexive pairs optional.
  std::vector<std::pair<Rational, Rational>> pairs(bool include_reflexive = true) const {
    std::vector<std::pair<Rational, Rational>> out;
    for (std::size_t i = 0; i < size(); ++i) {
      for (std::size_t j = 0; j < size(); ++j) {
        if (at(i, j) && (include_reflexive || i != j)) out.emplace_back(ground_[i], ground_[j]);
      }
    }
    return out;
  }

  bool reflexive() const {
    for (std::size_t i = 0; i < size(); ++i) {
      if (!at(i, i)) return false;
    }
    return true;
  }

  bool transitive() const {
    for (std::size_t i = 0; i < size(); ++i) {
      for (std::size_t j = 0; j < size(); ++j) {
        if (!at(i, j)) continue;
        for (std::size_t k = 0; k < size(); ++k) {
          if (at(j, k) && !at(i, k)) return false;
        }
      }
    }
    return true;
  }

  bool antisymmetric() const {
    for (std::size_t i = 0; i < size(); ++i) {
      for (std::size_t j = i + 1; j < size(); ++j) {
        if (at(i, j) && at(j, i)) return false;
      }
    }
    return true;
  }

  /// Restriction to the ground elements kept by `keep`.
  template <class Pred>
  FiniteRelation restricted(Pred keep) const {
    std::vector<Rational> g;
    for (const auto& x : ground_) {
      if (keep(x)) g.push_back(x);
    }
    FiniteRelation r(std::move(g));
    for (std::size_t i = 0; i < r.size(); ++i) {
      for (std::size_t j = 0; j < r.size(); ++j) {
        if (contains(r.ground_[i], r.ground_[j])) r.set(i, j);
      }
    }
    return r;
  }

  friend bool operator==(const FiniteRelation&, const FiniteRelation&) = default;

 private:
  std::vector<Rational> ground_;
  std::vector<char> bits_;
};

/// Reflexive, transitive, antisymmetric relation. Checked on construction.
class FinitePoset {
 public:
  explicit FinitePoset(FiniteRelation order) : order_(std::move(order)) {
    if (!order_.reflexive() || !order_.transitive() || !order_.antisymmetric()) {
      fail(ErrorCode::InvalidSpec, "relation is not a partial order");
    }
  }

  const FiniteRelation& order() const noexcept { return order_; }
  const std::vector<Rational>& ground() const noexcept { return order_.ground(); }

  bool leq(const Rational& s, const Rational& t) const { return order_.contains(s, t); }
  bool comparable(const Rational& s, const Rational& t) const { return leq(s, t) || leq(t, s); }

  /// 0 belongs to the ground set and lies below everything.
  bool zero_is_least() const {
    auto z = order_.index_of(Rational(0));
    if (!z) return false;
    for (std::size_t j = 0; j < order_.size(); ++j) {
      if (!order_.at(*z, j)) return false;
    }
    return true;
  }

  /// s <= t numerically whenever s precedes t.
  bool within_numeric_order() const {
    for (const auto& [s, t] : order_.pairs()) {
      if (s > t) return false;
    }
    return true;
  }

  template <class Pred>
  FinitePoset restricted(Pred keep) const {
    return FinitePoset(order_.restricted(keep));
  }

  friend bool operator==(const FinitePoset&, const FinitePoset&) = default;

 private:
  FiniteRelation order_;
};

/// Union of all distance values over the class, 0 included.
inline std::vector<Rational> ran_u(const SpaceClass& u) {
  std::set<Rational> vals;
  for (const auto& s : u.spaces()) {
    for (const auto& v : range(s)) vals.insert(v);
  }
  return {vals.begin(), vals.end()};
}

/// <s, t> with s = d(x1, x3) and t = d(x1, x2) = d(x2, x3) for some points
/// of some space in the class. Points may repeat, which yields <0, t>.
inline FiniteRelation g_relation(const SpaceClass& u) {
  FiniteRelation r(ran_u(u));
  for (const auto& s : u.spaces()) {
    const std::size_t n = s.size();
    // Distances mapped to ground indices once per space.
    std::vector<std::vector<std::size_t>> idx(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) idx[i][j] = r.require_index(s(i, j));
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t c = 0; c < n; ++c) {
          if (idx[a][b] == idx[b][c]) r.set(idx[a][c], idx[a][b]);
        }
      }
    }
  }
  return r;
}

/// Smallest transitive superset (Warshall).
inline FiniteRelation transitive_closure(FiniteRelation r) {
  const std::size_t n = r.size();
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!r.at(i, k)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (r.at(k, j)) r.set(i, j);
      }
    }
  }
  return r;
}

/// Transitive closure of G_U together with the diagonal of Ran_U.
inline FinitePoset poset_u(const SpaceClass& u) {
  FiniteRelation r = transitive_closure(g_relation(u));
  for (std::size_t i = 0; i < r.size(); ++i) r.set(i, i);
  if (!r.antisymmetric()) fail(ErrorCode::InvariantBreach, "class order is not antisymmetric");
  FinitePoset p(std::move(r));
  if (!p.zero_is_least()) fail(ErrorCode::InvariantBreach, "0 is not the least element of the class order");
  if (!p.within_numeric_order()) fail(ErrorCode::InvariantBreach, "class order is not contained in <=");
  return p;
}

inline bool is_totally_ordered(const FinitePoset& p) {
  const auto& g = p.ground();
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      if (!p.comparable(g[i], g[j])) return false;
    }
  }
  return true;
}

struct ClassExtremes {
  Rational t_low;
  Rational t_high;
};

/// Least and greatest nonzero distance in the class.
inline ClassExtremes extremes(const SpaceClass& u) {
  auto ran = ran_u(u);
  if (ran.size() < 2) fail(ErrorCode::NoPositiveDistances, "every space in the class is a single point");
  return {ran[1], ran.back()};
}

/// Why f fails on the class, from the side that was evaluated.
struct ClassWitness {
  // Space side: index into the class plus the matrix issue of f o d.
  std::optional<std::size_t> space;
  std::optional<MatrixIssue> issue;
  // Order side: a ground point where amenability fails, or a pair s <= t
  // in the class order with f(s) > f(t).
  std::vector<Rational> args;
  std::vector<Rational> images;
};

struct ClassReport {
  bool preserving = false;
  bool spaces_side = false;  ///< f o d is an ultrametric on every space
  bool order_side = false;   ///< f amenable on Ran_U and isotone on the order
  std::optional<ClassWitness> space_witness;
  std::optional<ClassWitness> order_witness;
};

/// Evaluates both sides of the characterization independently and insists
/// they agree: f o d is an ultrametric for every space in U iff f is
/// amenable on Ran_U and isotone from the class order into (R+, <=).
inline ClassReport check_class_preserving(const FunctionSpec& f, const SpaceClass& u) {
  ClassReport rep;

  rep.spaces_side = true;
  for (std::size_t k = 0; k < u.size() && rep.spaces_side; ++k) {
    auto image = apply_fn(u.spaces()[k], f);
    if (auto issue = find_ultrametric_issue(image)) {
      rep.spaces_side = false;
      rep.space_witness = ClassWitness{k, *issue, {}, {}};
    }
  }

  FinitePoset order = poset_u(u);
  const auto& ground = order.ground();
  std::vector<Rational> vals;
  for (const auto& t : ground) vals.push_back(f(t));
  rep.order_side = true;
  for (std::size_t i = 0; i < ground.size(); ++i) {
    bool bad = ground[i].is_zero() ? !vals[i].is_zero() : vals[i].sign() <= 0;
    if (bad) {
      rep.order_side = false;
      rep.order_witness = ClassWitness{{}, {}, {ground[i]}, {vals[i]}};
      break;
    }
  }
  for (std::size_t i = 0; i < ground.size() && rep.order_side; ++i) {
    for (std::size_t j = 0; j < ground.size(); ++j) {
      if (order.order().at(i, j) && vals[i] > vals[j]) {
        rep.order_side = false;
        rep.order_witness = ClassWitness{{}, {}, {ground[i], ground[j]}, {vals[i], vals[j]}};
        break;
      }
    }
  }

  if (rep.spaces_side != rep.order_side) {
    fail(ErrorCode::InvariantBreach, "space-side and order-side verdicts disagree");
  }
  rep.preserving = rep.spaces_side;
  return rep;
}

/// Increasing amenable step function g with g = f on Ran_U, for a class
/// whose order is total: f(t_low) on (0, t_low), the running maximum of f
/// over [t_low, t] on the range, f(t_high) from t_high on.
inline FunctionSpec build_extension(const FunctionSpec& f, const SpaceClass& u) {
  if (!is_totally_ordered(poset_u(u))) fail(ErrorCode::NotTotallyOrdered, "class order is not total");
  if (!check_class_preserving(f, u).preserving) fail(ErrorCode::NotPreserving, "f does not preserve the class");
  auto ex = extremes(u);
  auto ran = ran_u(u);
  std::vector<fn::Point> steps;
  std::optional<Rational> running;
  for (const auto& t : ran) {
    if (t.is_zero()) continue;
    Rational v = f(t);
    if (!running || v > *running) running = v;
    steps.push_back({t, *running});
  }
  if (steps.back().y != f(ex.t_high)) fail(ErrorCode::InvariantBreach, "running maximum differs from f(t_high)");
  return step_function(f(ex.t_low), std::move(steps));
}

/// Phi(x) = p2 when x2 precedes x, p1 otherwise. Isotone into [p1, p2] with
/// Phi(x1) = p1 and Phi(x2) = p2 for incomparable x1, x2.
inline std::map<Rational, Rational> isotone_for_incomparables(const FinitePoset& p, const Rational& x1,
                                                              const Rational& x2, const Rational& p1,
                                                              const Rational& p2) {
  p.order().require_index(x1);
  p.order().require_index(x2);
  if (!(p1.sign() > 0 && p1 < p2)) fail(ErrorCode::BadInterval, "need 0 < p1 < p2");
  if (p.comparable(x1, x2)) fail(ErrorCode::Comparable, x1.str() + " and " + x2.str() + " are comparable");
  std::map<Rational, Rational> phi;
  for (const auto& x : p.ground()) phi[x] = p.leq(x2, x) ? p2 : p1;
  for (const auto& [s, t] : p.order().pairs()) {
    if (phi[s] > phi[t]) fail(ErrorCode::InvariantBreach, "constructed map is not isotone");
  }
  if (phi[x1] != p1 || phi[x2] != p2) fail(ErrorCode::InvariantBreach, "constructed map misses its anchors");
  return phi;
}

struct CounterExample {
  FunctionSpec f;
  Rational x1;  ///< numerically larger of the incomparable pair, sent to 1
  Rational x2;  ///< sent to 2
};

/// For a class whose order is not total: an amenable isotone f on Ran_U
/// that preserves every space yet has f(x2) > f(x1) with x2 < x1, so no
/// increasing function agrees with it on the range.
inline CounterExample counterexample_fn(const SpaceClass& u) {
  FinitePoset order = poset_u(u);
  if (is_totally_ordered(order)) fail(ErrorCode::TotallyOrdered, "class order is total; every preserving f extends");
  const auto& g = order.ground();
  std::optional<std::pair<Rational, Rational>> pick;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (!order.comparable(g[i], g[j])) pick = std::make_pair(g[i], g[j]);  // lexicographically largest wins
    }
  }
  const auto& [x1, x2] = *pick;
  FinitePoset positive = order.restricted([](const Rational& x) { return !x.is_zero(); });
  auto phi = isotone_for_incomparables(positive, x1, x2, Rational(1), Rational(2));
  phi[Rational(0)] = Rational(0);
  FunctionSpec f = tabulated(std::move(phi));

  if (!check_class_preserving(f, u).preserving || !(f(x2) > f(x1))) {
    fail(ErrorCode::SelfCheckFailed, "counterexample does not verify");
  }
  return {std::move(f), x1, x2};
}

struct ClassComparison {
  bool same_range = false;
  bool same_order = false;
};

inline ClassComparison compare_classes(const SpaceClass& a, const SpaceClass& b) {
  ClassComparison c;
  c.same_range = ran_u(a) == ran_u(b);
  c.same_order = c.same_range && poset_u(a) == poset_u(b);
  return c;
}

}  // namespace padicmp
