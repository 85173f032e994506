#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "padicmp/error.hpp"
#include "padicmp/function_spec.hpp"
#include "padicmp/rational.hpp"

namespace padicmp {

using Matrix = std::vector<std::vector<Rational>>;

/// Labelled square matrix of distances, not yet known to be an ultrametric.
/// Also carries f o d images before they are validated.
class DistanceMatrix {
 public:
  DistanceMatrix(std::vector<std::string> labels, Matrix d) : labels_(std::move(labels)), d_(std::move(d)) {
    check_shape();
  }

  /// Points named x1..xn.
  explicit DistanceMatrix(Matrix d) : labels_(default_labels(d.size())), d_(std::move(d)) { check_shape(); }

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const Matrix& matrix() const noexcept { return d_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return d_[i][j]; }

  static std::vector<std::string> default_labels(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back("x" + std::to_string(i + 1));
    return out;
  }

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  void check_shape() const {
    if (labels_.empty()) fail(ErrorCode::InvalidSpec, "a space needs at least one point");
    if (d_.size() != labels_.size()) fail(ErrorCode::SizeMismatch, "distance matrix rows do not match the labels");
    for (const auto& row : d_) {
      if (row.size() != labels_.size()) fail(ErrorCode::SizeMismatch, "distance matrix is not square");
    }
    std::set<std::string> seen(labels_.begin(), labels_.end());
    if (seen.size() != labels_.size()) fail(ErrorCode::InvalidSpec, "point labels must be distinct");
  }

  std::vector<std::string> labels_;
  Matrix d_;
};

/// What is wrong with a candidate. For strong-triangle violations
/// d(i, j) > max(d(i, k), d(k, j)); structural problems leave k empty.
struct MatrixIssue {
  ErrorCode code;
  std::size_t i = 0;
  std::size_t j = 0;
  std::optional<std::size_t> k;
};

/// First problem in the order: diagonal, symmetry, sign, positivity, then
/// the lexicographically least strong-triangle violation (i, j, k).
inline std::optional<MatrixIssue> find_ultrametric_issue(const DistanceMatrix& c) {
  const std::size_t n = c.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!c(i, i).is_zero()) return MatrixIssue{ErrorCode::NonzeroDiagonal, i, i, {}};
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (c(i, j) != c(j, i)) return MatrixIssue{ErrorCode::Asymmetric, i, j, {}};
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (c(i, j).sign() < 0) return MatrixIssue{ErrorCode::NegativeEntry, i, j, {}};
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && c(i, j).is_zero()) return MatrixIssue{ErrorCode::ZeroDistance, i, j, {}};
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (c(i, j) > max(c(i, k), c(k, j))) return MatrixIssue{ErrorCode::NotUltrametric, i, j, k};
      }
    }
  }
  return std::nullopt;
}

/// A distance matrix known to satisfy the strong triangle inequality.
class FiniteUltrametricSpace {
 public:
  /// Throws with the issue code when the candidate is not an ultrametric.
  static FiniteUltrametricSpace from(DistanceMatrix c) {
    if (auto issue = find_ultrametric_issue(c)) {
      std::string where = c.labels()[issue->i] + "," + c.labels()[issue->j];
      if (issue->k) where += "," + c.labels()[*issue->k];
      fail(issue->code, "distance matrix rejected at (" + where + ")");
    }
    return FiniteUltrametricSpace(std::move(c));
  }

  std::size_t size() const noexcept { return d_.size(); }
  const std::vector<std::string>& labels() const noexcept { return d_.labels(); }
  const DistanceMatrix& distances() const noexcept { return d_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return d_(i, j); }

  friend bool operator==(const FiniteUltrametricSpace&, const FiniteUltrametricSpace&) = default;

 private:
  explicit FiniteUltrametricSpace(DistanceMatrix d) : d_(std::move(d)) {}

  DistanceMatrix d_;
};

struct UltrametricViolation {
  std::size_t i, j, k;
};

/// The validated space, or the lexicographically least (i, j, k) with
/// d(i, j) > max(d(i, k), d(k, j)). Structural defects throw.
inline std::variant<FiniteUltrametricSpace, UltrametricViolation> validate_ultrametric(const DistanceMatrix& c) {
  if (auto issue = find_ultrametric_issue(c)) {
    if (issue->code == ErrorCode::NotUltrametric) return UltrametricViolation{issue->i, issue->j, *issue->k};
    return FiniteUltrametricSpace::from(c);  // throws with the structural code
  }
  return FiniteUltrametricSpace::from(c);
}

/// Same check phrased through triangles: every triangle is isosceles with
/// its base no longer than its legs. Used as an independent cross-check.
inline bool all_triangles_isosceles(const DistanceMatrix& c) {
  const std::size_t n = c.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        std::array<Rational, 3> s{c(i, j), c(j, k), c(i, k)};
        std::sort(s.begin(), s.end());
        if (s[1] != s[2]) return false;
      }
    }
  }
  return true;
}

/// Entrywise image f o d. Validation is separate.
inline DistanceMatrix apply_fn(const FiniteUltrametricSpace& s, const FunctionSpec& f) {
  std::map<Rational, Rational> cache;
  Matrix out(s.size(), std::vector<Rational>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      auto [it, fresh] = cache.try_emplace(s(i, j));
      if (fresh) it->second = f(s(i, j));
      out[i][j] = it->second;
    }
  }
  return DistanceMatrix(s.labels(), std::move(out));
}

/// Distinct distance values, 0 included, ascending.
inline std::vector<Rational> range(const FiniteUltrametricSpace& s) {
  std::set<Rational> vals;
  for (const auto& row : s.distances().matrix()) vals.insert(row.begin(), row.end());
  return {vals.begin(), vals.end()};
}

/// True when map[i] sends a's point i to b's point map[i] preserving every
/// distance and map is a bijection.
inline bool is_isometry(const FiniteUltrametricSpace& a, const FiniteUltrametricSpace& b,
                        const std::vector<std::size_t>& map) {
  if (a.size() != b.size() || map.size() != a.size()) return false;
  std::vector<bool> hit(b.size(), false);
  for (auto m : map) {
    if (m >= b.size() || hit[m]) return false;
    hit[m] = true;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (a(i, j) != b(map[i], map[j])) return false;
    }
  }
  return true;
}

inline constexpr std::size_t kMaxIsometryPoints = 10;

/// Lexicographically least distance-preserving bijection a -> b, found by
/// depth-first search over permutations in lexicographic order with
/// partial-assignment pruning.
inline std::optional<std::vector<std::size_t>> isometry_search(const FiniteUltrametricSpace& a,
                                                               const FiniteUltrametricSpace& b) {
  if (a.size() != b.size()) fail(ErrorCode::SizeMismatch, "spaces have different cardinalities");
  if (a.size() > kMaxIsometryPoints) fail(ErrorCode::TooLarge, "isometry search is capped at 10 points");
  const std::size_t n = a.size();

  // Compare small integer ids instead of rationals.
  std::map<Rational, int> ids;
  auto encode = [&](const FiniteUltrametricSpace& s) {
    std::vector<std::vector<int>> out(n, std::vector<int>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        out[i][j] = ids.try_emplace(s(i, j), static_cast<int>(ids.size())).first->second;
      }
    }
    return out;
  };
  auto da = encode(a);
  auto db = encode(b);

  std::vector<std::size_t> map(n);
  std::vector<bool> used(n, false);
  auto extend = [&](auto&& self, std::size_t i) -> bool {
    if (i == n) return true;
    for (std::size_t t = 0; t < n; ++t) {
      if (used[t]) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = da[i][j] == db[t][map[j]];
      if (!ok) continue;
      map[i] = t;
      used[t] = true;
      if (self(self, i + 1)) return true;
      used[t] = false;
    }
    return false;
  };
  if (!extend(extend, 0)) return std::nullopt;
  return map;
}

namespace detail {

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
inline std::size_t bareiss_rank(std::vector<std::vector<BigInt>> m) {
  const std::size_t rows = m.size();
  if (rows == 0) return 0;
  const std::size_t cols = m[0].size();
  BigInt prev = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][c].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        m[i][j] = (m[i][j] * m[rank][c] - m[i][c] * m[rank][j]) / prev;
      }
      m[i][c] = 0;
    }
    prev = m[rank][c];
    ++rank;
  }
  return rank;
}

}  // namespace detail

/// Exact rank of G[i][j] = (d(x0,xi)^2 + d(x0,xj)^2 - d(xi,xj)^2) / 2 for
/// i, j >= 1, rows cleared of denominators and reduced fraction-free.
inline std::size_t gram_rank(const FiniteUltrametricSpace& s, std::size_t base = 0) {
  const std::size_t n = s.size();
  if (n < 2) return 0;
  std::vector<std::size_t> others;
  for (std::size_t i = 0; i < n; ++i) {
    if (i != base) others.push_back(i);
  }
  std::vector<std::vector<BigInt>> g;
  for (auto i : others) {
    std::vector<Rational> row;
    BigInt l = 1;
    for (auto j : others) {
      Rational v = (s(base, i) * s(base, i) + s(base, j) * s(base, j) - s(i, j) * s(i, j)) / Rational(2);
      l = boost::multiprecision::lcm(l, v.den());
      row.push_back(std::move(v));
    }
    std::vector<BigInt> irow;
    for (const auto& v : row) irow.push_back(v.num() * (l / v.den()));
    g.push_back(std::move(irow));
  }
  return detail::bareiss_rank(std::move(g));
}

/// Least n such that the space embeds isometrically in Euclidean n-space:
/// |X| - 1, confirmed by the Gram rank.
inline std::size_t embed_min_dimension(const FiniteUltrametricSpace& s) {
  std::size_t dim = s.size() - 1;
  if (gram_rank(s) != dim) fail(ErrorCode::InvariantBreach, "Gram rank disagrees with |X| - 1");
  return dim;
}

}  // namespace padicmp
