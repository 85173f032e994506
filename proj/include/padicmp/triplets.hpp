#pragma once

#include "padicmp/error.hpp"
#include "padicmp/rational.hpp"

namespace padicmp {

namespace detail {
inline void require_nonnegative(const Rational& a, const Rational& b, const Rational& c) {
  if (a.sign() < 0 || b.sign() < 0 || c.sign() < 0) {
    fail(ErrorCode::NegativeInput, "triplet entries must be nonnegative");
  }
}
}  // namespace detail

/// (a, b, c) in Delta: each entry is at most the sum of the other two.
inline bool is_triangle_triplet(const Rational& a, const Rational& b, const Rational& c) {
  detail::require_nonnegative(a, b, c);
  return a <= b + c && b <= a + c && c <= a + b;
}

/// (a, b, c) in Delta-infinity: each entry is at most the max of the other
/// two, i.e. the two largest entries coincide.
inline bool is_strong_triplet(const Rational& a, const Rational& b, const Rational& c) {
  detail::require_nonnegative(a, b, c);
  return a <= max(b, c) && b <= max(a, c) && c <= max(a, b);
}

}  // namespace padicmp
