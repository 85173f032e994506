#pragma once

#include <vector>

#include "padicmp/finite_space.hpp"
#include "padicmp/function_spec.hpp"
#include "padicmp/rational.hpp"

/// Worked examples shared by the tests, the acceptance suite and the
/// `examples reproduce` command.
namespace padicmp::fixtures {

inline Rational q(long long n, long long d = 1) { return Rational(BigInt(n), BigInt(d)); }

/// Piecewise-linear sawtooth with slopes 1, -1, 3/4, -3/4, 3/4, then
/// constant 1/2. Not 3-adic metric preserving. Note that (1, 3) already
/// breaks the Euclid triplet condition: f(1) = 1 > f(3) + f(4) = 5/8.
inline FunctionSpec euclid_sawtooth() {
  return piecewise_linear({{q(0), q(0)}, {q(1), q(1)}, {q(3, 2), q(1, 2)}, {q(2), q(7, 8)}, {q(3), q(1, 8)},
                           {q(7, 2), q(1, 2)}},
                          fn::Tail::Constant);
}

/// Four points x1..x4: d(x1,x3) = 1, d(x2,x4) = 2, every other pair 3.
inline FiniteUltrametricSpace four_point_space() {
  return FiniteUltrametricSpace::from(DistanceMatrix({{q(0), q(3), q(1), q(3)},
                                                      {q(3), q(0), q(3), q(2)},
                                                      {q(1), q(3), q(0), q(3)},
                                                      {q(3), q(2), q(3), q(0)}}));
}

/// Amenable, not increasing (f(1) = 2 > 1 = f(2)), yet f o d is an
/// ultrametric on the four-point space.
inline FunctionSpec four_point_swap() {
  return piecewise_linear({{q(0), q(0)}, {q(1), q(2)}, {q(2), q(1)}, {q(3), q(3)}}, fn::Tail::Constant);
}

/// Four points of Euclidean 3-space: d(y1,y2) = 2, d(y3,y4) = 1, legs 3.
inline FiniteUltrametricSpace four_point_tetrahedron() {
  return FiniteUltrametricSpace::from(DistanceMatrix({"y1", "y2", "y3", "y4"},
                                                     {{q(0), q(2), q(3), q(3)},
                                                      {q(2), q(0), q(3), q(3)},
                                                      {q(3), q(3), q(0), q(1)},
                                                      {q(3), q(3), q(1), q(0)}}));
}

/// Two points at distance d.
inline FiniteUltrametricSpace two_point(const Rational& d) {
  return FiniteUltrametricSpace::from(DistanceMatrix({{q(0), d}, {d, q(0)}}));
}

/// Three points with one side `base` and two sides `legs` (base <= legs).
inline FiniteUltrametricSpace isosceles(const Rational& base, const Rational& legs) {
  return FiniteUltrametricSpace::from(DistanceMatrix({{q(0), base, legs}, {base, q(0), legs}, {legs, legs, q(0)}}));
}

inline FiniteUltrametricSpace single_point() { return FiniteUltrametricSpace::from(DistanceMatrix({{q(0)}})); }

}  // namespace padicmp::fixtures
