#pragma once

// Cross-ratio on RP^1, the extended Rogers L-function, and the R/Z-valued
// 3-cocycle l on 4-tuples in SL2(R).
//
// l(g0,...,g3) = -(1/4pi^2) L(cross ratio of the four base-point images
// p(g0^-1 gi)), where p(g) is b/d unless d is (numerically) zero, then a/c.
// All four entries go through the same rule, so the first point is p(Id) = 0
// and the tuple map is left-invariant by construction.

#include <casson/sl2.hpp>

#include <cmath>
#include <stdexcept>

namespace casson {

inline constexpr double eps_proj_default = 1e-8;

struct ProjPoint {
  double value = 0.0;
  bool inf = false;

  static ProjPoint at(double v) { return {v, false}; }
  static ProjPoint infinity() { return {0.0, true}; }
};

// chordal metric on RP^1 (bounded, treats infinity like any other point)
inline double chordal_distance(const ProjPoint& p, const ProjPoint& q) {
  if (p.inf && q.inf) return 0.0;
  if (p.inf) return 1.0 / std::sqrt(1.0 + q.value * q.value);
  if (q.inf) return 1.0 / std::sqrt(1.0 + p.value * p.value);
  return std::abs(p.value - q.value) /
         (std::sqrt(1.0 + p.value * p.value) * std::sqrt(1.0 + q.value * q.value));
}

// value in [0,1) with circular comparison
struct ModOne {
  double v = 0.0;

  static ModOne reduce(double x) {
    double f = x - std::floor(x);
    if (f >= 1.0) f = 0.0;  // floor rounding at the seam
    return {f};
  }

  double circular_distance(const ModOne& o) const {
    double d = std::abs(v - o.v);
    return std::min(d, 1.0 - d);
  }
};

inline ProjPoint mobius_apply(const Mat2& g, const ProjPoint& p) {
  if (p.inf) {
    if (std::abs(g(1, 0)) < 1e-300) return ProjPoint::infinity();
    return ProjPoint::at(g(0, 0) / g(1, 0));
  }
  double den = g(1, 0) * p.value + g(1, 1);
  double num = g(0, 0) * p.value + g(0, 1);
  if (std::abs(den) < 1e-300) return ProjPoint::infinity();
  return ProjPoint::at(num / den);
}

// (a0-a2)/(a0-a3) * (a1-a3)/(a1-a2), factors with an infinite entry dropped
// pairwise; {0,1,2,3} -> 4/3
inline double cross_ratio(const ProjPoint& a0, const ProjPoint& a1, const ProjPoint& a2,
                          const ProjPoint& a3, double eps = eps_proj_default) {
  const ProjPoint pts[4] = {a0, a1, a2, a3};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (chordal_distance(pts[i], pts[j]) < eps)
        throw std::domain_error("cross ratio of coincident points");

  double n1 = 1.0, d1 = 1.0, n2 = 1.0, d2 = 1.0;
  if (!a0.inf && !a2.inf) n1 = a0.value - a2.value;
  if (!a0.inf && !a3.inf) d1 = a0.value - a3.value;
  if (!a1.inf && !a3.inf) n2 = a1.value - a3.value;
  if (!a1.inf && !a2.inf) d2 = a1.value - a2.value;
  if (a0.inf) n1 = d1 = 1.0;
  if (a1.inf) n2 = d2 = 1.0;
  return (n1 * n2) / (d1 * d2);
}

namespace detail {

// dilogarithm on [0,1]: series up to 1/2, reflection above
inline double li2_unit(double x) {
  if (x < 0.0 || x > 1.0) throw std::invalid_argument("li2_unit domain is [0,1]");
  const double pi2_6 = M_PI * M_PI / 6.0;
  if (x == 1.0) return pi2_6;
  if (x > 0.5) return pi2_6 - std::log(x) * std::log(1.0 - x) - li2_unit(1.0 - x);
  double sum = 0.0, pw = 1.0;
  for (int n = 1; n < 80; ++n) {
    pw *= x;
    double term = pw / (static_cast<double>(n) * n);
    sum += term;
    if (std::abs(term) < 1e-18) break;
  }
  return sum;
}

}  // namespace detail

// Rogers L with L(0) = -pi^2/6 and L(1) = 0, extended to all of R by
// L(x) = -L(1/x) for x > 1 and L(x) = L(1 - 1/x) for x < 0.
inline double rogers_L(double x) {
  const double pi2_6 = M_PI * M_PI / 6.0;
  if (x < 0.0) {
    // 1 - 1/x > 1 for negative x, so one more hop lands in (0,1)
    return -rogers_L(x / (x - 1.0));
  }
  if (x > 1.0) return -rogers_L(1.0 / x);
  if (x == 0.0) return -pi2_6;
  if (x == 1.0) return 0.0;
  return detail::li2_unit(x) + 0.5 * std::log(x) * std::log(1.0 - x) - pi2_6;
}

// image of the base point 0 under g as a projective point. A vanishing
// lower-right entry sends 0 to infinity; substituting any finite stand-in
// there breaks conjugation invariance of the chain pairings, so the point is
// flagged as infinite rather than approximated.
inline ProjPoint mobius_zero_image(const Mat2& g, double eps_d = 1e-8) {
  if (std::abs(g(1, 1)) > eps_d) return ProjPoint::at(g(0, 1) / g(1, 1));
  return ProjPoint::infinity();
}

// the 3-cocycle; returns 0 when any two of the four projective points are
// within eps_proj in the chordal metric
inline ModOne cocycle_l(const Mat2& g0, const Mat2& g1, const Mat2& g2, const Mat2& g3,
                        double eps_proj = eps_proj_default) {
  Mat2 inv = sl2_inverse(g0);
  ProjPoint pts[4];
  pts[0] = ProjPoint::at(0.0);  // image of 0 under g0^-1 g0
  const Mat2* gs[3] = {&g1, &g2, &g3};
  for (int i = 0; i < 3; ++i) pts[i + 1] = mobius_zero_image(Mat2(inv * *gs[i]));

  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (chordal_distance(pts[i], pts[j]) < eps_proj) return ModOne{0.0};

  double cr = cross_ratio(pts[0], pts[1], pts[2], pts[3], eps_proj);
  return ModOne::reduce(-rogers_L(cr) / (4.0 * M_PI * M_PI));
}

}  // namespace casson
