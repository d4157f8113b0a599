#pragma once

// Independent reference computations used as test oracles. None of these
// call into the code path they are compared against.

#include <cmath>
#include <functional>
#include <numbers>

#include "symred/lie_algebra.hpp"
#include "symred/poisson.hpp"
#include "symred/types.hpp"

namespace oracle {

using symred::MatX;
using symred::Vec3;
using symred::VecX;

inline double epsilon(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0.0;
  // Count inversions of (i, j, k).
  int inv = (i > j) + (i > k) + (j > k);
  return inv % 2 == 0 ? 1.0 : -1.0;
}

// so(3) bracket as the cross product.
inline Vec3 cross(const Vec3& a, const Vec3& b) { return a.cross(b); }

// max |sum_m c^m_sk c^r_ml + c^m_kl c^r_ms + c^m_ls c^r_mk| by direct loops.
inline double jacobi_residual(const symred::StructureConstants& sc) {
  const int n = sc.dim();
  double worst = 0.0;
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double sum = 0.0;
          for (int m = 0; m < n; ++m) {
            sum += sc(m, s, k) * sc(r, m, l) + sc(m, k, l) * sc(r, m, s) + sc(m, l, s) * sc(r, m, k);
          }
          worst = std::max(worst, std::abs(sum));
        }
  return worst;
}

// Closed form of the left-invariant frame for so(3) in exponential
// coordinates: X / (1 - exp(-X)) with X = ad_u, X^3 = -|u|^2 X.
inline MatX so3_frame(const Vec3& u) {
  Eigen::Matrix3d x;
  // (ad_u)^r_k = sum_s u^s eps_{skr}
  for (int r = 0; r < 3; ++r)
    for (int k = 0; k < 3; ++k) {
      double v = 0.0;
      for (int s = 0; s < 3; ++s) v += u[s] * epsilon(s, k, r);
      x(r, k) = v;
    }
  const double th = u.norm();
  const double c = th < 1e-6 ? 1.0 / 12.0 : (1.0 - 0.5 * th / std::tan(0.5 * th)) / (th * th);
  return Eigen::Matrix3d::Identity() + 0.5 * x + c * x * x;
}

// Nested cyclic sum {x_a,{x_b,x_c}} + {x_b,{x_c,x_a}} + {x_c,{x_a,x_b}} built
// from the bracket contraction with finite-difference gradients of Pi entries.
inline double nested_jacobiator(const symred::BracketSpec& spec, int a, int b, int c,
                                const symred::PhasePoint& x) {
  auto entry = [&spec](int i, int j) {
    return symred::Observable(
        [&spec, i, j](const symred::PhasePoint& y) { return symred::bivector(spec, y)(i, j); });
  };
  auto coord = [](int i) { return symred::Observable::coordinate(i); };
  return symred::bracket(spec, coord(a), entry(b, c), x) +
         symred::bracket(spec, coord(b), entry(c, a), x) +
         symred::bracket(spec, coord(c), entry(a, b), x);
}

// Uniform field B = (0, 0, b) with p' = p x B, q' = p:
// p(t) = (p0 cos bt, -p0 sin bt), q(t) = (p0/b) (sin bt, cos bt - 1).
struct Larmor {
  double b;
  double p0;
  Vec3 q(double t) const { return {p0 / b * std::sin(b * t), p0 / b * (std::cos(b * t) - 1.0), 0.0}; }
  Vec3 p(double t) const { return {p0 * std::cos(b * t), -p0 * std::sin(b * t), 0.0}; }
  Vec3 centre() const { return {0.0, -p0 / b, 0.0}; }
  double radius() const { return std::abs(p0 / b); }
  double period() const { return 2.0 * std::numbers::pi / std::abs(b); }
};

}  // namespace oracle
