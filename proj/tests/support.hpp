#pragma once

// Independent numeric helpers shared by the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/distributions/chi_squared.hpp>

#include "yarn/geometry.hpp"

namespace yarn::test {

inline constexpr double kPi = std::numbers::pi;

/// Upper-tail p-value of Pearson's chi-square test against equal bin counts.
inline double chi_square_uniform_p(const std::vector<long>& counts) {
  double total = 0.0;
  for (long c : counts) total += static_cast<double>(c);
  const double expected = total / static_cast<double>(counts.size());
  double stat = 0.0;
  for (long c : counts) stat += (c - expected) * (c - expected) / expected;
  boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

struct Circle {
  double cx = 0.0;
  double cy = 0.0;
  double radius = 0.0;
};

/// Algebraic least-squares circle fit (Kasa): solves for (a, b, c) in
/// x^2 + y^2 = a x + b y + c by the 3x3 normal equations.
inline Circle fit_circle(const std::vector<Vec2>& pts) {
  Eigen::Matrix3d ata = Eigen::Matrix3d::Zero();
  Eigen::Vector3d atb = Eigen::Vector3d::Zero();
  for (const Vec2& p : pts) {
    const Eigen::Vector3d row(p.x(), p.y(), 1.0);
    ata += row * row.transpose();
    atb += row * p.squaredNorm();
  }
  const Eigen::Vector3d s = ata.ldlt().solve(atb);
  Circle c;
  c.cx = s(0) / 2.0;
  c.cy = s(1) / 2.0;
  c.radius = std::sqrt(s(2) + c.cx * c.cx + c.cy * c.cy);
  return c;
}

/// Net number of turns of the xy-angle along a sequence of planar vectors.
inline double winding_turns(const std::vector<Vec2>& v) {
  double total = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    double d = std::atan2(v[i].y(), v[i].x()) - std::atan2(v[i - 1].y(), v[i - 1].x());
    while (d > kPi) d -= 2.0 * kPi;
    while (d < -kPi) d += 2.0 * kPi;
    total += d;
  }
  return total / (2.0 * kPi);
}

/// Minimum distance from q to the parametric curve c(t), t in [t0, t1]:
/// dense scan then golden-section refinement around the best sample.
inline double distance_to_curve(const Vec3& q, const std::function<Vec3(double)>& c,
                                double t0, double t1, int samples = 4000) {
  auto f = [&](double t) { return (c(t) - q).norm(); };
  double best_t = t0, best = f(t0);
  const double h = (t1 - t0) / samples;
  for (int i = 1; i <= samples; ++i) {
    const double t = t0 + i * h;
    const double d = f(t);
    if (d < best) {
      best = d;
      best_t = t;
    }
  }
  double a = std::max(t0, best_t - h), b = std::min(t1, best_t + h);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 100; ++it) {
    const double x1 = b - g * (b - a), x2 = a + g * (b - a);
    if (f(x1) < f(x2))
      b = x2;
    else
      a = x1;
  }
  return std::min(best, f(0.5 * (a + b)));
}

/// Distance from q to the closest vertex of any strip.
inline double distance_to_vertices(const Vec3& q, const PolyLineSet& set) {
  double best = INFINITY;
  for (const Strip& s : set.strips)
    for (const Vec3& v : s.vertices) best = std::min(best, (v - q).norm());
  return best;
}

}  // namespace yarn::test
