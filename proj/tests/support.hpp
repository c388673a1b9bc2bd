#pragma once

#include <cmath>
#include <random>

#include "gordian/gordian.hpp"

namespace gordian::testing {

inline PiecewiseCurve unit_circle() {
  return build_curve({Arc{Vec3::Zero(), Vec3::UnitZ(), 1.0, Vec3::UnitX(), kTwoPi, 1}}, true, 1.0);
}

inline PiecewiseCurve straight(const Vec3& a, const Vec3& b, double kappa = 1.0) {
  return build_curve({Segment{a, b}}, false, kappa);
}

/// Stadium in the xy-plane: semicircles of `radius` about (0,0,0) and (-gap,0,0).
inline PiecewiseCurve stadium(double radius, double gap) {
  return build_stadium(Vec3::Zero(), Vec3(-gap, 0.0, 0.0), radius, Vec3::UnitZ(), 1.0);
}

inline Mat3 random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  Eigen::Quaterniond q(n01(rng), n01(rng), n01(rng), n01(rng));
  q.normalize();
  return q.toRotationMatrix();
}

/// Brute-force maximum pairwise distance over dense samples.
inline double brute_diameter(const PiecewiseCurve& c, std::size_t n) {
  const auto pts = sample_points(c, uniform_parameters(c, n));
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::max(best, (pts[i] - pts[j]).norm());
  return best;
}

}  // namespace gordian::testing
