#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

namespace gordian {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Wraps an angle into [0, 2pi).
inline double mod_two_pi(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

/// Wraps an angle into (-pi, pi].
inline double wrap_angle(double a) {
  double r = mod_two_pi(a);
  return r > kPi ? r - kTwoPi : r;
}

/// Rotates v by angle about the unit axis (Rodrigues).
inline Vec3 rotate_about(const Vec3& v, const Vec3& axis, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return v * c + axis.cross(v) * s + axis * axis.dot(v) * (1.0 - c);
}

/// A unit vector orthogonal to the unit vector n, chosen deterministically.
inline Vec3 any_orthogonal(const Vec3& n) {
  const Vec3 helper = std::abs(n.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  return (helper - n * n.dot(helper)).normalized();
}

}  // namespace gordian
