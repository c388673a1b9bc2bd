#pragma once

// Thickness of closed curves: the minimum radius of curvature R1, the minimum
// doubly-critical distance R2 and the thickness radius min(R1, R2 / 2).
//
// Doubly-critical pairs are located per pair of primitives. Segment/segment,
// coplanar segment/arc and coplanar arc/arc pairs are solved in closed form;
// the remaining pairs fall back to root bracketing or a sampled grid with
// Newton refinement of the orthogonality residual.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "gordian/curve.hpp"
#include "gordian/error.hpp"
#include "gordian/vec.hpp"

namespace gordian {

inline constexpr double kOrthogonalityTolerance = 1e-7;
inline constexpr std::size_t kDefaultCriticalSamples = 4096;

/// 1 / max curvature. Empty when the curve contains no arcs.
inline std::optional<double> min_radius_of_curvature(const PiecewiseCurve& curve) {
  std::optional<double> r;
  for (const auto& p : curve.primitives()) {
    if (const auto* arc = std::get_if<Arc>(&p)) r = r ? std::min(*r, arc->radius) : arc->radius;
  }
  return r;
}

struct CriticalPair {
  double s1 = 0.0;
  double s2 = 0.0;
  double distance = std::numeric_limits<double>::infinity();
};

namespace detail {

struct LocalPair {
  double a;  // local arc length on the first primitive
  double b;  // local arc length on the second primitive
  double distance = -1.0;  // exact chord length when known, else negative
};

inline constexpr double kCoplanarTol = 1e-9;

inline void segment_segment(const Segment& s1, const Segment& s2, bool same, std::size_t family_samples,
                            std::vector<LocalPair>& out) {
  if (same) return;
  const double l1 = (s1.end - s1.start).norm();
  const double l2 = (s2.end - s2.start).norm();
  const Vec3 d1 = (s1.end - s1.start) / l1;
  const Vec3 d2 = (s2.end - s2.start) / l2;
  const Vec3 w = s1.start - s2.start;
  const double b = d1.dot(d2);
  const double dd = d1.dot(w);
  const double e = d2.dot(w);
  const double denom = 1.0 - b * b;
  constexpr double tol = 1e-12;
  if (denom > 1e-14) {
    const double s = (b * e - dd) / denom;
    const double t = e + s * b;
    if (s >= -tol && s <= l1 + tol && t >= -tol && t <= l2 + tol) {
      out.push_back({std::clamp(s, 0.0, l1), std::clamp(t, 0.0, l2)});
    }
    return;
  }
  // parallel: every overlapping foot pair is critical
  double lo = 0.0, hi = l1;
  // t(s) = e + s b must lie in [0, l2]
  const double ta = (0.0 - e) / b;
  const double tb = (l2 - e) / b;
  lo = std::max(lo, std::min(ta, tb));
  hi = std::min(hi, std::max(ta, tb));
  if (hi < lo - tol) return;
  const std::size_t n = std::max<std::size_t>(2, family_samples);
  for (std::size_t k = 0; k < n; ++k) {
    const double s = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
    out.push_back({std::clamp(s, 0.0, l1), std::clamp(e + s * b, 0.0, l2)});
  }
}

inline bool arc_local_of(const Arc& arc, const Vec3& q, double& local) {
  const double angle = arc_angle_of(arc, q);
  if (!arc_contains_angle(arc, angle, 1e-10)) return false;
  local = (angle >= kTwoPi - 1e-10 ? 0.0 : std::min(angle, arc.sweep)) * arc.radius;
  return true;
}

/// Simple roots of f on [0, len], bracketed on `n` samples and bisected.
template <typename F>
std::vector<double> bracket_roots(F&& f, double len, std::size_t n) {
  std::vector<double> roots;
  double prev_x = 0.0;
  double prev_f = f(0.0);
  if (prev_f == 0.0) roots.push_back(0.0);
  for (std::size_t k = 1; k <= n; ++k) {
    const double x = len * static_cast<double>(k) / static_cast<double>(n);
    const double fx = f(x);
    if (fx == 0.0) {
      roots.push_back(x);
    } else if ((prev_f < 0.0) != (fx < 0.0) && prev_f != 0.0) {
      double lo = prev_x, hi = x, flo = prev_f;
      for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev_x = x;
    prev_f = fx;
  }
  return roots;
}

inline void segment_arc(const Segment& seg, const Arc& arc, std::size_t samples, std::vector<LocalPair>& out) {
  const double len = (seg.end - seg.start).norm();
  const Vec3 d = (seg.end - seg.start) / len;
  constexpr double tol = 1e-12;
  const bool coplanar = std::abs(d.dot(arc.normal)) < kCoplanarTol &&
                        std::abs((seg.start - arc.center).dot(arc.normal)) < kCoplanarTol;
  if (coplanar) {
    const Vec3 u = arc.normal.cross(d);
    for (double sign : {1.0, -1.0}) {
      const Vec3 q = arc.center + sign * arc.radius * u;
      double b = 0.0;
      if (!arc_local_of(arc, q, b)) continue;
      const double a = (q - seg.start).dot(d);
      if (a >= -tol && a <= len + tol) out.push_back({std::clamp(a, 0.0, len), b});
    }
    return;
  }
  const Primitive p = arc;
  auto residual = [&](double b) {
    const Pose q = primitive_pose(p, b);
    const Vec3 foot = seg.start + d * (q.point - seg.start).dot(d);
    return (foot - q.point).dot(q.tangent);
  };
  for (double b : bracket_roots(residual, primitive_length(p), std::max<std::size_t>(64, samples))) {
    const Vec3 q = primitive_pose(p, b).point;
    const double a = (q - seg.start).dot(d);
    if (a >= -tol && a <= len + tol) out.push_back({std::clamp(a, 0.0, len), b});
  }
}

inline void arc_arc_grid(const Arc& a1, const Arc& a2, bool same, std::size_t samples, std::vector<LocalPair>& out) {
  const Primitive p1 = a1, p2 = a2;
  const double l1 = primitive_length(p1), l2 = primitive_length(p2);
  const std::size_t n = std::clamp<std::size_t>(samples, 16, 256);
  auto residual = [&](double a, double b) -> Vec2 {
    const Pose x = primitive_pose(p1, a);
    const Pose y = primitive_pose(p2, b);
    const Vec3 chord = y.point - x.point;
    return {chord.dot(x.tangent), chord.dot(y.tangent)};
  };
  std::vector<double> grid(n * n);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return grid[i * n + j]; };
  auto param = [&](std::size_t k, double len) { return len * static_cast<double>(k) / static_cast<double>(n - 1); };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) at(i, j) = residual(param(i, l1), param(j, l2)).squaredNorm();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = at(i, j);
      bool is_min = true;
      for (int di = -1; di <= 1 && is_min; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          const long ii = static_cast<long>(i) + di, jj = static_cast<long>(j) + dj;
          if (ii < 0 || jj < 0 || ii >= static_cast<long>(n) || jj >= static_cast<long>(n)) continue;
          if (at(static_cast<std::size_t>(ii), static_cast<std::size_t>(jj)) < v) {
            is_min = false;
            break;
          }
        }
      }
      if (!is_min) continue;
      double a = param(i, l1), b = param(j, l2);
      constexpr double h = 1e-7;
      for (int it = 0; it < 50; ++it) {
        const Vec2 f = residual(a, b);
        if (f.norm() < 1e-15) break;
        Eigen::Matrix2d jac;
        jac.col(0) = (residual(a + h, b) - residual(a - h, b)) / (2 * h);
        jac.col(1) = (residual(a, b + h) - residual(a, b - h)) / (2 * h);
        if (std::abs(jac.determinant()) < 1e-14) break;
        const Vec2 step = jac.inverse() * f;
        a -= step.x();
        b -= step.y();
        if (step.norm() < 1e-15) break;
      }
      if (a < -1e-9 || a > l1 + 1e-9 || b < -1e-9 || b > l2 + 1e-9) continue;
      a = std::clamp(a, 0.0, l1);
      b = std::clamp(b, 0.0, l2);
      if (same && std::abs(a - b) < 1e-9) continue;
      out.push_back({a, b});
    }
  }
}

inline void arc_arc(const Arc& a1, const Arc& a2, bool same, std::size_t samples, std::vector<LocalPair>& out) {
  const bool coplanar = a1.normal.cross(a2.normal).norm() < kCoplanarTol &&
                        std::abs((a2.center - a1.center).dot(a1.normal)) < kCoplanarTol;
  if (!coplanar) {
    arc_arc_grid(a1, a2, same, samples, out);
    return;
  }
  const Vec3 v = a2.center - a1.center;
  if (v.norm() < 1e-12) {
    // concentric: radial pairs form one-parameter families
    const Primitive p1 = a1;
    const std::size_t n = std::max<std::size_t>(16, samples);
    for (std::size_t k = 0; k <= n; ++k) {
      const double a = primitive_length(p1) * static_cast<double>(k) / static_cast<double>(n);
      const Vec3 u = (primitive_pose(p1, a).point - a1.center) / a1.radius;
      for (double sign : {1.0, -1.0}) {
        if (same && sign > 0.0) continue;
        double b = 0.0;
        if (arc_local_of(a2, a2.center + sign * a2.radius * u, b)) {
          out.push_back({a, b, sign > 0.0 ? std::abs(a1.radius - a2.radius) : a1.radius + a2.radius});
        }
      }
    }
    return;
  }
  const Vec3 e = v.normalized();
  for (double s1 : {1.0, -1.0}) {
    double a = 0.0;
    if (!arc_local_of(a1, a1.center + s1 * a1.radius * e, a)) continue;
    for (double s2 : {1.0, -1.0}) {
      double b = 0.0;
      if (arc_local_of(a2, a2.center + s2 * a2.radius * e, b)) {
        out.push_back({a, b, std::abs(v.norm() + s2 * a2.radius - s1 * a1.radius)});
      }
    }
  }
}

inline std::vector<LocalPair> critical_local_pairs(const Primitive& p, const Primitive& q, bool same,
                                                   std::size_t samples) {
  std::vector<LocalPair> out;
  const auto* sp = std::get_if<Segment>(&p);
  const auto* sq = std::get_if<Segment>(&q);
  if (sp && sq) {
    segment_segment(*sp, *sq, same, samples, out);
  } else if (sp) {
    segment_arc(*sp, std::get<Arc>(q), samples, out);
  } else if (sq) {
    std::vector<LocalPair> flipped;
    segment_arc(*sq, std::get<Arc>(p), samples, flipped);
    for (const auto& f : flipped) out.push_back({f.b, f.a});
  } else {
    arc_arc(std::get<Arc>(p), std::get<Arc>(q), same, samples, out);
  }
  return out;
}

}  // namespace detail

/// Orthogonality residual max(|c.T1|, |c.T2|) / |c| of a chord c.
inline double critical_residual(const PiecewiseCurve& curve, double s1, double s2) {
  const Pose a = evaluate(curve, s1);
  const Pose b = evaluate(curve, s2);
  const Vec3 chord = b.point - a.point;
  const double len = chord.norm();
  if (len == 0.0) return 0.0;
  return std::max(std::abs(chord.dot(a.tangent)), std::abs(chord.dot(b.tangent))) / len;
}

/// Closest doubly-critical pair with arc-length separation at least pi/kappa.
/// `samples` sets the per-component density used by the fallback searches.
inline CriticalPair double_critical_min(const PiecewiseCurve& curve, std::size_t samples = kDefaultCriticalSamples) {
  if (!curve.closed()) throw OutOfRange("doubly-critical search needs a closed curve");
  const double exclusion = kPi / curve.kappa() - 1e-9;
  CriticalPair best;
  bool found = false;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    for (std::size_t j = i; j < curve.size(); ++j) {
      const auto& pi = curve.primitives()[i];
      const auto& pj = curve.primitives()[j];
      const double share = primitive_length(pi) / curve.length();
      const auto per = std::max<std::size_t>(16, static_cast<std::size_t>(share * static_cast<double>(samples)));
      for (const auto& lp : detail::critical_local_pairs(pi, pj, i == j, per)) {
        const double s1 = curve.offset(i) + lp.a;
        const double s2 = curve.offset(j) + lp.b;
        if (curve.separation(s1, s2) < exclusion) continue;
        if (critical_residual(curve, s1, s2) > kOrthogonalityTolerance) continue;
        const double d =
            lp.distance >= 0.0 ? lp.distance : (evaluate(curve, s1).point - evaluate(curve, s2).point).norm();
        if (!found || d < best.distance) {
          best = {s1, s2, d};
          found = true;
        }
      }
    }
  }
  if (!found) throw NoCriticalPair("no doubly-critical pair beyond the exclusion window");
  return best;
}

struct ThicknessReport {
  double r1 = std::numeric_limits<double>::infinity();  // +inf when the curve has no arcs
  double r2 = 0.0;
  double tau = 0.0;
  CriticalPair witness;
};

inline ThicknessReport thickness_radius(const PiecewiseCurve& curve, std::size_t samples = kDefaultCriticalSamples) {
  ThicknessReport rep;
  if (auto r = min_radius_of_curvature(curve)) rep.r1 = *r;
  rep.witness = double_critical_min(curve, samples);
  rep.r2 = rep.witness.distance;
  rep.tau = std::min(rep.r1, 0.5 * rep.r2);
  return rep;
}

struct RopelengthOptions {
  bool strict = false;    // throw InfeasibleThickness instead of reporting
  bool thin_only = true;  // require prescribed thickness in [1, 2)
};

struct RopelengthReport {
  double total_length = 0.0;
  double prescribed_thickness = 0.0;
  double rop = 0.0;
  bool feasible = false;
  std::vector<double> component_tau;
};

/// Total core length over a common prescribed thickness (tube diameter).
inline RopelengthReport ropelength(const std::vector<PiecewiseCurve>& link, double prescribed_thickness,
                                   RopelengthOptions options = {}) {
  if (!(prescribed_thickness > 0.0)) throw OutOfRange("thickness must be positive");
  if (options.thin_only && (prescribed_thickness < 1.0 || prescribed_thickness >= 2.0)) {
    throw OutOfRange("thin links need thickness in [1, 2)");
  }
  RopelengthReport rep;
  rep.prescribed_thickness = prescribed_thickness;
  rep.feasible = true;
  for (const auto& c : link) {
    rep.total_length += c.length();
    const double tau = thickness_radius(c).tau;
    rep.component_tau.push_back(tau);
    if (prescribed_thickness > 2.0 * tau * (1.0 + 1e-9)) rep.feasible = false;
  }
  rep.rop = rep.total_length / prescribed_thickness;
  if (options.strict && !rep.feasible) {
    throw InfeasibleThickness("prescribed thickness exceeds twice the thickness radius of a component");
  }
  return rep;
}

/// Core length over ribbon width for a planar curve.
inline double ribbonlength(const PiecewiseCurve& planar_curve, double width) {
  if (!(width > 0.0)) throw OutOfRange("width must be positive");
  if (!supporting_plane(planar_curve)) throw NonPlanarCurve("ribbonlength needs a planar curve");
  return planar_curve.length() / width;
}

}  // namespace gordian
