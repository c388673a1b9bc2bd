#pragma once

// C^1 curves assembled from line segments and circular arcs.
//
// A PiecewiseCurve is arc-length parameterised on [0, length()]. Every arc
// radius must be at least 1/kappa, so the curve satisfies |gamma''| <= kappa
// wherever the second derivative exists.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gordian/error.hpp"
#include "gordian/vec.hpp"

namespace gordian {

inline constexpr double kJointTolerance = 1e-9;
inline constexpr double kCurvatureSlack = 1e-12;

struct Pose {
  Vec3 point = Vec3::Zero();
  Vec3 tangent = Vec3::UnitX();
};

struct Segment {
  Vec3 start = Vec3::Zero();
  Vec3 end = Vec3::Zero();
};

/// Circular arc. Positive orientation turns counterclockwise about `normal`.
struct Arc {
  Vec3 center = Vec3::Zero();
  Vec3 normal = Vec3::UnitZ();
  double radius = 1.0;
  Vec3 start_point = Vec3::UnitX();
  double sweep = 0.0;  // radians, in (0, 2pi]
  int orientation = 1;  // +1 or -1
};

using Primitive = std::variant<Segment, Arc>;

inline double primitive_length(const Primitive& p) {
  if (const auto* seg = std::get_if<Segment>(&p)) return (seg->end - seg->start).norm();
  const auto& arc = std::get<Arc>(p);
  return arc.radius * arc.sweep;
}

/// Unit vector along which the arc parameter increases, at the start point.
inline Vec3 arc_advance_direction(const Arc& arc) {
  const Vec3 radial = (arc.start_point - arc.center) / arc.radius;
  return arc.orientation * arc.normal.cross(radial);
}

/// Pose at arc-length `s` measured from the start of the primitive.
inline Pose primitive_pose(const Primitive& p, double s) {
  if (const auto* seg = std::get_if<Segment>(&p)) {
    const Vec3 d = seg->end - seg->start;
    const double len = d.norm();
    const Vec3 t = d / len;
    return {seg->start + t * s, t};
  }
  const auto& arc = std::get<Arc>(p);
  const double angle = arc.orientation * (s / arc.radius);
  const Vec3 radial = rotate_about(arc.start_point - arc.center, arc.normal, angle);
  const Vec3 unit_radial = radial / arc.radius;
  return {arc.center + radial, arc.orientation * arc.normal.cross(unit_radial)};
}

inline Pose primitive_start(const Primitive& p) { return primitive_pose(p, 0.0); }
inline Pose primitive_end(const Primitive& p) { return primitive_pose(p, primitive_length(p)); }

/// Angle in [0, 2pi) of the circle point nearest to `point`, measured from the
/// arc start in the direction of travel.
inline double arc_angle_of(const Arc& arc, const Vec3& point) {
  const Vec3 u = (arc.start_point - arc.center) / arc.radius;
  const Vec3 v = arc.orientation * arc.normal.cross(u);
  const Vec3 q = point - arc.center;
  return mod_two_pi(std::atan2(q.dot(v), q.dot(u)));
}

/// Whether a circle angle lies on the arc, with angular slack `tol`.
inline bool arc_contains_angle(const Arc& arc, double angle, double tol = 1e-12) {
  return angle <= arc.sweep + tol || angle >= kTwoPi - tol;
}

inline Primitive transform_primitive(const Primitive& p, const Mat3& rotation, const Vec3& translation) {
  if (const auto* seg = std::get_if<Segment>(&p)) {
    return Segment{rotation * seg->start + translation, rotation * seg->end + translation};
  }
  Arc arc = std::get<Arc>(p);
  arc.center = rotation * arc.center + translation;
  arc.start_point = rotation * arc.start_point + translation;
  arc.normal = rotation * arc.normal;
  return arc;
}

class PiecewiseCurve;
PiecewiseCurve build_curve(std::vector<Primitive> primitives, bool closed, double kappa);

class PiecewiseCurve {
 public:
  const std::vector<Primitive>& primitives() const noexcept { return primitives_; }
  bool closed() const noexcept { return closed_; }
  double kappa() const noexcept { return kappa_; }
  double length() const noexcept { return offsets_.back(); }
  std::size_t size() const noexcept { return primitives_.size(); }

  /// Arc-length position where primitive `i` begins.
  double offset(std::size_t i) const { return offsets_.at(i); }

  /// Primitive index and local arc length for a global parameter.
  std::pair<std::size_t, double> locate(double s) const {
    s = std::clamp(s, 0.0, length());
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), s);
    std::size_t i = static_cast<std::size_t>(std::distance(offsets_.begin(), it));
    i = i == 0 ? 0 : i - 1;
    if (i >= primitives_.size()) i = primitives_.size() - 1;
    return {i, s - offsets_[i]};
  }

  /// Wraps a parameter into [0, length) for closed curves; clamps otherwise.
  double normalize(double s) const {
    if (closed_) {
      double r = std::fmod(s, length());
      return r < 0.0 ? r + length() : r;
    }
    return std::clamp(s, 0.0, length());
  }

  /// Arc-length separation of two parameters, the shorter way round when closed.
  double separation(double s1, double s2) const {
    const double d = std::abs(s1 - s2);
    return closed_ ? std::min(d, length() - d) : d;
  }

 private:
  friend PiecewiseCurve build_curve(std::vector<Primitive> primitives, bool closed, double kappa);

  PiecewiseCurve(std::vector<Primitive> primitives, bool closed, double kappa)
      : primitives_(std::move(primitives)), closed_(closed), kappa_(kappa) {
    offsets_.reserve(primitives_.size() + 1);
    offsets_.push_back(0.0);
    for (const auto& p : primitives_) offsets_.push_back(offsets_.back() + primitive_length(p));
  }

  std::vector<Primitive> primitives_;
  std::vector<double> offsets_;
  bool closed_ = false;
  double kappa_ = 1.0;
};

namespace detail {

inline void check_primitive(const Primitive& p, double kappa, std::size_t index) {
  const std::string where = " (primitive " + std::to_string(index) + ")";
  if (const auto* seg = std::get_if<Segment>(&p)) {
    if (!((seg->end - seg->start).norm() > kCurvatureSlack)) {
      throw DegeneratePrimitive("segment has zero length" + where);
    }
    return;
  }
  const auto& arc = std::get<Arc>(p);
  if (!(arc.radius > 0.0) || !(arc.sweep > 0.0)) {
    throw DegeneratePrimitive("arc needs positive radius and sweep" + where);
  }
  if (arc.sweep > kTwoPi + 1e-12) throw DegeneratePrimitive("arc sweep exceeds 2pi" + where);
  if (arc.orientation != 1 && arc.orientation != -1) {
    throw DegeneratePrimitive("arc orientation must be +1 or -1" + where);
  }
  if (std::abs(arc.normal.norm() - 1.0) > kJointTolerance) {
    throw DegeneratePrimitive("arc normal is not a unit vector" + where);
  }
  const Vec3 radial = arc.start_point - arc.center;
  if (std::abs(radial.norm() - arc.radius) > kJointTolerance) {
    throw DegeneratePrimitive("arc start point is off the circle" + where);
  }
  if (std::abs(radial.dot(arc.normal)) > kJointTolerance) {
    throw DegeneratePrimitive("arc start point is out of the arc plane" + where);
  }
  if (arc.radius < 1.0 / kappa - kCurvatureSlack) {
    throw CurvatureViolation("arc radius " + std::to_string(arc.radius) + " below 1/kappa" + where);
  }
}

inline void check_joint(const Primitive& a, const Primitive& b, std::size_t index) {
  const Pose end = primitive_end(a);
  const Pose start = primitive_start(b);
  const double gap = (end.point - start.point).norm();
  const double turn = (end.tangent - start.tangent).norm();
  if (gap > kJointTolerance || turn > kJointTolerance) {
    throw JointMismatch("joint " + std::to_string(index) + ": position gap " + std::to_string(gap) +
                        ", tangent gap " + std::to_string(turn));
  }
}

}  // namespace detail

/// Validates primitives and assembles an arc-length parameterised curve.
inline PiecewiseCurve build_curve(std::vector<Primitive> primitives, bool closed, double kappa) {
  if (!(kappa > 0.0)) throw CurvatureViolation("kappa must be positive");
  if (primitives.empty()) throw DegeneratePrimitive("curve has no primitives");
  for (std::size_t i = 0; i < primitives.size(); ++i) detail::check_primitive(primitives[i], kappa, i);
  for (std::size_t i = 0; i + 1 < primitives.size(); ++i) {
    detail::check_joint(primitives[i], primitives[i + 1], i);
  }
  if (closed) detail::check_joint(primitives.back(), primitives.front(), primitives.size() - 1);
  return PiecewiseCurve(std::move(primitives), closed, kappa);
}

inline double length(const PiecewiseCurve& curve) { return curve.length(); }

/// Point and unit tangent at arc length `s`.
inline Pose evaluate(const PiecewiseCurve& curve, double s) {
  constexpr double kSlack = 1e-12;
  if (s < -kSlack || s > curve.length() + kSlack) {
    throw OutOfRange("parameter " + std::to_string(s) + " outside [0, " + std::to_string(curve.length()) + "]");
  }
  const auto [i, local] = curve.locate(s);
  return primitive_pose(curve.primitives()[i], local);
}

/// `n` arc-length-uniform parameters. Closed curves omit the duplicate endpoint.
inline std::vector<double> uniform_parameters(const PiecewiseCurve& curve, std::size_t n) {
  std::vector<double> s(n);
  if (n == 0) return s;
  if (n == 1) return {0.0};
  const double denom = curve.closed() ? static_cast<double>(n) : static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) s[i] = curve.length() * static_cast<double>(i) / denom;
  return s;
}

inline std::vector<Vec3> sample_points(const PiecewiseCurve& curve, const std::vector<double>& params) {
  std::vector<Vec3> pts;
  pts.reserve(params.size());
  for (double s : params) pts.push_back(evaluate(curve, s).point);
  return pts;
}

inline PiecewiseCurve transformed(const PiecewiseCurve& curve, const Mat3& rotation, const Vec3& translation) {
  std::vector<Primitive> out;
  out.reserve(curve.size());
  for (const auto& p : curve.primitives()) out.push_back(transform_primitive(p, rotation, translation));
  return build_curve(std::move(out), curve.closed(), curve.kappa());
}

/// Uniform scaling about the origin; kappa scales by 1/factor.
inline PiecewiseCurve scaled(const PiecewiseCurve& curve, double factor) {
  std::vector<Primitive> out;
  for (const auto& p : curve.primitives()) {
    if (const auto* seg = std::get_if<Segment>(&p)) {
      out.push_back(Segment{seg->start * factor, seg->end * factor});
    } else {
      Arc arc = std::get<Arc>(p);
      arc.center *= factor;
      arc.start_point *= factor;
      arc.radius *= factor;
      out.push_back(arc);
    }
  }
  return build_curve(std::move(out), curve.closed(), curve.kappa() / factor);
}

/// Same point set traversed backwards.
inline PiecewiseCurve reversed(const PiecewiseCurve& curve) {
  std::vector<Primitive> out;
  for (auto it = curve.primitives().rbegin(); it != curve.primitives().rend(); ++it) {
    if (const auto* seg = std::get_if<Segment>(&*it)) {
      out.push_back(Segment{seg->end, seg->start});
    } else {
      Arc arc = std::get<Arc>(*it);
      arc.start_point = primitive_end(arc).point;
      arc.orientation = -arc.orientation;
      out.push_back(arc);
    }
  }
  return build_curve(std::move(out), curve.closed(), curve.kappa());
}

namespace detail {

/// Portion [a, b] (local arc length) of one primitive.
inline std::optional<Primitive> slice_primitive(const Primitive& p, double a, double b) {
  if (b - a <= kCurvatureSlack) return std::nullopt;
  if (std::holds_alternative<Segment>(p)) {
    return Segment{primitive_pose(p, a).point, primitive_pose(p, b).point};
  }
  Arc arc = std::get<Arc>(p);
  arc.start_point = primitive_pose(p, a).point;
  arc.sweep = (b - a) / arc.radius;
  return arc;
}

}  // namespace detail

/// Open curve following `curve` from s0 to s1. On closed curves the slice wraps
/// past the seam when s1 < s0.
inline PiecewiseCurve subcurve(const PiecewiseCurve& curve, double s0, double s1) {
  std::vector<std::pair<double, double>> spans;
  if (s1 >= s0) {
    spans.emplace_back(s0, s1);
  } else {
    if (!curve.closed()) throw OutOfRange("subcurve end precedes start on an open curve");
    spans.emplace_back(s0, curve.length());
    spans.emplace_back(0.0, s1);
  }
  std::vector<Primitive> out;
  for (const auto& [a, b] : spans) {
    for (std::size_t i = 0; i < curve.size(); ++i) {
      const double lo = std::max(a, curve.offset(i));
      const double hi = std::min(b, curve.offset(i + 1));
      if (auto piece = detail::slice_primitive(curve.primitives()[i], lo - curve.offset(i), hi - curve.offset(i))) {
        out.push_back(*piece);
      }
    }
  }
  return build_curve(std::move(out), false, curve.kappa());
}

/// Concatenates open curves end to end (joints are validated).
inline PiecewiseCurve concatenate(const std::vector<PiecewiseCurve>& parts, bool closed) {
  std::vector<Primitive> out;
  double kappa = std::numeric_limits<double>::infinity();
  for (const auto& c : parts) {
    out.insert(out.end(), c.primitives().begin(), c.primitives().end());
    kappa = std::min(kappa, c.kappa());
  }
  return build_curve(std::move(out), closed, kappa);
}

struct ClosestPoint {
  double distance = std::numeric_limits<double>::infinity();
  double s = 0.0;
};

inline ClosestPoint closest_on_primitive(const Primitive& p, const Vec3& q) {
  if (const auto* seg = std::get_if<Segment>(&p)) {
    const Vec3 d = seg->end - seg->start;
    const double len = d.norm();
    const double t = std::clamp((q - seg->start).dot(d / len), 0.0, len);
    return {(seg->start + d / len * t - q).norm(), t};
  }
  const auto& arc = std::get<Arc>(p);
  const Vec3 rel = q - arc.center;
  const Vec3 in_plane = rel - arc.normal * rel.dot(arc.normal);
  ClosestPoint best;
  auto consider = [&](double local) {
    const double d = (primitive_pose(p, local).point - q).norm();
    if (d < best.distance) best = {d, local};
  };
  if (in_plane.norm() > 1e-14) {
    const double angle = arc_angle_of(arc, q);
    if (arc_contains_angle(arc, angle)) consider(angle >= kTwoPi - 1e-12 ? 0.0 : angle * arc.radius);
  } else {
    consider(0.0);  // every circle point is equidistant
  }
  consider(0.0);
  consider(primitive_length(p));
  return best;
}

/// Exact distance from a point to the curve and the parameter realising it.
inline ClosestPoint closest_point(const PiecewiseCurve& curve, const Vec3& q) {
  ClosestPoint best;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    ClosestPoint c = closest_on_primitive(curve.primitives()[i], q);
    if (c.distance < best.distance) best = {c.distance, c.s + curve.offset(i)};
  }
  return best;
}

namespace detail {

/// Golden-section maximisation of f on [lo, hi].
template <typename F>
double golden_max(F&& f, double lo, double hi, int iterations = 80) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iterations && b - a > 1e-15; ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return fc > fd ? c : d;
}

/// Parameter interval [s - h, s + h], clipped for open curves.
inline std::pair<double, double> local_window(const PiecewiseCurve& curve, double s, double h) {
  if (curve.closed()) return {s - h, s + h};
  return {std::max(0.0, s - h), std::min(curve.length(), s + h)};
}

/// Coordinate-wise local optimisation of sign * |gamma(s1) - gamma(s2)|.
inline std::pair<double, double> refine_pair(const PiecewiseCurve& curve, double s1, double s2, double h,
                                             double sign) {
  auto point = [&](double s) { return evaluate(curve, curve.normalize(s)).point; };
  for (int iter = 0; iter < 24; ++iter) {
    const Vec3 p2 = point(s2);
    auto [a1, b1] = local_window(curve, s1, h);
    const double n1 = golden_max([&](double s) { return sign * (point(s) - p2).norm(); }, a1, b1);
    const Vec3 p1 = point(n1);
    auto [a2, b2] = local_window(curve, s2, h);
    const double n2 = golden_max([&](double s) { return sign * (point(s) - p1).norm(); }, a2, b2);
    const bool settled = std::abs(n1 - s1) < 1e-13 && std::abs(n2 - s2) < 1e-13;
    s1 = n1;
    s2 = n2;
    if (settled) break;
  }
  return {curve.normalize(s1), curve.normalize(s2)};
}

}  // namespace detail

/// Largest pairwise distance over `n_samples` uniform samples, refined by local
/// maximisation. A lower bound on the true diameter.
inline double diameter(const PiecewiseCurve& curve, std::size_t n_samples) {
  if (n_samples < 2) throw OutOfRange("diameter needs at least two samples");
  const auto params = uniform_parameters(curve, n_samples);
  const auto pts = sample_points(curve, params);
  double best = -1.0;
  std::size_t bi = 0, bj = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double d = (pts[i] - pts[j]).squaredNorm();
      if (d > best) {
        best = d;
        bi = i;
        bj = j;
      }
    }
  }
  best = std::sqrt(best);
  const double h = curve.length() / static_cast<double>(n_samples - 1);
  const auto [s1, s2] = detail::refine_pair(curve, params[bi], params[bj], h, +1.0);
  const double refined = (evaluate(curve, s1).point - evaluate(curve, s2).point).norm();
  return std::max(best, refined);
}

struct IntersectionWitness {
  double s1 = 0.0;
  double s2 = 0.0;
  double distance = 0.0;
};

struct SelfIntersection {
  bool intersects = false;
  std::optional<IntersectionWitness> witness;
};

/// Detects points closer than `clearance` whose arc-length separation is at
/// least pi/kappa. Closer pairs are the ordinary neighbourhood of a point.
inline SelfIntersection self_intersects(const PiecewiseCurve& curve, double clearance, std::size_t n_samples = 0) {
  if (clearance < 0.0) throw OutOfRange("clearance must be non-negative");
  const double exclusion = kPi / curve.kappa() - 1e-9;
  if (n_samples == 0) {
    n_samples = std::max<std::size_t>(256, static_cast<std::size_t>(std::ceil(curve.length() * curve.kappa() * 64.0)));
  }
  const auto params = uniform_parameters(curve, n_samples);
  const auto pts = sample_points(curve, params);
  const double h = curve.length() / static_cast<double>(n_samples - (curve.closed() ? 0 : 1));
  const double gate = clearance + h;

  struct Candidate {
    double d;
    std::size_t i, j;
  };
  std::vector<Candidate> candidates;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (curve.separation(params[i], params[j]) < exclusion) continue;
      const double d = (pts[i] - pts[j]).norm();
      if (d <= gate) candidates.push_back({d, i, j});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) { return a.d < b.d; });
  if (candidates.size() > 64) candidates.resize(64);

  SelfIntersection result;
  for (const auto& c : candidates) {
    auto [s1, s2] = detail::refine_pair(curve, params[c.i], params[c.j], h, -1.0);
    double d = (evaluate(curve, s1).point - evaluate(curve, s2).point).norm();
    if (curve.separation(s1, s2) < exclusion || c.d < d) {
      s1 = params[c.i];
      s2 = params[c.j];
      d = c.d;
    }
    if (d <= clearance && (!result.witness || d < result.witness->distance)) {
      result.intersects = true;
      result.witness = IntersectionWitness{s1, s2, d};
    }
  }
  return result;
}

/// Plane containing every primitive, if one exists (within `tol`).
struct Plane {
  Vec3 point = Vec3::Zero();
  Vec3 normal = Vec3::UnitZ();

  double height(const Vec3& p) const { return (p - point).dot(normal); }
};

inline std::optional<Plane> supporting_plane(const PiecewiseCurve& curve, double tol = 1e-9) {
  std::vector<Vec3> pts;
  std::optional<Vec3> normal;
  for (const auto& p : curve.primitives()) {
    pts.push_back(primitive_start(p).point);
    pts.push_back(primitive_end(p).point);
    if (const auto* arc = std::get_if<Arc>(&p)) {
      pts.push_back(arc->center);
      if (!normal) normal = arc->normal;
    }
  }
  if (!normal) {
    // all segments: use the first non-degenerate cross product of tangents
    for (std::size_t i = 0; i < curve.size() && !normal; ++i) {
      const Vec3 ti = primitive_start(curve.primitives()[i]).tangent;
      for (std::size_t j = i + 1; j < curve.size(); ++j) {
        const Vec3 c = ti.cross(primitive_start(curve.primitives()[j]).tangent);
        if (c.norm() > 1e-9) {
          normal = c.normalized();
          break;
        }
      }
    }
    if (!normal) normal = any_orthogonal(primitive_start(curve.primitives().front()).tangent);
  }
  Plane plane{pts.front(), *normal};
  for (const auto& q : pts) {
    if (std::abs(plane.height(q)) > tol) return std::nullopt;
  }
  for (const auto& p : curve.primitives()) {
    if (const auto* arc = std::get_if<Arc>(&p)) {
      if (arc->normal.cross(plane.normal).norm() > tol) return std::nullopt;
    }
  }
  return plane;
}

}  // namespace gordian
