#pragma once

// Obstruction regions built from two balls of radius 1/kappa whose boundary
// spheres meet in a circle C, and the checks that certify an unlink as
// non-separable.
//
//   I  open intersection of the balls
//   U  union of the closed balls
//   E  int(U) minus cl(I)
//   R  open spindle swept by the short arcs of radius-1/kappa circles through
//      an antipodal pair x, y of C
//   K  I minus cl(R)
//
// Open and closed sets are separated by a 1e-9 boundary band: points inside
// the band belong to neither the open set nor the complement of the closure.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "gordian/curve.hpp"
#include "gordian/error.hpp"
#include "gordian/thickness.hpp"
#include "gordian/vec.hpp"

namespace gordian {

inline constexpr double kRegionBand = 1e-9;

struct RegionConfig {
  Vec3 center1 = Vec3(0.0, 0.0, std::sqrt(3.0) / 2.0);
  Vec3 center2 = Vec3(0.0, 0.0, -std::sqrt(3.0) / 2.0);
  double kappa = 1.0;
  double pair_angle = 0.0;  // selects the antipodal pair on C
};

enum class Region { kI, kU, kE, kR, kK, kEK };

/// Quantities derived from a RegionConfig.
struct RegionGeometry {
  double ball_radius = 1.0;
  Vec3 mid = Vec3::Zero();        // centre of C and midpoint of x, y
  Vec3 axis = Vec3::UnitZ();      // unit, from center2 to center1
  double circle_radius = 0.0;     // radius of C
  Vec3 x = Vec3::Zero();
  Vec3 y = Vec3::Zero();
  Vec3 chord_dir = Vec3::UnitX();  // unit, from y to x
  double half_chord = 0.0;         // |x - y| / 2
  double spindle_offset = 0.0;     // distance from mid to the short-arc centres
};

inline RegionGeometry region_geometry(const RegionConfig& cfg) {
  if (!(cfg.kappa > 0.0)) throw InvalidConfig("kappa must be positive");
  const double r = 1.0 / cfg.kappa;
  const Vec3 d = cfg.center1 - cfg.center2;
  const double dist = d.norm();
  if (!(dist > 0.0) || !(dist < 2.0 * r)) {
    throw InvalidConfig("ball centres must be distinct and closer than 2/kappa");
  }
  RegionGeometry g;
  g.ball_radius = r;
  g.mid = 0.5 * (cfg.center1 + cfg.center2);
  g.axis = d / dist;
  g.circle_radius = std::sqrt(r * r - 0.25 * dist * dist);
  const Vec3 e1 = any_orthogonal(g.axis);
  const Vec3 e2 = g.axis.cross(e1);
  const Vec3 dir = std::cos(cfg.pair_angle) * e1 + std::sin(cfg.pair_angle) * e2;
  g.x = g.mid + g.circle_radius * dir;
  g.y = g.mid - g.circle_radius * dir;
  g.chord_dir = dir;
  g.half_chord = g.circle_radius;
  g.spindle_offset = std::sqrt(r * r - g.half_chord * g.half_chord);
  return g;
}

/// Spindle about the chord [x, y]: a point at axial offset u and radial
/// distance rho lies in the open spindle iff (rho + c)^2 + u^2 < r^2.
struct Spindle {
  Vec3 mid;
  Vec3 chord_dir;
  double half_chord;
  double offset;  // c = sqrt(r^2 - a^2)
  double radius;  // r = 1/kappa

  static Spindle through(const Vec3& x, const Vec3& y, double kappa) {
    const double r = 1.0 / kappa;
    const double a = 0.5 * (x - y).norm();
    return {0.5 * (x + y), (x - y).normalized(), a, std::sqrt(std::max(0.0, r * r - a * a)), r};
  }

  /// Signed distance-like margin: negative inside, positive outside.
  double margin(const Vec3& p) const {
    const Vec3 rel = p - mid;
    const double u = rel.dot(chord_dir);
    const double rho = (rel - u * chord_dir).norm();
    return std::hypot(rho + offset, u) - radius;
  }

  bool contains_open(const Vec3& p) const { return margin(p) < -kRegionBand; }
  bool contains_closed(const Vec3& p) const { return margin(p) <= kRegionBand; }
};

inline bool region_membership(const Vec3& p, const RegionConfig& cfg, Region region) {
  const RegionGeometry g = region_geometry(cfg);
  const double r = g.ball_radius;
  const double d1 = (p - cfg.center1).norm();
  const double d2 = (p - cfg.center2).norm();
  const bool open1 = d1 < r - kRegionBand, open2 = d2 < r - kRegionBand;
  const bool closed1 = d1 <= r + kRegionBand, closed2 = d2 <= r + kRegionBand;
  const Spindle spindle{g.mid, g.chord_dir, g.half_chord, g.spindle_offset, r};

  const bool in_i = open1 && open2;
  const bool in_cl_i = closed1 && closed2;
  const bool in_e = (open1 || open2) && !in_cl_i;
  const bool in_k = in_i && !spindle.contains_closed(p);
  switch (region) {
    case Region::kI: return in_i;
    case Region::kU: return closed1 || closed2;
    case Region::kE: return in_e;
    case Region::kR: return spindle.contains_open(p);
    case Region::kK: return in_k;
    case Region::kEK: return in_e || in_k;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Short and long arcs

enum class ArcKind { kShort, kLong, kNeither };

struct ArcEvidence {
  double max_height = 0.0;  // signed height above the crossing plane
  double cap_height = 0.0;  // height of the reference sphere's top
  bool in_closed_spindle = false;
  bool on_sphere = false;
};

struct ArcClassification {
  ArcKind kind = ArcKind::kNeither;
  ArcEvidence evidence;
  double kappa = 1.0;
};

namespace detail {

/// Whether every sample lies on one radius-r sphere through x and y.
inline bool on_common_sphere(const std::vector<Vec3>& pts, const Spindle& sp, double tol) {
  // candidate centres: mid + c w, w a unit vector orthogonal to the chord
  const Vec3 probe = pts[pts.size() / 2] - sp.mid;
  const Vec3 q = probe - probe.dot(sp.chord_dir) * sp.chord_dir;
  if (q.norm() < 1e-12 || sp.offset < 1e-12) return false;
  const Vec3 qh = q.normalized();
  const Vec3 ortho = sp.chord_dir.cross(qh);
  const double target = (probe.squaredNorm() + sp.offset * sp.offset - sp.radius * sp.radius) / (2.0 * sp.offset);
  const double cos_phi = target / q.norm();
  if (std::abs(cos_phi) > 1.0 + 1e-12) return false;
  const double phi = std::acos(std::clamp(cos_phi, -1.0, 1.0));
  for (double sign : {1.0, -1.0}) {
    const Vec3 w = std::cos(phi) * qh + sign * std::sin(phi) * ortho;
    const Vec3 center = sp.mid + sp.offset * w;
    const bool all = std::all_of(pts.begin(), pts.end(),
                                 [&](const Vec3& p) { return std::abs((p - center).norm() - sp.radius) <= tol; });
    if (all) return true;
  }
  return false;
}

}  // namespace detail

/// Classifies an open arc joining x and y relative to the crossing plane. The
/// reference sphere has radius 1/kappa, passes through x and y and has its
/// centre below the plane on the normal through their midpoint.
inline ArcClassification classify_arc(const PiecewiseCurve& arc, const Vec3& x, const Vec3& y, const Plane& plane,
                                      std::size_t samples = 512) {
  if (arc.closed()) throw EndpointMismatch("expected an open arc");
  const Vec3 a = evaluate(arc, 0.0).point;
  const Vec3 b = evaluate(arc, arc.length()).point;
  const bool forward = (a - x).norm() <= kJointTolerance && (b - y).norm() <= kJointTolerance;
  const bool backward = (a - y).norm() <= kJointTolerance && (b - x).norm() <= kJointTolerance;
  if (!forward && !backward) throw EndpointMismatch("arc endpoints differ from the crossing points");
  const double kappa = arc.kappa();
  if (!((x - y).norm() < 2.0 / kappa)) throw InvalidConfig("crossing points must be closer than 2/kappa");

  const Spindle sp = Spindle::through(x, y, kappa);
  const Vec3 n = plane.normal.normalized();
  const auto pts = sample_points(arc, uniform_parameters(arc, std::max<std::size_t>(samples, 3)));

  ArcClassification out;
  out.kappa = kappa;
  out.evidence.cap_height = sp.radius - sp.offset;
  out.evidence.max_height = -std::numeric_limits<double>::infinity();
  for (const auto& p : pts) out.evidence.max_height = std::max(out.evidence.max_height, (p - plane.point).dot(n));
  out.evidence.in_closed_spindle =
      std::all_of(pts.begin(), pts.end(), [&](const Vec3& p) { return sp.contains_closed(p); });
  out.evidence.on_sphere = detail::on_common_sphere(pts, sp, 1e-6);

  if (out.evidence.max_height > out.evidence.cap_height + kRegionBand) {
    out.kind = ArcKind::kLong;
  } else if (out.evidence.in_closed_spindle || out.evidence.on_sphere) {
    out.kind = ArcKind::kShort;
  }
  return out;
}

struct DiameterCheck {
  double diameter = 0.0;
  double bound = 2.0;
  bool satisfied = false;
};

/// A long arc must have diameter at least 2/kappa.
inline DiameterCheck check_long_arc_diameter(const PiecewiseCurve& arc, const ArcClassification& cls,
                                             std::size_t samples = 2048) {
  if (cls.kind != ArcKind::kLong) throw NotLongArc("diameter bound applies to long arcs only");
  DiameterCheck out;
  out.bound = 2.0 / cls.kappa;
  out.diameter = diameter(arc, samples);
  out.satisfied = out.diameter >= out.bound - 1e-6;
  return out;
}

// ---------------------------------------------------------------------------
// Certificates

struct Premise {
  std::string name;
  bool evaluated = false;
  bool passed = false;
  double slack = 0.0;  // >= 0 when the check holds
  std::string detail;
};

struct GordianCertificate {
  double tau = 0.0;
  std::vector<Premise> premises;
  bool pass = false;

  const Premise* find(const std::string& name) const {
    for (const auto& p : premises)
      if (p.name == name) return &p;
    return nullptr;
  }

  std::vector<std::string> failed() const {
    std::vector<std::string> out;
    for (const auto& p : premises)
      if (p.evaluated && !p.passed) out.push_back(p.name);
    return out;
  }
};

namespace premise {
inline constexpr const char* kOrthogonalCrossings = "orthogonal_crossings";
inline constexpr const char* kCrossingSeparation = "crossing_separation";
inline constexpr const char* kLongArcs = "long_arcs";
inline constexpr const char* kStadiumEnclosesDisks = "stadium_encloses_disks";
inline constexpr const char* kThicknessFeasible = "thickness_feasible";
inline constexpr const char* kCoresSeparated = "cores_separated";
}  // namespace premise

/// Parameters where a closed curve crosses the plane.
inline std::vector<double> plane_crossings(const PiecewiseCurve& curve, const Plane& plane,
                                           std::size_t samples = 4096) {
  std::vector<double> out;
  auto height = [&](double s) { return plane.height(evaluate(curve, curve.normalize(s)).point); };
  const double len = curve.length();
  const std::size_t n = std::max<std::size_t>(samples, 8);
  const std::size_t last = curve.closed() ? n : n - 1;
  auto param = [&](std::size_t k) { return len * static_cast<double>(k) / static_cast<double>(curve.closed() ? n : n - 1); };
  constexpr double kFlat = 1e-12;
  for (std::size_t k = 0; k < last; ++k) {
    double lo = param(k), hi = param(k + 1);
    double hlo = height(lo), hhi = height(hi);
    if (std::abs(hlo) <= kFlat) {
      // count exact hits once, and only where the curve actually passes through
      if (std::abs(height(lo - 1e-6 * len)) > kFlat && std::abs(height(lo + 1e-6 * len)) > kFlat &&
          (height(lo - 1e-6 * len) < 0.0) != (height(lo + 1e-6 * len) < 0.0)) {
        out.push_back(curve.normalize(lo));
      }
      continue;
    }
    if (std::abs(hhi) <= kFlat || (hlo < 0.0) == (hhi < 0.0)) continue;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double hm = height(mid);
      if ((hm < 0.0) == (hlo < 0.0)) {
        lo = mid;
        hlo = hm;
      } else {
        hi = mid;
      }
    }
    out.push_back(curve.normalize(0.5 * (lo + hi)));
  }
  return out;
}

/// Minimum distance between two curves: dense scan of `a` against exact
/// point-to-curve distances on `b`, refined locally.
inline double min_curve_distance(const PiecewiseCurve& a, const PiecewiseCurve& b, std::size_t samples = 2048) {
  const auto params = uniform_parameters(a, samples);
  double best = std::numeric_limits<double>::infinity();
  double best_s = 0.0;
  for (double s : params) {
    const double d = closest_point(b, evaluate(a, s).point).distance;
    if (d < best) {
      best = d;
      best_s = s;
    }
  }
  const double h = a.length() / static_cast<double>(samples);
  auto [lo, hi] = detail::local_window(a, best_s, h);
  const double s = detail::golden_max(
      [&](double t) { return -closest_point(b, evaluate(a, a.normalize(t)).point).distance; }, lo, hi);
  return std::min(best, closest_point(b, evaluate(a, a.normalize(s)).point).distance);
}

/// Winding number of a closed planar polygon about `p`, in the plane frame (u, v).
inline int winding_number(const std::vector<Vec2>& poly, const Vec2& p) {
  int wn = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % poly.size()];
    const double cross = (b - a).x() * (p - a).y() - (p - a).x() * (b - a).y();
    if (a.y() <= p.y()) {
      if (b.y() > p.y() && cross > 0.0) ++wn;
    } else if (b.y() <= p.y() && cross < 0.0) {
      --wn;
    }
  }
  return wn;
}

/// Checks the premises under which gamma cannot be pulled out of beta.
///
///  1. gamma crosses the plane exactly twice, orthogonally
///  2. the crossings x, y are 2 tau apart and 2 tau < 2/kappa
///  3. the parts of gamma above and below the plane are long arcs whose
///     diameter is at least 2/kappa
///  4. beta lies in the plane, is the stadium at distance 2 tau from [x, y],
///     and encloses the radius-tau disks about x and y
///  5. thickness 2 tau is feasible for both cores
///  6. the cores stay at least 2 tau apart
inline GordianCertificate certify_unlink(const PiecewiseCurve& gamma, const PiecewiseCurve& beta, const Plane& plane,
                                         double tau) {
  GordianCertificate cert;
  cert.tau = tau;
  const Vec3 n = plane.normal.normalized();
  const Plane p{plane.point, n};
  const double kappa = gamma.kappa();
  const double thickness = 2.0 * tau;

  // 1
  Premise crossing{premise::kOrthogonalCrossings, true, false, 0.0, {}};
  const auto crossings = plane_crossings(gamma, p);
  double min_alignment = 0.0;
  if (crossings.size() == 2) {
    min_alignment = 1.0;
    for (double s : crossings) min_alignment = std::min(min_alignment, std::abs(evaluate(gamma, s).tangent.dot(n)));
    crossing.slack = min_alignment - (1.0 - 1e-9);
    crossing.passed = crossing.slack >= 0.0;
  } else {
    crossing.slack = -1.0;
  }
  crossing.detail = "crossings=" + std::to_string(crossings.size()) + " min|T.n|=" + std::to_string(min_alignment);
  cert.premises.push_back(crossing);

  const bool have_pair = crossings.size() == 2;
  Vec3 x = Vec3::Zero(), y = Vec3::Zero();
  if (have_pair) {
    x = evaluate(gamma, crossings[0]).point;
    y = evaluate(gamma, crossings[1]).point;
  }

  // 2
  Premise separation{premise::kCrossingSeparation, false, false, 0.0, {}};
  if (have_pair) {
    separation.evaluated = true;
    const double gap = (x - y).norm();
    separation.slack = std::min(1e-9 - std::abs(gap - thickness), 2.0 / kappa - thickness);
    separation.passed = std::abs(gap - thickness) <= 1e-9 && thickness < 2.0 / kappa;
    separation.detail = "|x-y|=" + std::to_string(gap);
  }
  cert.premises.push_back(separation);

  // 3
  Premise long_arcs{premise::kLongArcs, false, false, 0.0, {}};
  if (have_pair && (x - y).norm() < 2.0 / kappa) {
    long_arcs.evaluated = true;
    long_arcs.passed = true;
    long_arcs.slack = std::numeric_limits<double>::infinity();
    const PiecewiseCurve first = subcurve(gamma, crossings[0], crossings[1]);
    const PiecewiseCurve second = subcurve(gamma, crossings[1], crossings[0]);
    for (const auto* part : {&first, &second}) {
      const double mid_height = p.height(evaluate(*part, 0.5 * part->length()).point);
      const Plane side{p.point, mid_height >= 0.0 ? n : Vec3(-n)};
      const auto cls = classify_arc(*part, x, y, side);
      double slack = cls.evidence.max_height - cls.evidence.cap_height;
      bool ok = cls.kind == ArcKind::kLong;
      if (ok) {
        const auto diam = check_long_arc_diameter(*part, cls);
        ok = diam.satisfied;
        slack = std::min(slack, diam.diameter - (diam.bound - 1e-6));
        long_arcs.detail += "diam=" + std::to_string(diam.diameter) + " ";
      }
      long_arcs.passed = long_arcs.passed && ok;
      long_arcs.slack = std::min(long_arcs.slack, slack);
    }
  }
  cert.premises.push_back(long_arcs);

  // 4
  Premise stadium{premise::kStadiumEnclosesDisks, false, false, 0.0, {}};
  if (have_pair) {
    stadium.evaluated = true;
    double planar_slack = std::numeric_limits<double>::infinity();
    for (const auto& prim : beta.primitives()) {
      planar_slack = std::min(planar_slack, 1e-9 - std::abs(p.height(primitive_start(prim).point)));
      if (const auto* arc = std::get_if<Arc>(&prim)) {
        planar_slack = std::min(planar_slack, 1e-9 - std::abs(p.height(arc->center)));
        planar_slack = std::min(planar_slack, 1e-9 - arc->normal.cross(n).norm());
      }
    }
    // beta samples must sit at distance 2 tau from the spine [x, y]
    const auto beta_pts = sample_points(beta, uniform_parameters(beta, 1024));
    double shape_slack = std::numeric_limits<double>::infinity();
    for (const auto& q : beta_pts) {
      const Vec3 d = y - x;
      const double t = std::clamp((q - x).dot(d) / d.squaredNorm(), 0.0, 1.0);
      shape_slack = std::min(shape_slack, 1e-9 - std::abs((q - (x + t * d)).norm() - thickness));
    }
    // disks of radius tau about x and y: inside beta and clear of its core by tau
    const Vec3 e1 = any_orthogonal(n);
    const Vec3 e2 = n.cross(e1);
    std::vector<Vec2> poly;
    for (const auto& q : beta_pts) poly.emplace_back((q - p.point).dot(e1), (q - p.point).dot(e2));
    double disk_slack = std::numeric_limits<double>::infinity();
    bool enclosed = true;
    constexpr int kDiskSamples = 256;
    for (const Vec3& c : {x, y}) {
      for (int k = 0; k < kDiskSamples; ++k) {
        const double ang = kTwoPi * k / kDiskSamples;
        const Vec3 q = c + tau * (std::cos(ang) * e1 + std::sin(ang) * e2);
        disk_slack = std::min(disk_slack, closest_point(beta, q).distance - tau);
        if (winding_number(poly, {(q - p.point).dot(e1), (q - p.point).dot(e2)}) == 0) enclosed = false;
      }
    }
    stadium.slack = std::min({planar_slack, shape_slack, disk_slack + 1e-9});
    stadium.passed = beta.closed() && enclosed && stadium.slack >= 0.0;
    stadium.detail = "planar=" + std::to_string(planar_slack >= 0.0) + " stadium=" + std::to_string(shape_slack >= 0.0) +
                     " enclosed=" + std::to_string(enclosed) + " disk_slack=" + std::to_string(disk_slack);
  }
  cert.premises.push_back(stadium);

  // 5
  Premise feasible{premise::kThicknessFeasible, true, false, 0.0, {}};
  {
    const double tg = thickness_radius(gamma).tau;
    const double tb = thickness_radius(beta).tau;
    feasible.slack = std::min(2.0 * tg, 2.0 * tb) - thickness;
    feasible.passed = thickness <= 2.0 * tg * (1.0 + 1e-9) && thickness <= 2.0 * tb * (1.0 + 1e-9);
    feasible.detail = "tau(gamma)=" + std::to_string(tg) + " tau(beta)=" + std::to_string(tb);
  }
  cert.premises.push_back(feasible);

  // 6
  Premise separated{premise::kCoresSeparated, true, false, 0.0, {}};
  {
    const double d = min_curve_distance(gamma, beta);
    separated.slack = d - thickness * (1.0 - 1e-9);
    separated.passed = separated.slack >= 0.0;
    separated.detail = "min core distance=" + std::to_string(d) + " required=" + std::to_string(thickness);
  }
  cert.premises.push_back(separated);

  cert.pass = std::all_of(cert.premises.begin(), cert.premises.end(),
                          [](const Premise& pr) { return pr.evaluated && pr.passed; });
  return cert;
}

}  // namespace gordian
