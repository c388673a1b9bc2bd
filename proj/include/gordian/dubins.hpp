#pragma once

// Shortest planar paths with bounded curvature.
//
// Every word is built from turning circles and their common tangents. "L"
// turns counterclockwise (heading increases), "R" clockwise. Arc parameters
// are angles in radians; the straight parameter is a length.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gordian/curve.hpp"
#include "gordian/error.hpp"
#include "gordian/vec.hpp"

namespace gordian {

struct PlanarPose {
  Vec2 point = Vec2::Zero();
  double heading = 0.0;  // radians, normalised to (-pi, pi]

  PlanarPose() = default;
  PlanarPose(Vec2 p, double h) : point(std::move(p)), heading(wrap_angle(h)) {}
  PlanarPose(double x, double y, double h) : point(x, y), heading(wrap_angle(h)) {}
};

enum class DubinsWord { kLSL, kRSR, kLSR, kRSL, kRLR, kLRL };

inline constexpr std::array<DubinsWord, 6> kAllWords = {DubinsWord::kLSL, DubinsWord::kRSR, DubinsWord::kLSR,
                                                        DubinsWord::kRSL, DubinsWord::kRLR, DubinsWord::kLRL};

inline std::string_view word_name(DubinsWord w) {
  switch (w) {
    case DubinsWord::kLSL: return "LSL";
    case DubinsWord::kRSR: return "RSR";
    case DubinsWord::kLSR: return "LSR";
    case DubinsWord::kRSL: return "RSL";
    case DubinsWord::kRLR: return "RLR";
    case DubinsWord::kLRL: return "LRL";
  }
  return "?";
}

inline bool is_ccc(DubinsWord w) { return w == DubinsWord::kRLR || w == DubinsWord::kLRL; }

/// Letter ('L', 'S' or 'R') of piece `i` of a word.
inline char word_letter(DubinsWord w, int i) { return word_name(w)[static_cast<std::size_t>(i)]; }

struct DubinsPath {
  DubinsWord word = DubinsWord::kLSL;
  std::array<double, 3> params{};  // arc angles for C pieces, length for S
  double total_length = 0.0;
  double kappa = 1.0;
  bool candidate_only = false;  // CCC whose middle arc does not exceed pi

  /// Arc length of piece i.
  double piece_length(int i) const {
    const double p = params[static_cast<std::size_t>(i)];
    return word_letter(word, i) == 'S' ? p : p / kappa;
  }
};

namespace detail {

inline constexpr double kAngleSnap = 1e-12;

/// Turning angle needed to go from heading a to heading b in direction `letter`.
inline double turn_angle(double from, double to, char letter) {
  double a = letter == 'L' ? mod_two_pi(to - from) : mod_two_pi(from - to);
  if (a > kTwoPi - kAngleSnap) a = 0.0;
  return a;
}

inline Vec2 left_of(double heading) { return {-std::sin(heading), std::cos(heading)}; }

inline Vec2 turning_center(const PlanarPose& p, char letter, double r) {
  const Vec2 left = left_of(p.heading);
  return letter == 'L' ? Vec2(p.point + r * left) : Vec2(p.point - r * left);
}

/// Heading of travel at `point` when circling `center` in direction `letter`.
inline double circling_heading(const Vec2& center, const Vec2& point, char letter) {
  const Vec2 radial = point - center;
  return letter == 'L' ? std::atan2(radial.x(), -radial.y()) : std::atan2(-radial.x(), radial.y());
}

inline DubinsPath make_path(DubinsWord w, double a, double b, double c, double kappa) {
  DubinsPath path{w, {a, b, c}, 0.0, kappa, false};
  path.total_length = path.piece_length(0) + path.piece_length(1) + path.piece_length(2);
  return path;
}

inline std::optional<DubinsPath> csc(const PlanarPose& s, const PlanarPose& g, double kappa, DubinsWord w) {
  const double r = 1.0 / kappa;
  const char first = word_letter(w, 0);
  const char last = word_letter(w, 2);
  const Vec2 c1 = turning_center(s, first, r);
  const Vec2 c2 = turning_center(g, last, r);
  const Vec2 v = c2 - c1;
  const double dist = v.norm();
  double heading = 0.0;
  double straight = 0.0;
  if (first == last) {
    if (dist < 1e-14) {
      // concentric: a single arc, no straight piece
      return make_path(w, turn_angle(s.heading, g.heading, first), 0.0, 0.0, kappa);
    }
    heading = std::atan2(v.y(), v.x());
    straight = dist;
  } else {
    if (dist < 2.0 * r) return std::nullopt;
    straight = std::sqrt(std::max(0.0, dist * dist - 4.0 * r * r));
    const double offset = std::atan2(2.0 * r, straight);
    heading = std::atan2(v.y(), v.x()) + (first == 'L' ? offset : -offset);
  }
  return make_path(w, turn_angle(s.heading, heading, first), straight, turn_angle(heading, g.heading, last), kappa);
}

/// Both CCC constructions of a word: the middle circle sits on either side of
/// the line joining the outer circle centres.
inline std::vector<DubinsPath> ccc(const PlanarPose& s, const PlanarPose& g, double kappa, DubinsWord w) {
  const double r = 1.0 / kappa;
  const char outer = word_letter(w, 0);
  const char middle = word_letter(w, 1);
  const Vec2 c1 = turning_center(s, outer, r);
  const Vec2 c2 = turning_center(g, outer, r);
  const Vec2 v = c2 - c1;
  const double dist = v.norm();
  std::vector<DubinsPath> out;
  if (dist >= 4.0 * r || dist < 1e-12) return out;
  const Vec2 mid = 0.5 * (c1 + c2);
  const Vec2 perp = Vec2(-v.y(), v.x()) / dist;
  const double h = std::sqrt(std::max(0.0, 4.0 * r * r - 0.25 * dist * dist));
  for (double side : {1.0, -1.0}) {
    const Vec2 q = mid + side * h * perp;
    const Vec2 t1 = 0.5 * (c1 + q);
    const Vec2 t2 = 0.5 * (q + c2);
    const double h1 = circling_heading(c1, t1, outer);
    const double h2 = circling_heading(q, t2, middle);
    DubinsPath p = make_path(w, turn_angle(s.heading, h1, outer), turn_angle(h1, h2, middle),
                             turn_angle(h2, g.heading, outer), kappa);
    p.candidate_only = !(p.params[1] > kPi);
    out.push_back(p);
  }
  return out;
}

}  // namespace detail

/// Every geometrically feasible word. CCC words appear twice (one per middle
/// circle); those whose middle arc does not exceed pi are flagged candidate-only.
inline std::vector<DubinsPath> word_candidates(const PlanarPose& start, const PlanarPose& goal, double kappa) {
  if (!(kappa > 0.0)) throw OutOfRange("kappa must be positive");
  std::vector<DubinsPath> out;
  for (DubinsWord w : kAllWords) {
    if (is_ccc(w)) {
      for (auto& p : detail::ccc(start, goal, kappa, w)) out.push_back(p);
    } else if (auto p = detail::csc(start, goal, kappa, w)) {
      out.push_back(*p);
    }
  }
  return out;
}

/// Minimum-length path over all words; ties keep the earlier word in
/// LSL, RSR, LSR, RSL, RLR, LRL order.
inline DubinsPath plan_dubins_2d(const PlanarPose& start, const PlanarPose& goal, double kappa) {
  std::optional<DubinsPath> best;
  constexpr double kTie = 1e-12;
  for (const auto& p : word_candidates(start, goal, kappa)) {
    if (p.candidate_only) continue;
    if (!best || p.total_length < best->total_length - kTie) best = p;
  }
  if (!best) throw OutOfRange("no admissible Dubins word");  // unreachable: CSC always exists
  return *best;
}

/// Endpoint of a planar path, integrated piece by piece from `start`.
inline PlanarPose path_endpoint(const DubinsPath& path, const PlanarPose& start) {
  const double r = 1.0 / path.kappa;
  Vec2 p = start.point;
  double h = start.heading;
  for (int i = 0; i < 3; ++i) {
    const char letter = word_letter(path.word, i);
    const double a = path.params[static_cast<std::size_t>(i)];
    if (letter == 'S') {
      p += a * Vec2(std::cos(h), std::sin(h));
    } else {
      const double sign = letter == 'L' ? 1.0 : -1.0;
      const Vec2 c = p + sign * r * detail::left_of(h);
      const double h2 = h + sign * a;
      p = c - sign * r * detail::left_of(h2);
      h = h2;
    }
  }
  return {p, h};
}

/// Realises a planar path as a 3D curve in the plane through `start3d.point`
/// with the given normal. "L" turns counterclockwise about `plane_normal`.
inline PiecewiseCurve embed_in_plane(const DubinsPath& path, const Pose& start3d, const Vec3& plane_normal) {
  const Vec3 n = plane_normal.normalized();
  if (std::abs(start3d.tangent.dot(n)) > kJointTolerance) {
    throw NonCoplanarInput("start tangent is not orthogonal to the plane normal");
  }
  const double r = 1.0 / path.kappa;
  std::vector<Primitive> prims;
  Vec3 p = start3d.point;
  Vec3 t = start3d.tangent.normalized();
  for (int i = 0; i < 3; ++i) {
    const char letter = word_letter(path.word, i);
    const double a = path.params[static_cast<std::size_t>(i)];
    if (a <= 0.0) continue;
    if (letter == 'S') {
      Segment seg{p, p + a * t};
      prims.push_back(seg);
      p = seg.end;
      continue;
    }
    const int sign = letter == 'L' ? 1 : -1;
    const Vec3 left = n.cross(t);
    Arc arc{p + sign * r * left, n, r, p, a, sign};
    const Pose end = primitive_end(arc);
    prims.push_back(arc);
    p = end.point;
    t = end.tangent;
  }
  if (prims.empty()) throw DegeneratePrimitive("zero-length path has no primitives");
  return build_curve(std::move(prims), false, path.kappa);
}

// ---------------------------------------------------------------------------
// Helicoidal torsion equation
//   alpha'' = 3 alpha'^2 / (2 alpha) - 2 alpha^3 + 2 alpha - xi alpha |alpha|^(1/2)

struct TorsionState {
  double alpha = 1.0;
  double alpha_prime = 0.0;
  double xi = 0.0;  // non-negative
  double t = 0.0;
};

inline constexpr double kVanishingTorsion = 1e-9;

inline double torsion_acceleration(double alpha, double alpha_prime, double xi) {
  return 1.5 * alpha_prime * alpha_prime / alpha - 2.0 * alpha * alpha * alpha + 2.0 * alpha -
         xi * alpha * std::sqrt(std::abs(alpha));
}

struct TorsionTrajectory {
  std::vector<TorsionState> states;
  std::optional<double> vanished_at;  // set when |alpha| fell below the threshold
};

/// Classical fourth-order Runge-Kutta with a fixed step. Integration stops
/// early, recording the time, if the torsion vanishes.
inline TorsionTrajectory integrate_torsion_ode(const TorsionState& initial, double t_end, double step = 1e-3) {
  if (!(step > 0.0)) throw OutOfRange("step must be positive");
  if (initial.xi < 0.0) throw OutOfRange("xi must be non-negative");
  if (std::abs(initial.alpha) < kVanishingTorsion) {
    throw VanishingTorsion(initial.t, "initial torsion is zero");
  }
  TorsionTrajectory traj;
  traj.states.push_back(initial);
  const double xi = initial.xi;
  auto f = [xi](double a, double ap) { return torsion_acceleration(a, ap, xi); };
  TorsionState s = initial;
  while (s.t < t_end - 1e-15) {
    const double h = std::min(step, t_end - s.t);
    const double k1a = s.alpha_prime;
    const double k1v = f(s.alpha, s.alpha_prime);
    const double k2a = s.alpha_prime + 0.5 * h * k1v;
    const double k2v = f(s.alpha + 0.5 * h * k1a, k2a);
    const double k3a = s.alpha_prime + 0.5 * h * k2v;
    const double k3v = f(s.alpha + 0.5 * h * k2a, k3a);
    const double k4a = s.alpha_prime + h * k3v;
    const double k4v = f(s.alpha + h * k3a, k4a);
    s.alpha += h / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
    s.alpha_prime += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    s.t += h;
    traj.states.push_back(s);
    if (!std::isfinite(s.alpha) || std::abs(s.alpha) < kVanishingTorsion) {
      traj.vanished_at = s.t;
      break;
    }
  }
  return traj;
}

/// Locates the positive rest point of the torsion equation for a given xi by
/// shooting: a state released at rest drifts up below the equilibrium and down
/// above it, so the sign of the integrated drift brackets the root.
inline double locate_torsion_equilibrium(double xi, double lo = 1e-3, double hi = 2.0, double probe_time = 0.05,
                                         double step = 1e-3) {
  auto drift = [&](double a0) {
    const auto traj = integrate_torsion_ode({a0, 0.0, xi, 0.0}, probe_time, step);
    return traj.states.back().alpha - a0;
  };
  double d_lo = drift(lo);
  if ((d_lo > 0.0) == (drift(hi) > 0.0)) throw OutOfRange("equilibrium is not bracketed");
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double d_mid = drift(mid);
    if ((d_mid > 0.0) == (d_lo > 0.0)) {
      lo = mid;
      d_lo = d_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace gordian
