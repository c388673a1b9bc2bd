#pragma once

// Brute-force verifiers: a lattice search over piecewise-constant curvature
// controls, a seeded generator of curvature-bounded arcs between two points,
// and a statistical search for arcs confined to a forbidden region.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <absl/container/flat_hash_set.h>

#include "gordian/curve.hpp"
#include "gordian/dubins.hpp"
#include "gordian/error.hpp"
#include "gordian/regions.hpp"
#include "gordian/vec.hpp"

namespace gordian {

struct ControlGrid {
  int n_steps = 1000;
  int curvature_levels = 3;  // odd, spread evenly over [-kappa, kappa]
  double step_length = 0.02;
};

/// Error constant of the reported bound, C * kappa * step * steps_used.
///
/// Measured on seeded planar instances at steps 0.01 to 0.05: the lattice
/// optimum stays within about 0.018 * kappa * step * steps of the exact
/// length, from goal-ball slack on one side and heading quantisation on the
/// other. 0.05 leaves a margin of about three.
inline constexpr double kLatticeErrorConstant = 0.05;

struct ShortestResult {
  double length = 0.0;
  double error_bound = 0.0;
  int steps_used = 0;
  std::size_t expansions = 0;
};

namespace detail {

struct LatticeNode {
  double f;
  double g;
  double x, y;
  int heading;  // index into the heading tables
  int steps;
  bool operator>(const LatticeNode& o) const { return f > o.f; }
};

struct LatticeCell {
  std::int64_t ix, iy, heading;
  bool operator==(const LatticeCell&) const = default;
};

/// Closed set over lattice cells: a bitmap over a box, a hash set outside it.
class ClosedCells {
 public:
  ClosedCells(double x_lo, double y_lo, double x_hi, double y_hi, double cell, std::int64_t headings) : nh_(headings) {
    ix0_ = static_cast<std::int64_t>(std::floor(x_lo / cell));
    iy0_ = static_cast<std::int64_t>(std::floor(y_lo / cell));
    nx_ = static_cast<std::int64_t>(std::floor(x_hi / cell)) - ix0_ + 1;
    ny_ = static_cast<std::int64_t>(std::floor(y_hi / cell)) - iy0_ + 1;
    const double bits = static_cast<double>(nx_) * static_cast<double>(ny_) * static_cast<double>(nh_);
    if (bits <= kMaxBits) {
      bits_.assign(static_cast<std::size_t>(bits / 64.0) + 1, 0);
    } else {
      nx_ = ny_ = 0;
    }
  }

  /// Marks the cell; false when it was already marked.
  bool insert(const LatticeCell& c) {
    if (const auto i = index(c)) {
      std::uint64_t& word = bits_[*i >> 6];
      const std::uint64_t mask = std::uint64_t{1} << (*i & 63);
      if (word & mask) return false;
      word |= mask;
      return true;
    }
    return overflow_.insert(pack(c)).second;
  }

  bool contains(const LatticeCell& c) const {
    if (const auto i = index(c)) return (bits_[*i >> 6] >> (*i & 63)) & 1;
    return overflow_.contains(pack(c));
  }

 private:
  static constexpr double kMaxBits = 8.0e9;  // 1 GB

  std::optional<std::uint64_t> index(const LatticeCell& c) const {
    const std::int64_t dx = c.ix - ix0_, dy = c.iy - iy0_;
    if (dx < 0 || dy < 0 || dx >= nx_ || dy >= ny_) return std::nullopt;
    return static_cast<std::uint64_t>((dx * ny_ + dy) * nh_ + c.heading);
  }

  static std::uint64_t pack(const LatticeCell& c) {
    constexpr std::int64_t kOffset = std::int64_t{1} << 20;
    return (static_cast<std::uint64_t>(c.ix + kOffset) & 0x1FFFFF) |
           ((static_cast<std::uint64_t>(c.iy + kOffset) & 0x1FFFFF) << 21) | (static_cast<std::uint64_t>(c.heading) << 42);
  }

  std::int64_t ix0_ = 0, iy0_ = 0, nx_ = 0, ny_ = 0, nh_ = 1;
  std::vector<std::uint64_t> bits_;
  absl::flat_hash_set<std::uint64_t> overflow_;
};

}  // namespace detail

/// Shortest control sequence on the lattice that ends in the goal ball of
/// radius 2 * step with heading within 2 * kappa * step. A* search; the
/// heuristic is the larger of the distance to the goal ball and the heading
/// change still required over kappa. States are merged by position cell and
/// heading cell of one step each, and a control is repeated until the state
/// leaves its cell.
inline ShortestResult brute_force_shortest(const PlanarPose& start, const PlanarPose& goal, double kappa,
                                           const ControlGrid& grid, std::size_t max_expansions = 60'000'000) {
  if (!(kappa > 0.0) || !(grid.step_length > 0.0) || grid.n_steps <= 0 || grid.curvature_levels < 3 ||
      grid.curvature_levels % 2 == 0) {
    throw OutOfRange("invalid control grid");
  }
  const double h = grid.step_length;
  const double budget = h * grid.n_steps;
  const double goal_radius = 2.0 * h;
  const double heading_tol = 2.0 * kappa * h;
  const double cell = h;
  const double heading_cell = kTwoPi / std::ceil(kTwoPi / (kappa * h));
  const auto heading_bins = static_cast<std::int64_t>(std::llround(kTwoPi / heading_cell));

  // headings are start + j * unit; control i turns by (2i - levels + 1) units per step
  const int half_levels = (grid.curvature_levels - 1) / 2;
  const double unit = kappa * h / half_levels;
  const int span = half_levels * grid.n_steps;
  const std::size_t table_size = 2 * static_cast<std::size_t>(span) + 1;
  std::vector<double> cos_t(table_size), sin_t(table_size);
  std::vector<std::int64_t> bin_t(table_size);
  std::vector<char> aligned_t(table_size);
  std::vector<double> turn_t(table_size);  // heading change still required
  for (std::size_t i = 0; i < table_size; ++i) {
    const double th = start.heading + (static_cast<double>(i) - span) * unit;
    cos_t[i] = std::cos(th);
    sin_t[i] = std::sin(th);
    bin_t[i] = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor(mod_two_pi(th) / heading_cell)), 0,
                                        heading_bins - 1);
    aligned_t[i] = std::abs(wrap_angle(th - goal.heading)) <= heading_tol;
    turn_t[i] = std::max(0.0, std::abs(wrap_angle(th - goal.heading)) - heading_tol) / kappa;
  }

  const double gx = goal.point.x(), gy = goal.point.y();
  auto heuristic = [&](double x, double y, int j) {
    const double d = std::sqrt((x - gx) * (x - gx) + (y - gy) * (y - gy));
    return std::max({0.0, d - goal_radius, turn_t[static_cast<std::size_t>(j)]});
  };
  auto at_goal = [&](double x, double y, int j) {
    return aligned_t[static_cast<std::size_t>(j)] && (x - gx) * (x - gx) + (y - gy) * (y - gy) <= goal_radius * goal_radius;
  };

  // bucket queue on f; pops are ordered up to a tenth of a step
  const double bucket_width = 0.1 * h;
  std::vector<std::vector<detail::LatticeNode>> buckets(static_cast<std::size_t>(budget / bucket_width) + 2);
  std::size_t current = 0, queued = 0;
  auto push = [&](const detail::LatticeNode& n) {
    const auto b = std::min(buckets.size() - 1, static_cast<std::size_t>(n.f / bucket_width));
    buckets[std::max(b, current)].push_back(n);
    ++queued;
  };
  // every queued state lies within the ellipse |p - start| + |p - goal| <= budget + goal_radius
  const Vec2 centre = 0.5 * (start.point + goal.point);
  const double half = 0.5 * (budget + goal_radius) + cell;
  const double inv_cell = 1.0 / cell;
  detail::ClosedCells closed(centre.x() - half, centre.y() - half, centre.x() + half, centre.y() + half, cell,
                             heading_bins);
  auto cell_of = [&](double x, double y, int j) {
    return detail::LatticeCell{static_cast<std::int64_t>(std::floor(x * inv_cell)),
                               static_cast<std::int64_t>(std::floor(y * inv_cell)), bin_t[static_cast<std::size_t>(j)]};
  };
  const double h0 = heuristic(start.point.x(), start.point.y(), span);
  if (h0 > budget) throw Unreachable("goal lies beyond the path budget");
  push({h0, 0.0, start.point.x(), start.point.y(), span, 0});

  std::size_t expansions = 0;
  while (queued > 0) {
    while (buckets[current].empty()) ++current;
    const detail::LatticeNode node = buckets[current].back();
    buckets[current].pop_back();
    --queued;
    const auto key = cell_of(node.x, node.y, node.heading);
    if (at_goal(node.x, node.y, node.heading)) {
      ShortestResult out;
      out.length = node.g;
      out.steps_used = node.steps;
      out.expansions = expansions;
      out.error_bound = kLatticeErrorConstant * kappa * h * node.steps;
      return out;
    }
    if (!closed.insert(key)) continue;
    if (++expansions > max_expansions) throw Unreachable("expansion budget exhausted");
    for (int i = 0; i < grid.curvature_levels; ++i) {
      const int turn = i - half_levels;
      const double k = turn * unit / h;
      // repeat the control until the state leaves the parent's cell
      double x = node.x, y = node.y, g = node.g;
      int j = node.heading, steps = node.steps;
      detail::LatticeCell child = key;
      while (child == key && steps < grid.n_steps) {
        const auto a = static_cast<std::size_t>(j);
        const auto b = static_cast<std::size_t>(j + turn);
        if (turn == 0) {
          x += h * cos_t[a];
          y += h * sin_t[a];
        } else {
          x += (sin_t[b] - sin_t[a]) / k;
          y -= (cos_t[b] - cos_t[a]) / k;
        }
        j += turn;
        g += h;
        ++steps;
        child = cell_of(x, y, j);
        if (at_goal(x, y, j)) break;
      }
      const double f = g + heuristic(x, y, j);
      if (f > budget + 1e-12) continue;
      if (child != key && closed.contains(child)) continue;
      push({f, g, x, y, j, steps});
    }
  }
  throw Unreachable("no control sequence reaches the goal within the budget");
}

// ---------------------------------------------------------------------------
// Random arcs

enum class HeadingMode {
  kUniform,    // end headings drawn uniformly
  kChordCone,  // end headings within the spindle's opening angle of the chord
};

struct RandomArcOptions {
  HeadingMode mode = HeadingMode::kUniform;
  double length_budget = 40.0;  // in units of 1/kappa
  double segment_probability = 1.0 / 3.0;
};

namespace detail {

inline Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  for (;;) {
    const Vec3 v(n01(rng), n01(rng), n01(rng));
    if (v.norm() > 1e-9) return v.normalized();
  }
}

/// Direction at angle in [0, max_angle] from `axis`, uniform azimuth.
inline Vec3 random_in_cone(std::mt19937_64& rng, const Vec3& axis, double max_angle) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const Vec3 ortho = rotate_about(any_orthogonal(axis), axis, kTwoPi * u01(rng));
  return rotate_about(axis, ortho, max_angle * u01(rng));
}

}  // namespace detail

/// A seeded kappa-constrained arc from x to y: up to `max_pieces` random
/// radius-1/kappa arcs and segments, then a planar Dubins path to y. Returns
/// nullopt when the arc exceeds the length budget.
inline std::optional<PiecewiseCurve> random_arc(std::uint64_t seed, const Vec3& x, const Vec3& y, double kappa,
                                                int max_pieces, const RandomArcOptions& options = {}) {
  if (!((x - y).norm() > 0.0)) throw OutOfRange("endpoints must differ");
  if (!(kappa > 0.0)) throw OutOfRange("kappa must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const double r = 1.0 / kappa;
  const Vec3 chord = (y - x).normalized();
  const double cone = std::asin(std::min(1.0, 0.5 * kappa * (y - x).norm()));

  Vec3 t = options.mode == HeadingMode::kChordCone ? detail::random_in_cone(rng, chord, cone) : detail::random_unit(rng);
  Vec3 p = x;
  std::vector<Primitive> prims;
  const int pieces = max_pieces > 0 ? std::uniform_int_distribution<int>(0, max_pieces)(rng) : 0;
  for (int i = 0; i < pieces; ++i) {
    if (u01(rng) < options.segment_probability) {
      const Segment seg{p, p + r * (0.05 + 0.95 * u01(rng)) * t};
      prims.push_back(seg);
      p = seg.end;
    } else {
      const Vec3 n = rotate_about(any_orthogonal(t), t, kTwoPi * u01(rng));
      const Vec3 radial = t.cross(n);
      const Arc arc{p - r * radial, n, r, p, kPi * (0.05 + 0.95 * u01(rng)), 1};
      prims.push_back(arc);
      const Pose end = primitive_end(arc);
      p = end.point;
      t = end.tangent;
    }
  }

  // closing plane spanned by t and y - p
  const Vec3 to_y = y - p;
  Vec3 n = t.cross(to_y);
  if (n.norm() < 1e-9 * std::max(1.0, to_y.norm())) n = any_orthogonal(t);
  n.normalize();
  const Vec3 v = n.cross(t);
  const Vec3 dir_y = to_y.norm() > 1e-12 ? to_y.normalized() : t;
  const double phi = options.mode == HeadingMode::kChordCone ? cone * (2.0 * u01(rng) - 1.0)
                                                             : kPi * (2.0 * u01(rng) - 1.0);
  const Vec3 end_dir = rotate_about(dir_y, n, phi);
  const PlanarPose goal(to_y.dot(t), to_y.dot(v), std::atan2(end_dir.dot(v), end_dir.dot(t)));
  const DubinsPath path = plan_dubins_2d(PlanarPose(0.0, 0.0, 0.0), goal, kappa);
  try {
    const PiecewiseCurve closing = embed_in_plane(path, Pose{p, t}, n);
    for (const auto& prim : closing.primitives()) prims.push_back(prim);
  } catch (const DegeneratePrimitive&) {
    if (prims.empty()) return std::nullopt;
  }
  PiecewiseCurve curve = build_curve(std::move(prims), false, kappa);
  if (curve.length() > options.length_budget * r) return std::nullopt;
  return curve;
}

// ---------------------------------------------------------------------------
// Forbidden-region search

struct SearchReport {
  std::size_t trials = 0;
  std::size_t hits = 0;
  std::vector<PiecewiseCurve> witnesses;
  std::uint64_t seed = 0;
  std::size_t generated = 0;  // trials that produced an arc
};

struct SearchOptions {
  int max_pieces = 4;
  std::size_t interior_samples = 512;
};

/// Per-trial seed derived from the run seed and the trial counter.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  std::uint64_t z = seed * 0x9E3779B97F4A7C15ULL + trial + 0x632BE59BD9B4E019ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Counts generated embedded arcs from x to y whose interior samples all lie
/// in `region`. Odd trials draw end headings from the chord cone.
inline SearchReport forbidden_region_search(const RegionConfig& config, Region region, std::size_t trials,
                                            std::uint64_t seed, const SearchOptions& options = {}) {
  if (region != Region::kE && region != Region::kK && region != Region::kEK) {
    throw InvalidConfig("search region must be E, K or E+K");
  }
  const RegionGeometry g = region_geometry(config);
  SearchReport report;
  report.trials = trials;
  report.seed = seed;
  for (std::size_t i = 0; i < trials; ++i) {
    RandomArcOptions arc_options;
    arc_options.mode = i % 2 == 0 ? HeadingMode::kUniform : HeadingMode::kChordCone;
    const auto arc = random_arc(trial_seed(seed, i), g.x, g.y, config.kappa, options.max_pieces, arc_options);
    if (!arc) continue;
    ++report.generated;
    const double len = arc->length();
    const std::size_t m = options.interior_samples;
    bool inside = true;
    for (std::size_t k = 0; k < m && inside; ++k) {
      const double s = len * static_cast<double>(k + 1) / static_cast<double>(m + 1);
      inside = region_membership(evaluate(*arc, s).point, config, region);
    }
    if (!inside) continue;
    // only embedded arcs count
    if (self_intersects(*arc, 1e-9).intersects) continue;
    report.witnesses.push_back(*arc);
  }
  report.hits = report.witnesses.size();
  return report;
}

}  // namespace gordian
