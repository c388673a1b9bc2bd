#pragma once

// Reproduction reports: each compares reference values with computed ones.
//
//   mingords      minimal member lengths and ropelength
//   family-table  thickness, lengths and ropelengths across the family
//   dubins-check  closed-form planner against the lattice oracle
//   region-check  forbidden-region searches and long-arc diameters

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gordian/dubins.hpp"
#include "gordian/family.hpp"
#include "gordian/io.hpp"
#include "gordian/oracle.hpp"
#include "gordian/regions.hpp"
#include "gordian/thickness.hpp"

namespace gordian {

struct ReproduceRow {
  std::string label;
  double reference = 0.0;
  double computed = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ReproduceReport {
  std::string name;
  std::vector<ReproduceRow> rows;
  Json extra = Json::object();

  bool pass() const {
    for (const auto& r : rows)
      if (!r.pass) return false;
    return true;
  }

  void add(std::string label, double reference, double computed, double tolerance) {
    rows.push_back({std::move(label), reference, computed, tolerance, std::abs(reference - computed) <= tolerance});
  }
};

inline Json report_to_json(const ReproduceReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"label", row.label},
                    {"reference", row.reference},
                    {"computed", row.computed},
                    {"tolerance", row.tolerance},
                    {"pass", row.pass}});
  }
  return {{"report", r.name}, {"pass", r.pass()}, {"rows", rows}, {"extra", r.extra}};
}

struct ReproduceOptions {
  std::uint64_t seed = 7;
  std::size_t trials = 0;  // 0 selects each report's default
};

inline const std::vector<std::string>& report_names() {
  static const std::vector<std::string> names = {"mingords", "family-table", "dubins-check", "region-check"};
  return names;
}

// ---------------------------------------------------------------------------
// Pipelines shared with the acceptance suite

inline const PlanarPose kHalfLoopStart{0.0, 0.0, kPi / 2.0};
inline const PlanarPose kHalfLoopGoal{-1.0, 0.0, -kPi / 2.0};

struct OracleInstance {
  PlanarPose start;
  PlanarPose goal;
};

/// Seeded planar instances: start at the origin facing +x, goal uniform in
/// [-2.5, 2.5]^2 at least 0.5 away, with uniform heading.
inline std::vector<OracleInstance> oracle_instances(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-2.5, 2.5);
  std::uniform_real_distribution<double> heading(-kPi, kPi);
  std::vector<OracleInstance> out;
  while (out.size() < count) {
    const Vec2 g(coord(rng), coord(rng));
    const double th = heading(rng);
    if (g.norm() < 0.5) continue;
    out.push_back({PlanarPose(0.0, 0.0, 0.0), PlanarPose(g, th)});
  }
  return out;
}

struct OracleComparison {
  OracleInstance instance;
  DubinsPath plan;
  ShortestResult lattice;
  bool within_bound = false;
};

inline OracleComparison compare_with_oracle(const OracleInstance& inst, double kappa, double step) {
  OracleComparison c{inst, plan_dubins_2d(inst.start, inst.goal, kappa), {}, false};
  ControlGrid grid;
  grid.step_length = step;
  grid.n_steps = static_cast<int>(std::ceil((c.plan.total_length + 2.0 / kappa) * 1.5 / step));
  c.lattice = brute_force_shortest(inst.start, inst.goal, kappa, grid);
  c.within_bound = std::abs(c.plan.total_length - c.lattice.length) <= c.lattice.error_bound;
  return c;
}

/// Canonical region configuration: unit balls about (0, 0, +-sqrt(3)/2).
inline RegionConfig canonical_region_config() { return RegionConfig{}; }

struct ArcPopulationStats {
  std::size_t generated = 0;
  std::size_t long_arcs = 0;
  std::size_t long_violations = 0;
  double min_long_diameter = std::numeric_limits<double>::infinity();
  std::size_t confined = 0;  // samples all in cl(R)
  std::size_t confined_self_intersecting = 0;
};

/// Classifies seeded arcs between the canonical crossing points. Half the
/// arcs are pure closing paths with headings in the chord cone, the rest add
/// up to four random pieces with uniform headings.
inline ArcPopulationStats arc_population(std::uint64_t seed, std::size_t count, std::size_t diameter_samples = 1024) {
  const RegionConfig cfg = canonical_region_config();
  const RegionGeometry g = region_geometry(cfg);
  const Plane plane{g.mid, g.axis};
  const Spindle spindle{g.mid, g.chord_dir, g.half_chord, g.spindle_offset, g.ball_radius};
  ArcPopulationStats stats;
  for (std::size_t i = 0; i < count; ++i) {
    RandomArcOptions opt;
    const bool cone = i % 2 == 1;
    opt.mode = cone ? HeadingMode::kChordCone : HeadingMode::kUniform;
    const auto arc = random_arc(trial_seed(seed, i), g.x, g.y, cfg.kappa, cone ? 0 : 4, opt);
    if (!arc) continue;
    ++stats.generated;
    for (const Plane& side : {plane, Plane{g.mid, -g.axis}}) {
      const auto cls = classify_arc(*arc, g.x, g.y, side);
      if (cls.kind != ArcKind::kLong) continue;
      ++stats.long_arcs;
      const auto diam = check_long_arc_diameter(*arc, cls, diameter_samples);
      stats.min_long_diameter = std::min(stats.min_long_diameter, diam.diameter);
      if (diam.diameter < 2.0 / cfg.kappa - 1e-3) ++stats.long_violations;
      break;
    }
    const auto pts = sample_points(*arc, uniform_parameters(*arc, 512));
    const bool confined = std::all_of(pts.begin(), pts.end(), [&](const Vec3& p) { return spindle.contains_closed(p); });
    if (confined) {
      ++stats.confined;
      if (self_intersects(*arc, 1e-9).intersects) ++stats.confined_self_intersecting;
    }
  }
  return stats;
}

// ---------------------------------------------------------------------------

inline ReproduceReport reproduce_mingords() {
  ReproduceReport r{"mingords", {}, Json::object()};
  const DubinsPath half = plan_dubins_2d(kHalfLoopStart, kHalfLoopGoal, 1.0);
  const UnlinkMember m = assemble_member(0.5);
  r.add("dubins half-loop length", 6.0325, half.total_length, 1e-3);
  r.add("len(gamma)", 2.0 * 6.0325, m.len_gamma, 1e-3);
  r.add("len(beta)", 8.2831, m.len_beta, 1e-3);
  r.add("Rop(gamma u beta)", 20.3481, m.rop, 1e-3);
  r.add("thickness", 1.0, 2.0 * thickness_radius(m.gamma).tau, 1e-4);
  r.extra["word"] = std::string(word_name(half.word));
  r.extra["certificate"] = certificate_to_json(m.certificate);
  return r;
}

inline ReproduceReport reproduce_family_table() {
  ReproduceReport r{"family-table", {}, Json::object()};
  Json table = Json::array();
  for (double tau : {0.5, 0.75, 0.95}) {
    const UnlinkMember m = assemble_member(tau);
    const std::string t = "tau=" + std::to_string(tau).substr(0, 4);
    r.add(t + " thickness", 2.0 * tau, 2.0 * thickness_radius(m.gamma).tau, 1e-4);
    r.add(t + " len(beta)", 4.0 * tau * (kPi + 1.0), m.len_beta, 1e-9);
    r.add(t + " Rop(beta)", 2.0 * (kPi + 1.0), m.len_beta / (2.0 * tau), 1e-9);
    table.push_back({{"tau", tau},
                     {"thickness", 2.0 * tau},
                     {"len_gamma", m.len_gamma},
                     {"len_beta", m.len_beta},
                     {"rop", m.rop},
                     {"certificate_pass", m.certificate.pass}});
  }
  r.extra["table"] = table;
  return r;
}

inline ReproduceReport reproduce_dubins_check(const ReproduceOptions& opt) {
  ReproduceReport r{"dubins-check", {}, Json::object()};
  const DubinsPath half = plan_dubins_2d(kHalfLoopStart, kHalfLoopGoal, 1.0);
  r.add("half-loop closed form", kPi + 4.0 * std::acos(0.75), half.total_length, 1e-9);
  const auto loop = compare_with_oracle({kHalfLoopStart, kHalfLoopGoal}, 1.0, 0.02);
  r.add("half-loop lattice (2%)", half.total_length, loop.lattice.length, 0.02 * half.total_length);
  const std::size_t trials = opt.trials == 0 ? 10 : opt.trials;
  std::size_t k = 0;
  for (const auto& inst : oracle_instances(opt.seed, trials)) {
    const auto c = compare_with_oracle(inst, 1.0, 0.02);
    r.add("instance " + std::to_string(k++) + " " + std::string(word_name(c.plan.word)), c.plan.total_length,
          c.lattice.length, c.lattice.error_bound);
  }
  return r;
}

inline ReproduceReport reproduce_region_check(const ReproduceOptions& opt) {
  ReproduceReport r{"region-check", {}, Json::object()};
  const std::size_t trials = opt.trials == 0 ? 10000 : opt.trials;
  const RegionConfig cfg = canonical_region_config();
  for (auto [region, name] : {std::pair{Region::kE, "E"}, std::pair{Region::kK, "K"}, std::pair{Region::kEK, "E+K"}}) {
    const SearchReport s = forbidden_region_search(cfg, region, trials, opt.seed);
    r.add(std::string("hits in ") + name, 0.0, static_cast<double>(s.hits), 0.0);
    r.extra[name] = search_report_to_json(s);
  }
  const auto stats = arc_population(opt.seed, std::min<std::size_t>(trials, 1000));
  r.add("long arcs below diameter 2", 0.0, static_cast<double>(stats.long_violations), 0.0);
  r.add("self-intersecting arcs in cl(R)", 0.0, static_cast<double>(stats.confined_self_intersecting), 0.0);
  r.extra["arcs"] = {{"generated", stats.generated},
                     {"long", stats.long_arcs},
                     {"min_long_diameter", stats.min_long_diameter},
                     {"confined", stats.confined}};
  return r;
}

/// Runs a named report; nullopt for an unknown name.
inline std::optional<ReproduceReport> reproduce(const std::string& name, const ReproduceOptions& opt = {}) {
  if (name == "mingords") return reproduce_mingords();
  if (name == "family-table") return reproduce_family_table();
  if (name == "dubins-check") return reproduce_dubins_check(opt);
  if (name == "region-check") return reproduce_region_check(opt);
  return std::nullopt;
}

}  // namespace gordian
