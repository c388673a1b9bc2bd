#include <gtest/gtest.h>

#include "support.hpp"

namespace gordian {
namespace {

using testing::unit_circle;

/// Grid oracle: smallest chord among sample pairs that are nearly doubly critical.
double grid_r2(const PiecewiseCurve& c, std::size_t n, double residual_gate) {
  const auto params = uniform_parameters(c, n);
  std::vector<Pose> poses;
  for (double s : params) poses.push_back(evaluate(c, s));
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (c.separation(params[i], params[j]) < kPi / c.kappa()) continue;
      const Vec3 chord = poses[j].point - poses[i].point;
      const double len = chord.norm();
      if (len == 0.0) continue;
      const double r = std::max(std::abs(chord.dot(poses[i].tangent)), std::abs(chord.dot(poses[j].tangent))) / len;
      if (r < residual_gate) best = std::min(best, len);
    }
  }
  return best;
}

TEST(Thickness, MinRadiusOfCurvature) {
  EXPECT_EQ(min_radius_of_curvature(unit_circle()), 1.0);
  EXPECT_EQ(min_radius_of_curvature(testing::stadium(1.0, 1.0)), 1.0);
  const auto line = build_curve({Segment{Vec3::Zero(), Vec3(1, 0, 0)}, Segment{Vec3(1, 0, 0), Vec3(2, 0, 0)}}, false, 1.0);
  EXPECT_FALSE(min_radius_of_curvature(line).has_value());
}

TEST(Thickness, DoubleCriticalCircle) {
  const auto cp = double_critical_min(unit_circle());
  EXPECT_NEAR(cp.distance, 2.0, 1e-12);
}

TEST(Thickness, DoubleCriticalStadiumAgreesWithGridOracle) {
  const auto st = testing::stadium(1.0, 1.0);
  EXPECT_NEAR(grid_r2(st, 800, 0.02), 2.0, 1e-3);
  EXPECT_NEAR(double_critical_min(st).distance, 2.0, 1e-12);
}

TEST(Thickness, HalfGammaWitnessIsThePlaneCrossingPair) {
  const auto g = build_gamma(0.5);
  const auto rep = thickness_radius(g);
  EXPECT_NEAR(rep.r1, 1.0, 1e-15);
  EXPECT_NEAR(rep.r2, 1.0, 1e-9);
  EXPECT_NEAR(rep.tau, 0.5, 1e-9);
  const Vec3 a = evaluate(g, rep.witness.s1).point, b = evaluate(g, rep.witness.s2).point;
  const bool direct = (a - Vec3::Zero()).norm() < 1e-6 && (b - Vec3(-1, 0, 0)).norm() < 1e-6;
  const bool swapped = (b - Vec3::Zero()).norm() < 1e-6 && (a - Vec3(-1, 0, 0)).norm() < 1e-6;
  EXPECT_TRUE(direct || swapped);
}

TEST(Thickness, ReportAssembly) {
  const auto rep = thickness_radius(unit_circle());
  EXPECT_EQ(rep.r1, 1.0);
  EXPECT_NEAR(rep.r2, 2.0, 1e-12);
  EXPECT_EQ(rep.tau, std::min(rep.r1, 0.5 * rep.r2));
  EXPECT_NEAR(thickness_radius(build_gamma(0.75)).tau, 0.75, 1e-4);
}

TEST(Thickness, OpenCurveRejected) {
  EXPECT_THROW(double_critical_min(testing::straight(Vec3::Zero(), Vec3(5, 0, 0))), OutOfRange);
}

TEST(Thickness, Ropelength) {
  const auto m = assemble_member(0.5);
  const auto rep = ropelength({m.gamma, m.beta}, 1.0);
  EXPECT_NEAR(rep.rop, 20.3481, 1e-3);
  EXPECT_TRUE(rep.feasible);
  EXPECT_NEAR(ropelength({unit_circle()}, 2.0, {false, false}).rop, kPi, 1e-12);
  const auto b = ropelength({build_beta(0.75)}, 1.5);
  EXPECT_NEAR(b.rop, 2 * (kPi + 1), 1e-9);
  EXPECT_NEAR(b.rop, 8.28319, 1e-5);
}

TEST(Thickness, RopelengthRangeAndStrictness) {
  EXPECT_THROW(ropelength({unit_circle()}, 2.0), OutOfRange);
  EXPECT_THROW(ropelength({unit_circle()}, 0.0, {false, false}), OutOfRange);
  const auto g = build_gamma(0.5);
  EXPECT_FALSE(ropelength({g}, 1.5).feasible);
  EXPECT_THROW(ropelength({g}, 1.5, {true, true}), InfeasibleThickness);
  EXPECT_TRUE(ropelength({g}, 1.0, {true, true}).feasible);
}

TEST(Thickness, Ribbonlength) {
  EXPECT_NEAR(ribbonlength(testing::stadium(2.0, 2.0), 2.0), 2 * (kPi + 1), 1e-12);
  EXPECT_NEAR(testing::stadium(2.0, 2.0).length(), 4 * (kPi + 1), 1e-12);
  EXPECT_NEAR(ribbonlength(unit_circle(), 2.0), kPi, 1e-12);
  EXPECT_NEAR(ribbonlength(build_beta(0.5), 1.0), 2 * (kPi + 1), 1e-12);
  EXPECT_THROW(ribbonlength(unit_circle(), 0.0), OutOfRange);
}

TEST(Thickness, RibbonlengthNeedsPlanarCurve) {
  std::vector<Primitive> bent{Arc{Vec3::Zero(), Vec3::UnitZ(), 1.0, Vec3::UnitX(), kPi / 2, 1}};
  const Pose e = primitive_end(bent.back());
  bent.push_back(Arc{e.point + Vec3::UnitZ(), Vec3::UnitY(), 1.0, e.point, kPi / 2, 1});
  EXPECT_THROW(ribbonlength(build_curve(bent, false, 1.0), 1.0), NonPlanarCurve);
}

TEST(ThicknessProperty, ScaleCovariance) {
  for (double lambda : {0.5, 1.7, 3.0}) {
    for (const auto& c : {build_gamma(0.6), build_beta(0.6), testing::stadium(1.0, 1.0)}) {
      const auto a = thickness_radius(c), b = thickness_radius(scaled(c, lambda));
      EXPECT_NEAR(b.r1, lambda * a.r1, 1e-9 * lambda * a.r1);
      EXPECT_NEAR(b.r2, lambda * a.r2, 1e-9 * lambda * a.r2);
    }
    const auto st = testing::stadium(2.0, 2.0);
    EXPECT_NEAR(ribbonlength(scaled(st, lambda), 2.0 * lambda), ribbonlength(st, 2.0), 1e-9);
    EXPECT_NEAR(ropelength({scaled(st, lambda)}, 2.0 * lambda, {false, false}).rop,
                ropelength({st}, 2.0, {false, false}).rop, 1e-9);
  }
}

TEST(ThicknessProperty, WitnessIsDoublyCritical) {
  for (const auto& c : {build_gamma(0.5), build_gamma(0.9), build_beta(0.7), testing::stadium(1.0, 3.0)}) {
    const auto w = double_critical_min(c);
    const Pose a = evaluate(c, w.s1), b = evaluate(c, w.s2);
    const Vec3 chord = b.point - a.point;
    EXPECT_LE(std::abs(chord.dot(a.tangent)), 1e-7 * chord.norm());
    EXPECT_LE(std::abs(chord.dot(b.tangent)), 1e-7 * chord.norm());
  }
}

TEST(ThicknessProperty, RefinementConvergence) {
  for (double tau : {0.5, 0.6, 0.75, 0.9}) {
    const auto g = build_gamma(tau);
    EXPECT_NEAR(double_critical_min(g, 4096).distance, double_critical_min(g, 8192).distance, 1e-6);
  }
}

TEST(ThicknessProperty, FamilyThicknessEqualsTau) {
  for (double tau : {0.5, 0.6, 0.75, 0.9}) {
    const auto g = build_gamma(tau);
    EXPECT_NEAR(thickness_radius(g).tau, tau, 1e-4);
    EXPECT_NEAR(grid_r2(g, 900, 0.02), 2 * tau, 2e-2);
  }
}

}  // namespace
}  // namespace gordian
