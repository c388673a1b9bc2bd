#include <gtest/gtest.h>

#include "support.hpp"

namespace gordian {
namespace {

const double kC = std::sqrt(3.0) / 2.0;

PiecewiseCurve upper_half(const PiecewiseCurve& gamma) {
  const Plane p{Vec3::Zero(), Vec3::UnitZ()};
  const auto cr = plane_crossings(gamma, p);
  EXPECT_EQ(cr.size(), 2u);
  auto a = subcurve(gamma, cr[0], cr[1]);
  if (evaluate(a, 0.5 * a.length()).point.z() < 0) a = subcurve(gamma, cr[1], cr[0]);
  return a;
}

TEST(Regions, CanonicalGeometry) {
  const auto g = region_geometry(RegionConfig{});
  EXPECT_NEAR(g.circle_radius, 0.5, 1e-15);
  EXPECT_NEAR((g.x - Vec3(0.5, 0, 0)).norm(), 0.0, 1e-15);
  EXPECT_NEAR((g.y - Vec3(-0.5, 0, 0)).norm(), 0.0, 1e-15);
  EXPECT_NEAR(g.spindle_offset, kC, 1e-15);
}

TEST(Regions, InvalidConfigs) {
  RegionConfig far;
  far.center1 = Vec3(0, 0, 1.0);
  far.center2 = Vec3(0, 0, -1.0);
  EXPECT_THROW(region_geometry(far), InvalidConfig);
  RegionConfig same;
  same.center2 = same.center1;
  EXPECT_THROW(region_membership(Vec3::Zero(), same, Region::kI), InvalidConfig);
}

TEST(Regions, ChordMidpoint) {
  const RegionConfig cfg;
  EXPECT_TRUE(region_membership(Vec3::Zero(), cfg, Region::kI));
  EXPECT_TRUE(region_membership(Vec3::Zero(), cfg, Region::kR));
  EXPECT_FALSE(region_membership(Vec3::Zero(), cfg, Region::kK));
  EXPECT_FALSE(region_membership(Vec3::Zero(), cfg, Region::kE));
}

TEST(Regions, PointInKOutsideSpindle) {
  const RegionConfig cfg;
  const Vec3 p(0, 0.4, 0);
  EXPECT_TRUE(region_membership(p, cfg, Region::kI));
  EXPECT_FALSE(region_membership(p, cfg, Region::kR));
  EXPECT_TRUE(region_membership(p, cfg, Region::kK));
  EXPECT_TRUE(region_membership(p, cfg, Region::kEK));
}

TEST(Regions, PointInE) {
  const RegionConfig cfg;
  const Vec3 p(0, 0, 0.9);
  EXPECT_FALSE(region_membership(p, cfg, Region::kI));
  EXPECT_TRUE(region_membership(p, cfg, Region::kU));
  EXPECT_TRUE(region_membership(p, cfg, Region::kE));
  EXPECT_TRUE(region_membership(p, cfg, Region::kEK));
  EXPECT_FALSE(region_membership(p, cfg, Region::kK));
}

TEST(RegionsProperty, PartitionSanity) {
  const RegionConfig cfg;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  int checked = 0;
  for (int i = 0; i < 100000; ++i) {
    const Vec3 p(u(rng), u(rng), u(rng));
    // oracle predicates written out from the ball and spindle definitions
    const double d1 = (p - cfg.center1).norm(), d2 = (p - cfg.center2).norm();
    const double ax = p.x(), rad = std::hypot(p.y(), p.z());
    const double sp = std::hypot(rad + kC, ax) - 1.0;
    const double near = std::min({std::abs(d1 - 1), std::abs(d2 - 1), std::abs(sp)});
    if (near <= 2e-9) continue;
    ++checked;
    const bool I = region_membership(p, cfg, Region::kI), U = region_membership(p, cfg, Region::kU);
    const bool E = region_membership(p, cfg, Region::kE), R = region_membership(p, cfg, Region::kR);
    const bool K = region_membership(p, cfg, Region::kK), EK = region_membership(p, cfg, Region::kEK);
    ASSERT_EQ(I, d1 < 1 && d2 < 1);
    ASSERT_EQ(U, d1 < 1 || d2 < 1);
    ASSERT_EQ(R, sp < 0);
    ASSERT_EQ(K, I && !(sp <= 0));
    ASSERT_EQ(E, U && !(d1 <= 1 && d2 <= 1));
    ASSERT_EQ(EK, E || K);
    if (R) ASSERT_TRUE(I);
  }
  EXPECT_GT(checked, 99000);
}

TEST(RegionsProperty, SpindleCrossSection) {
  const RegionConfig cfg;
  for (int k = 0; k <= 1000; ++k) {
    const double r = 0.5 * k / 1000.0;
    if (std::abs(r - (1 - kC)) < 1e-8) continue;
    for (double ang : {0.0, 1.0, 2.5, 4.0}) {
      const Vec3 p(0, r * std::cos(ang), r * std::sin(ang));
      EXPECT_EQ(region_membership(p, cfg, Region::kR), r < 1 - kC) << r;
    }
  }
}

TEST(RegionsProperty, IntersectionDiameterBelowTwo) {
  const RegionConfig cfg;
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Vec3> pts;
  while (pts.size() < 3000) {
    const Vec3 p(u(rng), u(rng), u(rng));
    if (region_membership(p, cfg, Region::kI)) pts.push_back(p);
  }
  double diam = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) diam = std::max(diam, (pts[i] - pts[j]).norm());
  EXPECT_LT(diam + 1e-6, 2.0);
}

TEST(RegionsProperty, CloserBallsGrowTheIntersection) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (double h : {0.3, 0.6, 0.9}) {
    RegionConfig wide, narrow;
    wide.center1 = Vec3(0, 0, h);
    wide.center2 = Vec3(0, 0, -h);
    narrow.center1 = Vec3(0, 0, 0.8 * h);
    narrow.center2 = Vec3(0, 0, -0.8 * h);
    for (int i = 0; i < 5000; ++i) {
      const Vec3 p(u(rng), u(rng), u(rng));
      if (region_membership(p, wide, Region::kI)) ASSERT_TRUE(region_membership(p, narrow, Region::kI));
    }
  }
}

TEST(Regions, ShortArcInsideSpindle) {
  // minor arc of a unit circle through x and y, bulging upwards
  const Vec3 x(0.5, 0, 0), y(-0.5, 0, 0), c(0, 0, -kC);
  const double sweep = 2 * std::asin(0.5);
  const Vec3 n = Vec3::UnitY();
  const auto arc = build_curve({Arc{c, n, 1.0, x, sweep, -1}}, false, 1.0);
  ASSERT_NEAR((evaluate(arc, arc.length()).point - y).norm(), 0.0, 1e-12);
  const auto cls = classify_arc(arc, x, y, Plane{Vec3::Zero(), Vec3::UnitZ()});
  EXPECT_EQ(cls.kind, ArcKind::kShort);
  EXPECT_THROW(check_long_arc_diameter(arc, cls), NotLongArc);
}

TEST(Regions, UpperHalfGammaIsLong) {
  const auto arc = upper_half(build_gamma(0.5));
  const auto cls = classify_arc(arc, Vec3::Zero(), Vec3(-1, 0, 0), Plane{Vec3::Zero(), Vec3::UnitZ()});
  EXPECT_EQ(cls.kind, ArcKind::kLong);
  EXPECT_NEAR(cls.evidence.cap_height, 1 - kC, 1e-12);
  // top of the middle arc: centre height 2 sin(b') with cos(b') = 3/4 geometry, radius 1
  EXPECT_NEAR(cls.evidence.max_height, 1 + std::sqrt(4 - 1.5 * 1.5), 1e-4);
  const auto diam = check_long_arc_diameter(arc, cls);
  EXPECT_TRUE(diam.satisfied);
  // exhaustive scan oracle
  EXPECT_NEAR(diam.diameter, testing::brute_diameter(arc, 3000), 1e-3);
  // endpoint to middle-arc centre is sqrt 2, plus the radius
  EXPECT_NEAR(diam.diameter, 1 + std::sqrt(2.0), 1e-3);
}

TEST(Regions, UpperHalfOfThickerMemberIsLong) {
  const auto g = build_gamma(0.9);
  const auto arc = upper_half(g);
  const auto cls = classify_arc(arc, Vec3::Zero(), Vec3(-1.8, 0, 0), Plane{Vec3::Zero(), Vec3::UnitZ()});
  ASSERT_EQ(cls.kind, ArcKind::kLong);
  EXPECT_TRUE(check_long_arc_diameter(arc, cls).satisfied);
}

TEST(Regions, FlatArcIsNeither) {
  // arc in the plane itself, bulging outside the spindle slice
  const Vec3 x(0.5, 0, 0), y(-0.5, 0, 0);
  const auto path = plan_dubins_2d({0.5, 0, kPi / 2}, {-0.5, 0, -kPi / 2}, 1.0);
  const auto arc = embed_in_plane(path, Pose{x, Vec3::UnitY()}, Vec3::UnitZ());
  const auto cls = classify_arc(arc, x, y, Plane{Vec3::Zero(), Vec3::UnitZ()});
  EXPECT_EQ(cls.kind, ArcKind::kNeither);
}

TEST(Regions, ClassifyErrors) {
  const Plane p{Vec3::Zero(), Vec3::UnitZ()};
  const auto seg = testing::straight(Vec3(0.5, 0, 0), Vec3(-0.5, 0, 0));
  EXPECT_THROW(classify_arc(seg, Vec3(0.6, 0, 0), Vec3(-0.5, 0, 0), p), EndpointMismatch);
  EXPECT_THROW(classify_arc(testing::unit_circle(), Vec3(1, 0, 0), Vec3(1, 0, 0), p), EndpointMismatch);
  const auto wide = testing::straight(Vec3(1.5, 0, 0), Vec3(-1.5, 0, 0));
  EXPECT_THROW(classify_arc(wide, Vec3(1.5, 0, 0), Vec3(-1.5, 0, 0), p), InvalidConfig);
  // the segment itself lies in the spindle
  EXPECT_EQ(classify_arc(seg, Vec3(0.5, 0, 0), Vec3(-0.5, 0, 0), p).kind, ArcKind::kShort);
}

TEST(RegionsProperty, FamilyHalvesSatisfyDiameterBound) {
  for (double tau : {0.5, 0.6, 0.75, 0.9, 0.95}) {
    const auto g = build_gamma(tau);
    const Plane p{Vec3::Zero(), Vec3::UnitZ()};
    const auto cr = plane_crossings(g, p);
    ASSERT_EQ(cr.size(), 2u);
    const Vec3 x = evaluate(g, cr[0]).point, y = evaluate(g, cr[1]).point;
    for (const auto& part : {subcurve(g, cr[0], cr[1]), subcurve(g, cr[1], cr[0])}) {
      const bool up = evaluate(part, 0.5 * part.length()).point.z() > 0;
      const auto cls = classify_arc(part, x, y, Plane{Vec3::Zero(), up ? Vec3::UnitZ() : Vec3(-Vec3::UnitZ())});
      if (cls.kind == ArcKind::kLong) EXPECT_TRUE(check_long_arc_diameter(part, cls).satisfied) << tau;
    }
  }
}

TEST(Certificate, HalfMemberPassesEveryPremise) {
  const auto m = assemble_member(0.5);
  ASSERT_EQ(m.certificate.premises.size(), 6u);
  for (const auto& p : m.certificate.premises) {
    EXPECT_TRUE(p.evaluated) << p.name;
    EXPECT_TRUE(p.passed) << p.name << " " << p.detail;
  }
  EXPECT_TRUE(m.certificate.pass);
}

TEST(Certificate, TranslatedBetaFailsOnlyStadium) {
  const auto m = assemble_member(0.5);
  const auto moved = transformed(m.beta, Mat3::Identity(), Vec3(10, 0, 0));
  const auto cert = certify_unlink(m.gamma, moved, m.params.plane, 0.5);
  EXPECT_FALSE(cert.pass);
  EXPECT_EQ(cert.failed(), std::vector<std::string>{premise::kStadiumEnclosesDisks});
}

TEST(Certificate, PlanarGammaFailsOnlyCrossings) {
  const auto m = assemble_member(0.5);
  const auto flat = transformed(testing::unit_circle(), Mat3::Identity(), Vec3(10, 0, 0));
  const auto cert = certify_unlink(flat, m.beta, m.params.plane, 0.5);
  EXPECT_FALSE(cert.pass);
  EXPECT_EQ(cert.failed(), std::vector<std::string>{premise::kOrthogonalCrossings});
}

TEST(Certificate, OversizedStadiumFailsOnlyStadium) {
  const auto m = assemble_member(0.5);
  const auto big = build_stadium(Vec3::Zero(), Vec3(-1, 0, 0), 2.4, Vec3::UnitZ(), 1.0);
  const auto cert = certify_unlink(m.gamma, big, m.params.plane, 0.5);
  EXPECT_EQ(cert.failed(), std::vector<std::string>{premise::kStadiumEnclosesDisks});
}

TEST(Certificate, PlaneCrossingsOfGamma) {
  const auto g = build_gamma(0.75);
  const auto cr = plane_crossings(g, Plane{Vec3::Zero(), Vec3::UnitZ()});
  ASSERT_EQ(cr.size(), 2u);
  const Vec3 a = evaluate(g, cr[0]).point, b = evaluate(g, cr[1]).point;
  EXPECT_NEAR((a - b).norm(), 1.5, 1e-9);
}

TEST(Certificate, WindingNumber) {
  const std::vector<Vec2> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  EXPECT_NE(winding_number(sq, {0.5, 0.5}), 0);
  EXPECT_EQ(winding_number(sq, {1.5, 0.5}), 0);
}

}  // namespace
}  // namespace gordian
