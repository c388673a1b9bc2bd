#include <gtest/gtest.h>

#include "support.hpp"

namespace gordian {
namespace {

double gamma_closed_form(double tau) { return kTwoPi + 8.0 * std::acos((1.0 + tau) / 2.0); }

TEST(Family, ParamsRange) {
  EXPECT_NO_THROW(FamilyParams::at(0.5));
  EXPECT_THROW(FamilyParams::at(0.49), OutOfRange);
  EXPECT_THROW(FamilyParams::at(1.0), OutOfRange);
  EXPECT_THROW(build_gamma(1.0), OutOfRange);
  EXPECT_THROW(build_beta(0.2), OutOfRange);
  EXPECT_NEAR((FamilyParams::at(0.7).y - Vec3(-1.4, 0, 0)).norm(), 0.0, 1e-15);
}

TEST(Family, HalfGammaLength) {
  const auto g = build_gamma(0.5);
  EXPECT_NEAR(g.length(), 12.06506, 1e-5);
  EXPECT_NEAR(0.5 * g.length(), 6.0325, 1e-3);
  EXPECT_TRUE(g.closed());
}

TEST(Family, GammaHasFourArcsWithExpectedSweeps) {
  for (double tau : {0.5, 0.6, 0.75, 0.9, 0.95}) {
    const double b = std::acos((1 + tau) / 2);
    const auto g = build_gamma(tau);
    ASSERT_EQ(g.size(), 4u);
    const std::array<double, 4> want{2 * b, kPi + 2 * b, 2 * b, kPi + 2 * b};
    std::array<double, 4> got{};
    for (std::size_t i = 0; i < 4; ++i) {
      const auto* arc = std::get_if<Arc>(&g.primitives()[i]);
      ASSERT_NE(arc, nullptr);
      EXPECT_NEAR(arc->radius, 1.0, 1e-15);
      got[i] = arc->sweep;
    }
    // the loop may start on either kind of arc
    const bool aligned = std::abs(got[0] - want[0]) < 1e-9;
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(got[i], want[(i + (aligned ? 0 : 1)) % 4], 1e-9) << tau;
  }
}

TEST(Family, GammaApproachesCircle) {
  const double tau = 1 - 1e-9;
  const auto g = build_gamma(tau);
  EXPECT_NEAR(g.length(), gamma_closed_form(tau), 1e-9);
  // the residual 8 acos(1 - 5e-10) ~ 2.5e-4 shrinks like sqrt(1 - tau)
  EXPECT_LT(g.length() - kTwoPi, 3e-4);
  EXPECT_LT(build_gamma(1 - 1e-12).length() - kTwoPi, 1e-5);
}

TEST(Family, BetaLengths) {
  EXPECT_NEAR(build_beta(0.5).length(), 2 * (kPi + 1), 1e-12);
  EXPECT_NEAR(build_beta(0.5).length(), 8.2831, 1e-4);
  EXPECT_NEAR(build_beta(0.75).length(), 3 * (kPi + 1), 1e-12);
  for (double tau : {0.5, 0.55, 0.8, 0.99}) EXPECT_NEAR(build_beta(tau).length() / (2 * tau), 2 * (kPi + 1), 1e-12);
}

TEST(Family, BetaShape) {
  const auto b = build_beta(0.75);
  ASSERT_EQ(b.size(), 4u);
  int arcs = 0;
  for (const auto& p : b.primitives()) {
    if (const auto* a = std::get_if<Arc>(&p)) {
      ++arcs;
      EXPECT_NEAR(a->radius, 1.5, 1e-15);
      EXPECT_NEAR(a->sweep, kPi, 1e-12);
    } else {
      EXPECT_NEAR(primitive_length(p), 1.5, 1e-12);
    }
  }
  EXPECT_EQ(arcs, 2);
  for (const auto& q : sample_points(b, uniform_parameters(b, 200))) EXPECT_NEAR(q.z(), 0.0, 1e-15);
}

TEST(Family, MemberRopelength) {
  const auto m = build_member(0.5);
  EXPECT_NEAR(m.rop, 20.3481, 1e-3);
  EXPECT_NEAR(m.rop, (m.len_gamma + m.len_beta) / 1.0, 1e-12);
  EXPECT_TRUE(m.certificate.pass);
  const auto m75 = assemble_member(0.75);
  EXPECT_NEAR(m75.rop, (kTwoPi + 8 * std::acos(0.875) + 3 * (kPi + 1)) / 1.5, 1e-9);
  EXPECT_NEAR(m75.rop, 15.167, 1e-3);
  EXPECT_NEAR(m75.rop, (m75.gamma.length() + m75.beta.length()) / 1.5, 1e-12);
}

TEST(Family, Table) {
  const auto rows = family_table({0.5, 0.75, 0.95});
  ASSERT_EQ(rows.size(), 3u);
  const std::array<double, 3> thickness{1.0, 1.5, 1.9};
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(2 * rows[i].tau, thickness[i], 1e-12);
  const auto one = family_table({0.5});
  ASSERT_EQ(one.size(), 1u);
  const auto m = build_member(0.5);
  EXPECT_EQ(one[0].len_gamma, m.len_gamma);
  EXPECT_EQ(one[0].rop, m.rop);
  EXPECT_EQ(one[0].certificate_pass, m.certificate.pass);
  EXPECT_TRUE(family_table({}).empty());
  EXPECT_THROW(family_table({0.3}), OutOfRange);
}

TEST(FamilyProperty, ClosedFormLengthOnSeededTaus) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.5, 0.999);
  for (int i = 0; i < 20; ++i) {
    const double tau = u(rng);
    EXPECT_NEAR(build_gamma(tau).length(), gamma_closed_form(tau), 1e-9) << tau;
  }
}

TEST(FamilyProperty, LengthDecreasesWithTau) {
  double prev = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 50; ++i) {
    const double tau = 0.5 + 0.4999 * i / 49.0;
    const double len = build_gamma(tau).length();
    EXPECT_LT(len, prev);
    prev = len;
  }
}

TEST(FamilyProperty, GammaEmbeddedWithStrandGapTwoTau) {
  for (double tau : {0.5, 0.6, 0.75, 0.9}) {
    const auto g = build_gamma(tau);
    EXPECT_FALSE(self_intersects(g, 1e-6).intersects);
    EXPECT_FALSE(self_intersects(g, 2 * tau - 1e-6).intersects);
    EXPECT_TRUE(self_intersects(g, 2 * tau + 1e-6).intersects);
    EXPECT_NEAR(double_critical_min(g).distance, 2 * tau, 1e-6);
  }
}

TEST(FamilyProperty, BetaCurvatureWithinThinBound) {
  for (double tau : {0.5, 0.6, 0.75, 0.9}) {
    const auto r = min_radius_of_curvature(build_beta(tau));
    ASSERT_TRUE(r.has_value());
    EXPECT_NEAR(1.0 / *r, 1.0 / (2 * tau), 1e-15);
    EXPECT_LE(1.0 / *r, 1.0);
  }
}

TEST(FamilyProperty, HalfPathMiddleArcExceedsPi) {
  for (double tau : {0.5, 0.6, 0.75, 0.9, 0.95}) {
    const auto half = gamma_half_path(tau);
    EXPECT_TRUE(is_ccc(half.word));
    EXPECT_GT(half.params[1], kPi);
    EXPECT_NEAR(half.total_length, 0.5 * gamma_closed_form(tau), 1e-12);
  }
}

}  // namespace
}  // namespace gordian
