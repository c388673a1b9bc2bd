#pragma once

// The one-parameter unlink family (gamma_tau, beta_tau), tau in [1/2, 1).
//
// gamma_tau closes up the shortest planar path from ((0,0), pi/2) to
// ((-2 tau, 0), -pi/2) with its mirror image through the xy-plane; the path
// is drawn in the xz-plane. beta_tau is the stadium of radius 2 tau about the
// segment joining the two crossings, in the xy-plane.

#include <cmath>
#include <string>
#include <vector>

#include "gordian/curve.hpp"
#include "gordian/dubins.hpp"
#include "gordian/error.hpp"
#include "gordian/regions.hpp"
#include "gordian/thickness.hpp"
#include "gordian/vec.hpp"

namespace gordian {

struct FamilyParams {
  double tau = 0.5;
  double kappa = 1.0;
  Vec3 x = Vec3::Zero();
  Vec3 y = Vec3::Zero();
  Plane plane{Vec3::Zero(), Vec3::UnitZ()};

  static FamilyParams at(double tau) {
    if (!(tau >= 0.5 && tau < 1.0)) throw OutOfRange("tau must lie in [1/2, 1)");
    FamilyParams p;
    p.tau = tau;
    p.y = Vec3(-2.0 * tau, 0.0, 0.0);
    return p;
  }
};

namespace detail {

inline Vec3 mirror_z(const Vec3& v) { return {v.x(), v.y(), -v.z()}; }

}  // namespace detail

/// Upper half of gamma_tau as a planar path, before embedding.
inline DubinsPath gamma_half_path(double tau) {
  const FamilyParams fp = FamilyParams::at(tau);
  return plan_dubins_2d(PlanarPose(0.0, 0.0, kPi / 2.0), PlanarPose(fp.y.x(), 0.0, -kPi / 2.0), fp.kappa);
}

inline PiecewiseCurve build_gamma(double tau) {
  const FamilyParams fp = FamilyParams::at(tau);
  const DubinsPath path = gamma_half_path(tau);
  if (path.word != DubinsWord::kRLR || !(path.params[0] > 0.0 && path.params[1] > 0.0 && path.params[2] > 0.0)) {
    throw CertificateFailure("unexpected optimal word " + std::string(word_name(path.word)));
  }
  // planar (u, v) maps to (u, 0, v); with this normal "L" stays counterclockwise
  const Vec3 normal(0.0, -1.0, 0.0);
  const PiecewiseCurve half = embed_in_plane(path, Pose{fp.x, Vec3::UnitZ()}, normal);
  const Arc a1 = std::get<Arc>(half.primitives()[0]);
  const Arc a2 = std::get<Arc>(half.primitives()[1]);
  const Arc a3 = std::get<Arc>(half.primitives()[2]);
  const Vec3 a1_end = primitive_end(a1).point;
  const Vec3 a2_end = primitive_end(a2).point;

  // mirror of A1 run backwards, then A1
  const Arc first{a1.center, a1.normal, a1.radius, detail::mirror_z(a1_end), 2.0 * a1.sweep, a1.orientation};
  // A3, then its mirror run backwards
  const Arc third{a3.center, a3.normal, a3.radius, a3.start_point, 2.0 * a3.sweep, a3.orientation};
  // mirror of A2 run backwards
  const Arc fourth{detail::mirror_z(a2.center), a2.normal, a2.radius, detail::mirror_z(a2_end), a2.sweep,
                   a2.orientation};
  return build_curve({first, a2, third, fourth}, true, fp.kappa);
}

/// Stadium at distance `radius` from the segment [a, b], in the plane with
/// normal `n`, run counterclockwise about n.
inline PiecewiseCurve build_stadium(const Vec3& a, const Vec3& b, double radius, const Vec3& n, double kappa) {
  const Vec3 along = (b - a).normalized();
  const Vec3 side = n.cross(along);  // points to the left of a -> b
  const Arc cap_a{a, n, radius, a + radius * side, kPi, 1};
  const Segment leg_ab{a - radius * side, b - radius * side};
  const Arc cap_b{b, n, radius, b - radius * side, kPi, 1};
  const Segment leg_ba{b + radius * side, a + radius * side};
  return build_curve({cap_a, leg_ab, cap_b, leg_ba}, true, kappa);
}

inline PiecewiseCurve build_beta(double tau) {
  const FamilyParams fp = FamilyParams::at(tau);
  return build_stadium(fp.x, fp.y, 2.0 * tau, Vec3::UnitZ(), fp.kappa);
}

struct UnlinkMember {
  FamilyParams params;
  PiecewiseCurve gamma;
  PiecewiseCurve beta;
  double len_gamma = 0.0;
  double len_beta = 0.0;
  double rop = 0.0;  // total length over thickness 2 tau
  GordianCertificate certificate;
};

/// Builds a member and its certificate without requiring the certificate to pass.
inline UnlinkMember assemble_member(double tau) {
  const FamilyParams fp = FamilyParams::at(tau);
  PiecewiseCurve gamma = build_gamma(tau);
  PiecewiseCurve beta = build_beta(tau);
  UnlinkMember m{fp, gamma, beta, gamma.length(), beta.length(), 0.0, {}};
  m.rop = (m.len_gamma + m.len_beta) / (2.0 * tau);
  m.certificate = certify_unlink(m.gamma, m.beta, fp.plane, tau);
  return m;
}

/// Like assemble_member, but throws CertificateFailure when a premise fails.
inline UnlinkMember build_member(double tau) {
  UnlinkMember m = assemble_member(tau);
  if (!m.certificate.pass) {
    std::string names;
    for (const auto& p : m.certificate.premises) {
      if (p.evaluated && p.passed) continue;
      if (!names.empty()) names += ", ";
      names += p.name;
    }
    throw CertificateFailure("tau=" + std::to_string(tau) + " fails " + names);
  }
  return m;
}

struct FamilyRow {
  double tau = 0.0;
  double len_gamma = 0.0;
  double len_beta = 0.0;
  double rop = 0.0;
  bool certificate_pass = false;
};

inline std::vector<FamilyRow> family_table(const std::vector<double>& taus) {
  std::vector<FamilyRow> rows;
  rows.reserve(taus.size());
  for (double tau : taus) {
    const UnlinkMember m = assemble_member(tau);
    rows.push_back({tau, m.len_gamma, m.len_beta, m.rop, m.certificate.pass});
  }
  return rows;
}

}  // namespace gordian
