#pragma once

// SVG projections and OBJ tube meshes.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "gordian/curve.hpp"
#include "gordian/error.hpp"
#include "gordian/io.hpp"
#include "gordian/thickness.hpp"
#include "gordian/vec.hpp"

namespace gordian {

enum class Projection { kXY, kXZ, kYZ };

inline Projection parse_projection(const std::string& s) {
  if (s == "xy") return Projection::kXY;
  if (s == "xz") return Projection::kXZ;
  if (s == "yz") return Projection::kYZ;
  throw ParseError("projection must be xy, xz or yz");
}

inline Vec2 project(const Vec3& p, Projection proj) {
  switch (proj) {
    case Projection::kXY: return {p.x(), p.y()};
    case Projection::kXZ: return {p.x(), p.z()};
    case Projection::kYZ: return {p.y(), p.z()};
  }
  return {p.x(), p.y()};
}

inline constexpr std::size_t kSvgSamples = 512;

/// Projected polyline of a curve; closed curves repeat their first point.
inline std::vector<Vec2> projected_polyline(const PiecewiseCurve& curve, Projection proj,
                                            std::size_t samples = kSvgSamples) {
  std::vector<Vec2> out;
  for (const auto& p : sample_points(curve, uniform_parameters(curve, samples))) out.push_back(project(p, proj));
  if (curve.closed() && !out.empty()) out.push_back(out.front());
  return out;
}

struct Bounds2 {
  Vec2 lo = Vec2::Zero();
  Vec2 hi = Vec2::Zero();
};

inline Bounds2 projected_bounds(const std::vector<PiecewiseCurve>& curves, Projection proj,
                                std::size_t samples = kSvgSamples) {
  Bounds2 b;
  bool first = true;
  for (const auto& c : curves) {
    for (const auto& q : projected_polyline(c, proj, samples)) {
      if (first) {
        b.lo = b.hi = q;
        first = false;
      }
      b.lo = b.lo.cwiseMin(q);
      b.hi = b.hi.cwiseMax(q);
    }
  }
  return b;
}

inline std::string svg_document(const std::vector<PiecewiseCurve>& curves, Projection proj,
                                std::size_t samples = kSvgSamples) {
  char buf[160];
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  if (curves.empty()) {
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1 1\">\n</svg>\n";
    return out;
  }
  const Bounds2 b = projected_bounds(curves, proj, samples);
  const double extent = std::max({b.hi.x() - b.lo.x(), b.hi.y() - b.lo.y(), 1e-9});
  const double margin = 0.05 * extent;
  // SVG y grows downwards
  const double vx = b.lo.x() - margin, vy = -b.hi.y() - margin;
  const double vw = b.hi.x() - b.lo.x() + 2 * margin, vh = b.hi.y() - b.lo.y() + 2 * margin;
  std::snprintf(buf, sizeof buf, "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"%.6f %.6f %.6f %.6f\">\n", vx,
                vy, vw, vh);
  out += buf;
  std::snprintf(buf, sizeof buf, "%.6f", extent / 400.0);
  const std::string stroke = buf;
  for (const auto& c : curves) {
    out += "  <polyline fill=\"none\" stroke=\"black\" stroke-width=\"" + stroke + "\" points=\"";
    bool first = true;
    for (const auto& q : projected_polyline(c, proj, samples)) {
      std::snprintf(buf, sizeof buf, "%s%.6f,%.6f", first ? "" : " ", q.x(), -q.y());
      out += buf;
      first = false;
    }
    out += "\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

inline void export_svg(const std::vector<PiecewiseCurve>& curves, Projection proj, const std::string& path) {
  write_text(path, svg_document(curves, proj));
}

// ---------------------------------------------------------------------------
// Tube meshes

struct TubeMeshSpec {
  int radial_segments = 16;
  double axial_samples_per_unit_length = 32.0;
  double tube_radius = 0.5;
};

struct Mesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> faces;  // zero-based, counterclockwise seen from outside

  long euler_characteristic() const {
    std::vector<std::pair<int, int>> edges;
    edges.reserve(faces.size() * 3);
    for (const auto& f : faces) {
      for (int k = 0; k < 3; ++k) {
        const int a = f[static_cast<std::size_t>(k)], b = f[static_cast<std::size_t>((k + 1) % 3)];
        edges.emplace_back(std::min(a, b), std::max(a, b));
      }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return static_cast<long>(vertices.size()) - static_cast<long>(edges.size()) + static_cast<long>(faces.size());
  }
};

namespace detail {

/// Rotation-minimising normals along sampled points and tangents (double reflection).
inline std::vector<Vec3> rotation_minimizing_normals(const std::vector<Vec3>& pts, const std::vector<Vec3>& tans) {
  std::vector<Vec3> r(pts.size());
  r[0] = any_orthogonal(tans[0]);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Vec3 v1 = pts[i + 1] - pts[i];
    const double c1 = v1.squaredNorm();
    if (c1 < 1e-30) {
      r[i + 1] = r[i];
      continue;
    }
    const Vec3 r_l = r[i] - (2.0 / c1) * v1.dot(r[i]) * v1;
    const Vec3 t_l = tans[i] - (2.0 / c1) * v1.dot(tans[i]) * v1;
    const Vec3 v2 = tans[i + 1] - t_l;
    const double c2 = v2.squaredNorm();
    Vec3 next = c2 < 1e-30 ? r_l : Vec3(r_l - (2.0 / c2) * v2.dot(r_l) * v2);
    next = (next - next.dot(tans[i + 1]) * tans[i + 1]).normalized();
    r[i + 1] = next;
  }
  return r;
}

}  // namespace detail

/// Tube of the given radius around the core. Closed cores give a torus whose
/// frame twist is spread evenly along the curve; open cores are capped by
/// fans over their end rings. Strict mode rejects radii above tau(core).
inline Mesh tube_mesh(const PiecewiseCurve& curve, const TubeMeshSpec& spec, bool strict = false) {
  if (spec.radial_segments < 3) throw OutOfRange("radial_segments must be at least 3");
  if (!(spec.axial_samples_per_unit_length > 0.0)) throw OutOfRange("axial sample density must be positive");
  if (!(spec.tube_radius > 0.0)) throw OutOfRange("tube_radius must be positive");
  if (strict) {
    const double limit = curve.closed() ? thickness_radius(curve).tau
                                        : min_radius_of_curvature(curve).value_or(std::numeric_limits<double>::infinity());
    if (spec.tube_radius > limit * (1.0 + 1e-9)) {
      throw InfeasibleTube("tube radius " + std::to_string(spec.tube_radius) + " exceeds thickness radius " +
                           std::to_string(limit));
    }
  }
  const auto n = static_cast<std::size_t>(
      std::max(3.0, std::ceil(curve.length() * spec.axial_samples_per_unit_length)));
  const std::size_t rings = curve.closed() ? n : n + 1;
  std::vector<Vec3> pts, tans;
  for (std::size_t i = 0; i < rings; ++i) {
    const Pose pose = evaluate(curve, curve.length() * static_cast<double>(i) / static_cast<double>(n));
    pts.push_back(pose.point);
    tans.push_back(pose.tangent);
  }
  std::vector<Vec3> normals;
  if (curve.closed()) {
    // transport once round the loop and spread the holonomy evenly
    std::vector<Vec3> loop_pts = pts, loop_tans = tans;
    loop_pts.push_back(pts.front());
    loop_tans.push_back(tans.front());
    normals = detail::rotation_minimizing_normals(loop_pts, loop_tans);
    const Vec3 r_end = normals.back();
    normals.pop_back();
    const Vec3& t0 = tans.front();
    const double twist = std::atan2(normals.front().cross(r_end).dot(t0), normals.front().dot(r_end));
    for (std::size_t i = 0; i < rings; ++i) {
      normals[i] = rotate_about(normals[i], tans[i], -twist * static_cast<double>(i) / static_cast<double>(n));
    }
  } else {
    normals = detail::rotation_minimizing_normals(pts, tans);
  }

  Mesh mesh;
  const int m = spec.radial_segments;
  for (std::size_t i = 0; i < rings; ++i) {
    const Vec3 b = tans[i].cross(normals[i]);
    for (int k = 0; k < m; ++k) {
      const double a = kTwoPi * k / m;
      mesh.vertices.push_back(pts[i] + spec.tube_radius * (std::cos(a) * normals[i] + std::sin(a) * b));
    }
  }
  auto idx = [&](std::size_t ring, int k) { return static_cast<int>((ring % rings) * m + static_cast<std::size_t>(k % m)); };
  const std::size_t spans = curve.closed() ? rings : rings - 1;
  for (std::size_t i = 0; i < spans; ++i) {
    for (int k = 0; k < m; ++k) {
      mesh.faces.push_back({idx(i, k), idx(i, k + 1), idx(i + 1, k + 1)});
      mesh.faces.push_back({idx(i, k), idx(i + 1, k + 1), idx(i + 1, k)});
    }
  }
  if (!curve.closed()) {
    for (int k = 1; k + 1 < m; ++k) {
      mesh.faces.push_back({idx(0, 0), idx(0, k + 1), idx(0, k)});
      mesh.faces.push_back({idx(rings - 1, 0), idx(rings - 1, k), idx(rings - 1, k + 1)});
    }
  }
  return mesh;
}

inline std::string obj_document(const Mesh& mesh) {
  std::string out;
  char buf[128];
  for (const auto& v : mesh.vertices) {
    std::snprintf(buf, sizeof buf, "v %.9f %.9f %.9f\n", v.x(), v.y(), v.z());
    out += buf;
  }
  for (const auto& f : mesh.faces) {
    std::snprintf(buf, sizeof buf, "f %d %d %d\n", f[0] + 1, f[1] + 1, f[2] + 1);
    out += buf;
  }
  return out;
}

inline void export_obj(const PiecewiseCurve& curve, const TubeMeshSpec& spec, const std::string& path,
                       bool strict = false) {
  write_text(path, obj_document(tube_mesh(curve, spec, strict)));
}

}  // namespace gordian
