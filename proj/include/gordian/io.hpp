#pragma once

// JSON forms of curves, region configs and reports.
//
// Curve schema:
//   {"closed": bool, "kappa": number,
//    "primitives": [
//      {"type": "segment", "start": [x,y,z], "end": [x,y,z]},
//      {"type": "arc", "center": [...], "normal": [...], "radius": r,
//       "start_point": [...], "sweep": s, "orientation": 1 | -1}, ...]}
//
// Doubles are written in shortest round-trip form (at most 17 significant
// digits), so a save/load cycle reproduces every primitive exactly.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gordian/curve.hpp"
#include "gordian/dubins.hpp"
#include "gordian/error.hpp"
#include "gordian/family.hpp"
#include "gordian/oracle.hpp"
#include "gordian/regions.hpp"
#include "gordian/thickness.hpp"

namespace gordian {

using Json = nlohmann::json;

namespace detail {

inline Json vec_json(const Vec3& v) { return Json::array({v.x(), v.y(), v.z()}); }

inline Vec3 json_vec(const Json& j, const char* field) {
  if (!j.is_array() || j.size() != 3) throw ParseError(std::string(field) + ": expected [x, y, z]");
  Vec3 v;
  for (int i = 0; i < 3; ++i) {
    if (!j[static_cast<std::size_t>(i)].is_number()) throw ParseError(std::string(field) + ": non-numeric entry");
    v[i] = j[static_cast<std::size_t>(i)].get<double>();
  }
  return v;
}

inline const Json& require(const Json& j, const char* field) {
  if (!j.is_object() || !j.contains(field)) throw ParseError(std::string("missing field '") + field + "'");
  return j.at(field);
}

inline double require_number(const Json& j, const char* field) {
  const Json& v = require(j, field);
  if (!v.is_number()) throw ParseError(std::string(field) + ": expected a number");
  return v.get<double>();
}

}  // namespace detail

inline Json primitive_to_json(const Primitive& p) {
  if (const auto* seg = std::get_if<Segment>(&p)) {
    return {{"type", "segment"}, {"start", detail::vec_json(seg->start)}, {"end", detail::vec_json(seg->end)}};
  }
  const auto& arc = std::get<Arc>(p);
  return {{"type", "arc"},
          {"center", detail::vec_json(arc.center)},
          {"normal", detail::vec_json(arc.normal)},
          {"radius", arc.radius},
          {"start_point", detail::vec_json(arc.start_point)},
          {"sweep", arc.sweep},
          {"orientation", arc.orientation}};
}

inline Primitive primitive_from_json(const Json& j) {
  const Json& type = detail::require(j, "type");
  if (!type.is_string()) throw ParseError("type: expected a string");
  const auto name = type.get<std::string>();
  if (name == "segment") {
    return Segment{detail::json_vec(detail::require(j, "start"), "start"),
                   detail::json_vec(detail::require(j, "end"), "end")};
  }
  if (name == "arc") {
    const Json& orient = detail::require(j, "orientation");
    if (!orient.is_number_integer()) throw ParseError("orientation: expected 1 or -1");
    return Arc{detail::json_vec(detail::require(j, "center"), "center"),
               detail::json_vec(detail::require(j, "normal"), "normal"),
               detail::require_number(j, "radius"),
               detail::json_vec(detail::require(j, "start_point"), "start_point"),
               detail::require_number(j, "sweep"),
               orient.get<int>()};
  }
  throw ParseError("unknown primitive type '" + name + "'");
}

inline Json curve_to_json(const PiecewiseCurve& curve) {
  Json prims = Json::array();
  for (const auto& p : curve.primitives()) prims.push_back(primitive_to_json(p));
  return {{"closed", curve.closed()}, {"kappa", curve.kappa()}, {"primitives", prims}};
}

/// Validates through build_curve, so geometric errors surface as their own types.
inline PiecewiseCurve curve_from_json(const Json& j) {
  const Json& closed = detail::require(j, "closed");
  if (!closed.is_boolean()) throw ParseError("closed: expected a boolean");
  const double kappa = j.contains("kappa") ? detail::require_number(j, "kappa") : 1.0;
  const Json& prims = detail::require(j, "primitives");
  if (!prims.is_array()) throw ParseError("primitives: expected an array");
  std::vector<Primitive> out;
  for (const auto& p : prims) out.push_back(primitive_from_json(p));
  return build_curve(std::move(out), closed.get<bool>(), kappa);
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path + "'");
}

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(e.what());
  }
}

inline PiecewiseCurve load_curve(const std::string& path) { return curve_from_json(parse_json(read_text(path))); }

inline void save_curve(const PiecewiseCurve& curve, const std::string& path) {
  write_text(path, curve_to_json(curve).dump(2) + "\n");
}

// ---------------------------------------------------------------------------

inline Json region_config_to_json(const RegionConfig& cfg) {
  return {{"center1", detail::vec_json(cfg.center1)},
          {"center2", detail::vec_json(cfg.center2)},
          {"kappa", cfg.kappa},
          {"pair_angle", cfg.pair_angle}};
}

inline RegionConfig region_config_from_json(const Json& j) {
  RegionConfig cfg;
  cfg.center1 = detail::json_vec(detail::require(j, "center1"), "center1");
  cfg.center2 = detail::json_vec(detail::require(j, "center2"), "center2");
  if (j.contains("kappa")) cfg.kappa = detail::require_number(j, "kappa");
  if (j.contains("pair_angle")) cfg.pair_angle = detail::require_number(j, "pair_angle");
  region_geometry(cfg);  // throws InvalidConfig
  return cfg;
}

inline Json dubins_to_json(const DubinsPath& p) {
  return {{"word", std::string(word_name(p.word))},
          {"params", {p.params[0], p.params[1], p.params[2]}},
          {"total_length", p.total_length},
          {"kappa", p.kappa},
          {"candidate_only", p.candidate_only}};
}

inline Json thickness_to_json(const ThicknessReport& r) {
  Json j{{"r2", r.r2}, {"tau", r.tau}, {"witness", {{"s1", r.witness.s1}, {"s2", r.witness.s2}}}};
  j["r1"] = std::isfinite(r.r1) ? Json(r.r1) : Json("inf");
  return j;
}

inline Json certificate_to_json(const GordianCertificate& c) {
  Json premises = Json::array();
  for (const auto& p : c.premises) {
    premises.push_back({{"name", p.name},
                        {"evaluated", p.evaluated},
                        {"passed", p.passed},
                        {"slack", std::isfinite(p.slack) ? Json(p.slack) : Json(nullptr)},
                        {"detail", p.detail}});
  }
  return {{"tau", c.tau}, {"pass", c.pass}, {"premises", premises}};
}

inline Json search_report_to_json(const SearchReport& r) {
  Json witnesses = Json::array();
  for (const auto& w : r.witnesses) witnesses.push_back(curve_to_json(w));
  return {{"trials", r.trials}, {"hits", r.hits}, {"generated", r.generated}, {"seed", r.seed},
          {"witnesses", witnesses}};
}

}  // namespace gordian
