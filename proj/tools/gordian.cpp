// gordian: command-line front end.
//
// Exit codes: 0 pass, 1 check failure, 2 usage or input error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gordian/gordian.hpp"

namespace {

using gordian::Json;

struct Globals {
  std::uint64_t seed = 7;
  bool json_lines = false;
  std::string out;
};

void emit(const Globals& g, const Json& j) {
  const std::string text = g.json_lines ? j.dump() : j.dump(2);
  std::cout << text << "\n";
}

std::vector<double> parse_numbers(const std::string& csv, std::size_t expected = 0) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw gordian::ParseError("not a number: '" + item + "'");
    }
  }
  if (expected != 0 && out.size() != expected) {
    throw gordian::ParseError("expected " + std::to_string(expected) + " comma-separated numbers in '" + csv + "'");
  }
  return out;
}

std::vector<std::string> split(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

gordian::PlanarPose parse_pose(const std::string& s) {
  const auto v = parse_numbers(s, 3);
  return {v[0], v[1], v[2]};
}

gordian::Vec3 parse_vec3(const std::string& s) {
  const auto v = parse_numbers(s, 3);
  return {v[0], v[1], v[2]};
}

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature-constrained curves, thickness and gordian unlink certificates"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Seed for randomised checks");
  app.add_flag("--json", g.json_lines, "Compact single-line JSON output");
  app.add_option("--out", g.out, "Output file or directory");

  // dubins
  auto* dubins = app.add_subcommand("dubins", "Shortest planar path between two poses");
  std::string d_start, d_goal;
  double d_kappa = 1.0;
  bool d_all = false;
  dubins->add_option("--start", d_start, "x,y,heading")->required();
  dubins->add_option("--goal", d_goal, "x,y,heading")->required();
  dubins->add_option("--kappa", d_kappa, "Curvature bound");
  dubins->add_flag("--all,--all-words", d_all, "Also list every word candidate");

  // family
  auto* family = app.add_subcommand("family", "Members of the unlink family");
  double f_tau = 0.5;
  std::string f_emit = "both", f_table;
  bool f_csv = false;
  auto* f_tau_opt = family->add_option("--tau", f_tau, "Family parameter in [1/2, 1)");
  family->add_option("--emit", f_emit, "gamma, beta or both")->check(CLI::IsMember({"gamma", "beta", "both"}));
  auto* f_table_opt = family->add_option("--table", f_table, "Comma-separated tau values");
  family->add_flag("--csv", f_csv, "Write the table as CSV");
  f_tau_opt->excludes(f_table_opt);

  // thickness
  auto* thickness = app.add_subcommand("thickness", "Thickness radius of a closed curve");
  std::string t_curve;
  thickness->add_option("--curve", t_curve, "Curve JSON")->required();

  // ropelength
  auto* rop = app.add_subcommand("ropelength", "Ropelength of a link at a prescribed thickness");
  std::string r_curves;
  double r_thickness = 1.0;
  bool r_strict = false, r_any = false;
  rop->add_option("--curves,--link", r_curves, "Comma-separated curve JSON files")->required();
  rop->add_option("--thickness", r_thickness, "Prescribed thickness")->required();
  rop->add_flag("--strict", r_strict, "Fail when the thickness is infeasible");
  rop->add_flag("--any-thickness", r_any, "Allow thickness outside [1, 2)");

  // certify
  auto* certify = app.add_subcommand("certify", "Check the non-separability premises");
  std::string c_gamma, c_beta, c_point = "0,0,0", c_normal = "0,0,1";
  double c_tau = 0.5;
  certify->add_option("--gamma", c_gamma, "Curve JSON crossing the plane")->required();
  certify->add_option("--beta", c_beta, "Stadium curve JSON")->required();
  certify->add_option("--tau", c_tau, "Half the prescribed thickness")->required();
  certify->add_option("--plane-point", c_point, "x,y,z");
  certify->add_option("--plane-normal", c_normal, "x,y,z");

  // region
  auto* region = app.add_subcommand("region", "Membership in an obstruction region");
  std::string g_config, g_point, g_which;
  region->add_option("--config", g_config, "Region config JSON")->required();
  region->add_option("--point", g_point, "x,y,z")->required();
  region->add_option("--which", g_which, "I, U, E, R, K or EK")
      ->required()
      ->check(CLI::IsMember({"I", "U", "E", "R", "K", "EK"}));

  // verify
  auto* verify = app.add_subcommand("verify", "Randomised oracle checks");
  verify->require_subcommand(1);
  auto* v_dubins = verify->add_subcommand("dubins", "Planner against the lattice oracle");
  std::size_t vd_trials = 50;
  double vd_step = 0.02;
  v_dubins->add_option("--trials", vd_trials, "Instances");
  v_dubins->add_option("--step", vd_step, "Lattice step length");
  auto* v_regions = verify->add_subcommand("regions", "Forbidden-region search");
  std::string vr_config, vr_region = "K";
  std::size_t vr_trials = 10000;
  v_regions->add_option("--config", vr_config, "Region config JSON (canonical when omitted)");
  v_regions->add_option("--region", vr_region, "E, K or EK")->check(CLI::IsMember({"E", "K", "EK"}));
  v_regions->add_option("--trials", vr_trials, "Random arcs");

  // export
  auto* exp = app.add_subcommand("export", "SVG projections and OBJ tube meshes");
  exp->require_subcommand(1);
  auto* e_svg = exp->add_subcommand("svg", "Project curves onto a coordinate plane");
  std::string es_curves, es_plane = "xy";
  e_svg->add_option("--curves", es_curves, "Comma-separated curve JSON files");
  e_svg->add_option("--plane", es_plane, "xy, xz or yz")->check(CLI::IsMember({"xy", "xz", "yz"}));
  auto* e_obj = exp->add_subcommand("obj", "Tube mesh around a curve");
  std::string eo_curve;
  gordian::TubeMeshSpec eo_spec;
  bool eo_strict = false;
  e_obj->add_option("--curve", eo_curve, "Curve JSON")->required();
  e_obj->add_option("--radius", eo_spec.tube_radius, "Tube radius");
  e_obj->add_option("--radial", eo_spec.radial_segments, "Segments around the tube");
  e_obj->add_option("--density", eo_spec.axial_samples_per_unit_length, "Rings per unit length");
  e_obj->add_flag("--strict", eo_strict, "Reject radii above the thickness radius");

  // reproduce
  auto* repro = app.add_subcommand("reproduce", "Reference comparison reports");
  std::string p_name;
  std::size_t p_trials = 0;
  repro->add_option("name", p_name, "mingords, family-table, dubins-check or region-check")->required();
  repro->add_option("--trials", p_trials, "Override the report's trial count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto need_out = [&](const char* what) {
    if (g.out.empty()) throw gordian::ParseError(std::string(what) + " needs --out");
  };

  try {
    if (dubins->parsed()) {
      const auto start = parse_pose(d_start), goal = parse_pose(d_goal);
      Json j = gordian::dubins_to_json(gordian::plan_dubins_2d(start, goal, d_kappa));
      if (d_all) {
        Json all = Json::array();
        for (const auto& c : gordian::word_candidates(start, goal, d_kappa)) all.push_back(gordian::dubins_to_json(c));
        j["candidates"] = all;
      }
      emit(g, j);
      return 0;
    }

    if (family->parsed()) {
      if (!f_table.empty()) {
        const auto rows = gordian::family_table(parse_numbers(f_table));
        std::ostringstream text;
        if (f_csv) {
          text << "tau,len_gamma,len_beta,rop,certificate_pass\n";
          for (const auto& r : rows) {
            text << fmt12(r.tau) << "," << fmt12(r.len_gamma) << "," << fmt12(r.len_beta) << "," << fmt12(r.rop)
                 << "," << (r.certificate_pass ? "true" : "false") << "\n";
          }
        } else {
          Json arr = Json::array();
          for (const auto& r : rows) {
            arr.push_back({{"tau", r.tau},
                           {"len_gamma", r.len_gamma},
                           {"len_beta", r.len_beta},
                           {"rop", r.rop},
                           {"certificate_pass", r.certificate_pass}});
          }
          text << (g.json_lines ? arr.dump() : arr.dump(2)) << "\n";
        }
        if (g.out.empty()) {
          std::cout << text.str();
        } else {
          gordian::write_text(g.out, text.str());
        }
        return 0;
      }
      need_out("family");
      std::filesystem::create_directories(g.out);
      const auto member = gordian::assemble_member(f_tau);
      Json written = Json::array();
      if (f_emit != "beta") {
        const std::string p = (std::filesystem::path(g.out) / "gamma.json").string();
        gordian::save_curve(member.gamma, p);
        written.push_back(p);
      }
      if (f_emit != "gamma") {
        const std::string p = (std::filesystem::path(g.out) / "beta.json").string();
        gordian::save_curve(member.beta, p);
        written.push_back(p);
      }
      emit(g, {{"tau", f_tau},
               {"len_gamma", member.len_gamma},
               {"len_beta", member.len_beta},
               {"rop", member.rop},
               {"certificate_pass", member.certificate.pass},
               {"written", written}});
      return 0;
    }

    if (thickness->parsed()) {
      const auto curve = gordian::load_curve(t_curve);
      emit(g, gordian::thickness_to_json(gordian::thickness_radius(curve)));
      return 0;
    }

    if (rop->parsed()) {
      std::vector<gordian::PiecewiseCurve> link;
      for (const auto& p : split(r_curves)) link.push_back(gordian::load_curve(p));
      gordian::RopelengthOptions opt;
      opt.strict = r_strict;
      opt.thin_only = !r_any;
      const auto rep = gordian::ropelength(link, r_thickness, opt);
      emit(g, {{"total_length", rep.total_length},
               {"prescribed_thickness", rep.prescribed_thickness},
               {"rop", rep.rop},
               {"feasible", rep.feasible},
               {"component_tau", rep.component_tau}});
      return rep.feasible ? 0 : 1;
    }

    if (certify->parsed()) {
      const auto gamma = gordian::load_curve(c_gamma);
      const auto beta = gordian::load_curve(c_beta);
      const gordian::Plane plane{parse_vec3(c_point), parse_vec3(c_normal).normalized()};
      const auto cert = gordian::certify_unlink(gamma, beta, plane, c_tau);
      emit(g, gordian::certificate_to_json(cert));
      return cert.pass ? 0 : 1;
    }

    if (region->parsed()) {
      const auto cfg = gordian::region_config_from_json(gordian::parse_json(gordian::read_text(g_config)));
      const std::map<std::string, gordian::Region> names = {{"I", gordian::Region::kI}, {"U", gordian::Region::kU},
                                                            {"E", gordian::Region::kE}, {"R", gordian::Region::kR},
                                                            {"K", gordian::Region::kK}, {"EK", gordian::Region::kEK}};
      const bool inside = gordian::region_membership(parse_vec3(g_point), cfg, names.at(g_which));
      emit(g, {{"region", g_which}, {"point", parse_numbers(g_point, 3)}, {"inside", inside}});
      return 0;
    }

    if (v_dubins->parsed()) {
      std::size_t violations = 0;
      Json rows = Json::array();
      for (const auto& inst : gordian::oracle_instances(g.seed, vd_trials)) {
        const auto c = gordian::compare_with_oracle(inst, 1.0, vd_step);
        violations += c.within_bound ? 0 : 1;
        rows.push_back({{"goal", {inst.goal.point.x(), inst.goal.point.y(), inst.goal.heading}},
                        {"word", std::string(gordian::word_name(c.plan.word))},
                        {"dubins", c.plan.total_length},
                        {"lattice", c.lattice.length},
                        {"bound", c.lattice.error_bound},
                        {"within_bound", c.within_bound}});
      }
      emit(g, {{"trials", vd_trials}, {"seed", g.seed}, {"violations", violations}, {"instances", rows}});
      return violations == 0 ? 0 : 1;
    }

    if (v_regions->parsed()) {
      const auto cfg = vr_config.empty()
                           ? gordian::canonical_region_config()
                           : gordian::region_config_from_json(gordian::parse_json(gordian::read_text(vr_config)));
      const auto which = vr_region == "E" ? gordian::Region::kE
                                          : (vr_region == "K" ? gordian::Region::kK : gordian::Region::kEK);
      const auto rep = gordian::forbidden_region_search(cfg, which, vr_trials, g.seed);
      Json j = gordian::search_report_to_json(rep);
      j["region"] = vr_region;
      emit(g, j);
      return rep.hits == 0 ? 0 : 1;
    }

    if (e_svg->parsed()) {
      need_out("export svg");
      std::vector<gordian::PiecewiseCurve> curves;
      if (!es_curves.empty())
        for (const auto& p : split(es_curves)) curves.push_back(gordian::load_curve(p));
      gordian::export_svg(curves, gordian::parse_projection(es_plane), g.out);
      emit(g, {{"written", g.out}, {"curves", curves.size()}});
      return 0;
    }

    if (e_obj->parsed()) {
      need_out("export obj");
      const auto curve = gordian::load_curve(eo_curve);
      const auto mesh = gordian::tube_mesh(curve, eo_spec, eo_strict);
      gordian::write_text(g.out, gordian::obj_document(mesh));
      emit(g, {{"written", g.out},
               {"vertices", mesh.vertices.size()},
               {"faces", mesh.faces.size()},
               {"euler_characteristic", mesh.euler_characteristic()}});
      return 0;
    }

    if (repro->parsed()) {
      gordian::ReproduceOptions opt;
      opt.seed = g.seed;
      opt.trials = p_trials;
      const auto rep = gordian::reproduce(p_name, opt);
      if (!rep) {
        std::cerr << "unknown report '" << p_name << "'; expected one of:";
        for (const auto& n : gordian::report_names()) std::cerr << " " << n;
        std::cerr << "\n";
        return 2;
      }
      const Json j = gordian::report_to_json(*rep);
      if (!g.out.empty()) gordian::write_text(g.out, j.dump(2) + "\n");
      emit(g, j);
      return rep->pass() ? 0 : 1;
    }
  } catch (const gordian::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const gordian::IoError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const gordian::Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "IoError: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
