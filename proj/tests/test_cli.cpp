#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include "gordian/io.hpp"

namespace {

namespace fs = std::filesystem;

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string(GORDIAN_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  while (fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path workdir() {
  const fs::path d = fs::temp_directory_path() / "gordian_cli_tests";
  fs::create_directories(d);
  return d;
}

TEST(Cli, DubinsJson) {
  const auto r = cli("--json dubins --start 0,0,1.5707963267948966 --goal -1,0,-1.5707963267948966 --kappa 1");
  ASSERT_EQ(r.code, 0);
  const auto j = gordian::Json::parse(r.out);
  EXPECT_EQ(j.at("word"), "RLR");
  EXPECT_NEAR(j.at("total_length").get<double>(), 6.0325296, 1e-6);
  const auto all = gordian::Json::parse(cli("--json dubins --start 0,0,0 --goal 10,0,0 --all-words").out);
  EXPECT_GE(all.at("candidates").size(), 4u);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(cli("").code, 2);
  EXPECT_EQ(cli("dubins --start 0,0").code, 2);
  EXPECT_EQ(cli("reproduce nonsense").code, 2);
  EXPECT_EQ(cli("thickness --curve /nonexistent/curve.json").code, 2);
  EXPECT_EQ(cli("--bogus-flag").code, 2);
}

TEST(Cli, FamilyEmitThicknessCertifyAndRopelength) {
  const fs::path dir = workdir() / "half";
  ASSERT_EQ(cli("--out " + dir.string() + " family --tau 0.5 --emit both").code, 0);
  const std::string g = (dir / "gamma.json").string(), b = (dir / "beta.json").string();
  ASSERT_TRUE(fs::exists(g) && fs::exists(b));
  const auto t = cli("--json thickness --curve " + g);
  ASSERT_EQ(t.code, 0);
  EXPECT_NEAR(gordian::Json::parse(t.out).at("tau").get<double>(), 0.5, 1e-9);
  const auto c = cli("--json certify --gamma " + g + " --beta " + b + " --tau 0.5");
  EXPECT_EQ(c.code, 0);
  EXPECT_TRUE(gordian::Json::parse(c.out).at("pass").get<bool>());
  const auto r = cli("--json ropelength --link " + g + "," + b + " --thickness 1");
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(gordian::Json::parse(r.out).at("rop").get<double>(), 20.3481, 1e-3);
  EXPECT_EQ(cli("--json ropelength --curves " + g + " --thickness 1.5 --strict").code, 1);
  // a beta far from gamma is rejected
  EXPECT_EQ(cli("--json certify --gamma " + g + " --beta " + b + " --tau 0.6").code, 1);
}

TEST(Cli, FamilyTableCsv) {
  const auto r = cli("family --table 0.5,0.75,0.95 --csv");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("tau,len_gamma,len_beta,rop,certificate_pass\n", 0), 0u);
  EXPECT_NE(r.out.find("0.5,12.0650592"), std::string::npos);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 4);
}

TEST(Cli, RegionQueries) {
  const fs::path cfg = workdir() / "cfg.json";
  gordian::write_text(cfg.string(), gordian::region_config_to_json(gordian::RegionConfig{}).dump());
  auto inside = [&](const std::string& point, const std::string& which) {
    const auto r = cli("--json region --config " + cfg.string() + " --point " + point + " --which " + which);
    EXPECT_EQ(r.code, 0);
    return gordian::Json::parse(r.out).at("inside").get<bool>();
  };
  EXPECT_TRUE(inside("0,0.4,0", "K"));
  EXPECT_FALSE(inside("0,0,0", "K"));
  EXPECT_TRUE(inside("0,0,0.9", "E"));
}

TEST(Cli, ExportsAndReproduce) {
  const fs::path dir = workdir() / "exp";
  ASSERT_EQ(cli("--out " + dir.string() + " family --tau 0.5").code, 0);
  const std::string g = (dir / "gamma.json").string();
  const std::string svg = (dir / "g.svg").string(), obj = (dir / "g.obj").string();
  EXPECT_EQ(cli("--out " + svg + " export svg --curves " + g + " --plane xz").code, 0);
  EXPECT_NE(gordian::read_text(svg).find("<polyline"), std::string::npos);
  EXPECT_EQ(cli("--out " + obj + " export obj --curve " + g + " --radius 0.5 --strict").code, 0);
  EXPECT_EQ(cli("--out " + obj + " export obj --curve " + g + " --radius 0.6 --strict").code, 1);
  const auto m = cli("--json reproduce mingords");
  EXPECT_EQ(m.code, 0);
  EXPECT_TRUE(gordian::Json::parse(m.out).at("pass").get<bool>());
  const auto v = cli("--json verify regions --region K --trials 200");
  EXPECT_EQ(v.code, 0);
  EXPECT_EQ(gordian::Json::parse(v.out).at("hits").get<int>(), 0);
}

}  // namespace
