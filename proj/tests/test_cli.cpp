#include <gtest/gtest.h>

#include <json.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <sstream>

#include "affine_lab/cli.hpp"

namespace cli = affine_lab::cli;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args, std::optional<std::string> env = std::nullopt) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err, env);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
  const Result r = run(std::move(args));
  EXPECT_EQ(r.code, cli::kSuccess) << r.err;
  return json::parse(r.out);
}

const std::string kOrbitA = "torus:1,0.3+1.7i";
const std::string kOrbitB = "torus:1,-0.78125+0.53125i";

}  // namespace

TEST(Cli, Flow) {
  const json j = run_json({"flow", "plane", "--z", "0", "--u", "1", "--t", "1"});
  EXPECT_TRUE(j["defined"].get<bool>());
  EXPECT_NEAR(j["z"]["re"].get<double>(), std::log(2.0), 1e-15);
  EXPECT_DOUBLE_EQ(j["u"]["re"].get<double>(), 0.5);

  const json end = run_json({"flow", "plane", "--z", "0", "--u", "-0.5", "--t", "2"});
  EXPECT_FALSE(end["defined"].get<bool>());
  EXPECT_TRUE(end["z"].is_null());
  EXPECT_TRUE(end["interval"]["lower"].is_null());
  EXPECT_DOUBLE_EQ(end["interval"]["upper"].get<double>(), 2.0);

  const json id = run_json({"flow", "cylinder:1", "--z", "0", "--u", "i", "--t", "0"});
  EXPECT_EQ(id["z"]["re"].get<double>(), 0.0);
  EXPECT_EQ(id["u"]["im"].get<double>(), 1.0);
}

TEST(Cli, Interval) {
  const json j = run_json({"interval", "plane", "--z", "0", "--u", "-2"});
  EXPECT_EQ(j["classification"], "bifurcation");
  EXPECT_DOUBLE_EQ(j["tau"]["re"].get<double>(), 0.5);
  EXPECT_FALSE(j["snapped"].get<bool>());
  EXPECT_EQ(run_json({"interval", "plane", "--z", "0", "--u", "1+i"})["classification"], "regular_plus");
}

TEST(Cli, Trajectory) {
  const Result csv = run({"trajectory", "plane", "--z", "0", "--u", "i", "--t0", "0", "--t1", "1", "--n", "3",
                          "--format", "csv"});
  ASSERT_EQ(csv.code, 0) << csv.err;
  std::istringstream lines(csv.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "t,re_z,im_z,re_u,im_u");
  int rows = 0;
  while (std::getline(lines, line)) {
    double t, zr, zi, ur, ui;
    ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf", &t, &zr, &zi, &ur, &ui), 5);
    const std::complex<double> w = 1.0 + t * std::complex<double>(0, 1);
    const std::complex<double> z = std::log(w), u = std::complex<double>(0, 1) / w;
    EXPECT_DOUBLE_EQ(zr, z.real());
    EXPECT_DOUBLE_EQ(zi, z.imag());
    EXPECT_DOUBLE_EQ(ur, u.real());
    EXPECT_DOUBLE_EQ(ui, u.imag());
    if (rows == 0) {
      EXPECT_EQ(t, 0.0);
      EXPECT_EQ(zr, 0.0);
    }
    ++rows;
  }
  EXPECT_EQ(rows, 3);

  const json arr = run_json({"trajectory", "plane", "--z", "0", "--u", "i", "--t0", "0", "--t1", "1", "--n", "3"});
  EXPECT_EQ(arr.size(), 3u);

  EXPECT_EQ(run({"trajectory", "plane", "--z", "0", "--u", "-1", "--t0", "2", "--t1", "3", "--n", "3"}).code,
            cli::kError);
}

TEST(Cli, Conjugacy) {
  const json pair = run_json({"conjugacy", "cylinder:1", "cylinder:2pi*i/(2pi*i-1)", "--mode", "holomorphic"});
  EXPECT_EQ(pair["status"], "conjugate");
  EXPECT_EQ(pair["mode"], "holomorphic");
  EXPECT_EQ(pair["witness"]["type"], "cylinder_scalar");
  EXPECT_FALSE(pair["used_tolerance"].get<bool>());
  EXPECT_TRUE(pair["reason"].is_null());
  EXPECT_TRUE(pair["search_bound"].is_null());

  const json no = run_json({"conjugacy", "cylinder:2pi*i", "cylinder:4pi*i", "--mode", "topological"});
  EXPECT_EQ(no["status"], "not_conjugate");
  EXPECT_EQ(no["reason"], "purely-imaginary-period-mismatch");

  const Result unknown = run({"conjugacy", kOrbitA, kOrbitB, "--mode", "topological", "--bound", "3"});
  EXPECT_EQ(unknown.code, cli::kUndecided);
  const json u = json::parse(unknown.out);
  EXPECT_EQ(u["status"], "unknown");
  EXPECT_EQ(u["search_bound"], 3);

  const json found = run_json({"conjugacy", kOrbitA, kOrbitB});
  EXPECT_EQ(found["mode"], "topological");
  EXPECT_EQ(found["status"], "conjugate");
  EXPECT_EQ(found["witness"]["type"], "torus_real_linear");
  EXPECT_TRUE(found["used_tolerance"].get<bool>());
}

TEST(Cli, Verify) {
  const json pair = run_json({"verify", "cylinder:1", "cylinder:2pi*i/(2pi*i-1)", "--mode", "holomorphic"});
  EXPECT_TRUE(pair["passed"].get<bool>());
  EXPECT_LE(pair["report"]["max_deviation"].get<double>(), 1e-8);

  const json same = run_json({"verify", "torus:1,0.3+1.7i", "torus:1,0.3+1.7i", "--samples", "200"});
  EXPECT_TRUE(same["passed"].get<bool>());
  EXPECT_LE(same["report"]["max_deviation"].get<double>(), 1e-12);

  const json no = run_json({"verify", "cylinder:2pi*i", "cylinder:4pi*i"});
  EXPECT_TRUE(no["report"].is_null());

  const Result unknown = run({"verify", kOrbitA, kOrbitB, "--bound", "3"});
  EXPECT_EQ(unknown.code, cli::kUndecided);
  EXPECT_TRUE(json::parse(unknown.out)["report"].is_null());
}

TEST(Cli, ClosedGeodesics) {
  EXPECT_TRUE(run_json({"closed-geodesics", "cylinder:1"})["has_closed_geodesics"].get<bool>());
  const json none = run_json({"closed-geodesics", "cylinder:2pi*i/(2pi*i-1)"});
  EXPECT_FALSE(none["has_closed_geodesics"].get<bool>());
  EXPECT_TRUE(none["period"].is_null());
}

TEST(Cli, ErrorsAndTolerance) {
  const Result bad = run({"flow", "cylinder:0", "--z", "0", "--u", "1", "--t", "1"});
  EXPECT_EQ(bad.code, cli::kError);
  EXPECT_TRUE(bad.out.empty());
  EXPECT_EQ(bad.err.rfind("error: ", 0), 0u);

  EXPECT_EQ(run({"flow", "plane", "--z", "0", "--u", "0", "--t", "1"}).code, cli::kError);
  EXPECT_EQ(run({"nonsense"}).code, cli::kError);
  EXPECT_EQ(run({"conjugacy", "cylinder:1", "cylinder:1", "--mode", "sideways"}).code, cli::kError);

  // u = -2 + 1e-7 i: regular at the default eps, snapped to the sheet at eps = 1e-6.
  const std::vector<std::string> near{"interval", "plane", "--z", "0", "--u", "-2+0.0000001i"};
  EXPECT_EQ(json::parse(run(near).out)["classification"], "regular_plus");
  EXPECT_EQ(json::parse(run(near, "1e-6").out)["classification"], "bifurcation");
  auto flagged = near;
  flagged.insert(flagged.end(), {"--tol", "1e-12"});
  EXPECT_EQ(json::parse(run(flagged, "1e-6").out)["classification"], "regular_plus");
  EXPECT_EQ(run(near, "lots").code, cli::kError);
}

TEST(Cli, DeterministicOutput) {
  const std::vector<std::string> args{"verify", "cylinder:1", "cylinder:2pi*i/(2pi*i-1)", "--seed", "4",
                                      "--samples", "100"};
  EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, BinaryUsesTheSameStreamsAndExitCodes) {
  const std::string cmd = std::string(AFFINE_LAB_BINARY) +
                          " conjugacy cylinder:2pi*i cylinder:4pi*i 2>/dev/null; echo \"exit=$?\"";
  FILE* pipe = popen(cmd.c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  std::string text;
  char buf[512];
  while (std::fgets(buf, sizeof buf, pipe)) text += buf;
  pclose(pipe);
  EXPECT_NE(text.find("\"not_conjugate\""), std::string::npos);
  EXPECT_NE(text.find("exit=0"), std::string::npos);

  const std::string bad = std::string(AFFINE_LAB_BINARY) + " flow plane --z 0 --u 0 --t 1 >/dev/null 2>&1; echo $?";
  pipe = popen(bad.c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  text.clear();
  while (std::fgets(buf, sizeof buf, pipe)) text += buf;
  pclose(pipe);
  EXPECT_EQ(text, "1\n");
}
