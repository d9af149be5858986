#include "affine_lab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "affine_lab/errors.hpp"
#include "affine_lab/json_io.hpp"
#include "affine_lab/literal.hpp"

namespace affine_lab::cli {

namespace {

using nlohmann::json;

struct Config {
  Tolerance tol;
  int bound = kDefaultSearchBound;
  std::uint64_t seed = 0;
  std::string format = "json";
  int samples = kStandardSamples;
  ConjugacyMode mode = ConjugacyMode::Topological;
};

struct VectorArgs {
  std::string surface;
  std::string z;
  std::string u;
};

Tolerance parse_tolerance(const std::string& text, const char* source) {
  std::size_t used = 0;
  double eps = 0.0;
  try {
    eps = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw UsageError(std::string("invalid tolerance in ") + source + ": '" + text + "'");
  return Tolerance(eps);
}

TangentVector read_vector(const VectorArgs& a, const Tolerance& tol) {
  return TangentVector(parse_surface(a.surface, tol), parse_complex(a.z), parse_complex(a.u));
}

std::string format_row(double t, const TangentVector& v) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g", t, v.z().re(), v.z().im(), v.u().re(), v.u().im());
  return buf;
}

int cmd_flow(const VectorArgs& a, double t, const Config& cfg, std::ostream& out) {
  const TangentVector v = read_vector(a, cfg.tol);
  const MaximalInterval interval = maximal_interval(v, cfg.tol);
  json j;
  j["defined"] = interval.contains(t);
  j["z"] = nullptr;
  j["u"] = nullptr;
  if (j["defined"].get<bool>()) {
    const TangentVector w = flow(v, t, cfg.tol);
    j["z"] = to_json(w.z());
    j["u"] = to_json(w.u());
  }
  j["interval"] = to_json(interval);
  out << j.dump() << "\n";
  return kSuccess;
}

int cmd_interval(const VectorArgs& a, const Config& cfg, std::ostream& out) {
  const TangentVector v = read_vector(a, cfg.tol);
  const FlowClassification c = classify(v, cfg.tol);
  json j;
  j["classification"] = to_string(c.kind);
  j["tau"] = c.kind == FlowClassification::Kind::Bifurcation ? to_json(c.tau) : json(nullptr);
  j["snapped"] = c.snapped;
  j["interval"] = to_json(maximal_interval(v, cfg.tol));
  out << j.dump() << "\n";
  return kSuccess;
}

int cmd_trajectory(const VectorArgs& a, double t0, double t1, int n, const Config& cfg, std::ostream& out) {
  const TangentVector v = read_vector(a, cfg.tol);
  const auto samples = trajectory(v, t0, t1, n, cfg.tol);
  if (cfg.format == "csv") {
    std::string text = "t,re_z,im_z,re_u,im_u\n";
    for (const auto& s : samples) text += format_row(s.t, s.v) + "\n";
    out << text;
    return kSuccess;
  }
  json rows = json::array();
  for (const auto& s : samples) rows.push_back({{"t", s.t}, {"z", to_json(s.v.z())}, {"u", to_json(s.v.u())}});
  out << rows.dump() << "\n";
  return kSuccess;
}

int cmd_conjugacy(const std::string& s1, const std::string& s2, const Config& cfg, std::ostream& out) {
  const ConjugacyVerdict v = decide(parse_surface(s1, cfg.tol), parse_surface(s2, cfg.tol), cfg.mode, cfg.tol, cfg.bound);
  out << to_json(v).dump() << "\n";
  return v.status == VerdictStatus::Unknown ? kUndecided : kSuccess;
}

int cmd_verify(const std::string& a, const std::string& b, const Config& cfg, std::ostream& out, std::ostream& err) {
  const AffineSurface s1 = parse_surface(a, cfg.tol);
  const AffineSurface s2 = parse_surface(b, cfg.tol);
  const ConjugacyVerdict v = decide(s1, s2, cfg.mode, cfg.tol, cfg.bound);
  json j{{"verdict", to_json(v)}, {"report", nullptr}, {"passed", nullptr}};
  int code = kSuccess;
  if (v.status == VerdictStatus::Unknown) {
    code = kUndecided;
  } else if (v.conjugate()) {
    const LiftedConjugacy psi = lift(build_base(*v.witness, s1, s2, cfg.tol));
    const VerificationReport r = verify_all(psi, cfg.samples, kStandardTimeGrid, cfg.tol, cfg.seed);
    const bool passed = r.passed(kVerificationThreshold);
    j["report"] = to_json(r);
    j["passed"] = passed;
    if (!passed) {
      err << "verification failed: max deviation " << r.max_deviation << "\n";
      code = kError;
    }
  }
  out << j.dump() << "\n";
  return code;
}

int cmd_closed_geodesics(const std::string& spec, const Config& cfg, std::ostream& out) {
  const AffineSurface s = parse_surface(spec, cfg.tol);
  const auto w = closed_geodesic_witness(s, cfg.tol);
  json j{{"surface", s.describe()}, {"has_closed_geodesics", w.has_value()}};
  j["period"] = w ? to_json(w->period) : json(nullptr);
  j["scale"] = w ? json(w->scale) : json(nullptr);
  out << j.dump() << "\n";
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::optional<std::string>& env_tol) {
  CLI::App app{"Geodesic flows on affine cylinders and tori", "affine-lab"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<double> tol_flag;
  std::string mode = "topological";
  Config cfg;
  app.add_option("--tol", tol_flag, "comparison tolerance (default 1e-9, or AFFINE_LAB_TOL)");
  app.add_option("--mode", mode, "conjugacy notion")->check(CLI::IsMember({"holomorphic", "topological"}));
  app.add_option("--bound", cfg.bound, "GL(2,Z) search bound")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "sampling seed");
  app.add_option("--format", cfg.format, "trajectory output")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--samples", cfg.samples, "verification samples")->check(CLI::PositiveNumber);

  VectorArgs vec;
  double t = 0.0, t0 = 0.0, t1 = 0.0;
  int n = 0;
  std::string surf1, surf2;
  auto add_vector = [&](CLI::App* sub) {
    sub->add_option("surface", vec.surface, "plane | cylinder:<mu> | torus:<mu>,<nu>")->required();
    sub->add_option("--z", vec.z, "base point")->required();
    sub->add_option("--u", vec.u, "direction (nonzero)")->required();
  };

  CLI::App* flow_cmd = app.add_subcommand("flow", "apply the geodesic flow for time t");
  add_vector(flow_cmd);
  flow_cmd->add_option("--t", t, "time")->required();

  CLI::App* interval_cmd = app.add_subcommand("interval", "maximal interval and locus of a tangent vector");
  add_vector(interval_cmd);

  CLI::App* traj_cmd = app.add_subcommand("trajectory", "sample a geodesic");
  add_vector(traj_cmd);
  traj_cmd->add_option("--t0", t0, "start time")->required();
  traj_cmd->add_option("--t1", t1, "end time")->required();
  traj_cmd->add_option("--n", n, "number of samples (>= 2)")->required();

  CLI::App* conj_cmd = app.add_subcommand("conjugacy", "decide conjugacy of two geodesic flows");
  CLI::App* verify_cmd = app.add_subcommand("verify", "decide, build the lifted conjugacy and verify it");
  for (CLI::App* sub : {conj_cmd, verify_cmd}) {
    sub->add_option("surface1", surf1)->required();
    sub->add_option("surface2", surf2)->required();
  }

  CLI::App* closed_cmd = app.add_subcommand("closed-geodesics", "closed geodesic witness of a surface");
  closed_cmd->add_option("surface", surf1)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kError;
  }

  try {
    if (tol_flag) {
      cfg.tol = Tolerance(*tol_flag);
    } else if (env_tol) {
      cfg.tol = parse_tolerance(*env_tol, "AFFINE_LAB_TOL");
    }
    cfg.mode = mode == "holomorphic" ? ConjugacyMode::Holomorphic : ConjugacyMode::Topological;

    if (*flow_cmd) return cmd_flow(vec, t, cfg, out);
    if (*interval_cmd) return cmd_interval(vec, cfg, out);
    if (*traj_cmd) return cmd_trajectory(vec, t0, t1, n, cfg, out);
    if (*conj_cmd) return cmd_conjugacy(surf1, surf2, cfg, out);
    if (*verify_cmd) return cmd_verify(surf1, surf2, cfg, out, err);
    if (*closed_cmd) return cmd_closed_geodesics(surf1, cfg, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}

}  // namespace affine_lab::cli
