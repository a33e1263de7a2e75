// ysol: construct, verify, classify, evolve, and report on radial conformal
// soliton profiles. One subcommand per process; artifacts are deterministic
// (17 significant digits, sorted JSON keys).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "yamabe/curvature.hpp"
#include "yamabe/errors.hpp"
#include "yamabe/flow.hpp"
#include "yamabe/io.hpp"
#include "yamabe/params.hpp"
#include "yamabe/profile.hpp"
#include "yamabe/version.hpp"

namespace fs = std::filesystem;
using namespace yamabe;

namespace {

struct Opts {
  std::string config_file;
  int n = 3;
  std::string cls_name;
  double beta = 1.0;
  double lambda = 1.0;
  double tol = 1e-10;
  double r_max = 50.0;
  double s_min = 0.0;  // 0 = auto from lambda
  double s_max = 0.0;  // 0 = auto per family
  std::size_t grid_points = 2001;
  std::string out_dir = "out";
  double check_tol = 0.0;  // 0 = per-command default
  // flow
  double t0 = 0.0, t1 = 0.0;
  std::size_t snapshots = 6;
  double time_tol = 1e-6;
  double t_extinction = 0.0;
  std::size_t flow_grid = 2000;
  // harnack
  double t = -1.0;
};

enum class Family { None, Barenblatt, Sphere, Flat };

Family family_of(int n, SolitonClass cls, double beta) {
  if (cls == SolitonClass::Steady && beta == 0.0) return Family::Flat;
  if (cls == SolitonClass::Shrinker && beta == 0.0) return Family::Sphere;
  if (cls == SolitonClass::Shrinker &&
      std::abs(beta - barenblatt_params(n).beta) < 1e-9)
    return Family::Barenblatt;
  return Family::None;
}

SolitonParams resolve_params(const Opts& o, SolitonClass cls, Family fam) {
  switch (fam) {
    case Family::Sphere: return sphere_params(o.n);
    case Family::Barenblatt: return barenblatt_params(o.n);
    default: return derive_params(o.n, cls, o.beta);
  }
}

double auto_s_min(const SolitonParams& P, double lambda) {
  return -(8.0 * std::log(10.0) + P.one_minus_m() * std::log(lambda)) / 2.0 -
         2.0;
}

// Collected pass/fail results for one command.
struct CheckSet {
  Json json = Json::object();
  bool all_pass = true;
  std::vector<std::string> failures;

  void add(const std::string& id, double value, double tolerance) {
    bool pass = value <= tolerance;
    Json c = Json::object();
    c.set("value", Json::number(value));
    c.set("tolerance", Json::number(tolerance));
    c.set("pass", Json::boolean(pass));
    json.set(id, std::move(c));
    if (!pass) {
      all_pass = false;
      std::string msg = "check failed: " + id;
      try {
        const IdentityInfo& info = identity_info(id);
        msg += std::string(" [") + info.anchor + "]";
      } catch (const std::invalid_argument&) {
      }
      msg += ": value " + format_g17(value) + " exceeds tolerance " +
             format_g17(tolerance);
      failures.push_back(msg);
    }
  }

  void add_flag(const std::string& id, bool pass) {
    Json c = Json::object();
    c.set("pass", Json::boolean(pass));
    json.set(id, std::move(c));
    if (!pass) {
      all_pass = false;
      failures.push_back("check failed: " + id);
    }
  }
};

int finish(const CheckSet& cs) {
  for (const std::string& f : cs.failures) std::cerr << f << "\n";
  return cs.all_pass ? 0 : 4;
}

Json base_json(const SolitonParams& P, double lambda) {
  Json j = Json::object();
  j.set("version", Json::string(kVersion));
  j.set("params", params_json(P));
  j.set("lambda", Json::number(lambda));
  return j;
}

void emit(const std::string& dir, const std::string& name,
          const std::string& content) {
  fs::create_directories(dir);
  std::string path = (fs::path(dir) / name).string();
  write_file(path, content);
  std::cout << "wrote " << path << "\n";
}

Json number_array(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(Json::number(x));
  return a;
}

Json stat_json(const ResidualStat& st) {
  Json j = Json::object();
  j.set("max_abs", Json::number(st.max_abs));
  j.set("max_rel", Json::number(st.max_rel));
  j.set("argmax_s", Json::number(st.argmax_s));
  return j;
}

// Closed-form sample whose positive radii land on a uniform s grid.
RadialProfile sample_family(Family fam, const Opts& o, double s_min,
                            double s_max) {
  std::size_t M = std::max<std::size_t>(o.grid_points, 8);
  std::vector<double> grid(1, 0.0);
  for (std::size_t i = 0; i < M; ++i) {
    double s = s_min + (s_max - s_min) * static_cast<double>(i) / (M - 1);
    grid.push_back(std::exp(s));
  }
  switch (fam) {
    case Family::Barenblatt: return sample_barenblatt(o.n, o.lambda, grid);
    case Family::Sphere: return sample_sphere(o.n, o.lambda, grid);
    default: return sample_flat(o.n, o.lambda, grid);
  }
}

CylindricalProfile build_cylindrical(const Opts& o, SolitonClass cls,
                                     SolitonParams& P_out) {
  Family fam = family_of(o.n, cls, o.beta);
  SolitonParams P = resolve_params(o, cls, fam);
  P_out = P;
  double s_min = o.s_min != 0.0 ? o.s_min : auto_s_min(P, o.lambda);
  double s_max =
      o.s_max != 0.0 ? o.s_max : (fam == Family::Sphere ? 8.0 : 12.0);
  if (fam != Family::None)
    return to_cylindrical(sample_family(fam, o, s_min, s_max));
  return integrate_cylindrical(P, o.lambda, s_min, s_max, o.tol);
}

double checked_tol(const Opts& o, double dflt) {
  return o.check_tol != 0.0 ? o.check_tol : dflt;
}

int cmd_oracle(const Opts& o, SolitonClass cls) {
  Family fam = family_of(o.n, cls, o.beta);
  if (fam == Family::None)
    throw Error(ErrorKind::InvalidConfig,
                "oracle: no closed form for this parameter set (use flat "
                "steady beta=0, sphere shrinker beta=0, or the Barenblatt "
                "shrinker beta for the chosen n)");
  SolitonParams P = resolve_params(o, cls, fam);
  RadialProfile prof =
      sample_family(fam, o, auto_s_min(P, o.lambda), std::log(o.r_max));

  std::vector<double> res = elliptic_residual(prof, DerivativeMode::Stored);
  double worst = 0.0, arg = 0.0;
  for (std::size_t i = 0; i < res.size(); ++i)
    if (std::abs(res[i]) > worst) {
      worst = std::abs(res[i]);
      arg = prof.r[i];
    }

  CheckSet cs;
  cs.add("elliptic_residual", worst, checked_tol(o, 1e-8));

  emit(o.out_dir, "oracle_radial.csv", radial_csv(prof));
  emit(o.out_dir, "oracle_cylindrical.csv",
       cylindrical_csv(to_cylindrical(prof)));

  Json j = base_json(P, o.lambda);
  Json er = Json::object();
  er.set("max_norm", Json::number(worst));
  er.set("argmax_r", Json::number(arg));
  j.set("elliptic_residual", std::move(er));
  j.set("checks", std::move(cs.json));
  emit(o.out_dir, "oracle.json", j.dump());
  return finish(cs);
}

int cmd_solve(const Opts& o, SolitonClass cls) {
  SolitonParams P = derive_params(o.n, cls, o.beta);

  ShootOptions so;
  for (int k = 1; k <= 15; ++k) so.checkpoints.push_back(o.r_max * k / 16.0);
  RadialProfile prof = integrate_euclidean(P, o.lambda, o.r_max, o.tol, so);
  RadialProfile fine =
      integrate_euclidean(P, o.lambda, o.r_max,
                          std::max(o.tol * 1e-2, 1.01e-13), so);

  auto value_at = [](const RadialProfile& p, double r) {
    auto it = std::lower_bound(p.r.begin(), p.r.end(), r - 1e-9);
    return p.u[static_cast<std::size_t>(it - p.r.begin())];
  };
  double consistency = 0.0;
  for (double cp : so.checkpoints) {
    double a = value_at(prof, cp), b = value_at(fine, cp);
    consistency = std::max(consistency, std::abs(a - b) / std::abs(b));
  }

  std::vector<double> res = elliptic_residual(prof, DerivativeMode::Stored);
  double worst = 0.0;
  for (double x : res) worst = std::max(worst, std::abs(x));

  CheckSet cs;
  cs.add("refinement_consistency", consistency, checked_tol(o, 1e-6));
  cs.add("elliptic_residual", worst, 1e-10);

  emit(o.out_dir, "solve_radial.csv", radial_csv(prof));
  emit(o.out_dir, "solve_cylindrical.csv",
       cylindrical_csv(to_cylindrical(prof)));

  Json j = base_json(P, o.lambda);
  j.set("nodes", Json::integer(static_cast<long long>(prof.r.size())));
  j.set("refinement_consistency", Json::number(consistency));
  j.set("checks", std::move(cs.json));
  emit(o.out_dir, "solve.json", j.dump());
  return finish(cs);
}

int cmd_curvature(const Opts& o, SolitonClass cls) {
  SolitonParams P;
  CylindricalProfile cyl = build_cylindrical(o, cls, P);
  CurvatureReport rep = curvature_report(cyl, DerivativeMode::Stored);

  double two_route = 0.0, trace = 0.0;
  for (std::size_t i = 0; i < rep.s.size(); ++i) {
    double denom = 1.0 + std::abs(rep.R[i]);
    two_route = std::max(
        two_route, std::abs(rep.R[i] - rep.R_identity[i]) / denom);
    double rhs = rep.lam_ric[i] + (P.n - 1) * rep.mu_ric[i];
    trace = std::max(trace, std::abs(rep.R[i] - rhs) / denom);
  }

  double tolr = checked_tol(o, 1e-6);
  CheckSet cs;
  cs.add("two_route_R", two_route, tolr);
  cs.add("trace_consistency", trace, 1e-8);
  for (const char* id :
       {"hessian_radial", "hessian_spherical", "gradG", "yamabe_identity",
        "trace_laplacian", "curvature_slope"})
    cs.add(id, rep.stats.at(id).max_rel, tolr);
  cs.add("A_quadratic", rep.stats.at("A_quadratic").max_rel, 1e-12);

  emit(o.out_dir, "curvature.csv", curvature_csv(rep));

  Json j = base_json(P, o.lambda);
  Json stats = Json::object();
  for (const auto& [key, st] : rep.stats) stats.set(key, stat_json(st));
  Json extra = Json::object();
  extra.set("two_route_R", Json::number(two_route));
  extra.set("trace_consistency", Json::number(trace));
  j.set("residuals", std::move(stats));
  j.set("route_agreement", std::move(extra));
  j.set("checks", std::move(cs.json));
  emit(o.out_dir, "residuals.json", j.dump());
  return finish(cs);
}

int cmd_classify(const Opts& o, SolitonClass cls) {
  SolitonParams P = derive_params(o.n, cls, o.beta);
  double s_min = o.s_min != 0.0 ? o.s_min : auto_s_min(P, o.lambda);
  double s_max = o.s_max != 0.0 ? o.s_max : 12.0;
  CylindricalProfile cyl =
      integrate_cylindrical(P, o.lambda, s_min, s_max, o.tol);
  AsymptoticReport rep = asymptotic_classify(cyl);

  CheckSet cs;
  cs.add("tail_drift", rep.drift, checked_tol(o, 0.05));
  if (rep.rate_kind == RateKind::ExpanderPower) {
    double expect = -P.gamma / P.beta;
    cs.add("power_law_slope",
           std::abs(rep.fitted_exponent - expect) / std::abs(expect), 0.02);
  }
  if (rep.rate_kind == RateKind::ExpanderDecreasing) {
    bool mono = true;
    double s_lo = cyl.s.back() - std::log(10.0);
    double om = P.one_minus_m();
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < cyl.s.size(); ++i) {
      if (cyl.s[i] < s_lo) continue;
      double lu = (std::log(cyl.w[i]) - 2.0 * cyl.s[i]) / om;
      if (lu > prev + 1e-12) mono = false;
      prev = lu;
    }
    cs.add_flag("u_nonincreasing", mono);
  }

  Json j = base_json(P, o.lambda);
  j.set("rate_kind", Json::string(rate_kind_name(rep.rate_kind)));
  j.set("fitted_exponent", Json::number(rep.fitted_exponent));
  j.set("fitted_amplitude", Json::number(rep.fitted_amplitude));
  j.set("drift", Json::number(rep.drift));
  j.set("checks", std::move(cs.json));
  emit(o.out_dir, "classify.json", j.dump());
  return finish(cs);
}

int cmd_flow(const Opts& o, SolitonClass cls) {
  Family fam = family_of(o.n, cls, o.beta);
  SolitonParams P = resolve_params(o, cls, fam);

  double t0 = o.t0, t1 = o.t1;
  if (t0 == 0.0 && t1 == 0.0) {
    switch (cls) {
      case SolitonClass::Shrinker: t0 = 0.0; t1 = 0.5; break;
      case SolitonClass::Steady: t0 = 0.0; t1 = 1.0; break;
      default: t0 = 1.0; t1 = 2.0; break;
    }
  }

  RadialProfile initial;
  if (fam != Family::None) {
    std::vector<double> grid = uniform_grid(o.r_max, o.flow_grid);
    switch (fam) {
      case Family::Barenblatt:
        initial = sample_barenblatt(o.n, o.lambda, grid);
        break;
      case Family::Sphere:
        initial = sample_sphere(o.n, o.lambda, grid);
        break;
      default:
        initial = sample_flat(o.n, o.lambda, grid);
        break;
    }
  } else {
    initial = integrate_euclidean(P, o.lambda, o.r_max,
                                  std::min(o.tol, 1e-8));
  }

  FlowConfig cfg;
  cfg.grid_points = o.flow_grid;
  cfg.r_max = o.r_max;
  cfg.snapshots = o.snapshots;
  cfg.time_tol = o.time_tol;
  cfg.T_extinction = o.t_extinction;
  FlowTrajectory traj = evolve_fde(initial, t0, t1, cfg);

  auto errs = self_similar_error(traj, initial);
  auto zs = harnack_monitor(traj);

  double worst = 0.0;
  std::vector<double> times;
  for (const auto& [tt, e] : errs) {
    worst = std::max(worst, e);
    times.push_back(tt);
  }

  CheckSet cs;
  cs.add("self_similar_error", worst, checked_tol(o, 1e-2));

  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "flow_%04zu.csv", k);
    emit(o.out_dir, name, flow_state_csv(traj.states[k]));
  }

  Json j = base_json(P, o.lambda);
  j.set("times", number_array(times));
  Json ej = Json::array();
  for (const auto& [tt, e] : errs) ej.push_back(Json::number(e));
  j.set("self_similar_errors", std::move(ej));
  Json zj = Json::array();
  for (const HarnackSample& h : zs)
    zj.push_back(h.skipped ? Json::null() : Json::number(h.min_Z));
  j.set("min_Z_series", std::move(zj));
  Json rj = Json::array();
  for (const FlowState& st : traj.states) {
    std::vector<double> R = flow_scalar_curvature(st, P.n, P.m);
    rj.push_back(Json::number(*std::min_element(R.begin(), R.end())));
  }
  j.set("min_R_series", std::move(rj));
  j.set("extinction_time", traj.extinction_time
                               ? Json::number(*traj.extinction_time)
                               : Json::null());
  j.set("checks", std::move(cs.json));
  emit(o.out_dir, "flow_index.json", j.dump());
  return finish(cs);
}

// Z divides finite curvature differences by w twice; below this the result
// is rounding noise, so the emitted grid starts where w clears it.
constexpr double kHarnackWMin = 1e-6;

int cmd_harnack(const Opts& o, SolitonClass cls) {
  SolitonParams P;
  CylindricalProfile cyl = build_cylindrical(o, cls, P);
  std::size_t keep = 0;
  while (keep + 8 < cyl.s.size() && cyl.w[keep] < kHarnackWMin) ++keep;
  if (keep > 0) {
    cyl.s.erase(cyl.s.begin(), cyl.s.begin() + keep);
    cyl.w.erase(cyl.w.begin(), cyl.w.begin() + keep);
    cyl.dw_ds.erase(cyl.dw_ds.begin(), cyl.dw_ds.begin() + keep);
    cyl.d2w_ds2.erase(cyl.d2w_ds2.begin(), cyl.d2w_ds2.begin() + keep);
    cyl.f.erase(cyl.f.begin(), cyl.f.begin() + keep);
  }
  std::vector<double> Z = harnack_Z(cyl, o.t, DerivativeMode::Stored);
  std::vector<double> R = scalar_curvature_cyl(cyl, DerivativeMode::Stored);

  CheckSet cs;
  double summary = 0.0;
  if (P.cls == SolitonClass::Steady) {
    for (double z : Z) summary = std::max(summary, std::abs(z));
    double R0 = 2.0 * P.beta + P.rho;
    cs.add("harnack_steady", summary, checked_tol(o, 1e-6) * R0 * R0);
  } else {
    for (std::size_t i = 0; i < Z.size(); ++i) {
      double expect = P.rho * R[i] / (o.t * o.t);
      summary = std::max(summary,
                         std::abs(Z[i] - expect) / std::abs(expect));
    }
    cs.add("harnack_scaled", summary, checked_tol(o, 1e-6));
  }

  std::string csv = "s,Z,R\n";
  for (std::size_t i = 0; i < Z.size(); ++i)
    csv += format_g17(cyl.s[i]) + "," + format_g17(Z[i]) + "," +
           format_g17(R[i]) + "\n";
  emit(o.out_dir, "harnack.csv", csv);

  Json j = base_json(P, o.lambda);
  j.set("t", Json::number(o.t));
  j.set("deviation", Json::number(summary));
  j.set("checks", std::move(cs.json));
  emit(o.out_dir, "harnack.json", j.dump());
  return finish(cs);
}

int cmd_report(const Opts& o) {
  std::vector<fs::path> files;
  if (!fs::is_directory(o.out_dir))
    throw Error(ErrorKind::InvalidConfig,
                "report: out dir does not exist: " + o.out_dir);
  for (const auto& entry : fs::directory_iterator(o.out_dir)) {
    if (entry.path().extension() == ".json" &&
        entry.path().filename() != "report.json")
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty())
    throw Error(ErrorKind::InvalidConfig,
                "report: no JSON artifacts found in " + o.out_dir);

  bool all_pass = true;
  Json artifacts = Json::object();
  std::vector<std::string> failures;
  for (const fs::path& p : files) {
    nlohmann::json doc = nlohmann::json::parse(read_file(p.string()));
    Json entry = Json::object();
    if (doc.contains("checks") && doc["checks"].is_object()) {
      Json checks = Json::object();
      for (const auto& [name, c] : doc["checks"].items()) {
        bool pass = c.value("pass", false);
        Json cj = Json::object();
        cj.set("pass", Json::boolean(pass));
        if (c.contains("value") && c["value"].is_number())
          cj.set("value", Json::number(c["value"].get<double>()));
        if (c.contains("tolerance") && c["tolerance"].is_number())
          cj.set("tolerance", Json::number(c["tolerance"].get<double>()));
        checks.set(name, std::move(cj));
        if (!pass) {
          all_pass = false;
          std::string msg =
              "check failed in " + p.filename().string() + ": " + name;
          try {
            const IdentityInfo& info = identity_info(name);
            msg += std::string(" [") + info.anchor + "]";
          } catch (const std::invalid_argument&) {
          }
          failures.push_back(msg);
        }
      }
      entry.set("checks", std::move(checks));
    }
    artifacts.set(p.filename().string(), std::move(entry));
  }

  Json j = Json::object();
  j.set("version", Json::string(kVersion));
  j.set("artifacts", std::move(artifacts));
  j.set("all_pass", Json::boolean(all_pass));
  emit(o.out_dir, "report.json", j.dump());
  for (const std::string& f : failures) std::cerr << f << "\n";
  return all_pass ? 0 : 4;
}

// Feeds key=value lines through the matching option of the parsed
// subcommand. Values given on the command line keep priority. Applied
// after parsing because CLI11 only processes config files on the root app,
// and the flat key=value contract has no per-subcommand sections.
void apply_config(CLI::App* sub, const std::string& path) {
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::InvalidConfig,
                "ConfigFileUnreadable: " + path);
  auto trim = [](std::string v) {
    std::size_t a = v.find_first_not_of(" \t\r");
    std::size_t b = v.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : v.substr(a, b - a + 1);
  };
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::InvalidConfig,
                  "ConfigSyntax: expected key=value at " + path + ":" +
                      std::to_string(lineno));
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    CLI::Option* op = sub->get_option_no_throw("--" + key);
    if (op == nullptr || key == "config")
      throw Error(ErrorKind::InvalidConfig,
                  "UnknownConfigKey: " + key + " (" + sub->get_name() + ")");
    if (op->count() > 0) continue;  // command-line flag wins
    try {
      op->add_result(val);
      op->run_callback();
    } catch (const CLI::Error& e) {
      throw Error(ErrorKind::InvalidConfig,
                  "ConfigValue: " + key + "=" + val + ": " + e.what());
    }
  }
}

void add_common(CLI::App* sub, Opts& o, bool needs_class) {
  sub->add_option("--config", o.config_file,
                  "optional key=value config file (command-line flags win)");
  sub->add_option("--n", o.n, "dimension (>= 3)")->capture_default_str();
  // required-ness is enforced after config application, not by CLI11,
  // so a config file can supply the class
  sub->add_option("--class", o.cls_name,
                  needs_class
                      ? "soliton class: shrinker | steady | expander (required)"
                      : "soliton class: shrinker | steady | expander");
  sub->add_option("--beta", o.beta, "profile parameter beta")
      ->capture_default_str();
  sub->add_option("--lambda", o.lambda,
                  "origin value u(0) for integrated profiles; closed-form "
                  "scale for oracle families")
      ->capture_default_str();
  sub->add_option("--tol", o.tol, "integration tolerance")
      ->capture_default_str();
  sub->add_option("--out-dir", o.out_dir, "artifact directory")
      ->capture_default_str();
  sub->add_option("--check-tol", o.check_tol,
                  "override the per-command check tolerance");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"radial conformal soliton laboratory"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Opts o;

  CLI::App* oracle = app.add_subcommand(
      "oracle", "emit a closed-form profile and its residuals");
  add_common(oracle, o, true);
  oracle->add_option("--r-max", o.r_max, "radial extent")
      ->capture_default_str();
  oracle->add_option("--grid-points", o.grid_points, "sample count")
      ->capture_default_str();

  CLI::App* solve = app.add_subcommand(
      "solve", "integrate the radial profile equation from the origin");
  add_common(solve, o, true);
  solve->add_option("--r-max", o.r_max, "radial extent")
      ->capture_default_str();

  CLI::App* curvature = app.add_subcommand(
      "curvature", "curvature arrays and the soliton identity suite");
  add_common(curvature, o, true);
  curvature->add_option("--s-min", o.s_min, "cylindrical start (0 = auto)");
  curvature->add_option("--s-max", o.s_max, "cylindrical end (0 = auto)");
  curvature->add_option("--grid-points", o.grid_points,
                        "sample count for closed-form profiles")
      ->capture_default_str();

  CLI::App* classify = app.add_subcommand(
      "classify", "asymptotic rate classification of an integrated profile");
  add_common(classify, o, true);
  classify->add_option("--s-min", o.s_min, "cylindrical start (0 = auto)");
  classify->add_option("--s-max", o.s_max, "cylindrical end (0 = auto -> 12)");

  CLI::App* flow = app.add_subcommand(
      "flow", "evolve the radial fast-diffusion flow from a profile");
  add_common(flow, o, true);
  flow->add_option("--r-max", o.r_max, "flow domain extent")
      ->capture_default_str();
  flow->add_option("--t0", o.t0, "start time (0,0 = per-class default)");
  flow->add_option("--t1", o.t1, "end time (0,0 = per-class default)");
  flow->add_option("--snapshots", o.snapshots, "snapshot count")
      ->capture_default_str();
  flow->add_option("--grid-points", o.flow_grid, "spatial grid points")
      ->capture_default_str();
  flow->add_option("--time-tol", o.time_tol, "time-step error tolerance")
      ->capture_default_str();
  flow->add_option("--t-extinction", o.t_extinction,
                   "shrinker extinction time (0 = t0 + 1)");

  CLI::App* harnack = app.add_subcommand(
      "harnack", "Harnack quantity Z along a profile");
  add_common(harnack, o, true);
  harnack->add_option("--s-min", o.s_min, "cylindrical start (0 = auto)");
  harnack->add_option("--s-max", o.s_max, "cylindrical end (0 = auto)");
  harnack->add_option("--grid-points", o.grid_points,
                      "sample count for closed-form profiles")
      ->capture_default_str();
  harnack->add_option("--t", o.t,
                      "evaluation time (< 0 for shrinkers/expanders, "
                      "extinction at 0)")
      ->capture_default_str();

  CLI::App* report = app.add_subcommand(
      "report", "aggregate artifact checks in out-dir into report.json");
  report->add_option("--out-dir", o.out_dir, "artifact directory")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (report->parsed()) return cmd_report(o);
    apply_config(app.get_subcommands().front(), o.config_file);
    if (o.cls_name.empty())
      throw Error(ErrorKind::InvalidConfig,
                  "MissingOption: --class is required (flag or config file)");
    SolitonClass cls = parse_class(o.cls_name);
    if (oracle->parsed()) return cmd_oracle(o, cls);
    if (solve->parsed()) return cmd_solve(o, cls);
    if (curvature->parsed()) return cmd_curvature(o, cls);
    if (classify->parsed()) return cmd_classify(o, cls);
    if (flow->parsed()) return cmd_flow(o, cls);
    if (harnack->parsed()) return cmd_harnack(o, cls);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::InvalidConfig: return 2;
      case ErrorKind::SolverFailure: return 3;
      case ErrorKind::CheckFailure: return 4;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
