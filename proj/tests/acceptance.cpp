// Acceptance gate: one line per criterion, nonzero exit on any failure.
// Each check is phrased against library results only; tolerances are the
// interface-contract values.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "yamabe/curvature.hpp"
#include "yamabe/errors.hpp"
#include "yamabe/flow.hpp"
#include "yamabe/params.hpp"
#include "yamabe/profile.hpp"

using namespace yamabe;

namespace {

int g_failures = 0;

void report(const char* id, bool pass, const std::string& detail) {
  std::printf("[%s] %s  %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  if (!pass) ++g_failures;
}

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::vector<double> log_grid(double s0, double s1, double h) {
  std::vector<double> g = {0.0};
  for (double s = s0; s <= s1 + 1e-12; s += h) g.push_back(std::exp(s));
  return g;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

struct Family {
  std::string name;
  SolitonParams params;
  CylindricalProfile cyl;
};

// every noncompact family the suite constructs by integration
std::vector<Family> integrated_families() {
  std::vector<Family> fams;
  for (auto [name, cls, beta] :
       std::vector<std::tuple<std::string, SolitonClass, double>>{
           {"steady b=1", SolitonClass::Steady, 1.0},
           {"shrinker b=2.5", SolitonClass::Shrinker, 2.5},
           {"shrinker b=1.5", SolitonClass::Shrinker, 1.5},
           {"expander b=1", SolitonClass::Expander, 1.0},
           {"expander b=0.3", SolitonClass::Expander, 0.3}}) {
    SolitonParams P = derive_params(3, cls, beta);
    fams.push_back({name, P, integrate_cylindrical(P, 1.0, -10.0, 9.22, 1e-10)});
  }
  return fams;
}

}  // namespace

// criterion 1: closed-form residual oracle across dimensions and scales
static void c01() {
  double worst = 0.0;
  std::vector<double> grid = uniform_grid(100.0, 2001);
  for (int n : {3, 4, 5, 6})
    for (double lam : {0.5, 1.0, 2.0}) {
      worst = std::max(worst, max_abs(elliptic_residual(
                                  sample_barenblatt(n, lam, grid))));
      worst = std::max(worst,
                       max_abs(elliptic_residual(sample_sphere(n, lam, grid))));
    }
  report("c01 closed-form oracle residuals", worst <= 1e-8,
         fmt("max normalized residual %.3e (tol 1e-8)", worst));
}

// criterion 2: shooting reproduces the closed form
static void c02() {
  RadialProfile prof =
      integrate_euclidean(barenblatt_params(3), 1.0, 50.0, 1e-10);
  double lamB = std::sqrt(2.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < prof.r.size(); ++i) {
    double exact = barenblatt_profile(3, lamB, prof.r[i]).u;
    worst = std::max(worst, std::fabs(prof.u[i] - exact) / exact);
  }
  report("c02 integration vs closed form", worst <= 1e-6,
         fmt("max relative deviation %.3e (tol 1e-6)", worst));
}

// criterion 3: route agreement on every constructed profile
static void c03() {
  double worst = 0.0;
  std::string where;
  std::vector<Family> fams = integrated_families();
  fams.push_back({"closed shrinker", barenblatt_params(3),
                  to_cylindrical(sample_barenblatt(3, 1.0,
                                                   log_grid(-4, 9.22, 0.01)))});
  fams.push_back({"closed sphere", sphere_params(3),
                  to_cylindrical(sample_sphere(3, 1.0, log_grid(-3, 3, 0.01)))});
  fams.push_back({"flat", derive_params(3, SolitonClass::Steady, 0.0),
                  to_cylindrical(sample_flat(3, 1.0, uniform_grid(50.0, 201)))});
  for (const Family& f : fams) {
    std::vector<double> R = scalar_curvature_cyl(f.cyl);
    std::vector<double> Rid = scalar_curvature_identity(f.cyl);
    for (std::size_t i = 0; i < R.size(); ++i) {
      double dev = std::fabs(R[i] - Rid[i]) / (1.0 + std::fabs(R[i]));
      if (dev > worst) {
        worst = dev;
        where = f.name;
      }
    }
  }

  // origin value 2 beta + rho through the radial identity route
  double worst0 = 0.0;
  for (auto [cls, beta] : std::vector<std::pair<SolitonClass, double>>{
           {SolitonClass::Steady, 1.0},
           {SolitonClass::Shrinker, 2.5},
           {SolitonClass::Expander, 1.0},
           {SolitonClass::Expander, 0.3}}) {
    SolitonParams P = derive_params(3, cls, beta);
    RadialProfile rad = integrate_euclidean(P, 1.0, 50.0, 1e-10);
    double R0 = scalar_curvature_identity(rad)[0];
    worst0 = std::max(worst0, std::fabs(R0 - (2.0 * P.beta + P.rho)));
  }
  bool pass = worst <= 1e-6 && worst0 <= 1e-8;
  report("c03 two-route curvature agreement", pass,
         fmt("max pointwise %.3e (tol 1e-6), origin %.3e (tol 1e-8)", worst,
             worst0) +
             (worst > 1e-6 ? " at " + where : ""));
}

// criterion 4: hand values of the closed shrinker
static void c04() {
  RadialProfile rad = sample_barenblatt(3, 1.0, log_grid(-4.0, 9.22, 0.01));
  CylindricalProfile cyl = to_cylindrical(rad);
  std::vector<double> R = scalar_curvature_cyl(cyl);
  std::vector<double> Rid = scalar_curvature_identity(cyl);
  double e0 = std::fabs(scalar_curvature_identity(rad)[0] - 6.0);
  std::size_t i0 = 0;
  while (i0 < cyl.s.size() && std::fabs(cyl.s[i0]) > 1e-12) ++i0;
  double e1 = std::max(std::fabs(R[i0] - 3.5), std::fabs(Rid[i0] - 3.5));
  double einf =
      std::max(std::fabs(R.back() - 1.0), std::fabs(Rid.back() - 1.0));
  bool pass = e0 <= 1e-6 && e1 <= 1e-6 && einf <= 1e-6;
  report("c04 shrinker curvature landmarks", pass,
         fmt("R(0) err %.2e, R(1) err %.2e", e0, e1) +
             fmt(", tail err %.2e (tol 1e-6)", einf));
}

// criterion 5: monotonicity / sign over grids reaching r = 1e4
static void c05() {
  bool pass = true;
  std::string detail;
  auto monotone = [&](const Family& f, double floor_val) {
    std::vector<double> R = scalar_curvature_cyl(f.cyl);
    std::size_t lead = 0;
    while (lead < f.cyl.w.size() && f.cyl.w[lead] <= 1e-6) ++lead;
    bool ok = true;
    double mn = 1e300;
    for (std::size_t i = 1; i < R.size(); ++i) {
      if (R[i] > R[i - 1]) ok = false;               // never increases
      if (i > lead && !(R[i] < R[i - 1])) ok = false;  // strict past guard
      mn = std::min(mn, R[i]);
    }
    if (mn <= floor_val) ok = false;
    if (!ok) pass = false;
    detail += f.name + fmt(" min R %.6f; ", mn);
  };
  SolitonParams sh = barenblatt_params(3);
  monotone({"shrinker", sh, integrate_cylindrical(sh, 1.0, -10.0, 9.22, 1e-10)},
           1.0);
  SolitonParams st = derive_params(3, SolitonClass::Steady, 1.0);
  monotone({"steady", st, integrate_cylindrical(st, 1.0, -10.0, 9.22, 1e-10)},
           0.0);

  SolitonParams ex = derive_params(3, SolitonClass::Expander, 0.3);
  CylindricalProfile ecyl = integrate_cylindrical(ex, 1.0, -10.0, 9.22, 1e-10);
  std::vector<double> Re = scalar_curvature_cyl(ecyl);
  double mx = -1e300;
  for (double v : Re) mx = std::max(mx, v);
  if (!(mx < 0.0)) pass = false;
  detail += fmt("expander max R %.3e", mx);
  report("c05 curvature monotonicity and sign", pass, detail);
}

// criterion 6: positive sectional curvatures; sphere constants
static void c06() {
  bool pass = true;
  double mn = 1e300;
  for (auto [cls, beta] : std::vector<std::pair<SolitonClass, double>>{
           {SolitonClass::Steady, 1.0},
           {SolitonClass::Shrinker, 2.5},
           {SolitonClass::Expander, 1.0}}) {
    SolitonParams P = derive_params(3, cls, beta);
    CylindricalProfile cyl = integrate_cylindrical(P, 1.0, -10.0, 9.22, 1e-10);
    std::vector<double> K0, K1;
    sectional_curvatures(cyl, K0, K1);
    for (std::size_t i = 0; i < K0.size(); ++i) {
      mn = std::min(mn, std::min(K0[i], K1[i]));
      if (!(K0[i] > 0.0) || !(K1[i] > 0.0)) pass = false;
    }
  }
  CylindricalProfile sph =
      to_cylindrical(sample_sphere(3, 1.0, log_grid(-3.0, 3.0, 0.01)));
  std::vector<double> K0, K1;
  sectional_curvatures(sph, K0, K1);
  double worst = 0.0;
  for (std::size_t i = 0; i < K0.size(); ++i) {
    worst = std::max(worst, std::fabs(K0[i] - 1.0 / 6.0));
    worst = std::max(worst, std::fabs(K1[i] - 1.0 / 6.0));
  }
  if (worst > 1e-5) pass = false;
  report("c06 sectional curvature positivity", pass,
         fmt("min K %.3e, sphere dev %.3e (tol 1e-5)", mn, worst));
}

// criterion 7: asymptotic rates
static void c07() {
  SolitonParams st = derive_params(3, SolitonClass::Steady, 1.0);
  CylinderOptions co;
  co.checkpoints = {30.0, 40.0};
  CylindricalProfile cyl = integrate_cylindrical(st, 1.0, -10.0, 40.0, 1e-10, co);
  double ws30 = 0.0, ws40 = 0.0;
  for (std::size_t i = 0; i < cyl.s.size(); ++i) {
    if (std::fabs(cyl.s[i] - 30.0) < 1e-12) ws30 = cyl.dw_ds[i];
    if (std::fabs(cyl.s[i] - 40.0) < 1e-12) ws40 = cyl.dw_ds[i];
  }
  double steady_drift = std::fabs(ws40 - ws30) / std::fabs(ws40);

  SolitonParams sh = barenblatt_params(3);
  AsymptoticReport shrep =
      asymptotic_classify(integrate_cylindrical(sh, 1.0, -10.0, 9.3, 1e-10));

  SolitonParams ex = derive_params(3, SolitonClass::Expander, 0.3);
  AsymptoticReport exrep =
      asymptotic_classify(integrate_cylindrical(ex, 1.0, -10.0, 9.3, 1e-10));
  double slope_target = -ex.gamma / ex.beta;
  double slope_err =
      std::fabs(exrep.fitted_exponent - slope_target) / std::fabs(slope_target);

  bool pass = steady_drift <= 0.05 && shrep.drift <= 0.05 &&
              shrep.rate_kind == RateKind::SlowDecayCigar &&
              exrep.rate_kind == RateKind::ExpanderPower && slope_err <= 0.02;
  report("c07 asymptotic rates", pass,
         fmt("steady slope drift %.2e, shrinker tail drift %.2e", steady_drift,
             shrep.drift) +
             fmt(", expander slope err %.2e (tol 0.02)", slope_err));
}

// criterion 8: soliton identity suite and pinching structure
static void c08() {
  const char* keys[] = {"hessian_radial", "hessian_spherical", "gradG",
                        "yamabe_identity", "trace_laplacian",
                        "curvature_slope"};
  double worst = 0.0, worstA = 0.0;
  std::string where;
  std::vector<Family> fams = integrated_families();
  fams.push_back({"closed shrinker", barenblatt_params(3),
                  to_cylindrical(sample_barenblatt(3, 1.0,
                                                   log_grid(-4, 9.22, 0.02)))});
  fams.push_back({"closed sphere", sphere_params(3),
                  to_cylindrical(sample_sphere(3, 1.0, log_grid(-3, 3, 0.01)))});
  for (const Family& f : fams) {
    std::map<std::string, std::vector<double>> ids =
        soliton_identity_check(f.cyl);
    for (const char* k : keys) {
      double v = max_abs(ids.at(k));
      if (v > worst) {
        worst = v;
        where = f.name + ":" + k;
      }
    }
    std::vector<double> lam, mu;
    ricci_eigenvalues(f.cyl, lam, mu);
    std::vector<double> grad2(f.cyl.s.size());
    for (std::size_t i = 0; i < grad2.size(); ++i) {
      double fs = 2.0 * f.params.beta * f.cyl.w[i];
      grad2[i] = fs * fs / f.cyl.w[i];
    }
    worstA = std::max(
        worstA, max_abs(chow_A_quadratic(lam, mu, f.params.n, grad2)));
  }

  std::vector<double> nu = chow_nu({3.0, 1.0, 2.0});
  bool nu_ok = nu.size() == 3 && nu[0] == 0.25 && nu[1] == 0.25 && nu[2] == 1.0;

  bool pass = worst <= 1e-6 && worstA <= 1e-12 && nu_ok;
  report("c08 soliton identities", pass,
         fmt("max residual %.3e (tol 1e-6) ", worst) + "at " + where +
             fmt(", quadratic form %.1e (tol 1e-12)", worstA) +
             (nu_ok ? "" : ", pinching weights wrong"));
}

// criterion 9: Harnack quantity
static void c09() {
  SolitonParams st = derive_params(3, SolitonClass::Steady, 1.0);
  CylindricalProfile cyl = integrate_cylindrical(st, 1.0, -10.0, 9.22, 1e-10);
  std::vector<double> Z = harnack_Z(cyl, 0.0);
  double r0 = 2.0 * st.beta + st.rho;
  double worst = 0.0;
  for (std::size_t i = 0; i < Z.size(); ++i)
    if (cyl.w[i] > 1e-6) worst = std::max(worst, std::fabs(Z[i]));
  bool steady_ok = worst <= 1e-6 * r0 * r0;

  CylindricalProfile bb =
      to_cylindrical(sample_barenblatt(3, 1.0, log_grid(-4, 6, 0.01)));
  std::vector<double> Zb = harnack_Z(bb, -1.0);
  std::vector<double> Rb = scalar_curvature_identity(bb);
  double worstb = 0.0;
  for (std::size_t i = 0; i < Zb.size(); ++i)
    if (bb.w[i] > 1e-6)
      worstb = std::max(worstb, std::fabs(Zb[i] - Rb[i]) / std::fabs(Rb[i]));

  bool pass = steady_ok && worstb <= 1e-6;
  report("c09 harnack quantity", pass,
         fmt("steady max|Z| %.3e (tol %.1e)", worst, 1e-6 * r0 * r0) +
             fmt(", shrinker max|Z-R|/R %.3e (tol 1e-6)", worstb));
}

// criterion 10: self-similar flow verification with refinement
static void c10() {
  auto run = [](const RadialProfile& init, double t0, double t1, int points,
                double T) {
    FlowConfig cfg;
    cfg.grid_points = points;
    cfg.r_max = 50.0;
    cfg.snapshots = 6;
    cfg.T_extinction = T;
    FlowTrajectory traj = evolve_fde(init, t0, t1, cfg);
    double worst = 0.0;
    for (auto& [t, e] : self_similar_error(traj, init))
      worst = std::max(worst, e);
    return worst;
  };
  auto t_start = std::chrono::steady_clock::now();

  RadialProfile bb = sample_barenblatt(3, std::sqrt(2.0), uniform_grid(50.0, 2000));
  RadialProfile bb4 = sample_barenblatt(3, std::sqrt(2.0), uniform_grid(50.0, 4000));
  double shr2 = run(bb, 0.0, 0.5, 2000, 1.0);
  double shr4 = run(bb4, 0.0, 0.5, 4000, 1.0);

  SolitonParams st = derive_params(3, SolitonClass::Steady, 1.0);
  RadialProfile sp = integrate_euclidean(st, 1.0, 50.0, 1e-10);
  double ste2 = run(sp, 0.0, 1.0, 2000, 0.0);
  double ste4 = run(sp, 0.0, 1.0, 4000, 0.0);

  double secs = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t_start)
                    .count();
  bool pass = shr2 <= 1e-2 && ste2 <= 1e-2 && shr2 / shr4 >= 1.5 &&
              ste2 / ste4 >= 1.5 && secs <= 300.0;
  report("c10 self-similar flow", pass,
         fmt("shrinker dev %.3e (refine x%.1f)", shr2, shr2 / shr4) +
             fmt(", steady dev %.3e (refine x%.1f)", ste2, ste2 / ste4) +
             fmt(", %.1f s (limit 300)", secs));
}

// criterion 11: rejected constructions carry the declared error kinds
static void c11() {
  bool pass = true;
  std::string detail = "all rejections carry InvalidConfig";
  auto expect = [&](auto&& thunk, const char* tag) {
    try {
      thunk();
      pass = false;
      detail = std::string("missing rejection: ") + tag;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::InvalidConfig ||
          std::string(e.what()).find(tag) != 0) {
        pass = false;
        detail = std::string("wrong error for ") + tag + ": " + e.what();
      }
    }
  };
  expect([] { derive_params(2, SolitonClass::Steady, 1.0); },
         "DimensionTooSmall");
  expect([] { derive_params(3, SolitonClass::Shrinker, -0.5); },
         "NegativeBeta");
  expect([] { derive_params(3, SolitonClass::Shrinker, 0.0); },
         "ZeroBetaNonSteady");
  expect([] { derive_params(3, SolitonClass::Expander, 0.0); },
         "ZeroBetaNonSteady");
  report("c11 construction rejections", pass, detail);
}

int main() {
  c01();
  c02();
  c03();
  c04();
  c05();
  c06();
  c07();
  c08();
  c09();
  c10();
  c11();
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
