#include "yamabe/profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "fd.hpp"
#include "yamabe/interp.hpp"
#include "yamabe/ode.hpp"

namespace yamabe {

namespace {

void require_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw Error(ErrorKind::InvalidConfig, "lambda must be positive");
}

void require_tol(double tol) {
  if (!(tol > 1e-13 && tol < 1e-3))
    throw Error(ErrorKind::InvalidConfig,
                "tol must lie in (1e-13, 1e-3), got " + std::to_string(tol));
}

// Right-hand side of the radial profile equation solved for u''.  Only
// evaluated at r > 0; the origin node comes from the series expansion.
double radial_d2u(const SolitonParams& P, double r, double u, double p) {
  double om = P.one_minus_m();
  return om * p * p / u - (P.n - 1) * p / r -
         std::pow(u, om) * (P.beta * r * p + P.gamma * u) / (P.n - 1);
}

std::vector<double> filtered_checkpoints(const std::vector<double>& cps,
                                         double lo, double hi) {
  std::vector<double> out;
  for (double c : cps)
    if (c > lo && c < hi) out.push_back(c);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

enum class StopReason { None, Vanished, BlewUp };

}  // namespace

const char* rate_kind_name(RateKind k) {
  switch (k) {
    case RateKind::Flat: return "Flat";
    case RateKind::SlowDecayCigar: return "SlowDecayCigar";
    case RateKind::LogCigar: return "LogCigar";
    case RateKind::ExpanderPower: return "ExpanderPower";
    case RateKind::ExpanderDecreasing: return "ExpanderDecreasing";
  }
  return "?";
}

ProfilePoint origin_series(const SolitonParams& P, double lambda, double r) {
  require_lambda(lambda);
  double a2 = -P.gamma * std::pow(lambda, 2.0 - P.m) /
              (2.0 * P.n * (P.n - 1));
  ProfilePoint pt;
  pt.u = lambda + a2 * r * r;
  pt.du_dr = 2.0 * a2 * r;
  pt.d2u_dr2 = 2.0 * a2;
  return pt;
}

std::vector<double> elliptic_residual(const RadialProfile& prof,
                                      DerivativeMode mode) {
  const SolitonParams& P = prof.params;
  const std::size_t N = prof.r.size();

  if (mode == DerivativeMode::FiniteDifference) {
    if (N < 4)
      throw GridTooCoarse(
          "finite-difference residual needs at least 4 samples, got " +
          std::to_string(N));
    // Differentiate v = u^m directly; symmetry gives v'(0) = 0 and
    // v''(0) = 2 (v_1 - v_0) / r_1^2.
    std::vector<double> v(N), dv, d2v;
    for (std::size_t i = 0; i < N; ++i) v[i] = std::pow(prof.u[i], P.m);
    fd::nonuniform3(prof.r, v, dv, d2v);
    std::vector<double> du_fd, d2u_fd;
    fd::nonuniform3(prof.r, prof.u, du_fd, d2u_fd);
    if (prof.r[0] == 0.0) {
      dv[0] = 0.0;
      d2v[0] = 2.0 * (v[1] - v[0]) / (prof.r[1] * prof.r[1]);
      du_fd[0] = 0.0;
    }
    std::vector<double> res(N);
    for (std::size_t i = 0; i < N; ++i) {
      double lap = prof.r[i] > 0.0
                       ? d2v[i] + (P.n - 1) * dv[i] / prof.r[i]
                       : static_cast<double>(P.n) * d2v[i];
      double raw = ((P.n - 1) / P.m) * lap + P.beta * prof.r[i] * du_fd[i] +
                   P.gamma * prof.u[i];
      res[i] = raw / (std::abs(P.gamma) * prof.u[i] + 1e-300);
    }
    return res;
  }

  std::vector<double> res(N);
  for (std::size_t i = 0; i < N; ++i) {
    double u = prof.u[i], up = prof.du_dr[i], upp = prof.d2u_dr2[i];
    double r = prof.r[i];
    double um1 = std::pow(u, P.m - 1.0);
    double vp = P.m * um1 * up;
    double vpp = P.m * um1 * upp + P.m * (P.m - 1.0) * um1 / u * up * up;
    double lap = r > 0.0 ? vpp + (P.n - 1) * vp / r
                         : static_cast<double>(P.n) * vpp;
    double raw = ((P.n - 1) / P.m) * lap + P.beta * r * up + P.gamma * u;
    res[i] = raw / (std::abs(P.gamma) * u + 1e-300);
  }
  return res;
}

RadialProfile integrate_euclidean(const SolitonParams& P, double lambda,
                                  double r_max, double tol,
                                  const ShootOptions& opt) {
  require_lambda(lambda);
  require_tol(tol);
  if (!(r_max > 0.0))
    throw Error(ErrorKind::InvalidConfig, "r_max must be positive");

  double om = P.one_minus_m();
  double r0 = opt.series_radius > 0.0
                  ? opt.series_radius
                  : 1e-3 * std::max(1.0, std::pow(lambda, -0.5 * om));
  r0 = std::min(r0, 0.5 * r_max);

  ProfilePoint start = origin_series(P, lambda, r0);

  OdeOptions oo;
  oo.rtol = tol;
  oo.atol = tol * lambda * 1e-3;
  oo.max_step = opt.max_step;
  oo.checkpoints = filtered_checkpoints(opt.checkpoints, r0, r_max);

  StopReason reason = StopReason::None;
  double reason_at = 0.0;
  auto guard = [&](double x, const double* y) {
    if (!(y[0] > opt.u_floor)) {
      reason = StopReason::Vanished;
      reason_at = x;
      return false;
    }
    if (std::abs(y[0]) > opt.overflow_guard ||
        std::abs(y[1]) > opt.overflow_guard) {
      reason = StopReason::BlewUp;
      reason_at = x;
      return false;
    }
    return true;
  };

  RadialProfile prof;
  prof.params = P;
  prof.lambda = lambda;
  prof.source = ProfileSource::Integrated;
  prof.r.push_back(0.0);
  prof.u.push_back(lambda);
  prof.du_dr.push_back(0.0);
  prof.d2u_dr2.push_back(start.d2u_dr2);

  auto sink = [&](double x, const double* y) {
    reason = StopReason::None;
    prof.r.push_back(x);
    prof.u.push_back(y[0]);
    prof.du_dr.push_back(y[1]);
    prof.d2u_dr2.push_back(radial_d2u(P, x, y[0], y[1]));
  };

  auto rhs = [&](double x, const double* y, double* dy) {
    dy[0] = y[1];
    dy[1] = radial_d2u(P, x, y[0], y[1]);
  };

  OdeStatus st = integrate_ode(rhs, {start.u, start.du_dr}, r0, r_max, oo,
                               sink, guard);
  if (st.kind == OdeStatus::Stopped) {
    if (reason == StopReason::Vanished) throw ProfileVanished(reason_at);
    if (reason == StopReason::BlewUp) throw ProfileBlewUp(reason_at);
    throw StepSizeUnderflow(st.x);
  }
  return prof;
}

CylindricalProfile to_cylindrical(const RadialProfile& prof) {
  const SolitonParams& P = prof.params;
  double om = P.one_minus_m();

  CylindricalProfile cyl;
  cyl.params = P;
  cyl.lambda = prof.lambda;
  cyl.source = prof.source;

  std::size_t kept = 0;
  for (std::size_t i = 0; i < prof.r.size(); ++i) {
    double r = prof.r[i];
    if (!(r > 0.0)) continue;
    ++kept;
    double s = std::log(r);
    double u = prof.u[i];
    double w = std::exp(2.0 * s + om * std::log(u));
    double q = r * prof.du_dr[i] / u;
    double Q = r * r * prof.d2u_dr2[i] / u;
    double a = 2.0 + om * q;
    cyl.s.push_back(s);
    cyl.w.push_back(w);
    cyl.dw_ds.push_back(w * a);
    cyl.d2w_ds2.push_back(w * a * a + w * om * (q + Q - q * q));
  }
  if (kept < 2)
    throw EmptyPositiveRadius(
        "cylindrical conversion needs at least 2 samples with r > 0");

  cyl.f.assign(cyl.s.size(), 0.0);
  for (std::size_t i = 1; i < cyl.s.size(); ++i) {
    double ds = cyl.s[i] - cyl.s[i - 1];
    cyl.f[i] = cyl.f[i - 1] +
               0.5 * ds * (2.0 * P.beta * cyl.w[i] + 2.0 * P.beta * cyl.w[i - 1]);
  }
  return cyl;
}

double cylindrical_rhs(const SolitonParams& P, double w, double dw_ds) {
  if (!(w > 0.0)) throw NonpositiveW(w);
  double c1 = (6.0 - P.n) / 4.0;
  double c2 = P.theta / P.m;
  double c3 = P.n - 2.0;
  double c4 = static_cast<double>(P.rho) / (P.n - 1);
  return c1 * dw_ds * dw_ds / w - c2 * w * dw_ds + c3 * w - c4 * w * w;
}

CylindricalProfile integrate_cylindrical(const SolitonParams& P,
                                         double lambda, double s_min,
                                         double s_max, double tol,
                                         const CylinderOptions& opt) {
  require_lambda(lambda);
  require_tol(tol);
  if (!(s_min < s_max))
    throw Error(ErrorKind::InvalidConfig, "need s_min < s_max");

  double om = P.one_minus_m();
  double w0 = std::exp(om * std::log(lambda) + 2.0 * s_min);
  if (!(w0 < 1e-8)) throw BadAsymptoticStart(w0);

  OdeOptions oo;
  oo.rtol = tol;
  oo.atol = tol * w0;
  oo.max_step = opt.max_step;
  oo.checkpoints = filtered_checkpoints(opt.checkpoints, s_min, s_max);

  StopReason reason = StopReason::None;
  double reason_at = 0.0;
  auto guard = [&](double x, const double* y) {
    if (!(y[0] > opt.w_floor)) {
      reason = StopReason::Vanished;
      reason_at = x;
      return false;
    }
    if (std::abs(y[0]) > opt.overflow_guard ||
        std::abs(y[1]) > opt.overflow_guard) {
      reason = StopReason::BlewUp;
      reason_at = x;
      return false;
    }
    return true;
  };

  CylindricalProfile cyl;
  cyl.params = P;
  cyl.lambda = lambda;
  cyl.source = ProfileSource::Integrated;

  auto sink = [&](double x, const double* y) {
    reason = StopReason::None;
    cyl.s.push_back(x);
    cyl.w.push_back(y[0]);
    cyl.dw_ds.push_back(y[1]);
    cyl.d2w_ds2.push_back(cylindrical_rhs(P, y[0], y[1]));
    cyl.f.push_back(y[2]);
  };

  const double c1 = (6.0 - P.n) / 4.0;
  const double c2 = P.theta / P.m;
  const double c3 = P.n - 2.0;
  const double c4 = static_cast<double>(P.rho) / (P.n - 1);
  const double nan = std::numeric_limits<double>::quiet_NaN();

  // Trial states with w <= 0 get NaN derivatives, which the integrator
  // treats as a rejected step (public cylindrical_rhs throws instead).
  auto rhs = [&](double, const double* y, double* dy) {
    double w = y[0], ws = y[1];
    if (!(w > 0.0)) {
      dy[0] = dy[1] = dy[2] = nan;
      return;
    }
    dy[0] = ws;
    dy[1] = c1 * ws * ws / w - c2 * w * ws + c3 * w - c4 * w * w;
    dy[2] = 2.0 * P.beta * w;
  };

  OdeStatus st;
  if (P.cls == SolitonClass::Expander) {
    // Growing-w families have a strongly contracting transverse mode
    // (Jacobian entry ~ -c2 w), which makes the system stiff long before
    // s_max; the implicit integrator keeps accuracy-sized steps there.
    auto jac = [&](double, const double* y, double* J) {
      double w = y[0], ws = y[1];
      if (!(w > 0.0)) {
        for (int i = 0; i < 9; ++i) J[i] = nan;
        return;
      }
      J[0] = 0.0;
      J[1] = 1.0;
      J[2] = 0.0;
      J[3] = -c1 * ws * ws / (w * w) - c2 * ws + c3 - 2.0 * c4 * w;
      J[4] = 2.0 * c1 * ws / w - c2 * w;
      J[5] = 0.0;
      J[6] = 2.0 * P.beta;
      J[7] = 0.0;
      J[8] = 0.0;
    };
    st = integrate_ode_stiff(rhs, jac, {w0, 2.0 * w0, 0.0}, s_min, s_max, oo,
                             sink, guard);
  } else {
    st = integrate_ode(rhs, {w0, 2.0 * w0, 0.0}, s_min, s_max, oo, sink,
                       guard);
  }
  if (st.kind == OdeStatus::Stopped) {
    if (reason == StopReason::Vanished) throw ProfileVanished(reason_at, "s");
    if (reason == StopReason::BlewUp) throw ProfileBlewUp(reason_at, "s");
    throw StepSizeUnderflow(st.x);
  }
  return cyl;
}

namespace {

AsymptoticReport classify_cyl(const CylindricalProfile& cyl) {
  const SolitonParams& P = cyl.params;
  if (cyl.s.empty() || cyl.s.back() < 7.0)
    throw GridTooShort("classification needs samples out to s >= 7 (r >= 1e3)");

  double s_end = cyl.s.back();
  double s_lo = s_end - std::log(10.0);
  std::vector<double> s, logu, quantity;
  double om = P.one_minus_m();

  RateKind kind;
  if (std::abs(P.gamma) < 1e-12)
    kind = RateKind::Flat;
  else if (P.cls == SolitonClass::Shrinker)
    kind = RateKind::SlowDecayCigar;
  else if (P.cls == SolitonClass::Steady)
    kind = RateKind::LogCigar;
  else
    kind = P.gamma < 0.0 ? RateKind::ExpanderPower
                         : RateKind::ExpanderDecreasing;

  for (std::size_t i = 0; i < cyl.s.size(); ++i) {
    if (cyl.s[i] < s_lo) continue;
    double si = cyl.s[i];
    double lw = std::log(cyl.w[i]);
    double lu = (lw - 2.0 * si) / om;
    s.push_back(si);
    logu.push_back(lu);
    double q;
    switch (kind) {
      case RateKind::Flat: q = std::exp(lu); break;
      case RateKind::SlowDecayCigar: q = std::exp(lw / om); break;
      case RateKind::LogCigar: q = cyl.w[i] / si; break;
      default: q = std::exp(lu + (P.gamma / P.beta) * si); break;
    }
    quantity.push_back(q);
  }
  if (s.size() < 4)
    throw GridTooShort("fewer than 4 samples in the last radial decade");

  AffineFit fit = fit_affine(s, logu);
  double qmax = *std::max_element(quantity.begin(), quantity.end());
  double qmin = *std::min_element(quantity.begin(), quantity.end());
  double qsum = 0.0;
  for (double q : quantity) qsum += q;

  AsymptoticReport rep;
  rep.cls = P.cls;
  rep.rate_kind = kind;
  rep.fitted_exponent = fit.b;
  rep.fitted_amplitude = qsum / quantity.size();
  rep.drift = (qmax - qmin) / qmax;
  return rep;
}

}  // namespace

AsymptoticReport asymptotic_classify(const CylindricalProfile& cyl) {
  return classify_cyl(cyl);
}

AsymptoticReport asymptotic_classify(const RadialProfile& prof) {
  if (prof.r.empty() || prof.r.back() < 1e3)
    throw GridTooShort("classification needs samples out to r >= 1e3");
  return classify_cyl(to_cylindrical(prof));
}

std::vector<double> uniform_grid(double r_max, std::size_t points) {
  if (points < 2 || !(r_max > 0.0))
    throw Error(ErrorKind::InvalidConfig, "uniform_grid needs r_max > 0 and >= 2 points");
  std::vector<double> g(points);
  for (std::size_t i = 0; i < points; ++i)
    g[i] = r_max * static_cast<double>(i) / (points - 1);
  return g;
}

namespace {

RadialProfile sample_closed_form(const SolitonParams& P, double scale,
                                 const std::vector<double>& grid,
                                 ProfilePoint (*eval)(int, double, double)) {
  if (grid.empty() || grid[0] != 0.0)
    throw Error(ErrorKind::InvalidConfig, "sample grid must start at r = 0");
  RadialProfile prof;
  prof.params = P;
  prof.source = ProfileSource::ClosedForm;
  prof.r = grid;
  for (double r : grid) {
    ProfilePoint pt = eval(P.n, scale, r);
    prof.u.push_back(pt.u);
    prof.du_dr.push_back(pt.du_dr);
    prof.d2u_dr2.push_back(pt.d2u_dr2);
  }
  prof.lambda = prof.u[0];
  return prof;
}

}  // namespace

RadialProfile sample_barenblatt(int n, double scale,
                                const std::vector<double>& grid) {
  return sample_closed_form(barenblatt_params(n), scale, grid,
                            &barenblatt_profile);
}

RadialProfile sample_sphere(int n, double scale,
                            const std::vector<double>& grid) {
  return sample_closed_form(sphere_params(n), scale, grid, &sphere_profile);
}

RadialProfile sample_flat(int n, double lambda,
                          const std::vector<double>& grid) {
  if (grid.empty() || grid[0] != 0.0)
    throw Error(ErrorKind::InvalidConfig, "sample grid must start at r = 0");
  require_lambda(lambda);
  RadialProfile prof;
  prof.params = derive_params(n, SolitonClass::Steady, 0.0);
  prof.source = ProfileSource::ClosedForm;
  prof.lambda = lambda;
  prof.r = grid;
  prof.u.assign(grid.size(), lambda);
  prof.du_dr.assign(grid.size(), 0.0);
  prof.d2u_dr2.assign(grid.size(), 0.0);
  return prof;
}

}  // namespace yamabe
