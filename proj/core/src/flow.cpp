#include "yamabe/flow.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fd.hpp"
#include "yamabe/curvature.hpp"
#include "yamabe/interp.hpp"

namespace yamabe {

namespace {

// Tridiagonal solve (Thomas); the flow Jacobian is diagonally dominant.
std::vector<double> solve_tridiag(std::vector<double> dl,
                                  std::vector<double> d,
                                  std::vector<double> du,
                                  std::vector<double> rhs) {
  const std::size_t n = d.size();
  for (std::size_t i = 1; i < n; ++i) {
    double m = dl[i] / d[i - 1];
    d[i] -= m * du[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  std::vector<double> x(n);
  x[n - 1] = rhs[n - 1] / d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;)
    x[i] = (rhs[i] - du[i] * x[i + 1]) / d[i];
  return x;
}

// Evaluator for the initial profile: monotone cubic inside its extent, the
// fitted power tail beyond.
struct InitialEval {
  Pchip interp;
  double r_back = 0.0;
  double tail_a = 0.0, tail_b = 0.0;

  explicit InitialEval(const RadialProfile& prof)
      : interp(prof.r, prof.u), r_back(prof.r.back()) {
    std::vector<double> lr, lu;
    for (std::size_t i = 0; i < prof.r.size(); ++i) {
      if (prof.r[i] >= 0.1 * r_back && prof.r[i] > 0.0) {
        lr.push_back(std::log(prof.r[i]));
        lu.push_back(std::log(prof.u[i]));
      }
    }
    if (lr.size() >= 2) {
      AffineFit fit = fit_affine(lr, lu);
      tail_a = fit.a;
      tail_b = fit.b;
    } else {
      tail_a = std::log(prof.u.back());
      tail_b = 0.0;
    }
  }

  double operator()(double r) const {
    if (r <= r_back) return interp(r);
    return std::exp(tail_a + tail_b * std::log(r));
  }
};

struct Law {
  double value_scale = 1.0;
  double arg_scale = 1.0;
};

Law law_factors(const SolitonParams& P, double t_ref, double T_ext,
                double t) {
  double sigma;
  switch (P.cls) {
    case SolitonClass::Shrinker: sigma = (T_ext - t) / (T_ext - t_ref); break;
    case SolitonClass::Steady: sigma = std::exp(-(t - t_ref)); break;
    default: sigma = t_ref / t; break;
  }
  Law law;
  if (sigma <= 0.0) {
    law.value_scale = 0.0;
    law.arg_scale = 0.0;
    return law;
  }
  law.value_scale = std::pow(sigma, P.gamma);
  law.arg_scale = std::pow(sigma, P.beta);
  return law;
}

struct NewtonFailure {
  bool positivity = false;
  double r = 0.0;
};

}  // namespace

double self_similar_factor(const FlowTrajectory& traj, double t,
                           double* arg_scale) {
  Law law = law_factors(traj.params, traj.t_reference, traj.T_extinction, t);
  if (arg_scale) *arg_scale = law.arg_scale;
  return law.value_scale;
}

FlowTrajectory evolve_fde(const RadialProfile& initial, double t0, double t1,
                          const FlowConfig& cfg) {
  const SolitonParams& P = initial.params;
  if (P.n < 3) throw NotASolitonProfile("initial profile carries no params");
  if (!(t0 < t1))
    throw Error(ErrorKind::InvalidConfig, "need t0 < t1");
  if (cfg.grid_points < 16)
    throw Error(ErrorKind::InvalidConfig, "flow grid needs >= 16 points");
  if (P.cls == SolitonClass::Expander && !(t0 > 0.0))
    throw Error(ErrorKind::InvalidConfig,
                "expander flows need t0 > 0 (profile time is t = t0)");
  double T_ext = 0.0;
  if (P.cls == SolitonClass::Shrinker) {
    T_ext = cfg.T_extinction > 0.0 ? cfg.T_extinction : t0 + 1.0;
    if (!(T_ext > t0) || t1 > T_ext)
      throw Error(ErrorKind::InvalidConfig,
                  "shrinker flows need t0 < t1 <= T_extinction");
  }

  double r_max = cfg.r_max > 0.0 ? cfg.r_max : initial.r.back();
  if (r_max > 10.0 * initial.r.back())
    throw DomainTooSmall(
        "flow domain exceeds 10x the initial profile extent; the pinned "
        "boundary would rely on far extrapolation");

  const std::size_t N = cfg.grid_points;
  const double h = r_max / (N - 1);
  std::vector<double> grid(N);
  for (std::size_t i = 0; i < N; ++i) grid[i] = h * i;

  InitialEval init(initial);
  std::vector<double> u_cur(N);
  for (std::size_t i = 0; i < N; ++i) {
    u_cur[i] = init(grid[i]);
    if (!(u_cur[i] > 0.0)) throw PositivityLost(t0, grid[i]);
  }
  double initial_max = *std::max_element(u_cur.begin(), u_cur.end());

  auto boundary_value = [&](double t) {
    Law law = law_factors(P, t0, T_ext, t);
    return law.value_scale * init(grid.back() * law.arg_scale);
  };

  const double c_op = (P.n - 1) / P.m;
  const double m = P.m;
  const int n = P.n;

  // One implicit step: solve a*v - b = dt*((n-1)/m)*L[v^m] with damped
  // Newton; returns the state or the failure mode.
  auto implicit_step = [&](double a, const std::vector<double>& b, double dt,
                           double t_new, const std::vector<double>& guess,
                           NewtonFailure& fail) -> std::optional<std::vector<double>> {
    double bc = boundary_value(t_new);
    std::vector<double> v = guess;
    for (double& x : v) x = std::max(x, 1e-30 * initial_max);
    v.back() = bc;

    std::vector<double> q(N), G(N), dl(N), d(N), du(N);
    double c = dt * c_op;

    auto residual = [&](const std::vector<double>& vv, std::vector<double>& g) {
      for (std::size_t i = 0; i < N; ++i) q[i] = std::pow(vv[i], m);
      g[0] = a * vv[0] - b[0] - c * 2.0 * n * (q[1] - q[0]) / (h * h);
      for (std::size_t i = 1; i + 1 < N; ++i) {
        double cl = 1.0 / (h * h) - (n - 1) / (2.0 * h * grid[i]);
        double cr = 1.0 / (h * h) + (n - 1) / (2.0 * h * grid[i]);
        g[i] = a * vv[i] - b[i] -
               c * (cl * q[i - 1] - 2.0 * q[i] / (h * h) + cr * q[i + 1]);
      }
      g[N - 1] = vv[N - 1] - bc;
      double worst = 0.0;
      for (std::size_t i = 0; i < N; ++i)
        worst = std::max(worst, std::abs(g[i]) / (a * (1e-300 + std::abs(vv[i]))));
      return worst;
    };

    double res = residual(v, G);
    for (int it = 0; it < 25; ++it) {
      for (std::size_t i = 0; i < N; ++i) q[i] = m * std::pow(v[i], m - 1.0);
      dl[0] = 0.0;
      d[0] = a + c * 2.0 * n * q[0] / (h * h);
      du[0] = -c * 2.0 * n * q[1] / (h * h);
      for (std::size_t i = 1; i + 1 < N; ++i) {
        double cl = 1.0 / (h * h) - (n - 1) / (2.0 * h * grid[i]);
        double cr = 1.0 / (h * h) + (n - 1) / (2.0 * h * grid[i]);
        dl[i] = -c * cl * q[i - 1];
        d[i] = a + c * 2.0 * q[i] / (h * h);
        du[i] = -c * cr * q[i + 1];
      }
      dl[N - 1] = 0.0;
      d[N - 1] = 1.0;
      du[N - 1] = 0.0;

      std::vector<double> rhs(N);
      for (std::size_t i = 0; i < N; ++i) rhs[i] = -G[i];
      std::vector<double> delta = solve_tridiag(dl, d, du, rhs);

      double alpha = 1.0;
      bool pos_ok = false;
      for (int k = 0; k < 40; ++k) {
        pos_ok = true;
        for (std::size_t i = 0; i < N; ++i) {
          if (!(v[i] + alpha * delta[i] > 0.0)) {
            pos_ok = false;
            fail.positivity = true;
            fail.r = grid[i];
            break;
          }
        }
        if (pos_ok) break;
        alpha *= 0.5;
      }
      if (!pos_ok) return std::nullopt;

      double step_norm = 0.0;
      for (std::size_t i = 0; i < N; ++i) {
        v[i] += alpha * delta[i];
        step_norm = std::max(step_norm,
                             std::abs(alpha * delta[i]) / (1e-300 + v[i]));
      }
      res = residual(v, G);
      if (step_norm < 1e-11 || res < 1e-13) {
        for (std::size_t i = 0; i < N; ++i)
          if (!(v[i] > 0.0)) {
            fail.positivity = true;
            fail.r = grid[i];
            return std::nullopt;
          }
        return v;
      }
    }
    return std::nullopt;
  };

  FlowTrajectory traj;
  traj.params = P;
  traj.lambda = initial.lambda;
  traj.t_reference = t0;
  traj.T_extinction = T_ext;

  std::size_t K = std::max<std::size_t>(cfg.snapshots, 2);
  std::vector<double> snap_times(K);
  for (std::size_t k = 0; k < K; ++k)
    snap_times[k] = t0 + (t1 - t0) * static_cast<double>(k) / (K - 1);

  traj.states.push_back({t0, grid, u_cur});
  std::size_t next_snap = 1;

  double t = t0;
  double dt = cfg.dt_initial > 0.0 ? cfg.dt_initial * (t1 - t0) : 1e-5 * (t1 - t0);
  double dt_prev = 0.0;
  std::vector<double> u_prev;
  const double span = t1 - t0;
  const double rtol = cfg.time_tol;
  const double atol = cfg.time_tol * initial_max * 1e-6 + 1e-300;

  while (t < t1 - 1e-14 * span && next_snap < K) {
    bool landed = false;
    double dt_try = dt;
    if (t + dt_try >= snap_times[next_snap] - 1e-14 * span) {
      dt_try = snap_times[next_snap] - t;
      landed = true;
    }

    double a;
    std::vector<double> b(N);
    std::vector<double> guess(N);
    if (u_prev.empty()) {
      a = 1.0;
      b = u_cur;
      guess = u_cur;
    } else {
      double rr = dt_try / dt_prev;
      a = (1.0 + 2.0 * rr) / (1.0 + rr);
      for (std::size_t i = 0; i < N; ++i) {
        b[i] = (1.0 + rr) * u_cur[i] - rr * rr / (1.0 + rr) * u_prev[i];
        guess[i] = u_cur[i] + rr * (u_cur[i] - u_prev[i]);
      }
    }

    NewtonFailure fail;
    auto v = implicit_step(a, b, dt_try, t + dt_try, guess, fail);
    if (!v) {
      dt = dt_try / 3.0;
      if (dt < 1e-13 * std::max(1.0, std::abs(t))) {
        if (fail.positivity) throw PositivityLost(t, fail.r);
        throw StepSizeUnderflow(t);
      }
      continue;
    }

    double err = 0.0;
    if (!u_prev.empty()) {
      for (std::size_t i = 0; i < N; ++i) {
        double pred = guess[i];
        err = std::max(err, std::abs((*v)[i] - pred) /
                                (atol + rtol * std::abs((*v)[i])));
      }
      err /= 6.0;
    }
    if (err > 1.0) {
      dt = dt_try * std::max(0.2, 0.8 * std::pow(err, -1.0 / 3.0));
      continue;
    }

    u_prev = u_cur;
    u_cur = std::move(*v);
    dt_prev = dt_try;
    t += dt_try;

    double grow = err > 1e-10 ? 0.8 * std::pow(err, -1.0 / 3.0) : 4.0;
    dt = dt_try * std::min(4.0, std::max(0.2, grow));

    if (landed) {
      traj.states.push_back({snap_times[next_snap], grid, u_cur});
      ++next_snap;
    }

    double cur_max = *std::max_element(u_cur.begin(), u_cur.end());
    if (cur_max < 1e-10 * initial_max) {
      traj.extinction_time = t;
      break;
    }
  }
  return traj;
}

std::vector<std::pair<double, double>> self_similar_error(
    const FlowTrajectory& traj, const RadialProfile& profile) {
  const SolitonParams& A = traj.params;
  const SolitonParams& B = profile.params;
  if (A.n != B.n || A.cls != B.cls || std::abs(A.beta - B.beta) > 1e-12 ||
      std::abs(A.gamma - B.gamma) > 1e-12)
    throw ParameterMismatch(
        "trajectory and reference profile parameters disagree");

  InitialEval ref(profile);
  std::vector<std::pair<double, double>> out;
  for (const FlowState& st : traj.states) {
    Law law = law_factors(A, traj.t_reference, traj.T_extinction, st.t);
    double r_hi = 0.9 * st.grid.back();
    double worst = 0.0;
    for (std::size_t i = 0; i < st.grid.size(); ++i) {
      if (st.grid[i] > r_hi) break;
      double pred = law.value_scale * ref(st.grid[i] * law.arg_scale);
      worst = std::max(worst,
                       std::abs(st.u_bar[i] - pred) / (1e-300 + std::abs(pred)));
    }
    out.emplace_back(st.t, worst);
  }
  return out;
}

std::vector<double> flow_scalar_curvature(const FlowState& st, int n,
                                          double m) {
  const std::size_t N = st.grid.size();
  const double h = st.grid[1] - st.grid[0];
  std::vector<double> q(N), d1, d2;
  for (std::size_t i = 0; i < N; ++i) q[i] = std::pow(st.u_bar[i], m);
  fd::uniform4(h, q, d1, d2);
  std::vector<double> R(N);
  for (std::size_t i = 0; i < N; ++i) {
    double lap = i == 0 ? 2.0 * n * (q[1] - q[0]) / (h * h)
                        : d2[i] + (n - 1) * d1[i] / st.grid[i];
    R[i] = -(1.0 - m) * ((n - 1) / m) * lap / st.u_bar[i];
  }
  return R;
}

std::vector<HarnackSample> harnack_monitor(const FlowTrajectory& traj) {
  const SolitonParams& P = traj.params;
  std::vector<HarnackSample> out;
  const int n = P.n;
  double om = 1.0 - P.m;

  for (const FlowState& st : traj.states) {
    const std::size_t N = st.grid.size();
    const double h = st.grid[1] - st.grid[0];
    double r_max = st.grid.back();
    double r_lo = std::max(5.0 * h, 0.02 * r_max);
    double r_hi = 0.9 * r_max;

    std::vector<double> wfull(N), d1, d2;
    for (std::size_t i = 0; i < N; ++i)
      wfull[i] = st.grid[i] * st.grid[i] * std::pow(st.u_bar[i], om);
    fd::uniform4(h, wfull, d1, d2);

    CylindricalProfile cyl;
    cyl.params = P;
    cyl.lambda = traj.lambda;
    cyl.source = ProfileSource::Integrated;
    for (std::size_t i = 0; i < N; ++i) {
      double r = st.grid[i];
      if (r < r_lo || r > r_hi) continue;
      cyl.s.push_back(std::log(r));
      cyl.w.push_back(wfull[i]);
      cyl.dw_ds.push_back(r * d1[i]);
      cyl.d2w_ds2.push_back(r * d1[i] + r * r * d2[i]);
      cyl.f.push_back(0.0);
    }

    HarnackSample sample;
    sample.t = st.t;
    if (cyl.s.size() < 8) {
      sample.skipped = true;
      sample.min_Z = std::numeric_limits<double>::quiet_NaN();
      out.push_back(sample);
      continue;
    }

    // Curvature formulas are homogeneous under w -> kappa w (R, Ric scale by
    // 1/kappa; Z by 1/kappa^2). Near extinction u_bar is uniformly tiny, so
    // rescale w to unit size to stay clear of origin guards and cancellation,
    // then undo the scaling on Z.
    double wmax = 0.0;
    for (double wv : cyl.w) wmax = std::max(wmax, wv);
    if (!(wmax > 0.0)) {
      sample.skipped = true;
      sample.min_Z = std::numeric_limits<double>::quiet_NaN();
      out.push_back(sample);
      continue;
    }
    const double kappa = 1.0 / wmax;
    for (std::size_t i = 0; i < cyl.w.size(); ++i) {
      cyl.w[i] *= kappa;
      cyl.dw_ds[i] *= kappa;
      cyl.d2w_ds2[i] *= kappa;
    }

    std::vector<double> R = scalar_curvature_cyl(cyl, DerivativeMode::Stored);
    std::vector<double> lam, mu;
    ricci_eigenvalues(cyl, lam, mu, DerivativeMode::Stored);
    bool ok = true;
    for (double l : lam)
      if (!(l > 0.0)) ok = false;
    if (!ok) {
      sample.skipped = true;
      sample.min_Z = std::numeric_limits<double>::quiet_NaN();
      out.push_back(sample);
      continue;
    }

    std::vector<double> Rs, Rss;
    fd::nonuniform3(cyl.s, R, Rs, Rss);
    double zmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < cyl.s.size(); ++i) {
      double w = cyl.w[i];
      double Xs = -(n - 1) * Rs[i] / lam[i];
      double lapR =
          (Rss[i] + ((n - 2) / 2.0) * (cyl.dw_ds[i] / w) * Rs[i]) / w;
      double z = (n - 1) * lapR + Rs[i] * Xs / w +
                 lam[i] * Xs * Xs / (2.0 * (n - 1) * w) + R[i] * R[i];
      zmin = std::min(zmin, z);
    }
    sample.min_Z = zmin * kappa * kappa;
    out.push_back(sample);
  }
  return out;
}

}  // namespace yamabe
