#include "yamabe/curvature.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "fd.hpp"

namespace yamabe {

namespace {

// Below this w, the algebraic curvature forms are 0/0 limits whose
// cancellation error grows like eps/w, while the smooth-origin limit values
// are accurate to O(beta w); every formula switches to its origin limit here
// (R -> 2 beta + rho, K -> (2 beta + rho)/(n(n-1))), which keeps the trace
// identity exact on the guarded nodes and the algebraic branch comfortably
// inside eps/kOriginW ~ 1e-9 elsewhere.
constexpr double kOriginW = 1e-6;

void require_soliton(const CylindricalProfile& prof) {
  if (prof.params.n < 3)
    throw NotASolitonProfile("profile carries no soliton parameter set");
}

void require_samples(const CylindricalProfile& prof, std::size_t k) {
  if (prof.s.size() < k)
    throw GridTooCoarse("need at least " + std::to_string(k) + " samples");
}

// w_ss per sample: stored values, or an independent finite-difference pass.
std::vector<double> second_derivative(const CylindricalProfile& prof,
                                      DerivativeMode mode) {
  if (mode == DerivativeMode::Stored) return prof.d2w_ds2;
  require_samples(prof, 4);
  std::vector<double> d1, d2;
  fd::nonuniform3(prof.s, prof.w, d1, d2);
  return d2;
}

std::vector<double> first_derivative(const CylindricalProfile& prof,
                                     DerivativeMode mode) {
  if (mode == DerivativeMode::Stored) return prof.dw_ds;
  require_samples(prof, 4);
  std::vector<double> d1, d2;
  fd::nonuniform3(prof.s, prof.w, d1, d2);
  return d1;
}

double norm_residual(double L, double M) {
  return std::abs(L - M) / (1.0 + std::abs(L) + std::abs(M));
}

}  // namespace

std::vector<double> scalar_curvature_cyl(const CylindricalProfile& prof,
                                         DerivativeMode mode) {
  require_soliton(prof);
  require_samples(prof, 2);
  const SolitonParams& P = prof.params;
  const int n = P.n;
  std::vector<double> ws = first_derivative(prof, mode);
  std::vector<double> wss = second_derivative(prof, mode);
  std::vector<double> R(prof.s.size());
  for (std::size_t i = 0; i < R.size(); ++i) {
    double w = prof.w[i];
    if (w <= kOriginW) {
      R[i] = 2.0 * P.beta + P.rho;
      continue;
    }
    R[i] = (n - 1) * ((n - 2) / w - wss[i] / (w * w) -
                      ((n - 6) / 4.0) * ws[i] * ws[i] / (w * w * w));
  }
  return R;
}

std::vector<double> scalar_curvature_identity(const RadialProfile& prof) {
  const SolitonParams& P = prof.params;
  double om = P.one_minus_m();
  std::vector<double> R(prof.r.size());
  for (std::size_t i = 0; i < R.size(); ++i)
    R[i] = (2.0 * P.beta + P.rho) +
           om * P.beta * prof.r[i] * prof.du_dr[i] / prof.u[i];
  return R;
}

std::vector<double> scalar_curvature_identity(const CylindricalProfile& prof) {
  const SolitonParams& P = prof.params;
  std::vector<double> R(prof.s.size());
  for (std::size_t i = 0; i < R.size(); ++i)
    R[i] = P.rho + P.beta * prof.dw_ds[i] / prof.w[i];
  return R;
}

void sectional_curvatures(const CylindricalProfile& prof,
                          std::vector<double>& K0, std::vector<double>& K1,
                          DerivativeMode mode) {
  require_soliton(prof);
  require_samples(prof, 2);
  const SolitonParams& P = prof.params;
  std::vector<double> ws = first_derivative(prof, mode);
  std::vector<double> wss = second_derivative(prof, mode);
  double origin_limit = (2.0 * P.beta + P.rho) / (P.n * (P.n - 1));
  K0.assign(prof.s.size(), 0.0);
  K1.assign(prof.s.size(), 0.0);
  for (std::size_t i = 0; i < prof.s.size(); ++i) {
    double w = prof.w[i];
    if (w <= kOriginW) {
      K0[i] = K1[i] = origin_limit;
      continue;
    }
    K0[i] = (ws[i] * ws[i] - w * wss[i]) / (2.0 * w * w * w);
    K1[i] = (2.0 * w - ws[i]) * (2.0 * w + ws[i]) / (4.0 * w * w * w);
  }
}

void ricci_eigenvalues(const CylindricalProfile& prof,
                       std::vector<double>& lam_ric,
                       std::vector<double>& mu_ric, DerivativeMode mode) {
  std::vector<double> K0, K1;
  sectional_curvatures(prof, K0, K1, mode);
  const int n = prof.params.n;
  lam_ric.assign(K0.size(), 0.0);
  mu_ric.assign(K0.size(), 0.0);
  for (std::size_t i = 0; i < K0.size(); ++i) {
    lam_ric[i] = (n - 1) * K0[i];
    mu_ric[i] = K0[i] + (n - 2) * K1[i];
  }
}

std::vector<double> chow_nu(const std::vector<double>& eigs) {
  const std::size_t n = eigs.size();
  std::vector<double> nu(n, 0.0);
  if (n < 3) return nu;
  double denom = 2.0 * (n - 1) * (n - 2);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
      if (k == i) continue;
      for (std::size_t l = 0; l < k; ++l) {
        if (l == i) continue;
        double d = eigs[k] - eigs[l];
        acc += d * d;
      }
    }
    nu[i] = acc / denom;
  }
  return nu;
}

std::vector<double> chow_A_quadratic(const std::vector<double>& lam_ric,
                                     const std::vector<double>& mu_ric, int n,
                                     const std::vector<double>& grad_f_norm2) {
  if (lam_ric.size() != mu_ric.size() ||
      lam_ric.size() != grad_f_norm2.size())
    throw std::invalid_argument("chow_A_quadratic: arrays must align");
  std::vector<double> out(lam_ric.size());
  std::vector<double> eigs(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < out.size(); ++i) {
    eigs[0] = lam_ric[i];
    for (int k = 1; k < n; ++k) eigs[static_cast<std::size_t>(k)] = mu_ric[i];
    out[i] = chow_nu(eigs)[0] * grad_f_norm2[i];
  }
  return out;
}

namespace {

struct Pair {
  std::vector<double> raw, norm;
};

// Shared machinery: curvature arrays plus every identity with raw and
// normalized residuals.
struct Suite {
  std::vector<double> R, Rid, K0, K1, lam, mu;
  std::map<std::string, Pair> identities;
};

Suite build_suite(const CylindricalProfile& prof, DerivativeMode mode) {
  require_soliton(prof);
  require_samples(prof, 2);
  const SolitonParams& P = prof.params;
  const std::size_t N = prof.s.size();
  const int n = P.n;

  Suite S;
  S.R = scalar_curvature_cyl(prof, mode);
  S.Rid = scalar_curvature_identity(prof);
  sectional_curvatures(prof, S.K0, S.K1, mode);
  ricci_eigenvalues(prof, S.lam, S.mu, mode);

  std::vector<double> ws = first_derivative(prof, mode);

  auto add = [&](const char* key, auto&& L, auto&& M) {
    Pair pr;
    pr.raw.resize(N);
    pr.norm.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
      double l = L(i), m = M(i);
      pr.raw[i] = std::abs(l - m);
      pr.norm[i] = norm_residual(l, m);
    }
    S.identities.emplace(key, std::move(pr));
  };

  // Potential derivatives from the defining slope relation.
  auto f_s = [&](std::size_t i) { return 2.0 * P.beta * prof.w[i]; };
  auto f_ss = [&](std::size_t i) { return 2.0 * P.beta * ws[i]; };
  auto Rm = [&](std::size_t i) { return S.R[i] - P.rho; };

  add("hessian_radial",
      [&](std::size_t i) {
        return f_ss(i) - (ws[i] / (2.0 * prof.w[i])) * f_s(i);
      },
      [&](std::size_t i) { return Rm(i) * prof.w[i]; });

  add("hessian_spherical",
      [&](std::size_t i) { return (ws[i] / (2.0 * prof.w[i])) * f_s(i); },
      [&](std::size_t i) { return Rm(i) * prof.w[i]; });

  add("gradG",
      [&](std::size_t i) {
        double w = prof.w[i];
        return 2.0 * f_s(i) * f_ss(i) / w - f_s(i) * f_s(i) * ws[i] / (w * w);
      },
      [&](std::size_t i) { return 2.0 * Rm(i) * f_s(i); });

  // dR/ds along the identity route, exact given (w, w_s, w_ss).
  std::vector<double> wss = second_derivative(prof, mode);
  std::vector<double> Rs(N);
  for (std::size_t i = 0; i < N; ++i) {
    double w = prof.w[i];
    Rs[i] = P.beta * (wss[i] / w - ws[i] * ws[i] / (w * w));
  }

  add("yamabe_identity",
      [&](std::size_t i) { return (n - 1) * Rs[i]; },
      [&](std::size_t i) { return -S.lam[i] * f_s(i); });

  add("trace_laplacian",
      [&](std::size_t i) {
        double w = prof.w[i];
        return (f_ss(i) + ((n - 2) / 2.0) * (ws[i] / w) * f_s(i)) / w;
      },
      [&](std::size_t i) { return n * Rm(i); });

  add("curvature_slope",
      [&](std::size_t i) { return P.beta * ws[i]; },
      [&](std::size_t i) { return Rm(i) * prof.w[i]; });

  std::vector<double> grad2(N);
  for (std::size_t i = 0; i < N; ++i)
    grad2[i] = f_s(i) * f_s(i) / prof.w[i];
  std::vector<double> Aq = chow_A_quadratic(S.lam, S.mu, n, grad2);
  add("A_quadratic", [&](std::size_t i) { return Aq[i]; },
      [&](std::size_t) { return 0.0; });

  // Diagnostic only: trace(A)(R - rho), not an identity away from constant
  // curvature. Stored raw in both slots.
  {
    Pair pr;
    pr.raw.resize(N);
    pr.norm.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
      double d = S.lam[i] - S.mu[i];
      double v = Rm(i) * d * d / 2.0;
      pr.raw[i] = v;
      pr.norm[i] = v;
    }
    S.identities.emplace("A_trace_form", std::move(pr));
  }

  return S;
}

}  // namespace

std::map<std::string, std::vector<double>> soliton_identity_check(
    const CylindricalProfile& prof, DerivativeMode mode) {
  Suite S = build_suite(prof, mode);
  std::map<std::string, std::vector<double>> out;
  for (const char* key :
       {"hessian_radial", "hessian_spherical", "gradG", "yamabe_identity",
        "trace_laplacian", "curvature_slope"})
    out.emplace(key, std::move(S.identities.at(key).norm));
  return out;
}

std::vector<double> harnack_Z(const CylindricalProfile& prof, double t,
                              DerivativeMode mode) {
  require_soliton(prof);
  require_samples(prof, 4);
  const SolitonParams& P = prof.params;
  const std::size_t N = prof.s.size();
  const int n = P.n;

  if (P.flat) return std::vector<double>(N, 0.0);
  if (P.cls != SolitonClass::Steady && !(t < 0.0))
    throw Error(ErrorKind::InvalidConfig,
                "harnack_Z needs t < 0 for shrinkers/expanders "
                "(extinction normalized at t = 0)");

  std::vector<double> R = scalar_curvature_cyl(prof, mode);
  std::vector<double> lam, mu;
  ricci_eigenvalues(prof, lam, mu, mode);

  std::vector<double> ws = first_derivative(prof, mode);
  std::vector<double> wss = second_derivative(prof, mode);

  // R_s and R_ss: identity route plus the ODE jacobian for w_sss in Stored
  // mode; plain finite differences of R otherwise.
  std::vector<double> Rs(N), Rss(N);
  if (mode == DerivativeMode::Stored) {
    double c1 = (6.0 - n) / 4.0;
    double c2 = P.theta / P.m;
    double c3 = n - 2.0;
    double c4 = static_cast<double>(P.rho) / (n - 1);
    for (std::size_t i = 0; i < N; ++i) {
      double w = prof.w[i], v = ws[i], a = wss[i];
      Rs[i] = P.beta * (a / w - v * v / (w * w));
      double d_dw = -c1 * v * v / (w * w) - c2 * v + c3 - 2.0 * c4 * w;
      double d_dws = 2.0 * c1 * v / w - c2 * w;
      double wsss = d_dw * v + d_dws * a;
      Rss[i] = P.beta *
               (wsss / w - 3.0 * v * a / (w * w) + 2.0 * v * v * v / (w * w * w));
    }
  } else {
    fd::nonuniform3(prof.s, R, Rs, Rss);
  }

  std::vector<double> Z(N);
  for (std::size_t i = 0; i < N; ++i) {
    if (!(lam[i] > 0.0)) throw NonpositiveRicci(prof.s[i]);
    double w = prof.w[i];
    double Xs = -(n - 1) * Rs[i] / lam[i];
    double lapR = (Rss[i] + ((n - 2) / 2.0) * (ws[i] / w) * Rs[i]) / w;
    double z = (n - 1) * lapR + Rs[i] * Xs / w +
               lam[i] * Xs * Xs / (2.0 * (n - 1) * w) + R[i] * R[i];
    Z[i] = P.cls == SolitonClass::Steady ? z : z / (t * t);
  }
  return Z;
}

CurvatureReport curvature_report(const CylindricalProfile& prof,
                                 DerivativeMode mode) {
  Suite S = build_suite(prof, mode);
  CurvatureReport rep;
  rep.params = prof.params;
  rep.s = prof.s;
  rep.R = std::move(S.R);
  rep.R_identity = std::move(S.Rid);
  rep.K0 = std::move(S.K0);
  rep.K1 = std::move(S.K1);
  rep.lam_ric = std::move(S.lam);
  rep.mu_ric = std::move(S.mu);
  for (auto& [key, pr] : S.identities) {
    rep.stats.emplace(key, residual_stat(rep.s, pr.raw, pr.norm));
    rep.residuals.emplace(key, std::move(pr.norm));
  }
  return rep;
}

ResidualStat residual_stat(const std::vector<double>& s,
                           const std::vector<double>& raw,
                           const std::vector<double>& norm) {
  ResidualStat st;
  if (s.empty()) return st;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < norm.size(); ++i) {
    if (std::abs(raw[i]) > st.max_abs) st.max_abs = std::abs(raw[i]);
    if (std::abs(norm[i]) > std::abs(st.max_rel)) {
      st.max_rel = std::abs(norm[i]);
      arg = i;
    }
  }
  st.argmax_s = s[arg];
  return st;
}

namespace {

struct Registry {
  std::map<std::string, IdentityInfo> entries;
  Registry() {
    auto put = [&](const char* id, const char* anchor) {
      entries.emplace(id, IdentityInfo{id, anchor});
    };
    put("hessian_radial", "f_ss - (w_s/(2w)) f_s = (R - rho) w");
    put("hessian_spherical", "(w_s/(2w)) f_s = (R - rho) w");
    put("gradG", "d/ds(f_s^2/w) = 2 (R - rho) f_s");
    put("yamabe_identity", "(n-1) dR/ds = -lam_ric f_s");
    put("trace_laplacian", "Lap_g f = n (R - rho)");
    put("curvature_slope", "beta w_s = (R - rho) w");
    put("A_quadratic", "nu_1 |grad f|^2 = 0 on radial metrics");
    put("A_trace_form",
        "diagnostic magnitude (R - rho) (lam_ric - mu_ric)^2 / 2");
    put("two_route_R",
        "second-derivative curvature equals rho + beta w_s / w");
    put("trace_consistency", "R = lam_ric + (n-1) mu_ric");
    put("ode_residual",
        "w w_ss + ((n-6)/4) w_s^2 + (theta/m) w^2 w_s + (rho/(n-1)) w^3 "
        "= (n-2) w^2");
    put("harnack_steady", "Z = 0 on steady profiles");
    put("harnack_scaled", "Z = rho R / t^2 on shrinker/expander profiles");
  }
};

}  // namespace

const IdentityInfo& identity_info(const std::string& id) {
  static const Registry reg;
  auto it = reg.entries.find(id);
  if (it == reg.entries.end())
    throw std::invalid_argument("unknown identity id: " + id);
  return it->second;
}

}  // namespace yamabe
