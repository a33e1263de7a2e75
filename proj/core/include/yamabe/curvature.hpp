#pragma once

#include <map>
#include <string>
#include <vector>

#include "yamabe/profile.hpp"

namespace yamabe {

/// Summary of one identity-residual array.
struct ResidualStat {
  double max_abs = 0.0;
  double max_rel = 0.0;
  double argmax_s = 0.0;  ///< s at which max_rel is attained
};

/// Registry entry describing one verified identity: a stable id plus a
/// human-readable anchor stating the identity itself. CLI failure messages
/// print both.
struct IdentityInfo {
  const char* id;
  const char* anchor;
};
const IdentityInfo& identity_info(const std::string& id);

/// Per-sample curvature of the warped-product metric g = w(ds^2 + g_S).
/// R is the direct second-derivative route; R_identity the first-order route
/// R = rho + beta w_s / w. lam_ric / mu_ric are the radial / spherical
/// eigenvalues of the Ricci endomorphism. residuals holds normalized
/// identity residuals (keys: hessian_radial, hessian_spherical, gradG,
/// yamabe_identity, trace_laplacian, curvature_slope, A_quadratic) plus the
/// raw diagnostic magnitude A_trace_form, which is genuinely nonzero away
/// from constant curvature and is reported without being asserted. stats
/// summarizes each array.
struct CurvatureReport {
  SolitonParams params;
  std::vector<double> s, R, R_identity, K0, K1, lam_ric, mu_ric;
  std::map<std::string, std::vector<double>> residuals;
  std::map<std::string, ResidualStat> stats;
};

/// Scalar curvature from the second-derivative (warped-product) route:
///   R = (n-1) [ (n-2)/w - w_ss/w^2 - ((n-6)/4) w_s^2/w^3 ].
/// Stored mode uses the profile's d2w_ds2; FiniteDifference recomputes w_ss
/// from w (independent oracle; >= 4 samples or GridTooCoarse). Profiles
/// without a parameter set (n == 0) are rejected with NotASolitonProfile;
/// the same holds for every curvature routine below.
std::vector<double> scalar_curvature_cyl(const CylindricalProfile& profile,
                                         DerivativeMode mode =
                                             DerivativeMode::Stored);

/// First-order identity route. Radial form R = (2 beta + rho)
/// + (1-m) beta r (log u)_r; cylindrical form R = rho + beta w_s/w.
std::vector<double> scalar_curvature_identity(const RadialProfile& profile);
std::vector<double> scalar_curvature_identity(
    const CylindricalProfile& profile);

/// Sectional curvatures of g = ds~^2 + psi^2 g_S (psi = sqrt(w),
/// ds~ = sqrt(w) ds): planes containing the radial direction
///   K0 = (w_s^2 - w w_ss) / (2 w^3)
/// and orthogonal to it
///   K1 = (4 w^2 - w_s^2) / (4 w^3).
/// Below w <= 1e-6 the smooth-origin limit K0 = K1 = (2 beta + rho)/(n(n-1))
/// replaces the 0/0-prone algebraic forms (their cancellation error grows
/// like eps/w; the limit values are accurate to O(beta w) there). The same
/// guard value switches scalar_curvature_cyl to R = 2 beta + rho.
void sectional_curvatures(const CylindricalProfile& profile,
                          std::vector<double>& K0, std::vector<double>& K1,
                          DerivativeMode mode = DerivativeMode::Stored);

/// Ricci endomorphism eigenvalues of the warped product:
/// lam_ric = (n-1) K0 (radial, multiplicity 1),
/// mu_ric = K0 + (n-2) K1 (spherical, multiplicity n-1).
/// Trace check R = lam_ric + (n-1) mu_ric is exact in exact arithmetic.
void ricci_eigenvalues(const CylindricalProfile& profile,
                       std::vector<double>& lam_ric,
                       std::vector<double>& mu_ric,
                       DerivativeMode mode = DerivativeMode::Stored);

/// Soliton identity residual suite; keys and the identities they check:
///  - hessian_radial:      f_ss - (w_s/2w) f_s = (R - rho) w
///  - hessian_spherical:   (w_s/2w) f_s = (R - rho) w
///  - gradG:               d/ds (f_s^2/w) = 2 (R - rho) f_s
///  - yamabe_identity:     (n-1) dR/ds + lam_ric f_s = 0
///  - trace_laplacian:     Lap_g f = n (R - rho)
///  - curvature_slope:     beta w_s = (R - rho) w
/// Potential derivatives use the defining relation f_s = 2 beta w,
/// f_ss = 2 beta w_s. Residuals are normalized |L-M|/(1+|L|+|M|).
/// Throws NotASolitonProfile when params are absent (n == 0).
std::map<std::string, std::vector<double>> soliton_identity_check(
    const CylindricalProfile& profile,
    DerivativeMode mode = DerivativeMode::Stored);

/// All nu_i of the curvature-pinching matrix for one eigenvalue vector:
/// nu_i = (1/(2(n-1)(n-2))) sum_{k>l, k!=i, l!=i} (lambda_k - lambda_l)^2,
/// computed by brute force over the index set. n = eigs.size().
std::vector<double> chow_nu(const std::vector<double>& eigs);

/// Quadratic form A(grad f, grad f) = nu_1 |grad f|^2 per sample for the
/// two-eigenvalue radial structure (lambda_1 = lam_ric, rest = mu_ric).
/// Identically zero for radial metrics: every eigenvalue pair entering nu_1
/// is (mu, mu).
std::vector<double> chow_A_quadratic(const std::vector<double>& lam_ric,
                                     const std::vector<double>& mu_ric, int n,
                                     const std::vector<double>& grad_f_norm2);

/// Harnack quantity with the canonical radial vector field X solving
/// grad R + (1/(n-1)) Ric(X, .) = 0 (endomorphism convention):
///   Z0 = (n-1) Lap_g R + <grad R, X>_g + Ric(X,X)/(2(n-1)) + R^2.
/// Steady: returns Z0 (t ignored; Z0 == 0 on exact steadies). Shrinker /
/// expander: requires t < 0 (extinction normalized at T = 0) and returns
/// Z0/t^2, which equals rho R / (-t) at t = -1 scaling. Flat steady: X = 0,
/// Z = 0. Throws NonpositiveRicci where lam_ric <= 0 on a curved profile.
std::vector<double> harnack_Z(const CylindricalProfile& profile, double t,
                              DerivativeMode mode = DerivativeMode::Stored);

/// Full report: curvature arrays + the identity suite + diagnostics.
CurvatureReport curvature_report(const CylindricalProfile& profile,
                                 DerivativeMode mode =
                                     DerivativeMode::Stored);

/// Summarize an identity: raw = |L - M| per sample, norm = normalized
/// residual. argmax_s is where norm peaks.
ResidualStat residual_stat(const std::vector<double>& s,
                           const std::vector<double>& raw,
                           const std::vector<double>& norm);

}  // namespace yamabe
