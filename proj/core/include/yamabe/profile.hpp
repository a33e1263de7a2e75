#pragma once

#include <vector>

#include "yamabe/errors.hpp"
#include "yamabe/interp.hpp"
#include "yamabe/params.hpp"

namespace yamabe {

enum class ProfileSource { ClosedForm, Integrated };

/// Which second-derivative path an operation uses. Stored derivatives are
/// analytic for closed forms and ODE-recovered for integrated profiles;
/// the finite-difference path exists as an independent oracle.
enum class DerivativeMode { Stored, FiniteDifference };

/// Sampled radial conformal factor u(r) on a nonuniform grid with r_0 = 0.
/// u > 0 everywhere by construction; du_dr[0] == 0 (smooth origin).
/// d2u_dr2 is analytic (ClosedForm) or recovered from the profile ODE
/// (Integrated) at construction time.
struct RadialProfile {
  SolitonParams params;
  double lambda = 1.0;  ///< origin value u(0)
  std::vector<double> r, u, du_dr, d2u_dr2;
  ProfileSource source = ProfileSource::Integrated;
};

/// Cylindrical picture: s = log r, w(s) = r^2 u^{1-m}, metric
/// g = w (ds^2 + g_{S^{n-1}}). f is the soliton potential integrated from
/// f_s = 2 beta w and anchored f(s_min) = 0.
struct CylindricalProfile {
  SolitonParams params;
  double lambda = 1.0;
  std::vector<double> s, w, dw_ds, d2w_ds2, f;
  ProfileSource source = ProfileSource::Integrated;
};

enum class RateKind {
  SlowDecayCigar,      ///< shrinker tail u ~ A r^{-2/(1-m)}
  LogCigar,            ///< steady tail u ~ (log r / r^2)^{1/(1-m)}
  ExpanderPower,       ///< expander, gamma < 0: u ~ A r^{-gamma/beta}
  ExpanderDecreasing,  ///< expander, gamma > 0: u nonincreasing power tail
  Flat,                ///< gamma == 0 (flat steady / constant-tail expander)
};
const char* rate_kind_name(RateKind k);

/// Tail classification over the last sampled decade.
/// fitted_exponent is the least-squares slope of log u against log r;
/// fitted_amplitude is the mean of the class's normalized tail quantity
/// (shrinker: r^{2/(1-m)} u; steady: w/s; expander: u r^{gamma/beta};
/// flat: u). drift = (max-min)/max of that quantity over the decade.
struct AsymptoticReport {
  SolitonClass cls = SolitonClass::Steady;
  RateKind rate_kind = RateKind::Flat;
  double fitted_exponent = 0.0;
  double fitted_amplitude = 0.0;
  double drift = 0.0;
};

/// Per-sample residual of the profile equation
///   ((n-1)/m)[(u^m)'' + ((n-1)/r)(u^m)'] + beta r u' + gamma u,
/// normalized by |gamma| u (flat steady: raw residual is identically 0).
/// At r = 0 the radial Laplacian limit n (u^m)''(0) is used.
/// FiniteDifference mode recomputes u'' from u by nonuniform 3-point
/// stencils and throws GridTooCoarse for fewer than 4 samples.
std::vector<double> elliptic_residual(const RadialProfile& profile,
                                      DerivativeMode mode =
                                          DerivativeMode::Stored);

/// Second-order Taylor start at the (regular-singular) origin:
/// u = lambda + a2 r^2 with a2 = -gamma lambda^{2-m} / (2n(n-1)), forced by
/// the equation at r = 0.
ProfilePoint origin_series(const SolitonParams& params, double lambda,
                           double r);

struct ShootOptions {
  double series_radius = 0.0;  ///< 0 = 1e-3 * max(1, lambda^{-(1-m)/2})
  double max_step = 0.0;       ///< 0 = unlimited (euclidean)
  double u_floor = 1e-300;
  double overflow_guard = 1e280;
  std::vector<double> checkpoints;  ///< extra grid nodes hit exactly
};

/// Integrates the radial profile equation from the origin series to r_max
/// with the embedded RK pair (per-step local error <= tol).
/// Throws ProfileVanished / ProfileBlewUp / StepSizeUnderflow.
RadialProfile integrate_euclidean(const SolitonParams& params, double lambda,
                                  double r_max, double tol,
                                  const ShootOptions& opt = {});

/// Change of variables s = log r, w = r^2 u^{1-m} applied to the samples
/// with r > 0 (throws EmptyPositiveRadius if fewer than 2). First and
/// second s-derivatives come from the chain rule on the stored radial
/// derivatives; f by trapezoid from f_s = 2 beta w.
CylindricalProfile to_cylindrical(const RadialProfile& profile);

/// Right-hand side of the autonomous cylindrical profile ODE
///   w_ss = ((6-n)/4) w_s^2/w - (theta/m) w w_s + (n-2) w - (rho/(n-1)) w^2.
/// Throws NonpositiveW.
double cylindrical_rhs(const SolitonParams& params, double w, double w_s);

struct CylinderOptions {
  double max_step = 0.1;  ///< resolves the logarithmic transition region
  double w_floor = 1e-300;
  double overflow_guard = 1e280;
  std::vector<double> checkpoints;
};

/// Integrates the cylindrical ODE from the s -> -infinity asymptote
/// w = lambda^{1-m} e^{2s}, w_s = 2w (the image of u(0) = lambda).
/// Requires lambda^{1-m} e^{2 s_min} < 1e-8, else BadAsymptoticStart.
/// f is integrated alongside via f_s = 2 beta w, anchored f(s_min) = 0.
CylindricalProfile integrate_cylindrical(const SolitonParams& params,
                                         double lambda, double s_min,
                                         double s_max, double tol,
                                         const CylinderOptions& opt = {});

/// Tail classification; requires the grid to reach r >= 1e3 (radial) or
/// s >= 7 (cylindrical), else GridTooShort. |gamma| < 1e-12 is treated as
/// gamma == 0.
AsymptoticReport asymptotic_classify(const RadialProfile& profile);
AsymptoticReport asymptotic_classify(const CylindricalProfile& profile);

/// Closed-form profiles sampled on an explicit grid (analytic derivatives).
RadialProfile sample_barenblatt(int n, double lambda,
                                const std::vector<double>& grid);
RadialProfile sample_sphere(int n, double lambda,
                            const std::vector<double>& grid);
RadialProfile sample_flat(int n, double lambda,
                          const std::vector<double>& grid);

/// Uniform grid helper [0, r_max] with points samples.
std::vector<double> uniform_grid(double r_max, std::size_t points);

}  // namespace yamabe
