#pragma once

#include <functional>
#include <vector>

namespace yamabe {

/// Embedded Dormand-Prince 5(4) pair with proportional step control.
///
/// Accepted steps are reported through a callback; requested checkpoint
/// abscissas are hit exactly (steps are clamped), which makes run-vs-run
/// comparisons possible without interpolation. Deterministic: identical
/// inputs produce bitwise-identical step sequences.
struct OdeOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double max_step = 0.0;      ///< 0 = unlimited
  double initial_step = 0.0;  ///< 0 = automatic
  std::vector<double> checkpoints;  ///< strictly increasing, inside (x0, x1]
};

struct OdeStatus {
  enum Kind {
    Done,     ///< reached x1
    Stopped,  ///< step size underflowed at x (guard kept rejecting or the
              ///< problem became unresolvable); caller decides the error
  } kind = Done;
  double x = 0.0;
};

using OdeRhs = std::function<void(double x, const double* y, double* dydx)>;
/// Vets trial states. Returning false rejects the step; the integrator
/// retries with a smaller one. Rejected states are never emitted.
using OdeGuard = std::function<bool(double x, const double* y)>;
using OdeSink = std::function<void(double x, const double* y)>;

/// Integrates y' = f(x, y) from (x0, y0) to x1 (x1 > x0).
/// The sink receives every accepted node including the initial one.
/// Nonfinite stage values or error estimates are treated like guard
/// rejections (retry with a smaller step).
OdeStatus integrate_ode(const OdeRhs& rhs, std::vector<double> y0, double x0,
                        double x1, const OdeOptions& opt, const OdeSink& sink,
                        const OdeGuard& guard = nullptr);

/// Dense row-major Jacobian J[i*dim + j] = d f_i / d y_j at (x, y).
using OdeJac = std::function<void(double x, const double* y, double* J)>;

/// Stiff companion to integrate_ode: three-stage L-stable SDIRK of order 3
/// with Newton stage solves (analytic Jacobian) and step-doubling error
/// control. Same sink/guard/checkpoint semantics and the same determinism
/// guarantee. Intended for systems with strongly contracting modes where the
/// explicit pair would need stability-limited steps.
OdeStatus integrate_ode_stiff(const OdeRhs& rhs, const OdeJac& jac,
                              std::vector<double> y0, double x0, double x1,
                              const OdeOptions& opt, const OdeSink& sink,
                              const OdeGuard& guard = nullptr);

}  // namespace yamabe
