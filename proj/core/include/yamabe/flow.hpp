#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "yamabe/profile.hpp"

namespace yamabe {

/// One snapshot of the radial fast-diffusion flow
/// du/dt = ((n-1)/m) Lap(u^m) on a fixed uniform grid.
struct FlowState {
  double t = 0.0;
  std::vector<double> grid, u_bar;
};

struct FlowTrajectory {
  SolitonParams params;
  double lambda = 1.0;
  double t_reference = 0.0;  ///< time at which u_bar == initial profile
  double T_extinction = 0.0; ///< shrinker extinction time (law parameter)
  std::vector<FlowState> states;
  std::optional<double> extinction_time;  ///< flagged when max u_bar drops
                                          ///< below 1e-10 x initial max
};

struct FlowConfig {
  int grid_points = 2000;
  double r_max = 0.0;        ///< 0 = initial profile's grid extent
  int snapshots = 6;         ///< states stored, endpoints included
  double time_tol = 1e-6;    ///< BDF local error target (relative)
  double dt_initial = 1e-5;
  double T_extinction = 0.0; ///< shrinker law parameter; 0 = t0 + 1
};

/// Method-of-lines evolution with the r = 0 Neumann limit and a far-field
/// Dirichlet value pinned to the initial profile rescaled by the class's
/// self-similar law. Time stepping: BDF1 startup then BDF2, damped Newton
/// on the nonlinear diffusion, adaptive dt from the predictor-corrector
/// error. Throws PositivityLost / DomainTooSmall.
FlowTrajectory evolve_fde(const RadialProfile& initial, double t0, double t1,
                          const FlowConfig& cfg = {});

/// Predicted self-similar state at time t for the trajectory's class:
/// shrinker (T-t)^gamma u(x (T-t)^beta), steady e^{-gamma t} u(x e^{-beta t}),
/// expander t^{-gamma} u(x t^{-beta}); u evaluated by monotone-cubic
/// interpolation of the reference profile (fitted power tail beyond its
/// grid).
double self_similar_factor(const FlowTrajectory& traj, double t,
                           double* arg_scale);

/// Max relative deviation of each snapshot from the predicted rescaled
/// profile over the interior window (outer 10% of the domain excluded).
/// Throws ParameterMismatch if the profile's parameters differ from the
/// trajectory's.
std::vector<std::pair<double, double>> self_similar_error(
    const FlowTrajectory& traj, const RadialProfile& profile);

struct HarnackSample {
  double t = 0.0;
  double min_Z = 0.0;
  bool skipped = false;  ///< Ricci positivity failed; min_Z not meaningful
};

/// Reconstructs the conformal metric of each snapshot and evaluates the
/// Harnack quantity by finite differences, reporting the minimum over the
/// monitored window (origin vicinity and outer 10% excluded). Snapshots
/// with nonpositive radial Ricci eigenvalue are skipped and flagged.
std::vector<HarnackSample> harnack_monitor(const FlowTrajectory& traj);

/// Scalar curvature of a snapshot's metric by finite differences:
/// R = -(1-m)((n-1)/m) Lap(u^m)/u.
std::vector<double> flow_scalar_curvature(const FlowState& state, int n,
                                          double m);

}  // namespace yamabe
