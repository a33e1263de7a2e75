#pragma once

#include <cmath>
#include <limits>
#include <vector>

namespace testutil {

/// Closed-form sample grid: r = 0 plus exp(s) for s in [s0, s1] step h.
inline std::vector<double> log_grid(double s0, double s1, double h) {
  std::vector<double> g = {0.0};
  for (double s = s0; s <= s1 + 1e-12; s += h) g.push_back(std::exp(s));
  return g;
}

/// Value of y at the grid node x == c (checkpoints are hit exactly).
inline double at_node(const std::vector<double>& x,
                      const std::vector<double>& y, double c) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (std::fabs(x[i] - c) < 1e-12) return y[i];
  return std::numeric_limits<double>::quiet_NaN();
}

inline double norm_rel(double a, double b) {
  return std::fabs(a - b) / (1.0 + std::fabs(a) + std::fabs(b));
}

}  // namespace testutil
