#pragma once

// Internal finite-difference stencils (not installed).

#include <cstddef>
#include <vector>

namespace yamabe::fd {

// Nonuniform 3-point first/second derivatives; one-sided at the ends
// (second derivative at the ends reuses the nearest interior stencil).
inline void nonuniform3(const std::vector<double>& x,
                        const std::vector<double>& f, std::vector<double>& d1,
                        std::vector<double>& d2) {
  const std::size_t n = x.size();
  d1.assign(n, 0.0);
  d2.assign(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    double h1 = x[i] - x[i - 1], h2 = x[i + 1] - x[i];
    d1[i] = (-h2 / (h1 * (h1 + h2))) * f[i - 1] +
            ((h2 - h1) / (h1 * h2)) * f[i] +
            (h1 / (h2 * (h1 + h2))) * f[i + 1];
    d2[i] = 2.0 * (f[i - 1] / (h1 * (h1 + h2)) - f[i] / (h1 * h2) +
                   f[i + 1] / (h2 * (h1 + h2)));
  }
  {
    double h1 = x[1] - x[0], h2 = x[2] - x[1];
    d1[0] = (-(2 * h1 + h2) / (h1 * (h1 + h2))) * f[0] +
            ((h1 + h2) / (h1 * h2)) * f[1] -
            (h1 / (h2 * (h1 + h2))) * f[2];
    d2[0] = d2[1];
  }
  {
    double h1 = x[n - 2] - x[n - 3], h2 = x[n - 1] - x[n - 2];
    d1[n - 1] = (h2 / (h1 * (h1 + h2))) * f[n - 3] -
                ((h1 + h2) / (h1 * h2)) * f[n - 2] +
                ((h1 + 2 * h2) / (h2 * (h1 + h2))) * f[n - 1];
    d2[n - 1] = d2[n - 2];
  }
}

// Uniform-grid 4th-order centered first/second derivatives, degrading to
// 2nd-order one-sided stencils within two samples of either end.
inline void uniform4(double h, const std::vector<double>& f,
                     std::vector<double>& d1, std::vector<double>& d2) {
  const std::size_t n = f.size();
  d1.assign(n, 0.0);
  d2.assign(n, 0.0);
  auto at = [&](std::size_t i) { return f[i]; };
  for (std::size_t i = 2; i + 2 < n; ++i) {
    d1[i] = (at(i - 2) - 8 * at(i - 1) + 8 * at(i + 1) - at(i + 2)) /
            (12.0 * h);
    d2[i] = (-at(i - 2) + 16 * at(i - 1) - 30 * at(i) + 16 * at(i + 1) -
             at(i + 2)) /
            (12.0 * h * h);
  }
  if (n >= 4) {
    for (std::size_t i : {std::size_t{0}, std::size_t{1}}) {
      d1[i] = (-3 * at(i) + 4 * at(i + 1) - at(i + 2)) / (2.0 * h);
      d2[i] = (2 * at(i) - 5 * at(i + 1) + 4 * at(i + 2) - at(i + 3)) /
              (h * h);
    }
    for (std::size_t i : {n - 2, n - 1}) {
      d1[i] = (3 * at(i) - 4 * at(i - 1) + at(i - 2)) / (2.0 * h);
      d2[i] = (2 * at(i) - 5 * at(i - 1) + 4 * at(i - 2) - at(i - 3)) /
              (h * h);
    }
  }
}

}  // namespace yamabe::fd
