#pragma once

#include <vector>

namespace yamabe {

/// Monotone cubic Hermite interpolant (Fritsch-Carlson slope limiting).
/// Preserves monotonicity of the data on every subinterval; C1 overall.
class Pchip {
 public:
  Pchip() = default;
  /// x strictly increasing, x.size() == y.size() >= 2.
  Pchip(std::vector<double> x, std::vector<double> y);

  double operator()(double xq) const;
  double derivative(double xq) const;

  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }

 private:
  std::vector<double> x_, y_, d_;  // nodes, values, node slopes
  std::size_t find_interval(double xq) const;
};

/// Least-squares affine fit y ~ a + b x; returns {a, b}.
struct AffineFit {
  double a = 0.0;
  double b = 0.0;
};
AffineFit fit_affine(const std::vector<double>& x,
                     const std::vector<double>& y);

}  // namespace yamabe
