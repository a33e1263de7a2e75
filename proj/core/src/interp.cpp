#include "yamabe/interp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace yamabe {

Pchip::Pchip(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n)
    throw std::invalid_argument("Pchip: need >= 2 matching samples");
  for (std::size_t i = 1; i < n; ++i)
    if (!(x_[i] > x_[i - 1]))
      throw std::invalid_argument("Pchip: abscissas must strictly increase");

  d_.assign(n, 0.0);
  if (n == 2) {
    double sl = (y_[1] - y_[0]) / (x_[1] - x_[0]);
    d_[0] = d_[1] = sl;
    return;
  }

  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    delta[i] = (y_[i + 1] - y_[i]) / h[i];
  }

  // Interior slopes: weighted harmonic mean, zero across local extrema.
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] == 0.0 || delta[i] == 0.0 ||
        (delta[i - 1] > 0.0) != (delta[i] > 0.0)) {
      d_[i] = 0.0;
    } else {
      double w1 = 2.0 * h[i] + h[i - 1];
      double w2 = h[i] + 2.0 * h[i - 1];
      d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
  }

  // One-sided endpoint slopes with the standard shape-preserving clamp.
  auto end_slope = [](double h0, double h1, double d0, double d1) {
    double d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (d * d0 <= 0.0) return 0.0;
    if (d0 * d1 < 0.0 && std::fabs(d) > 3.0 * std::fabs(d0))
      return 3.0 * d0;
    return d;
  };
  d_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
  d_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
}

std::size_t Pchip::find_interval(double xq) const {
  if (xq <= x_.front()) return 0;
  if (xq >= x_.back()) return x_.size() - 2;
  auto it = std::upper_bound(x_.begin(), x_.end(), xq);
  return static_cast<std::size_t>(it - x_.begin()) - 1;
}

double Pchip::operator()(double xq) const {
  std::size_t i = find_interval(xq);
  double h = x_[i + 1] - x_[i];
  double t = (xq - x_[i]) / h;
  double t2 = t * t, t3 = t2 * t;
  double h00 = 2 * t3 - 3 * t2 + 1;
  double h10 = t3 - 2 * t2 + t;
  double h01 = -2 * t3 + 3 * t2;
  double h11 = t3 - t2;
  return h00 * y_[i] + h10 * h * d_[i] + h01 * y_[i + 1] + h11 * h * d_[i + 1];
}

double Pchip::derivative(double xq) const {
  std::size_t i = find_interval(xq);
  double h = x_[i + 1] - x_[i];
  double t = (xq - x_[i]) / h;
  double t2 = t * t;
  double g00 = (6 * t2 - 6 * t) / h;
  double g10 = 3 * t2 - 4 * t + 1;
  double g01 = (-6 * t2 + 6 * t) / h;
  double g11 = 3 * t2 - 2 * t;
  return g00 * y_[i] + g10 * d_[i] + g01 * y_[i + 1] + g11 * d_[i + 1];
}

AffineFit fit_affine(const std::vector<double>& x,
                     const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_affine: need >= 2 matching samples");
  double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  AffineFit f;
  double det = n * sxx - sx * sx;
  f.b = (n * sxy - sx * sy) / det;
  f.a = (sy - f.b * sx) / n;
  return f;
}

}  // namespace yamabe
