#include "yamabe/ode.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace yamabe {

namespace {

// Dormand-Prince 5(4) tableau (FSAL).
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// 5th-order minus embedded 4th-order weights (error estimator).
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

bool all_finite(const double* v, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (!std::isfinite(v[i])) return false;
  return true;
}

}  // namespace

namespace {

// Gaussian elimination with partial pivoting; A is row-major dim x dim and
// both A and b are clobbered. Returns false on a (numerically) singular A.
bool solve_dense(std::vector<double>& A, std::vector<double>& b,
                 std::size_t dim) {
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < dim; ++r)
      if (std::fabs(A[r * dim + col]) > std::fabs(A[piv * dim + col])) piv = r;
    if (A[piv * dim + col] == 0.0) return false;
    if (piv != col) {
      for (std::size_t c = 0; c < dim; ++c)
        std::swap(A[piv * dim + c], A[col * dim + c]);
      std::swap(b[piv], b[col]);
    }
    double d = A[col * dim + col];
    for (std::size_t r = col + 1; r < dim; ++r) {
      double f = A[r * dim + col] / d;
      if (f == 0.0) continue;
      for (std::size_t c = col; c < dim; ++c) A[r * dim + c] -= f * A[col * dim + c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t r = dim; r-- > 0;) {
    double acc = b[r];
    for (std::size_t c = r + 1; c < dim; ++c) acc -= A[r * dim + c] * b[c];
    b[r] = acc / A[r * dim + r];
  }
  return true;
}

}  // namespace

OdeStatus integrate_ode(const OdeRhs& rhs, std::vector<double> y0, double x0,
                        double x1, const OdeOptions& opt, const OdeSink& sink,
                        const OdeGuard& guard) {
  const std::size_t dim = y0.size();
  std::vector<double> y = std::move(y0);
  std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim),
      k7(dim), ytmp(dim), ynew(dim), yerr(dim);

  double x = x0;
  sink(x, y.data());
  rhs(x, y.data(), k1.data());

  std::size_t next_cp = 0;
  const auto& cps = opt.checkpoints;

  const double hmin_floor = 1e-14;

  // Startup step from scaled solution/slope norms; clamped above the
  // underflow floor so a cautious guess cannot abort before the first
  // attempt (error control shrinks it again if it is genuinely too big).
  double h_nat = opt.initial_step;
  if (h_nat <= 0.0) {
    double d0 = 0.0, d1 = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      double sc = opt.atol + opt.rtol * std::fabs(y[i]);
      double a = y[i] / sc, b = k1[i] / sc;
      d0 += a * a;
      d1 += b * b;
    }
    h_nat = (d1 > 0.0) ? 0.01 * std::sqrt(d0 / d1) : 1e-4 * (x1 - x0);
    h_nat = std::min(h_nat, 1e-2 * (x1 - x0));
    h_nat = std::max(h_nat, 16.0 * hmin_floor * std::max(1.0, std::fabs(x0)));
  }

  while (x < x1) {
    if (opt.max_step > 0.0) h_nat = std::min(h_nat, opt.max_step);
    while (next_cp < cps.size() && cps[next_cp] <= x) ++next_cp;
    double target = x1;
    if (next_cp < cps.size()) target = std::min(target, cps[next_cp]);

    double h = h_nat;
    bool clipped = false;
    if (x + h >= target) {
      h = target - x;
      clipped = true;
    }
    double hmin = hmin_floor * std::max(1.0, std::fabs(x));
    if (h_nat < hmin) return {OdeStatus::Stopped, x};

    for (std::size_t i = 0; i < dim; ++i)
      ytmp[i] = y[i] + h * a21 * k1[i];
    rhs(x + c2 * h, ytmp.data(), k2.data());
    for (std::size_t i = 0; i < dim; ++i)
      ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    rhs(x + c3 * h, ytmp.data(), k3.data());
    for (std::size_t i = 0; i < dim; ++i)
      ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    rhs(x + c4 * h, ytmp.data(), k4.data());
    for (std::size_t i = 0; i < dim; ++i)
      ytmp[i] = y[i] +
                h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    rhs(x + c5 * h, ytmp.data(), k5.data());
    for (std::size_t i = 0; i < dim; ++i)
      ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                            a64 * k4[i] + a65 * k5[i]);
    rhs(x + h, ytmp.data(), k6.data());
    for (std::size_t i = 0; i < dim; ++i)
      ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] +
                            b5 * k5[i] + b6 * k6[i]);
    rhs(x + h, ynew.data(), k7.data());
    for (std::size_t i = 0; i < dim; ++i)
      yerr[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                     e6 * k6[i] + e7 * k7[i]);

    bool finite = all_finite(ynew.data(), dim) && all_finite(yerr.data(), dim);
    double err = 2.0;
    if (finite) {
      double acc = 0.0;
      for (std::size_t i = 0; i < dim; ++i) {
        double sc = opt.atol +
                    opt.rtol * std::max(std::fabs(y[i]), std::fabs(ynew[i]));
        double e = yerr[i] / sc;
        acc += e * e;
      }
      err = std::sqrt(acc / static_cast<double>(dim));
    }

    if (finite && err <= 1.0 && (!guard || guard(x + h, ynew.data()))) {
      x = clipped ? target : x + h;
      y.swap(ynew);
      k1.swap(k7);  // FSAL
      sink(x, y.data());
      double fac = (err > 0.0) ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0)
                               : 5.0;
      if (!clipped) h_nat = h * fac;
      else h_nat = std::max(h_nat, h * fac);
    } else {
      double fac = (finite && err > 1.0)
                       ? std::max(0.2, 0.9 * std::pow(err, -0.2))
                       : 0.3;
      h_nat = h * fac;
    }
  }
  return {OdeStatus::Done, x};
}

namespace {

// Three-stage stiffly accurate SDIRK (Alexander): diagonal gamma is the root
// of g^3 - 3g^2 + 3g/2 - 1/6 in (0, 1), which makes the scheme third order
// and L-stable. Weights follow from the order conditions, so they are
// computed from gamma rather than transcribed.
constexpr double kDirkGamma = 0.4358665215084589994;

struct DirkTableau {
  double c2, a21, b1, b2;
  DirkTableau() {
    double g = kDirkGamma;
    c2 = (1.0 + g) / 2.0;
    a21 = (1.0 - g) / 2.0;
    b2 = (1.0 - 4.0 * g + 2.0 * g * g) / (1.0 - g);
    b1 = 1.0 - g - b2;
  }
};

// One Newton-solved implicit stage: finds Y with
//   Y = base + h*gamma*f(xc, Y),
// writing f(xc, Y) into k. Scales convergence by sc (same weights as the
// step-error test). Returns false if Newton stalls or the matrix degenerates.
bool dirk_stage(const OdeRhs& rhs, const OdeJac& jac, double xc, double hg,
                const std::vector<double>& base, const std::vector<double>& sc,
                std::vector<double>& Y, std::vector<double>& k,
                std::vector<double>& A, std::vector<double>& rhsbuf,
                std::vector<double>& J) {
  const std::size_t dim = base.size();
  Y = base;
  for (int it = 0; it < 12; ++it) {
    rhs(xc, Y.data(), k.data());
    jac(xc, Y.data(), J.data());
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j)
        A[i * dim + j] = -hg * J[i * dim + j];
      A[i * dim + i] += 1.0;
      rhsbuf[i] = base[i] + hg * k[i] - Y[i];
    }
    if (!solve_dense(A, rhsbuf, dim)) return false;
    double acc = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < dim; ++i) {
      Y[i] += rhsbuf[i];
      if (!std::isfinite(Y[i])) finite = false;
      double e = rhsbuf[i] / sc[i];
      acc += e * e;
    }
    if (!finite) return false;
    if (std::sqrt(acc / static_cast<double>(dim)) < 1e-2) {
      rhs(xc, Y.data(), k.data());
      return all_finite(k.data(), dim);
    }
  }
  return false;
}

}  // namespace

OdeStatus integrate_ode_stiff(const OdeRhs& rhs, const OdeJac& jac,
                              std::vector<double> y0, double x0, double x1,
                              const OdeOptions& opt, const OdeSink& sink,
                              const OdeGuard& guard) {
  static const DirkTableau T;
  const double g = kDirkGamma;
  const std::size_t dim = y0.size();
  std::vector<double> y = std::move(y0);
  std::vector<double> sc(dim), k1(dim), k2(dim), k3(dim), Y(dim), base(dim),
      A(dim * dim), J(dim * dim), rb(dim), f0(dim);
  std::vector<double> ybig(dim), yhalf(dim), ynew(dim);

  double x = x0;
  sink(x, y.data());
  rhs(x, y.data(), f0.data());

  const double hmin_floor = 1e-14;

  double h_nat = opt.initial_step;
  if (h_nat <= 0.0) {
    double d0 = 0.0, d1 = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      double s = opt.rtol * std::fabs(y[i]) + opt.atol;
      double a = y[i] / s, b = f0[i] / s;
      d0 += a * a;
      d1 += b * b;
    }
    h_nat = (d1 > 0.0) ? 0.01 * std::sqrt(d0 / d1) : 1e-4 * (x1 - x0);
    h_nat = std::min(h_nat, 1e-2 * (x1 - x0));
    h_nat = std::max(h_nat, 16.0 * hmin_floor * std::max(1.0, std::fabs(x0)));
  }

  std::size_t next_cp = 0;
  const auto& cps = opt.checkpoints;

  // One SDIRK step of size hh from (xa, ya) into yout.
  auto step = [&](double xa, const std::vector<double>& ya, double hh,
                  std::vector<double>& yout) -> bool {
    double hg = hh * g;
    if (!dirk_stage(rhs, jac, xa + g * hh, hg, ya, sc, Y, k1, A, rb, J))
      return false;
    for (std::size_t i = 0; i < dim; ++i)
      base[i] = ya[i] + hh * T.a21 * k1[i];
    if (!dirk_stage(rhs, jac, xa + T.c2 * hh, hg, base, sc, Y, k2, A, rb, J))
      return false;
    for (std::size_t i = 0; i < dim; ++i)
      base[i] = ya[i] + hh * (T.b1 * k1[i] + T.b2 * k2[i]);
    if (!dirk_stage(rhs, jac, xa + hh, hg, base, sc, Y, k3, A, rb, J))
      return false;
    // Stiffly accurate: the last stage value is the step result.
    yout = Y;
    return all_finite(yout.data(), dim);
  };

  while (x < x1) {
    if (opt.max_step > 0.0) h_nat = std::min(h_nat, opt.max_step);
    while (next_cp < cps.size() && cps[next_cp] <= x) ++next_cp;
    double target = x1;
    if (next_cp < cps.size()) target = std::min(target, cps[next_cp]);

    double h = h_nat;
    bool clipped = false;
    if (x + h >= target) {
      h = target - x;
      clipped = true;
    }
    double hmin = hmin_floor * std::max(1.0, std::fabs(x));
    if (h_nat < hmin) return {OdeStatus::Stopped, x};

    for (std::size_t i = 0; i < dim; ++i)
      sc[i] = opt.atol + opt.rtol * std::fabs(y[i]);

    // Step doubling: one full step and two half steps give an order-3 error
    // estimate est = (y_half - y_big)/7; the half-step composite is kept.
    bool ok = step(x, y, h, ybig) && step(x, y, 0.5 * h, yhalf) &&
              step(x + 0.5 * h, yhalf, 0.5 * h, ynew);

    double err = 2.0;
    if (ok) {
      double acc = 0.0;
      for (std::size_t i = 0; i < dim; ++i) {
        double e = (ynew[i] - ybig[i]) / (7.0 * sc[i]);
        acc += e * e;
      }
      err = std::sqrt(acc / static_cast<double>(dim));
      if (!std::isfinite(err)) err = 2.0;
    }

    if (ok && err <= 1.0 && (!guard || guard(x + h, ynew.data()))) {
      x = clipped ? target : x + h;
      y.swap(ynew);
      sink(x, y.data());
      double fac =
          (err > 0.0) ? std::clamp(0.9 * std::pow(err, -0.25), 0.25, 4.0)
                      : 4.0;
      if (!clipped) h_nat = h * fac;
      else h_nat = std::max(h_nat, h * fac);
    } else {
      double fac = (ok && err > 1.0)
                       ? std::max(0.25, 0.9 * std::pow(err, -0.25))
                       : 0.3;
      h_nat = h * fac;
    }
  }
  return {OdeStatus::Done, x};
}

}  // namespace yamabe
