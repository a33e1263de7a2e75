#include "yamabe/params.hpp"

#include <cctype>
#include <cmath>

#include "yamabe/errors.hpp"

namespace yamabe {

int soliton_rho(SolitonClass cls) {
  switch (cls) {
    case SolitonClass::Shrinker: return 1;
    case SolitonClass::Steady: return 0;
    case SolitonClass::Expander: return -1;
  }
  return 0;
}

SolitonClass class_from_rho(int rho) {
  if (rho > 0) return SolitonClass::Shrinker;
  if (rho < 0) return SolitonClass::Expander;
  return SolitonClass::Steady;
}

const char* class_name(SolitonClass cls) {
  switch (cls) {
    case SolitonClass::Shrinker: return "shrinker";
    case SolitonClass::Steady: return "steady";
    case SolitonClass::Expander: return "expander";
  }
  return "steady";
}

SolitonClass parse_class(const std::string& name) {
  std::string k;
  for (char c : name)
    k.push_back(
        static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (k == "shrinker") return SolitonClass::Shrinker;
  if (k == "steady") return SolitonClass::Steady;
  if (k == "expander") return SolitonClass::Expander;
  throw Error(ErrorKind::InvalidConfig,
              "unknown soliton class '" + name +
                  "' (expected shrinker|steady|expander)");
}

namespace {

SolitonParams fill_common(int n, SolitonClass cls, double beta) {
  SolitonParams p;
  p.n = n;
  p.cls = cls;
  p.rho = soliton_rho(cls);
  p.beta = beta;
  p.m = static_cast<double>(n - 2) / static_cast<double>(n + 2);
  p.gamma = (2.0 * beta + p.rho) / (1.0 - p.m);
  p.theta = beta * p.m / static_cast<double>(n - 1);
  p.alpha = 4.0 / static_cast<double>(n - 2);
  return p;
}

}  // namespace

SolitonParams derive_params(int n, SolitonClass cls, double beta) {
  if (n < 3) throw DimensionTooSmall(n);
  if (beta < 0.0) throw NegativeBeta(beta);
  if (beta == 0.0 && cls != SolitonClass::Steady) throw ZeroBetaNonSteady();
  SolitonParams p = fill_common(n, cls, beta);
  p.flat = (cls == SolitonClass::Steady && beta == 0.0);
  return p;
}

SolitonParams barenblatt_params(int n) {
  if (n < 3) throw DimensionTooSmall(n);
  double beta = static_cast<double>(n + 2) / (2.0 * (n - 2));
  return derive_params(n, SolitonClass::Shrinker, beta);
}

SolitonParams sphere_params(int n) {
  if (n < 3) throw DimensionTooSmall(n);
  SolitonParams p = fill_common(n, SolitonClass::Shrinker, 0.0);
  p.compact = true;
  return p;
}

ProfilePoint barenblatt_profile(int n, double lambda, double r) {
  if (n < 3) throw DimensionTooSmall(n);
  double Cn = static_cast<double>(n - 2) * (n - 1);
  double p = (n + 2) / 4.0;  // 1/(1-m)
  double A = lambda * lambda + r * r;
  ProfilePoint out;
  out.u = std::exp(p * (std::log(Cn) - std::log(A)));
  out.du_dr = -2.0 * p * r / A * out.u;
  out.d2u_dr2 = -2.0 * p * out.u / A * (1.0 - (2.0 * p + 2.0) * r * r / A);
  return out;
}

ProfilePoint sphere_profile(int n, double lambda, double r) {
  if (n < 3) throw DimensionTooSmall(n);
  double Cn = std::sqrt(4.0 * n * (n - 1));
  double q = (n + 2) / 2.0;  // 2/(1-m)
  double A = lambda * lambda + r * r;
  ProfilePoint out;
  out.u = std::exp(q * (std::log(Cn * lambda) - std::log(A)));
  out.du_dr = -2.0 * q * r / A * out.u;
  out.d2u_dr2 = -2.0 * q * out.u / A * (1.0 - (2.0 * q + 2.0) * r * r / A);
  return out;
}

}  // namespace yamabe
