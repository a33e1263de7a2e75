#pragma once

#include <string>

namespace yamabe {

/// Soliton family tag. The normalization constant rho is +1 / 0 / -1 for
/// shrinkers / steadies / expanders respectively.
enum class SolitonClass { Shrinker, Steady, Expander };

int soliton_rho(SolitonClass cls);
SolitonClass class_from_rho(int rho);
const char* class_name(SolitonClass cls);
SolitonClass parse_class(const std::string& name);

/// Full parameter tuple of a radial soliton profile equation
///
///   ((n-1)/m) Lap(u^m) + beta x.grad(u) + gamma u = 0,  m = (n-2)/(n+2),
///
/// with every derived constant materialized and validated on construction:
///   gamma = (2 beta + rho)/(1-m),   theta = beta m/(n-1),   alpha = 4/(n-2),
/// and the drift constant of the potential C = 2 beta (f_s = C w).
struct SolitonParams {
  int n = 0;
  SolitonClass cls = SolitonClass::Steady;
  int rho = 0;
  double beta = 0.0;
  double gamma = 0.0;
  double m = 0.0;
  double theta = 0.0;
  double alpha = 0.0;
  bool flat = false;     ///< steady with beta == 0 (Euclidean metric)
  bool compact = false;  ///< compact family (the sphere: shrinker, beta == 0)

  double C() const { return 2.0 * beta; }
  double one_minus_m() const { return 1.0 - m; }
};

/// Builds the parameter tuple for a noncompact family member.
/// Throws DimensionTooSmall (n < 3), NegativeBeta, ZeroBetaNonSteady
/// (shrinker/expander with beta == 0). The flat steady beta == 0 is
/// represented with flat = true, not rejected.
SolitonParams derive_params(int n, SolitonClass cls, double beta);

/// The unique shrinker parameters with gamma = n beta,
/// i.e. beta = (n+2)/(2(n-2)). Throws DimensionTooSmall.
SolitonParams barenblatt_params(int n);

/// Compact shrinker (round sphere): beta = 0, gamma = 1/(1-m), rho = +1.
/// Constructed here because derive_params scopes its beta > 0 requirement
/// to the noncompact families.
SolitonParams sphere_params(int n);

/// Value and analytic first/second radial derivatives of a closed form.
struct ProfilePoint {
  double u = 0.0;
  double du_dr = 0.0;
  double d2u_dr2 = 0.0;
};

/// u = (C_n/(lambda^2+r^2))^{1/(1-m)}, C_n = (n-2)(n-1).
/// Evaluated in log space so large lambda^2 + r^2 cannot underflow the power.
ProfilePoint barenblatt_profile(int n, double lambda, double r);

/// u = (C_n lambda/(lambda^2+r^2))^{2/(1-m)}, C_n = sqrt(4n(n-1)).
ProfilePoint sphere_profile(int n, double lambda, double r);

}  // namespace yamabe
