#pragma once

#include <stdexcept>
#include <string>

namespace yamabe {

/// Coarse failure category; the CLI maps these onto process exit codes
/// (invalid config -> 2, solver failure -> 3, check failure -> 4).
enum class ErrorKind { InvalidConfig, SolverFailure, CheckFailure };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

struct DimensionTooSmall : Error {
  explicit DimensionTooSmall(int n)
      : Error(ErrorKind::InvalidConfig,
              "DimensionTooSmall: n = " + std::to_string(n) +
                  ", need n >= 3") {}
};

struct NegativeBeta : Error {
  explicit NegativeBeta(double beta)
      : Error(ErrorKind::InvalidConfig,
              "NegativeBeta: beta = " + std::to_string(beta) +
                  ", need beta >= 0") {}
};

struct ZeroBetaNonSteady : Error {
  ZeroBetaNonSteady()
      : Error(ErrorKind::InvalidConfig,
              "ZeroBetaNonSteady: noncompact shrinker/expander families "
              "require beta > 0") {}
};

struct ProfileVanished : Error {
  double where;
  explicit ProfileVanished(double at, const char* coord = "r")
      : Error(ErrorKind::SolverFailure,
              std::string("ProfileVanished: profile reached the positivity "
                          "floor at ") +
                  coord + " = " + std::to_string(at)),
        where(at) {}
};

struct ProfileBlewUp : Error {
  double where;
  explicit ProfileBlewUp(double at, const char* coord = "r")
      : Error(ErrorKind::SolverFailure,
              std::string("ProfileBlewUp: profile exceeded the overflow "
                          "guard at ") +
                  coord + " = " + std::to_string(at)),
        where(at) {}
};

struct StepSizeUnderflow : Error {
  explicit StepSizeUnderflow(double at)
      : Error(ErrorKind::SolverFailure,
              "StepSizeUnderflow: adaptive step fell below the "
              "representable minimum at " +
                  std::to_string(at)) {}
};

struct BadAsymptoticStart : Error {
  explicit BadAsymptoticStart(double w0)
      : Error(ErrorKind::InvalidConfig,
              "BadAsymptoticStart: start magnitude w(s_min) = " +
                  std::to_string(w0) + " violates w < 1e-8") {}
};

struct GridTooCoarse : Error {
  explicit GridTooCoarse(const std::string& what =
                             "need at least 4 samples for the "
                             "finite-difference path")
      : Error(ErrorKind::InvalidConfig, "GridTooCoarse: " + what) {}
};

struct GridTooShort : Error {
  explicit GridTooShort(const std::string& what)
      : Error(ErrorKind::InvalidConfig, "GridTooShort: " + what) {}
};

struct EmptyPositiveRadius : Error {
  explicit EmptyPositiveRadius(
      const std::string& what = "need at least 2 samples with r > 0")
      : Error(ErrorKind::InvalidConfig, "EmptyPositiveRadius: " + what) {}
};

struct NonpositiveW : Error {
  explicit NonpositiveW(double w)
      : Error(ErrorKind::InvalidConfig,
              "NonpositiveW: cylindrical conformal factor must be positive, "
              "got " +
                  std::to_string(w)) {}
};

struct NotASolitonProfile : Error {
  explicit NotASolitonProfile(
      const std::string& what = "profile carries no soliton parameters")
      : Error(ErrorKind::InvalidConfig, "NotASolitonProfile: " + what) {}
};

struct NonpositiveRicci : Error {
  explicit NonpositiveRicci(double s)
      : Error(ErrorKind::SolverFailure,
              "NonpositiveRicci: radial Ricci eigenvalue <= 0 at s = " +
                  std::to_string(s) +
                  ", Harnack vector field undefined") {}
};

struct PositivityLost : Error {
  double t, r;
  PositivityLost(double t_, double r_)
      : Error(ErrorKind::SolverFailure,
              "PositivityLost: flow solution lost positivity at t = " +
                  std::to_string(t_) + ", r = " + std::to_string(r_)),
        t(t_),
        r(r_) {}
};

struct DomainTooSmall : Error {
  explicit DomainTooSmall(const std::string& what)
      : Error(ErrorKind::SolverFailure, "DomainTooSmall: " + what) {}
};

struct ParameterMismatch : Error {
  explicit ParameterMismatch(const std::string& what)
      : Error(ErrorKind::InvalidConfig, "ParameterMismatch: " + what) {}
};

struct CheckFailed : Error {
  explicit CheckFailed(const std::string& what)
      : Error(ErrorKind::CheckFailure, what) {}
};

}  // namespace yamabe
