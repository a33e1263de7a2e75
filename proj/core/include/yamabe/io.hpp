#pragma once

#include <map>
#include <string>
#include <vector>

#include "yamabe/curvature.hpp"
#include "yamabe/flow.hpp"
#include "yamabe/profile.hpp"

namespace yamabe {

/// 17-significant-digit representation; round-trip exact for doubles and
/// byte-stable across runs (no locale).
std::string format_g17(double v);

/// Minimal deterministic JSON value for emission: numbers are rendered with
/// format_g17 (non-finite values become null), object keys are kept sorted
/// regardless of insertion order. Arrays/objects nest.
class Json {
 public:
  static Json number(double v);
  static Json integer(long long v);
  static Json boolean(bool v);
  static Json string(std::string v);
  static Json null();
  static Json array();
  static Json object();

  void push_back(Json v);                       // array
  void set(const std::string& key, Json v);     // object
  std::string dump(int indent = 2) const;

 private:
  enum class Kind { Null, Bool, Int, Num, Str, Arr, Obj } kind_ = Kind::Null;
  bool b_ = false;
  long long i_ = 0;
  double n_ = 0.0;
  std::string s_;
  std::vector<Json> arr_;
  std::vector<std::pair<std::string, Json>> obj_;
  void dump_to(std::string& out, int indent, int depth) const;
};

Json params_json(const SolitonParams& p);

/// CSV emitters (headers fixed by the interface contract).
std::string radial_csv(const RadialProfile& p);          // r,u,du_dr
std::string cylindrical_csv(const CylindricalProfile& p);// s,w,dw_ds,f
std::string curvature_csv(const CurvatureReport& rep);   // s,R,K0,K1,lam_ric,mu_ric
std::string flow_state_csv(const FlowState& st);         // r,u_bar

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace yamabe
