#include "yamabe/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace yamabe {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json Json::number(double v) {
  Json j;
  j.kind_ = Kind::Num;
  j.n_ = v;
  return j;
}

Json Json::integer(long long v) {
  Json j;
  j.kind_ = Kind::Int;
  j.i_ = v;
  return j;
}

Json Json::boolean(bool v) {
  Json j;
  j.kind_ = Kind::Bool;
  j.b_ = v;
  return j;
}

Json Json::string(std::string v) {
  Json j;
  j.kind_ = Kind::Str;
  j.s_ = std::move(v);
  return j;
}

Json Json::null() { return Json(); }

Json Json::array() {
  Json j;
  j.kind_ = Kind::Arr;
  return j;
}

Json Json::object() {
  Json j;
  j.kind_ = Kind::Obj;
  return j;
}

void Json::push_back(Json v) {
  if (kind_ != Kind::Arr) throw std::logic_error("push_back on non-array");
  arr_.push_back(std::move(v));
}

void Json::set(const std::string& key, Json v) {
  if (kind_ != Kind::Obj) throw std::logic_error("set on non-object");
  auto it = std::lower_bound(
      obj_.begin(), obj_.end(), key,
      [](const auto& kv, const std::string& k) { return kv.first < k; });
  if (it != obj_.end() && it->first == key)
    it->second = std::move(v);
  else
    obj_.emplace(it, key, std::move(v));
}

namespace {

void escape_to(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

}  // namespace

void Json::dump_to(std::string& out, int indent, int depth) const {
  auto pad = [&](int d) {
    if (indent > 0) out.append(static_cast<std::size_t>(indent) * d, ' ');
  };
  auto nl = [&] {
    if (indent > 0) out += '\n';
  };
  switch (kind_) {
    case Kind::Null: out += "null"; break;
    case Kind::Bool: out += b_ ? "true" : "false"; break;
    case Kind::Int: out += std::to_string(i_); break;
    case Kind::Num:
      out += std::isfinite(n_) ? format_g17(n_) : "null";
      break;
    case Kind::Str: escape_to(out, s_); break;
    case Kind::Arr:
      if (arr_.empty()) {
        out += "[]";
        break;
      }
      out += '[';
      nl();
      for (std::size_t i = 0; i < arr_.size(); ++i) {
        pad(depth + 1);
        arr_[i].dump_to(out, indent, depth + 1);
        if (i + 1 < arr_.size()) out += ',';
        nl();
      }
      pad(depth);
      out += ']';
      break;
    case Kind::Obj:
      if (obj_.empty()) {
        out += "{}";
        break;
      }
      out += '{';
      nl();
      for (std::size_t i = 0; i < obj_.size(); ++i) {
        pad(depth + 1);
        escape_to(out, obj_[i].first);
        out += indent > 0 ? ": " : ":";
        obj_[i].second.dump_to(out, indent, depth + 1);
        if (i + 1 < obj_.size()) out += ',';
        nl();
      }
      pad(depth);
      out += '}';
      break;
  }
}

std::string Json::dump(int indent) const {
  std::string out;
  dump_to(out, indent, 0);
  if (indent > 0) out += '\n';
  return out;
}

Json params_json(const SolitonParams& p) {
  Json j = Json::object();
  j.set("n", Json::integer(p.n));
  j.set("class", Json::string(class_name(p.cls)));
  j.set("rho", Json::integer(p.rho));
  j.set("beta", Json::number(p.beta));
  j.set("gamma", Json::number(p.gamma));
  j.set("m", Json::number(p.m));
  j.set("theta", Json::number(p.theta));
  j.set("alpha", Json::number(p.alpha));
  j.set("flat", Json::boolean(p.flat));
  j.set("compact", Json::boolean(p.compact));
  return j;
}

namespace {

std::string csv_rows(const std::string& header,
                     const std::vector<const std::vector<double>*>& cols) {
  std::string out = header;
  out += '\n';
  std::size_t rows = cols.empty() ? 0 : cols[0]->size();
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (c) out += ',';
      out += format_g17((*cols[c])[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace

std::string radial_csv(const RadialProfile& p) {
  return csv_rows("r,u,du_dr", {&p.r, &p.u, &p.du_dr});
}

std::string cylindrical_csv(const CylindricalProfile& p) {
  return csv_rows("s,w,dw_ds,f", {&p.s, &p.w, &p.dw_ds, &p.f});
}

std::string curvature_csv(const CurvatureReport& rep) {
  return csv_rows("s,R,K0,K1,lam_ric,mu_ric",
                  {&rep.s, &rep.R, &rep.K0, &rep.K1, &rep.lam_ric,
                   &rep.mu_ric});
}

std::string flow_state_csv(const FlowState& st) {
  return csv_rows("r,u_bar", {&st.grid, &st.u_bar});
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace yamabe
