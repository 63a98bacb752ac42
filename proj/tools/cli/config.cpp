#include "cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "krf/errors.hpp"

namespace krf::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v, int line) {
  double out = 0.0;
  const char* end = v.data() + v.size();
  auto r = std::from_chars(v.data(), end, out);
  if (r.ec != std::errc() || r.ptr != end) throw ConfigError(key, "expected a number, got '" + v + "'", line);
  return out;
}

long to_long(const std::string& key, const std::string& v, int line) {
  long out = 0;
  const char* end = v.data() + v.size();
  auto r = std::from_chars(v.data(), end, out);
  if (r.ec != std::errc() || r.ptr != end) throw ConfigError(key, "expected an integer, got '" + v + "'", line);
  return out;
}

bool to_bool(const std::string& key, const std::string& v, int line) {
  if (v == "true" || v == "on" || v == "1") return true;
  if (v == "false" || v == "off" || v == "0") return false;
  throw ConfigError(key, "expected true/false, got '" + v + "'", line);
}

std::vector<double> to_list(const std::string& key, const std::string& v, int line) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item), line));
  if (out.empty()) throw ConfigError(key, "expected a comma-separated list of numbers", line);
  return out;
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&, int)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> s = {
      {"spec.n", [](RunConfig& c, auto& k, auto& v, int l) { c.spec.n = static_cast<int>(to_long(k, v, l)); }},
      {"spec.nu", [](RunConfig& c, auto& k, auto& v, int l) { c.spec.nu = to_double(k, v, l); }},
      {"spec.lambda", [](RunConfig& c, auto& k, auto& v, int l) { c.spec.lambda = to_double(k, v, l); }},
      {"class.a0", [](RunConfig& c, auto& k, auto& v, int l) { c.a0 = to_double(k, v, l); }},
      {"class.b0", [](RunConfig& c, auto& k, auto& v, int l) { c.b0 = to_double(k, v, l); }},
      {"grid.m", [](RunConfig& c, auto& k, auto& v, int l) { c.m = static_cast<int>(to_long(k, v, l)); }},
      {"grid.kappa", [](RunConfig& c, auto& k, auto& v, int l) { c.kappa = to_double(k, v, l); }},
      {"solver.dt0", [](RunConfig& c, auto& k, auto& v, int l) { c.solver.dt0 = to_double(k, v, l); }},
      {"solver.cfl", [](RunConfig& c, auto& k, auto& v, int l) { c.solver.cfl = to_double(k, v, l); }},
      {"solver.theta", [](RunConfig& c, auto& k, auto& v, int l) { c.solver.theta = to_double(k, v, l); }},
      {"solver.eps_T", [](RunConfig& c, auto& k, auto& v, int l) { c.solver.eps_T = to_double(k, v, l); }},
      {"solver.snapshot_cadence",
       [](RunConfig& c, auto& k, auto& v, int l) { c.solver.snapshot_cadence = to_long(k, v, l); }},
      {"solver.max_steps", [](RunConfig& c, auto& k, auto& v, int l) { c.solver.max_steps = to_long(k, v, l); }},
      {"initial.kind",
       [](RunConfig& c, auto& k, auto& v, int l) {
         if (v != "reference" && v != "shape") throw ConfigError(k, "expected reference or shape", l);
         c.initial.kind = v;
       }},
      {"initial.shape_coeffs",
       [](RunConfig& c, auto& k, auto& v, int l) { c.initial.shape_coeffs = to_list(k, v, l); }},
      {"output.dir", [](RunConfig& c, auto&, auto& v, int) { c.out_dir = v; }},
      {"output.plots", [](RunConfig& c, auto& k, auto& v, int l) { c.plots = to_bool(k, v, l); }},
      {"verify.k", [](RunConfig& c, auto& k, auto& v, int l) { c.verify.k = static_cast<int>(to_long(k, v, l)); }},
      {"verify.points",
       [](RunConfig& c, auto& k, auto& v, int l) { c.verify.points = static_cast<int>(to_long(k, v, l)); }},
      {"verify.seed",
       [](RunConfig& c, auto& k, auto& v, int l) {
         const long s = to_long(k, v, l);
         if (s < 0) throw ConfigError(k, "seed must be >= 0", l);
         c.verify.seed = static_cast<unsigned long long>(s);
       }},
      {"verify.tol", [](RunConfig& c, auto& k, auto& v, int l) { c.verify.tol = to_double(k, v, l); }},
      {"verify.point",
       [](RunConfig& c, auto& k, auto& v, int l) {
         const auto xs = to_list(k, v, l);
         if (xs.size() != 4) throw ConfigError(k, "expected z_re,z_im,xi_re,xi_im", l);
         const ChartPoint p{{xs[0], xs[1]}, {xs[2], xs[3]}};
         if (p.xi == cplx(0.0, 0.0)) throw ConfigError(k, "xi = 0 lies on the zero section", l);
         c.verify.explicit_points.push_back(p);
       }},
      {"verify.perturb", [](RunConfig& c, auto&, auto& v, int) { c.verify.perturb = v; }},
      {"verify.profile_coeffs",
       [](RunConfig& c, auto& k, auto& v, int l) { c.verify.profile_coeffs = to_list(k, v, l); }},
  };
  return s;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("line", "expected 'key = value'", line);
    const std::string key = trim(s.substr(0, eq)), val = trim(s.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError(key, "unknown key", line);
    if (val.empty()) throw ConfigError(key, "empty value", line);
    if (key != "verify.point" && !seen.insert(key).second) throw ConfigError(key, "duplicate key", line);
    it->second(cfg, key, val, line);
  }
  validate_config(cfg);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("config", "cannot open '" + path.string() + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

void validate_config(const RunConfig& c) {
  if (c.spec.n < 1) throw ConfigError("spec.n", "must be >= 1");
  if (!(c.spec.lambda > 0.0)) throw ConfigError("spec.lambda", "must be > 0");
  if (!std::isfinite(c.spec.nu)) throw ConfigError("spec.nu", "must be finite");
  if (!(c.a0 > 0.0) || !std::isfinite(c.a0)) throw ConfigError("class.a0", "must be > 0");
  if (!(c.b0 > c.a0) || !std::isfinite(c.b0)) throw ConfigError("class.b0", "must be > class.a0");
  if (c.m < 3) throw ConfigError("grid.m", "must be >= 3");
  if (!(c.kappa > 0.0)) throw ConfigError("grid.kappa", "must be > 0");
  if (!(c.solver.dt0 > 0.0)) throw ConfigError("solver.dt0", "must be > 0");
  if (!(c.solver.cfl > 0.0 && c.solver.cfl <= 1.0)) throw ConfigError("solver.cfl", "must be in (0, 1]");
  if (!(c.solver.theta >= 0.5 && c.solver.theta <= 1.0)) throw ConfigError("solver.theta", "must be in [0.5, 1]");
  if (!(c.solver.eps_T > 0.0 && c.solver.eps_T < 1.0)) throw ConfigError("solver.eps_T", "must be in (0, 1)");
  if (c.solver.snapshot_cadence <= 0) throw ConfigError("solver.snapshot_cadence", "must be > 0");
  if (c.solver.max_steps <= 0) throw ConfigError("solver.max_steps", "must be > 0");
  if (c.initial.kind == "shape" && c.initial.shape_coeffs.empty())
    throw ConfigError("initial.shape_coeffs", "required when initial.kind = shape");
  if (c.verify.k < 1) throw ConfigError("verify.k", "must be >= 1");
  if (c.verify.points < 0) throw ConfigError("verify.points", "must be >= 0");
  if (!(c.verify.tol > 0.0)) throw ConfigError("verify.tol", "must be > 0");
}

}  // namespace krf::cli
