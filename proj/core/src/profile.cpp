#include "krf/profile.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

#include "krf/errors.hpp"

namespace krf {

bool ValidationReport::ok() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

const ValidationCheck& ValidationReport::get(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return c;
  throw DomainError("no validation check named '" + name + "'");
}

Profile reference_profile(GridPtr grid, const ClassState& state) {
  if (!grid) throw DomainError("null grid");
  if (!(state.b >= state.a)) throw DomainError("reference profile needs b >= a");
  Profile p;
  p.grid = grid;
  p.a = state.a;
  p.b = state.b;
  p.t = state.t;
  p.f.resize(grid->size());
  for (std::size_t i = 0; i < grid->size(); ++i) p.f[i] = state.a + (state.b - state.a) * grid->x[i];
  p.f.front() = state.a;
  p.f.back() = state.b;
  return p;
}

Profile from_shape(GridPtr grid, double a0, double b0, const std::function<double(double)>& shape) {
  if (!grid) throw DomainError("null grid");
  if (!(b0 > a0)) throw DomainError("from_shape needs b0 > a0");
  Profile p;
  p.grid = grid;
  p.a = a0;
  p.b = b0;
  p.f.resize(grid->size());
  for (std::size_t i = 0; i < grid->size(); ++i) {
    const double s = shape(grid->x[i]);
    if (!std::isfinite(s)) throw AdmissibilityError(i, "shape value is not finite");
    p.f[i] = a0 + (b0 - a0) * s;
  }
  const double tol = 1e-12;
  if (std::abs(p.f.front() - a0) > tol * (b0 - a0)) throw AdmissibilityError(0, "shape(0) != 0");
  if (std::abs(p.f.back() - b0) > tol * (b0 - a0)) throw AdmissibilityError(grid->last(), "shape(1) != 1");
  p.f.front() = a0;
  p.f.back() = b0;

  auto rep = validate(p);
  for (const auto& c : rep.checks)
    if (!c.pass) throw AdmissibilityError(c.node.value_or(0), c.name + ": " + c.detail);
  return p;
}

ValidationReport validate(const Profile& p) {
  ValidationReport rep;
  const std::size_t N = p.f.size();
  const double scale = std::max({std::abs(p.a), std::abs(p.b), 1.0});

  ValidationCheck fin{"finite", true, std::nullopt, ""};
  for (std::size_t i = 0; i < N; ++i)
    if (!std::isfinite(p.f[i])) {
      fin = {"finite", false, i, "non-finite value"};
      break;
    }
  rep.checks.push_back(fin);

  const bool sized = p.grid && N == p.grid->size() && N >= 5;
  rep.checks.push_back({"size", sized, std::nullopt, sized ? "" : "profile does not match its grid"});
  if (!sized) return rep;

  ValidationCheck left{"boundary_left", true, std::nullopt, ""};
  if (!(std::abs(p.f.front() - p.a) <= 1e-14 * scale)) left = {"boundary_left", false, 0, "f(0) != a"};
  rep.checks.push_back(left);

  ValidationCheck right{"boundary_right", true, std::nullopt, ""};
  if (!(std::abs(p.f.back() - p.b) <= 1e-14 * scale)) right = {"boundary_right", false, N - 1, "f(1) != b"};
  rep.checks.push_back(right);

  ValidationCheck mono{"monotonicity", true, std::nullopt, ""};
  for (std::size_t i = 1; i < N; ++i)
    if (!(p.f[i] > p.f[i - 1])) {
      mono = {"monotonicity", false, i, "f does not increase into this node"};
      break;
    }
  rep.checks.push_back(mono);

  ValidationCheck slope{"endpoint_slope", true, std::nullopt, ""};
  const double s0 = -3.0 * p.f[0] + 4.0 * p.f[1] - p.f[2];
  const double s1 = 3.0 * p.f[N - 1] - 4.0 * p.f[N - 2] + p.f[N - 3];
  if (!(s0 > 0.0))
    slope = {"endpoint_slope", false, 0, "one-sided slope at x=0 is not positive"};
  else if (!(s1 > 0.0))
    slope = {"endpoint_slope", false, N - 1, "one-sided slope at x=1 is not positive"};
  rep.checks.push_back(slope);

  ValidationCheck bounds{"bounds", true, std::nullopt, ""};
  for (std::size_t i = 1; i + 1 < N; ++i)
    if (!(p.f[i] > p.a && p.f[i] < p.b)) {
      bounds = {"bounds", false, i, "interior value outside (a, b)"};
      break;
    }
  rep.checks.push_back(bounds);
  return rep;
}

void diff_x(const std::vector<double>& v, double h, std::vector<double>& vx, std::vector<double>& vxx) {
  const std::size_t N = v.size();
  vx.resize(N);
  vxx.resize(N);
  const double i2h = 1.0 / (2.0 * h), ih2 = 1.0 / (h * h);
  for (std::size_t i = 1; i + 1 < N; ++i) {
    vx[i] = (v[i + 1] - v[i - 1]) * i2h;
    vxx[i] = (v[i + 1] - 2.0 * v[i] + v[i - 1]) * ih2;
  }
  vx[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) * i2h;
  vx[N - 1] = (3.0 * v[N - 1] - 4.0 * v[N - 2] + v[N - 3]) * i2h;
  vxx[0] = (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) * ih2;
  vxx[N - 1] = (2.0 * v[N - 1] - 5.0 * v[N - 2] + 4.0 * v[N - 3] - v[N - 4]) * ih2;
}

DerivativeFields derivatives(const Profile& p, const BundleSpec& spec) {
  if (!p.grid || p.f.size() != p.grid->size() || p.f.size() < 5)
    throw DomainError("profile does not match its grid");
  const Grid& g = *p.grid;
  const std::size_t N = g.size();
  const double k = g.kappa;
  const int n = spec.n;

  DerivativeFields d;
  d.kappa = k;
  d.x = g.x;
  d.f = p.f;
  diff_x(p.f, g.h, d.f_x, d.f_xx);
  for (std::size_t i = 0; i < N; ++i)
    if (!(d.f_x[i] > 0.0)) throw AdmissibilityError(i, "f_x <= 0");

  std::vector<double> q(N), q_x, q_xx;
  for (std::size_t i = 0; i < N; ++i) q[i] = std::log(d.f_x[i]);
  // q at the ends from extrapolated interior f_x
  auto end_fx = [&](std::size_t a, int s) {
    const auto at = [&](int j) { return d.f_x[static_cast<std::size_t>(static_cast<int>(a) + s * j)]; };
    const double e = 4.0 * at(1) - 6.0 * at(2) + 4.0 * at(3) - at(4);
    return e > 0.0 ? std::log(e) : q[a];
  };
  q[0] = end_fx(0, 1);
  q[N - 1] = end_fx(N - 1, -1);
  diff_x(q, g.h, q_x, q_xx);

  d.f_rho.resize(N);
  d.f_rhorho.resize(N);
  d.fpp_over_fp.resize(N);
  d.logfp_rr.resize(N);
  d.logfp_rr_over_fp.resize(N);
  d.F_rho.resize(N);
  d.F_rhorho.resize(N);
  d.F_rhorho_over_fp.resize(N);
  // log f_rho = log(k x(1-x)) + q; the first part differentiates exactly
  std::vector<double> core(N);
  for (std::size_t i = 0; i < N; ++i) {
    const double x = g.x[i];
    core[i] = -2.0 + (1.0 - 2.0 * x) * q_x[i] + x * (1.0 - x) * q_xx[i];
  }
  for (std::size_t i = 0; i < N; ++i) {
    const double x = g.x[i], w = x * (1.0 - x), f = p.f[i];
    const double fx = d.f_x[i], fxx = d.f_xx[i];
    d.f_rho[i] = k * w * fx;
    d.f_rhorho[i] = k * k * w * ((1.0 - 2.0 * x) * fx + w * fxx);
    d.fpp_over_fp[i] = k * (1.0 - 2.0 * x) + k * w * fxx / fx;
    d.logfp_rr[i] = k * k * w * core[i];
    d.logfp_rr_over_fp[i] = k * core[i] / fx;
    d.F_rho[i] = d.fpp_over_fp[i] + n * d.f_rho[i] / f;
    d.F_rhorho_over_fp[i] = d.logfp_rr_over_fp[i] + n * (d.fpp_over_fp[i] / f - d.f_rho[i] / (f * f));
    d.F_rhorho[i] = d.F_rhorho_over_fp[i] * d.f_rho[i];
  }
  return d;
}

ClassIntegral class_integral(const DerivativeFields& d, const Grid& grid) {
  const std::size_t N = d.f_x.size();
  double s = 0.5 * (d.f_x[0] + d.f_x[N - 1]);
  for (std::size_t i = 1; i + 1 < N; ++i) s += d.f_x[i];
  ClassIntegral ci;
  ci.value = s * grid.h;
  ci.deviation = ci.value - (d.f.back() - d.f.front());
  return ci;
}

static void put(std::ostream& os, double v) {
  if (std::isinf(v)) {
    os << (v < 0 ? "-inf" : "inf");
    return;
  }
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  os.write(buf, r.ptr - buf);
}

void write_snapshot_csv(std::ostream& os, const Profile& p, const DerivativeFields& d) {
  os << "x,rho,f,f_rho,f_rhorho,logfp_rr\n";
  for (std::size_t i = 0; i < p.f.size(); ++i) {
    put(os, p.grid->x[i]);
    os << ',';
    put(os, p.grid->rho[i]);
    os << ',';
    put(os, p.f[i]);
    os << ',';
    put(os, d.f_rho[i]);
    os << ',';
    put(os, d.f_rhorho[i]);
    os << ',';
    put(os, d.logfp_rr[i]);
    os << '\n';
  }
}

}  // namespace krf
