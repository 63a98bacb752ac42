#include "krf/analytic_profile.hpp"

#include <cmath>

#include "krf/errors.hpp"

namespace krf {

ProfileJet jet_at(const DerivativeFields& d, std::size_t i) {
  return {d.f[i], d.f_rho[i], d.fpp_over_fp[i], d.logfp_rr[i]};
}

// p -> kappa x (1-x) p'
static std::vector<double> rho_derivative(const std::vector<double>& p, double kappa) {
  std::vector<double> dp(p.size() > 1 ? p.size() - 1 : 1, 0.0);
  for (std::size_t j = 1; j < p.size(); ++j) dp[j - 1] = j * p[j];
  std::vector<double> out(dp.size() + 2, 0.0);
  for (std::size_t j = 0; j < dp.size(); ++j) {
    out[j + 1] += kappa * dp[j];
    out[j + 2] -= kappa * dp[j];
  }
  return out;
}

PolynomialProfile::PolynomialProfile(std::vector<double> coeffs, double kappa)
    : c_(std::move(coeffs)), kappa_(kappa) {
  if (c_.empty()) throw DomainError("empty polynomial");
  if (!(kappa > 0.0)) throw DomainError("kappa must be > 0");
  d1_ = rho_derivative(c_, kappa_);
  d2_ = rho_derivative(d1_, kappa_);
  d3_ = rho_derivative(d2_, kappa_);
}

PolynomialProfile PolynomialProfile::reference(double a, double b, double kappa) {
  return PolynomialProfile({a, b - a}, kappa);
}

double PolynomialProfile::eval(const std::vector<double>& c, double x) {
  double s = 0.0;
  for (std::size_t j = c.size(); j-- > 0;) s = s * x + c[j];
  return s;
}

double PolynomialProfile::value_rho(double rho) const { return eval(c_, x_of_rho(rho, kappa_)); }

double PolynomialProfile::f_rho_at_rho(double rho) const { return eval(d1_, x_of_rho(rho, kappa_)); }

ProfileJet PolynomialProfile::jet_x(double x) const {
  const double f = eval(c_, x), f1 = eval(d1_, x), f2 = eval(d2_, x), f3 = eval(d3_, x);
  if (!(f1 > 0.0)) throw DomainError("polynomial profile has f_rho <= 0 at this point");
  ProfileJet j;
  j.f = f;
  j.f_rho = f1;
  j.fpp_over_fp = f2 / f1;
  j.logfp_rr = f3 / f1 - j.fpp_over_fp * j.fpp_over_fp;
  return j;
}

ProfileJet PolynomialProfile::jet_rho(double rho) const { return jet_x(x_of_rho(rho, kappa_)); }

Profile PolynomialProfile::sample(GridPtr grid, double t) const {
  Profile p;
  p.grid = grid;
  p.t = t;
  p.a = a();
  p.b = b();
  p.f.resize(grid->size());
  for (std::size_t i = 0; i < grid->size(); ++i) p.f[i] = eval(c_, grid->x[i]);
  p.f.front() = p.a;
  p.f.back() = p.b;
  return p;
}

}  // namespace krf
