#pragma once

#include <cstddef>
#include <vector>

#include "krf/profile.hpp"

namespace krf {

// Pointwise profile data needed by the closed-form curvature tables.
struct ProfileJet {
  double f = 0.0;
  double f_rho = 0.0;
  double fpp_over_fp = 0.0;  // f_rhorho / f_rho = (log f_rho)_rho
  double logfp_rr = 0.0;     // (log f_rho)_rhorho

  double f_rhorho() const { return fpp_over_fp * f_rho; }
  double logf_r() const { return f_rho / f; }
  double logf_rr() const { return f_rhorho() / f - logf_r() * logf_r(); }
};

ProfileJet jet_at(const DerivativeFields& d, std::size_t i);

// f as a polynomial in the compactified coordinate x; rho-derivatives are exact.
class PolynomialProfile {
 public:
  PolynomialProfile(std::vector<double> coeffs, double kappa = 1.0);

  static PolynomialProfile reference(double a, double b, double kappa = 1.0);

  double kappa() const { return kappa_; }
  const std::vector<double>& coeffs() const { return c_; }
  double a() const { return eval(c_, 0.0); }
  double b() const { return eval(c_, 1.0); }

  double value_x(double x) const { return eval(c_, x); }
  double value_rho(double rho) const;
  double f_rho_at_rho(double rho) const;
  ProfileJet jet_x(double x) const;
  ProfileJet jet_rho(double rho) const;

  Profile sample(GridPtr grid, double t = 0.0) const;

  static double eval(const std::vector<double>& c, double x);

 private:
  std::vector<double> c_;
  double kappa_;
  std::vector<double> d1_, d2_, d3_;  // d^j f / d rho^j as polynomials in x
};

}  // namespace krf
