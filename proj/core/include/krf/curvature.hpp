#pragma once

#include <vector>

#include "krf/analytic_profile.hpp"
#include "krf/classes.hpp"
#include "krf/profile.hpp"

namespace krf {

struct CurvatureFields {
  std::vector<double> R;
  std::vector<double> T1;  // f_rho^-2 ((log f_rho)_rr)^2
  std::vector<double> T2;  // f_rho^-1 |(log f_rho)_rr|
  std::vector<double> T3;  // f_rho^-1 ((log f_rho)_rr)^2
  std::vector<double> T4;  // ((log f_rho)_rr)^2
  std::vector<double> T5;  // |(log f_rho)_rr|
  std::vector<double> K_lead;
  std::vector<double> R_fib;
};

std::vector<double> scalar_curvature(const DerivativeFields& d, const BundleSpec& spec);
CurvatureFields riemann_norm_terms(const DerivativeFields& d, const BundleSpec& spec);

// pointwise scalar curvature from a profile jet
double scalar_curvature(const ProfileJet& j, const BundleSpec& spec);

}  // namespace krf
