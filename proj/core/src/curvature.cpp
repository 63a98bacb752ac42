#include "krf/curvature.hpp"

#include <cmath>

#include "krf/errors.hpp"

namespace krf {

static void check_fields(const DerivativeFields& d) {
  for (std::size_t i = 0; i < d.size(); ++i)
    if (!(d.f_x[i] > 0.0)) throw AdmissibilityError(i, "f_x <= 0");
}

std::vector<double> scalar_curvature(const DerivativeFields& d, const BundleSpec& spec) {
  check_fields(d);
  const double nl = spec.nu / spec.lambda;
  std::vector<double> R(d.size());
  for (std::size_t i = 0; i < d.size(); ++i)
    R[i] = spec.n * (nl - d.F_rho[i]) / d.f[i] - d.F_rhorho_over_fp[i];
  return R;
}

double scalar_curvature(const ProfileJet& j, const BundleSpec& spec) {
  if (!(j.f_rho > 0.0)) throw DomainError("scalar curvature needs f_rho > 0");
  const double F_r = j.fpp_over_fp + spec.n * j.logf_r();
  const double F_rr = j.logfp_rr + spec.n * j.logf_rr();
  return spec.n * (spec.nu / spec.lambda - F_r) / j.f - F_rr / j.f_rho;
}

CurvatureFields riemann_norm_terms(const DerivativeFields& d, const BundleSpec& spec) {
  CurvatureFields c;
  c.R = scalar_curvature(d, spec);
  const std::size_t N = d.size();
  c.T1.resize(N);
  c.T2.resize(N);
  c.T3.resize(N);
  c.T4.resize(N);
  c.T5.resize(N);
  c.K_lead.resize(N);
  c.R_fib.resize(N);
  for (std::size_t i = 0; i < N; ++i) {
    const double L = d.logfp_rr[i], Lp = d.logfp_rr_over_fp[i];
    c.T1[i] = Lp * Lp;
    c.T2[i] = std::abs(Lp);
    c.T3[i] = Lp * Lp * d.f_rho[i];
    c.T4[i] = L * L;
    c.T5[i] = std::abs(L);
    c.K_lead[i] = std::abs(Lp);
    c.R_fib[i] = -Lp;
  }
  return c;
}

}  // namespace krf
