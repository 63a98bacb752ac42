#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "krf/analytic_profile.hpp"

namespace krf {

using cplx = std::complex<double>;

// Hirzebruch-type chart over P^1: rho = log|xi|^2 + k log(1+|z|^2), lambda = k, nu = 2.
// Index 0 is the base coordinate z, index 1 the fiber coordinate xi.
struct ExplicitChart {
  int n = 1;
  int k = 1;

  double lambda() const { return k; }
  double nu() const { return 2.0; }
};

struct ChartPoint {
  cplx z;
  cplx xi;
};

// rho and its derivatives at a chart point (analytic)
struct ChartData {
  double rho = 0.0;
  cplx rho_z, rho_xi;
  double rho_zzbar = 0.0;
  cplx rho_zz;
  double rho_inv = 0.0;  // rho^{z zbar}
  cplx rho_zzbar_z;
  cplx A_zbar;  // d_zbar (rho^{z zbar} rho_{z zbar z})
  cplx B;       // rho^{z zbar} rho_z rho_{z zbar z} - rho_zz
  cplx B_zbar;
  double g_base = 0.0;  // Fubini-Study g_{z zbar}
};

ChartData chart_data(const ExplicitChart& chart, const ChartPoint& p);

using Mat2 = std::array<std::array<cplx, 2>, 2>;

struct ChartTensors {
  Mat2 g{};                                                 // g_{A Bbar}
  std::array<std::array<std::array<cplx, 2>, 2>, 2> Gamma{};  // Gamma[C][A][B] = Gamma^C_{AB}
  std::array<std::array<std::array<std::array<cplx, 2>, 2>, 2>, 2> Riem{};  // Riem[D][A][B][C] = R^D_{A Bbar C}
};

Mat2 metric_closed_form(const ProfileJet& jet, const ChartData& cd);
ChartTensors christoffel_closed_form(const ProfileJet& jet, const ExplicitChart& chart, const ChartPoint& p);
ChartTensors riemann_closed_form(const ProfileJet& jet, const ExplicitChart& chart, const ChartPoint& p);
ChartTensors closed_form(const ProfileJet& jet, const ExplicitChart& chart, const ChartPoint& p);

struct OracleOptions {
  double h_metric = 1e-2;  // step for derivatives of g
  double h_outer = 2e-2;   // step for derivatives of Christoffel symbols and log det g
  int levels = 3;          // Richardson levels (h, h/2, h/4)
};

struct OracleResult {
  ChartTensors tensors;
  Mat2 ricci{};             // -d d-bar log det g
  double scalar_R = 0.0;    // g^{A Bbar} Ric_{A Bbar}
  double det_g = 0.0;
  double trace_base = 0.0;  // Tr_omega pi^* omega_Sigma
  double nu = 0.0;          // measured Einstein constant of the base
  double err_gamma = 0.0;   // Richardson error estimates
  double err_riem = 0.0;
};

OracleResult chart_oracle(const ExplicitChart& chart, const PolynomialProfile& profile, const ChartPoint& p,
                          const OracleOptions& opt = {});

double measured_nu(const ExplicitChart& chart, cplx z, const OracleOptions& opt = {});

Mat2 inverse(const Mat2& g);
double riemann_norm_squared(const ChartTensors& t);

// chart point with the given z whose rho equals the target
ChartPoint point_at_rho(const ExplicitChart& chart, cplx z, double rho, double arg_xi = 0.0);

// formula identifiers: "Gamma^xi_zxi", "R^xi_xi,xibar,xi", ...
std::string gamma_id(int c, int a, int b);
std::string riemann_id(int d, int a, int b, int c);

struct FormulaEntry {
  std::string id;
  cplx value;
};
// independent Christoffel symbols (lower indices ordered) followed by all Riemann components
std::vector<FormulaEntry> formula_entries(const ChartTensors& t);

}  // namespace krf
