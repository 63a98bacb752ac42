#include "krf/chart.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "krf/errors.hpp"

namespace krf {

namespace {

const char* kName[2] = {"z", "xi"};

void check_point(const ChartPoint& p) {
  if (p.xi == cplx(0.0, 0.0)) throw DomainError("chart point has xi = 0 (the zero section)");
  if (!std::isfinite(p.z.real()) || !std::isfinite(p.z.imag()) || !std::isfinite(p.xi.real()) ||
      !std::isfinite(p.xi.imag()))
    throw DomainError("chart point is not finite");
}

}  // namespace

ChartData chart_data(const ExplicitChart& chart, const ChartPoint& p) {
  check_point(p);
  const double k = chart.k;
  const cplx z = p.z, zb = std::conj(p.z);
  const double w = 1.0 + std::norm(z);
  ChartData c;
  c.rho = std::log(std::norm(p.xi)) + k * std::log(w);
  c.rho_z = k * zb / w;
  c.rho_xi = 1.0 / p.xi;
  c.rho_zzbar = k / (w * w);
  c.rho_zz = -k * zb * zb / (w * w);
  c.rho_inv = w * w / k;
  c.rho_zzbar_z = -2.0 * k * zb / (w * w * w);
  c.A_zbar = -2.0 / (w * w);
  c.B = c.rho_inv * c.rho_z * c.rho_zzbar_z - c.rho_zz;
  c.B_zbar = -2.0 * k * zb / (w * w * w);
  c.g_base = 1.0 / (w * w);
  return c;
}

Mat2 metric_closed_form(const ProfileJet& jet, const ChartData& cd) {
  Mat2 g{};
  g[0][0] = jet.f * cd.rho_zzbar + jet.f_rho * std::norm(cd.rho_z);
  g[0][1] = jet.f_rho * cd.rho_z * std::conj(cd.rho_xi);
  g[1][0] = jet.f_rho * cd.rho_xi * std::conj(cd.rho_z);
  g[1][1] = jet.f_rho * std::norm(cd.rho_xi);
  return g;
}

ChartTensors christoffel_closed_form(const ProfileJet& jet, const ExplicitChart& chart, const ChartPoint& p) {
  const ChartData cd = chart_data(chart, p);
  ChartTensors t;
  t.g = metric_closed_form(jet, cd);
  const double g1 = jet.fpp_over_fp, lf1 = jet.logf_r();
  const cplx rz = cd.rho_z, rx = cd.rho_xi;
  auto& G = t.Gamma;
  G[1][1][1] = (g1 - 1.0) * rx;
  G[0][1][1] = 0.0;
  G[1][0][1] = G[1][1][0] = (g1 - lf1) * rz;
  G[0][0][1] = G[0][1][0] = lf1 * rx;
  G[1][0][0] = (g1 - 2.0 * lf1) * rz * rz / rx - cd.B / rx;
  G[0][0][0] = 2.0 * lf1 * rz + cd.rho_inv * cd.rho_zzbar_z;
  return t;
}

ChartTensors riemann_closed_form(const ProfileJet& jet, const ExplicitChart& chart, const ChartPoint& p) {
  const ChartData cd = chart_data(chart, p);
  ChartTensors t;
  t.g = metric_closed_form(jet, cd);
  const double lf1 = jet.logf_r(), lf2 = jet.logf_rr();
  const double lp1 = jet.fpp_over_fp, lp2 = jet.logfp_rr;
  const cplx rz = cd.rho_z, rzb = std::conj(rz), rx = cd.rho_xi, rxb = std::conj(rx);
  const double rzzb = cd.rho_zzbar;
  auto& R = t.Riem;
  // no xi index
  R[0][0][0][0] = -lf2 * rzb * 2.0 * rz - lf1 * 2.0 * rzzb - cd.A_zbar;
  R[1][0][0][0] = -(lp2 - 2.0 * lf2) * rzb * rz * rz / rx - (lp1 - 2.0 * lf1) * 2.0 * rzzb * rz / rx + cd.B_zbar / rx;
  // one xi index
  R[0][0][1][0] = -lf2 * rxb * 2.0 * rz;
  R[0][0][0][1] = R[0][1][0][0] = -lf2 * rzb * rx;
  R[1][0][1][0] = -(lp2 - 2.0 * lf2) * (rxb / rx) * rz * rz;
  R[1][1][0][0] = R[1][0][0][1] = -(lp2 - lf2) * rzb * rz - (lp1 - lf1) * rzzb;
  // two xi indices
  R[0][0][1][1] = R[0][1][1][0] = -lf2 * std::norm(rx);
  R[0][1][0][1] = 0.0;
  R[1][0][1][1] = R[1][1][1][0] = -(lp2 - lf2) * rxb * rz;
  R[1][1][0][1] = -lp2 * rzb * rx;
  // three xi indices
  R[0][1][1][1] = 0.0;
  R[1][1][1][1] = -lp2 * std::norm(rx);
  return t;
}

ChartTensors closed_form(const ProfileJet& jet, const ExplicitChart& chart, const ChartPoint& p) {
  ChartTensors t = christoffel_closed_form(jet, chart, p);
  t.Riem = riemann_closed_form(jet, chart, p).Riem;
  return t;
}

Mat2 inverse(const Mat2& g) {
  const cplx det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
  Mat2 r{};
  r[0][0] = g[1][1] / det;
  r[0][1] = -g[0][1] / det;
  r[1][0] = -g[1][0] / det;
  r[1][1] = g[0][0] / det;
  return r;
}

namespace {

template <std::size_t N>
using CArr = std::array<cplx, N>;

ChartPoint shifted(const ChartPoint& p, int dir, cplx delta) {
  ChartPoint q = p;
  if (dir == 0)
    q.z += delta;
  else
    q.xi += delta;
  return q;
}

double step_for(const ChartPoint& p, int dir, double h) {
  return dir == 0 ? h * std::max(1.0, std::abs(p.z)) : h * std::abs(p.xi);
}

// Wirtinger derivative d/dw (antiholo=false) or d/dwbar (antiholo=true) of G along coordinate dir,
// central differences with Richardson extrapolation.
template <std::size_t N, class F>
CArr<N> wirtinger(const F& G, const ChartPoint& p, int dir, bool antiholo, double h0, int levels,
                  double& err) {
  levels = std::max(levels, 2);
  const double hs = step_for(p, dir, h0);
  std::vector<std::vector<CArr<N>>> T(levels, std::vector<CArr<N>>(levels));
  for (int i = 0; i < levels; ++i) {
    const double h = hs / std::pow(2.0, i);
    const CArr<N> xp = G(shifted(p, dir, cplx(h, 0))), xm = G(shifted(p, dir, cplx(-h, 0)));
    const CArr<N> yp = G(shifted(p, dir, cplx(0, h))), ym = G(shifted(p, dir, cplx(0, -h)));
    const cplx s = antiholo ? cplx(0, 1) : cplx(0, -1);
    for (std::size_t c = 0; c < N; ++c) {
      const cplx dx = (xp[c] - xm[c]) / (2.0 * h), dy = (yp[c] - ym[c]) / (2.0 * h);
      T[i][0][c] = 0.5 * (dx + s * dy);
    }
    for (int j = 1; j <= i; ++j) {
      const double fac = std::pow(4.0, j) - 1.0;
      for (std::size_t c = 0; c < N; ++c) T[i][j][c] = T[i][j - 1][c] + (T[i][j - 1][c] - T[i - 1][j - 1][c]) / fac;
    }
  }
  const int L = levels - 1;
  double raw = 0.0, ext = 0.0, scale = 0.0;
  for (std::size_t c = 0; c < N; ++c) {
    raw = std::max(raw, std::abs(T[L][0][c] - T[L - 1][0][c]));
    ext = std::max(ext, std::abs(T[L][L][c] - T[L][L - 1][c]));
    scale = std::max(scale, std::abs(T[L][L][c]));
  }
  const double floor = 1e-9 * std::max(scale, 1.0);
  if (ext > raw && raw > floor)
    throw ConditioningError("Richardson extrapolation did not reduce the error estimate");
  if (ext > 1e-3 * std::max(scale, 1.0)) throw ConditioningError("difference quotients did not settle");
  err = std::max(err, ext);
  return T[L][L];
}

struct MetricEval {
  const ExplicitChart& chart;
  const PolynomialProfile& prof;

  Mat2 operator()(const ChartPoint& q) const {
    const ChartData cd = chart_data(chart, q);
    ProfileJet j;
    const double x = x_of_rho(cd.rho, prof.kappa());
    j.f = PolynomialProfile::eval(prof.coeffs(), x);
    j.f_rho = prof.f_rho_at_rho(cd.rho);
    return metric_closed_form(j, cd);
  }
};

CArr<4> flat(const Mat2& m) { return {m[0][0], m[0][1], m[1][0], m[1][1]}; }

}  // namespace

OracleResult chart_oracle(const ExplicitChart& chart, const PolynomialProfile& profile, const ChartPoint& p,
                          const OracleOptions& opt) {
  check_point(p);
  if (chart.n != 1) throw DomainError("chart oracle supports n = 1 only");
  const MetricEval metric{chart, profile};
  OracleResult out;

  // Gamma^c_{ab} = g^{c dbar} d_a g_{b dbar}, with g^{c dbar} = inv[d][c]
  double gerr = 0.0;
  auto gamma_at = [&](const ChartPoint& q, double* errp) {
    const Mat2 g = metric(q);
    const Mat2 gi = inverse(g);
    auto G = [&](const ChartPoint& r) { return flat(metric(r)); };
    double e = 0.0;
    CArr<8> out8{};
    for (int a = 0; a < 2; ++a) {
      const CArr<4> dg = wirtinger<4>(G, q, a, false, opt.h_metric, opt.levels, e);
      for (int c = 0; c < 2; ++c)
        for (int b = 0; b < 2; ++b) {
          cplx s = 0.0;
          for (int d = 0; d < 2; ++d) s += gi[d][c] * dg[2 * b + d];
          out8[4 * c + 2 * a + b] = s;
        }
    }
    if (errp) *errp = std::max(*errp, e);
    return out8;
  };

  out.tensors.g = metric(p);
  const CArr<8> gam = gamma_at(p, &gerr);
  for (int c = 0; c < 2; ++c)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) out.tensors.Gamma[c][a][b] = gam[4 * c + 2 * a + b];

  // R^D_{A Bbar C} = -d_Bbar Gamma^D_{AC}
  double rerr = 0.0;
  auto Gfun = [&](const ChartPoint& q) { return gamma_at(q, nullptr); };
  for (int b = 0; b < 2; ++b) {
    const CArr<8> dG = wirtinger<8>(Gfun, p, b, true, opt.h_outer, opt.levels, rerr);
    for (int d = 0; d < 2; ++d)
      for (int a = 0; a < 2; ++a)
        for (int c = 0; c < 2; ++c) out.tensors.Riem[d][a][b][c] = -dG[4 * d + 2 * a + c];
  }

  // Ric_{a bbar} = -d_a d_bbar log det g
  auto logdet = [&](const ChartPoint& q) {
    const Mat2 g = metric(q);
    return CArr<1>{std::log((g[0][0] * g[1][1] - g[0][1] * g[1][0]).real())};
  };
  double ricerr = 0.0;
  for (int b = 0; b < 2; ++b) {
    auto dbar = [&](const ChartPoint& q) {
      double e = 0.0;
      return wirtinger<1>(logdet, q, b, true, opt.h_metric, opt.levels, e);
    };
    for (int a = 0; a < 2; ++a) out.ricci[a][b] = -wirtinger<1>(dbar, p, a, false, opt.h_outer, opt.levels, ricerr)[0];
  }
  const Mat2 gi = inverse(out.tensors.g);
  cplx tr = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) tr += gi[b][a] * out.ricci[a][b];
  out.scalar_R = tr.real();
  const Mat2& g = out.tensors.g;
  out.det_g = (g[0][0] * g[1][1] - g[0][1] * g[1][0]).real();
  out.trace_base = (gi[0][0] * chart_data(chart, p).g_base).real();
  out.nu = measured_nu(chart, p.z, opt);
  out.err_gamma = gerr;
  out.err_riem = rerr;
  return out;
}

double measured_nu(const ExplicitChart& chart, cplx z, const OracleOptions& opt) {
  (void)chart;
  const ChartPoint p{z, cplx(1.0, 0.0)};
  auto loggs = [](const ChartPoint& q) { return CArr<1>{cplx(-2.0 * std::log(1.0 + std::norm(q.z)), 0.0)}; };
  auto dbar = [&](const ChartPoint& q) {
    double e = 0.0;
    return wirtinger<1>(loggs, q, 0, true, opt.h_metric, opt.levels, e);
  };
  double e = 0.0;
  const cplx ric = -wirtinger<1>(dbar, p, 0, false, opt.h_outer, opt.levels, e)[0];
  const double gs = 1.0 / std::pow(1.0 + std::norm(z), 2);
  return ric.real() / gs;
}

double riemann_norm_squared(const ChartTensors& t) {
  const Mat2 gi = inverse(t.g);
  // g^{C Dbar} = gi[D][C]
  cplx s = 0.0;
  for (int A = 0; A < 2; ++A)
    for (int B = 0; B < 2; ++B)
      for (int C = 0; C < 2; ++C)
        for (int D = 0; D < 2; ++D)
          for (int E = 0; E < 2; ++E)
            for (int F = 0; F < 2; ++F)
              for (int G = 0; G < 2; ++G)
                for (int H = 0; H < 2; ++H)
                  s += t.g[A][B] * gi[D][C] * gi[F][E] * gi[H][G] * t.Riem[A][C][F][G] *
                       std::conj(t.Riem[B][D][E][H]);
  return s.real();
}

ChartPoint point_at_rho(const ExplicitChart& chart, cplx z, double rho, double arg_xi) {
  const double r2 = std::exp(rho - chart.k * std::log(1.0 + std::norm(z)));
  return {z, std::polar(std::sqrt(r2), arg_xi)};
}

std::string gamma_id(int c, int a, int b) {
  return std::string("Gamma^") + kName[c] + "_" + kName[a] + kName[b];
}

std::string riemann_id(int d, int a, int b, int c) {
  return std::string("R^") + kName[d] + "_" + kName[a] + "," + kName[b] + "bar," + kName[c];
}

std::vector<FormulaEntry> formula_entries(const ChartTensors& t) {
  std::vector<FormulaEntry> out;
  for (int c = 0; c < 2; ++c)
    for (int a = 0; a < 2; ++a)
      for (int b = a; b < 2; ++b) out.push_back({gamma_id(c, a, b), t.Gamma[c][a][b]});
  for (int d = 0; d < 2; ++d)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c) out.push_back({riemann_id(d, a, b, c), t.Riem[d][a][b][c]});
  return out;
}

}  // namespace krf
