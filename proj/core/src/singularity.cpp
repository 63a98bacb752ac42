#include "krf/singularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "krf/errors.hpp"

namespace krf {

std::string to_string(TypeKind k) {
  switch (k) {
    case TypeKind::TypeI: return "TypeI";
    case TypeKind::TypeII: return "TypeII";
    case TypeKind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

BlowupSequence BlowupSequence::from_monitors(const std::vector<MonitorSet>& rows, const Grid& grid) {
  BlowupSequence s;
  s.samples.reserve(rows.size());
  for (const auto& m : rows) s.samples.push_back({m.t, m.K_lead, grid.x.at(m.K_lead_node)});
  return s;
}

std::vector<std::size_t> tail_window(const std::vector<double>& t, double T, double decades) {
  double tau_min = std::numeric_limits<double>::infinity();
  for (double ti : t)
    if (T - ti > 0.0) tau_min = std::min(tau_min, T - ti);
  std::vector<std::size_t> idx;
  if (!std::isfinite(tau_min)) return idx;
  const double cut = tau_min * std::pow(10.0, decades) * (1.0 + 1e-12);
  for (std::size_t i = 0; i < t.size(); ++i)
    if (T - t[i] > 0.0 && T - t[i] <= cut) idx.push_back(i);
  return idx;
}

TypeVerdict classify_type(const std::vector<double>& t, const std::vector<double>& K, double T,
                          const TypeThresholds& th) {
  if (t.size() != K.size()) throw DomainError("classify_type: size mismatch");
  double tau_min = std::numeric_limits<double>::infinity(), tau_max = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double tau = T - t[i];
    if (!(tau > 0.0) || !(K[i] > 0.0) || !std::isfinite(K[i])) continue;
    tau_min = std::min(tau_min, tau);
    tau_max = std::max(tau_max, tau);
  }
  TypeVerdict v;
  if (!(tau_max > 0.0)) throw InsufficientData("no samples before T");
  v.decades_covered = std::log10(tau_max / tau_min);
  if (v.decades_covered < th.decades - 1e-9)
    throw InsufficientData("history covers " + std::to_string(v.decades_covered) + " decades of T-t, need " +
                           std::to_string(th.decades));

  const auto idx = tail_window(t, T, th.decades);
  std::vector<double> tau, prod;
  for (std::size_t i : idx) {
    if (!(K[i] > 0.0) || !std::isfinite(K[i])) continue;
    tau.push_back(T - t[i]);
    prod.push_back((T - t[i]) * K[i]);
  }
  if (prod.size() < 3) throw InsufficientData("too few tail samples");
  v.tail_samples = prod.size();

  std::vector<double> sorted = prod;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  const double c = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  v.limsup_estimate = c;
  v.tail_max = sorted.back();
  double var = 0.0;
  for (double p : prod) var = std::max(var, std::abs(p - c));
  v.tail_variation = c > 0.0 ? var / c : std::numeric_limits<double>::infinity();
  v.slope = power_fit(tau, prod).slope;

  // monotone divergence: the product grows as T-t shrinks
  std::vector<std::size_t> order(tau.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return tau[a] > tau[b]; });
  v.monotone = true;
  for (std::size_t i = 1; i < order.size(); ++i)
    if (prod[order[i]] < prod[order[i - 1]] * (1.0 - 1e-12)) {
      v.monotone = false;
      break;
    }

  if (c > 0.0 && v.tail_variation < th.tail_variation)
    v.kind = TypeKind::TypeI;
  else if (v.slope < th.slope && v.monotone)
    v.kind = TypeKind::TypeII;
  else
    v.kind = TypeKind::Inconclusive;
  return v;
}

TypeVerdict classify_type(const std::vector<MonitorSet>& history, double T, const TypeThresholds& th) {
  std::vector<double> t, K;
  t.reserve(history.size());
  K.reserve(history.size());
  for (const auto& m : history) {
    t.push_back(m.t);
    K.push_back(m.K_lead);
  }
  return classify_type(t, K, T, th);
}

TypeVerdict classify_type(const BlowupSequence& seq, double T, const TypeThresholds& th) {
  std::vector<double> t, K;
  for (const auto& s : seq.samples) {
    t.push_back(s.t);
    K.push_back(s.K);
  }
  return classify_type(t, K, T, th);
}

SplittingDiagnostics splitting_factors(const DerivativeFields& d, double K) {
  if (!(K > 0.0)) throw DomainError("splitting_factors needs K > 0");
  SplittingDiagnostics s;
  double a1 = 0.0, a2 = 0.0, a3 = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double f = d.f[i], fr = std::max(d.f_rho[i], 0.0), g = d.fpp_over_fp[i];
    s.s_orth = std::max(s.s_orth, std::sqrt(fr / f));
    a1 = std::max(a1, std::abs(g) / std::sqrt(f));
    a2 = std::max(a2, std::sqrt(fr) * (0.5 * std::abs(g) + 1.0) / f);
    a3 = std::max(a3, std::abs(g) / f);
  }
  const double rk = std::sqrt(K);
  s.s1 = a1 / (2.0 * rk);
  s.s2 = a2 / rk;
  s.s3 = a3 / rk;
  return s;
}

Roundness roundness(const CurvatureFields& c) {
  const std::size_t N = c.R_fib.size();
  if (N < 3) throw DegenerateError("too few nodes");
  double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0.0;
  for (std::size_t i = 1; i + 1 < N; ++i) {
    lo = std::min(lo, c.R_fib[i]);
    hi = std::max(hi, c.R_fib[i]);
    sum += c.R_fib[i];
  }
  if (!(lo > 0.0)) throw DegenerateError("fiber curvature proxy is not positive everywhere");
  return {hi / lo, sum / static_cast<double>(N - 2)};
}

double base_deviation(const DerivativeFields& d, const FlowSchedule& schedule) {
  const double aT = schedule.a_at(schedule.T);
  double dev = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d.x[i] >= 0.25 && d.x[i] <= 0.75) dev = std::max(dev, std::abs(d.f[i] - aT));
  return dev;
}

GHDiagnostics gh_diagnostics(const DerivativeFields& d, const FlowSchedule& schedule, double t) {
  (void)t;
  return {fiber_diameter(d), base_deviation(d, schedule)};
}

Summary summarize(const FlowSchedule& schedule, const std::vector<MonitorSet>& rows, const TypeThresholds& th) {
  if (rows.empty()) throw InsufficientData("empty monitor history");
  Summary s;
  s.kase = schedule.kase;
  s.T = schedule.T;
  s.thresholds = th;
  s.verdict = classify_type(rows, schedule.T, th);

  std::vector<double> t;
  for (const auto& m : rows) t.push_back(m.t);
  const auto idx = tail_window(t, schedule.T, th.decades);
  std::vector<double> tau, fd, sr, K, so, s1, s2, s3;
  for (std::size_t i : idx) {
    const auto& m = rows[i];
    tau.push_back(schedule.T - m.t);
    fd.push_back(m.fiber_diam);
    sr.push_back(m.sup_f_rho);
    K.push_back(m.K_lead);
    so.push_back(m.s_orth);
    s1.push_back(m.s1);
    s2.push_back(m.s2);
    s3.push_back(m.s3);
  }
  s.fiber_diam_exponent = power_fit(tau, fd).slope;
  s.suprho_exponent = power_fit(tau, sr).slope;
  s.s_orth_exponent = power_fit(K, so).slope;
  s.s1_exponent = power_fit(K, s1).slope;
  s.s2_exponent = power_fit(K, s2).slope;
  s.s3_exponent = power_fit(K, s3).slope;

  const auto last = tail_window(t, schedule.T, 1.0);
  std::vector<double> tl, sl;
  for (std::size_t i : last) {
    tl.push_back(schedule.T - rows[i].t);
    sl.push_back(rows[i].sup_f_rho);
  }
  s.suprho_r2_last_decade = linear_fit(tl, sl).r2;
  s.roundness_final = rows.back().roundness_ratio;
  s.base_dev_final = rows.back().base_dev;
  return s;
}

}  // namespace krf
