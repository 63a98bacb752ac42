#include "krf/flow.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "krf/curvature.hpp"
#include "krf/errors.hpp"
#include "krf/singularity.hpp"

namespace krf {

void SolverConfig::validate() const {
  if (!(dt0 > 0.0)) throw DomainError("solver.dt0 must be > 0");
  if (!(cfl > 0.0 && cfl <= 1.0)) throw DomainError("solver.cfl must be in (0, 1]");
  if (!(theta >= 0.5 && theta <= 1.0)) throw DomainError("solver.theta must be in [0.5, 1]");
  if (!(eps_T > 0.0 && eps_T < 1.0)) throw DomainError("solver.eps_T must be in (0, 1)");
  if (snapshot_cadence <= 0) throw DomainError("solver.snapshot_cadence must be > 0");
  if (max_steps <= 0) throw DomainError("solver.max_steps must be > 0");
}

std::string to_string(TerminationKind k) {
  switch (k) {
    case TerminationKind::ReachedT: return "ReachedT";
    case TerminationKind::InvariantViolation: return "InvariantViolation";
    case TerminationKind::MaxSteps: return "MaxSteps";
  }
  return "?";
}

std::vector<double> rhs(const DerivativeFields& d, const BundleSpec& spec) {
  const std::size_t N = d.size();
  const double k = d.kappa, nl = spec.nu / spec.lambda;
  for (std::size_t i = 0; i < N; ++i)
    if (!(d.f_x[i] > 0.0)) throw AdmissibilityError(i, "f_x <= 0");
  std::vector<double> r(N);
  for (std::size_t i = 1; i + 1 < N; ++i) r[i] = d.F_rho[i] - nl;
  r[0] = k - nl;
  r[N - 1] = -k - nl;
  return r;
}

double stable_dt(const Profile& p, const SolverConfig& cfg) {
  const Grid& g = *p.grid;
  const std::size_t N = g.size();
  double q = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < N; ++i) {
    const double fx = (p.f[i + 1] - p.f[i - 1]) / (2.0 * g.h);
    q = std::min(q, fx / (g.kappa * g.x[i] * (1.0 - g.x[i])));
  }
  return std::min(cfg.dt0, cfg.cfl * g.h * g.h * q);
}

static void check_state(const Profile& p, double tol) {
  const std::size_t N = p.f.size();
  for (std::size_t i = 0; i < N; ++i)
    if (!std::isfinite(p.f[i])) throw InvariantViolation(i, "non_finite");
  if (!(-3.0 * p.f[0] + 4.0 * p.f[1] - p.f[2] > 0.0)) throw InvariantViolation(0, "monotonicity");
  for (std::size_t i = 1; i < N; ++i)
    if (!(p.f[i] > p.f[i - 1])) throw InvariantViolation(i, "monotonicity");
  if (!(3.0 * p.f[N - 1] - 4.0 * p.f[N - 2] + p.f[N - 3] > 0.0)) throw InvariantViolation(N - 1, "monotonicity");
  for (std::size_t i = 1; i + 1 < N; ++i)
    if (!(p.f[i] > p.a - tol && p.f[i] < p.b + tol)) throw InvariantViolation(i, "max_principle");
}

FlowState step(const FlowState& s, const BundleSpec& spec, const FlowSchedule& schedule, const SolverConfig& cfg,
               double t_limit) {
  if (t_limit < 0.0) t_limit = schedule.T * (1.0 - cfg.eps_T);
  if (!(s.t < t_limit)) throw DomainError("step requested at or beyond the stop time");
  const Profile& p = s.profile;
  const Grid& g = *p.grid;
  const std::size_t N = g.size(), M = N - 2;
  const double k = g.kappa, h = g.h, nl = spec.nu / spec.lambda, th = cfg.theta;

  double dt = stable_dt(p, cfg);
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvariantViolation(0, "monotonicity");
  double t_new = s.t + dt;
  if (t_new >= t_limit) {
    t_new = t_limit;
    dt = t_limit - s.t;
  }
  const double a_new = schedule.a_at(t_new), b_new = schedule.b_at(t_new);

  // f_new - th*dt*D*d2(f_new) = f + (1-th)*dt*D*d2(f) + dt*E, D = k x(1-x)/f_x frozen
  std::vector<double> lo(M), di(M), up(M), r(M);
  for (std::size_t j = 0; j < M; ++j) {
    const std::size_t i = j + 1;
    const double x = g.x[i], w = x * (1.0 - x);
    const double fx = (p.f[i + 1] - p.f[i - 1]) / (2.0 * h);
    const double D = k * w / fx;
    const double E = k * (1.0 - 2.0 * x) + spec.n * k * w * fx / p.f[i] - nl;
    const double c = dt * D / (h * h);
    const double lap = p.f[i + 1] - 2.0 * p.f[i] + p.f[i - 1];
    lo[j] = -th * c;
    up[j] = -th * c;
    di[j] = 1.0 + 2.0 * th * c;
    r[j] = p.f[i] + (1.0 - th) * c * lap + dt * E;
  }
  r[0] -= lo[0] * a_new;
  r[M - 1] -= up[M - 1] * b_new;

  // Thomas algorithm
  for (std::size_t j = 1; j < M; ++j) {
    const double m = lo[j] / di[j - 1];
    di[j] -= m * up[j - 1];
    r[j] -= m * r[j - 1];
  }
  FlowState out;
  out.profile.grid = p.grid;
  out.profile.f.resize(N);
  out.profile.f[0] = a_new;
  out.profile.f[N - 1] = b_new;
  out.profile.f[M] = r[M - 1] / di[M - 1];
  for (std::size_t j = M - 1; j-- > 0;) out.profile.f[j + 1] = (r[j] - up[j] * out.profile.f[j + 2]) / di[j];
  out.profile.a = a_new;
  out.profile.b = b_new;
  out.profile.t = t_new;
  out.t = t_new;
  out.step_count = s.step_count + 1;

  check_state(out.profile, 1e-10 * (schedule.b0 - schedule.a0));
  return out;
}

double fiber_diameter(const DerivativeFields& d) {
  const std::size_t N = d.size();
  const double h = 1.0 / static_cast<double>(N - 1);
  const std::size_t Q = 2 * (N - 1);
  const double dth = 0.5 * std::numbers::pi / Q;
  double s = 0.0;
  for (std::size_t q = 0; q < Q; ++q) {
    const double th = (q + 0.5) * dth;
    const double x = std::sin(th) * std::sin(th);
    const double u = x / h;
    std::size_t i = std::min(static_cast<std::size_t>(u), N - 2);
    const double w = u - static_cast<double>(i);
    const double fx = (1.0 - w) * d.f_x[i] + w * d.f_x[i + 1];
    s += 2.0 * std::sqrt(std::max(fx, 0.0) / d.kappa);
  }
  return s * dth;
}

MonitorSet monitors(const FlowState& s, const BundleSpec& spec, const FlowSchedule& schedule) {
  const Profile& p = s.profile;
  const DerivativeFields d = derivatives(p, spec);
  const CurvatureFields c = riemann_norm_terms(d, spec);
  const std::size_t N = d.size();

  MonitorSet m;
  m.t = s.t;
  m.a_t = schedule.a_at(s.t);
  m.b_t = schedule.b_at(s.t);
  m.min_f = p.f[0];
  m.max_f = p.f[0];
  m.R_min = c.R[0];
  m.R_max = c.R[0];
  for (std::size_t i = 0; i < N; ++i) {
    m.sup_f_rho = std::max(m.sup_f_rho, d.f_rho[i]);
    m.sup_abs_fpp_over_fp = std::max(m.sup_abs_fpp_over_fp, std::abs(d.fpp_over_fp[i]));
    m.min_f = std::min(m.min_f, p.f[i]);
    m.max_f = std::max(m.max_f, p.f[i]);
    m.vol_proxy = std::max(m.vol_proxy, std::pow(p.f[i], spec.n) * d.f_rho[i]);
    m.R_min = std::min(m.R_min, c.R[i]);
    m.R_max = std::max(m.R_max, c.R[i]);
    if (c.K_lead[i] > m.K_lead) {
      m.K_lead = c.K_lead[i];
      m.K_lead_node = i;
    }
  }
  m.typeI_product = (schedule.T - s.t) * m.K_lead;
  m.fiber_diam = fiber_diameter(d);
  try {
    m.roundness_ratio = roundness(c).ratio;
  } catch (const DegenerateError&) {
    m.roundness_ratio = std::numeric_limits<double>::quiet_NaN();
  }
  m.trace_proxy = spec.n / (spec.lambda * m.min_f);
  m.base_dev = base_deviation(d, schedule);
  if (m.K_lead > 0.0) {
    const SplittingDiagnostics sd = splitting_factors(d, m.K_lead);
    m.s_orth = sd.s_orth;
    m.s1 = sd.s1;
    m.s2 = sd.s2;
    m.s3 = sd.s3;
  }
  return m;
}

RunRecord evolve(const Profile& p0, const BundleSpec& spec, const FlowSchedule& schedule, const SolverConfig& cfg) {
  spec.validate();
  cfg.validate();
  RunRecord rec;
  rec.spec = spec;
  rec.schedule = schedule;
  rec.config = cfg;
  if (!is_collapse(schedule.kase))
    rec.warnings.push_back("case " + to_string(schedule.kase) + " is outside the accepted scope; running best-effort");

  const double t_end = schedule.T * (1.0 - cfg.eps_T);
  FlowState s{p0, p0.t, 0};
  rec.snapshots.push_back(s.profile);
  rec.termination.kind = TerminationKind::ReachedT;
  try {
    while (s.t < t_end) {
      if (s.step_count >= cfg.max_steps) {
        rec.termination = {TerminationKind::MaxSteps, 0, "max_steps reached"};
        break;
      }
      s = step(s, spec, schedule, cfg, t_end);
      rec.monitors.push_back(monitors(s, spec, schedule));
      if (s.step_count % cfg.snapshot_cadence == 0 && s.t < t_end) rec.snapshots.push_back(s.profile);
    }
  } catch (const InvariantViolation& e) {
    rec.termination = {TerminationKind::InvariantViolation, e.node, e.kind};
  } catch (const AdmissibilityError& e) {
    rec.termination = {TerminationKind::InvariantViolation, e.node, "admissibility"};
  }
  if (s.step_count > 0 && rec.snapshots.back().t != s.t) rec.snapshots.push_back(s.profile);
  rec.steps = s.step_count;
  return rec;
}

FlowState integrate_to(const Profile& p0, const BundleSpec& spec, const FlowSchedule& schedule,
                       const SolverConfig& cfg, double t_target) {
  cfg.validate();
  FlowState s{p0, p0.t, 0};
  while (s.t < t_target) {
    if (s.step_count >= cfg.max_steps) throw DomainError("max_steps reached before the target time");
    s = step(s, spec, schedule, cfg, t_target);
  }
  return s;
}

static void put(std::ostream& os, double v) {
  if (std::isnan(v)) {
    os << "nan";
    return;
  }
  if (std::isinf(v)) {
    os << (v < 0 ? "-inf" : "inf");
    return;
  }
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  os.write(buf, r.ptr - buf);
}

const char* const kMonitorColumns =
    "t,a_t,b_t,sup_f_rho,sup_abs_fpp_over_fp,min_f,max_f,vol_proxy,R_min,R_max,K_lead,typeI_product,fiber_diam,"
    "roundness_ratio,trace_proxy";

void write_monitors_csv(std::ostream& os, const std::vector<MonitorSet>& rows) {
  os << kMonitorColumns << '\n';
  for (const auto& m : rows) {
    const double v[] = {m.t,      m.a_t,   m.b_t,   m.sup_f_rho,     m.sup_abs_fpp_over_fp,
                        m.min_f,  m.max_f, m.vol_proxy, m.R_min,    m.R_max,
                        m.K_lead, m.typeI_product, m.fiber_diam, m.roundness_ratio, m.trace_proxy};
    for (std::size_t j = 0; j < std::size(v); ++j) {
      if (j) os << ',';
      put(os, v[j]);
    }
    os << '\n';
  }
}

void write_splitting_csv(std::ostream& os, const std::vector<MonitorSet>& rows) {
  os << "t,K_lead,K_lead_node,base_dev,s_orth,s1,s2,s3\n";
  for (const auto& m : rows) {
    put(os, m.t);
    os << ',';
    put(os, m.K_lead);
    os << ',' << m.K_lead_node << ',';
    put(os, m.base_dev);
    os << ',';
    put(os, m.s_orth);
    os << ',';
    put(os, m.s1);
    os << ',';
    put(os, m.s2);
    os << ',';
    put(os, m.s3);
    os << '\n';
  }
}

}  // namespace krf
