#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "krf/classes.hpp"
#include "krf/profile.hpp"

namespace krf {

struct SolverConfig {
  double dt0 = 1e-3;
  double cfl = 0.5;
  double theta = 1.0;
  double eps_T = 1e-3;
  long snapshot_cadence = 1000;
  long max_steps = 10'000'000;

  void validate() const;
};

struct FlowState {
  Profile profile;
  double t = 0.0;
  long step_count = 0;
};

struct MonitorSet {
  double t = 0.0;
  double a_t = 0.0;
  double b_t = 0.0;
  double sup_f_rho = 0.0;
  double sup_abs_fpp_over_fp = 0.0;
  double min_f = 0.0;
  double max_f = 0.0;
  double vol_proxy = 0.0;
  double R_min = 0.0;
  double R_max = 0.0;
  double K_lead = 0.0;
  double typeI_product = 0.0;
  double fiber_diam = 0.0;
  double roundness_ratio = 0.0;  // NaN when inf R_fib <= 0
  double trace_proxy = 0.0;
  // not part of monitors.csv
  std::size_t K_lead_node = 0;
  double base_dev = 0.0;
  double s_orth = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;
};

enum class TerminationKind { ReachedT, InvariantViolation, MaxSteps };
std::string to_string(TerminationKind k);

struct Termination {
  TerminationKind kind = TerminationKind::ReachedT;
  std::size_t node = 0;
  std::string what;
};

struct RunRecord {
  BundleSpec spec;
  FlowSchedule schedule;
  SolverConfig config;
  std::vector<MonitorSet> monitors;
  std::vector<Profile> snapshots;
  Termination termination;
  std::vector<std::string> warnings;
  long steps = 0;
};

// right-hand side of the profile equation at every node
std::vector<double> rhs(const DerivativeFields& d, const BundleSpec& spec);

// one semi-implicit step; never steps past t_limit (defaults to T(1 - eps_T))
FlowState step(const FlowState& s, const BundleSpec& spec, const FlowSchedule& schedule, const SolverConfig& cfg,
               double t_limit = -1.0);

// step size the solver would pick from this state (before clipping)
double stable_dt(const Profile& p, const SolverConfig& cfg);

RunRecord evolve(const Profile& p0, const BundleSpec& spec, const FlowSchedule& schedule, const SolverConfig& cfg);

// advance to exactly t_target without recording anything
FlowState integrate_to(const Profile& p0, const BundleSpec& spec, const FlowSchedule& schedule,
                       const SolverConfig& cfg, double t_target);

MonitorSet monitors(const FlowState& s, const BundleSpec& spec, const FlowSchedule& schedule);

// int sqrt(f_rho) d rho = int_0^{pi/2} 2 sqrt(f_x(sin^2 th)/kappa) d th
double fiber_diameter(const DerivativeFields& d);

extern const char* const kMonitorColumns;
void write_monitors_csv(std::ostream& os, const std::vector<MonitorSet>& rows);
void write_splitting_csv(std::ostream& os, const std::vector<MonitorSet>& rows);

}  // namespace krf
