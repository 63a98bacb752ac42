#pragma once

#include <string>
#include <utility>

namespace krf {

struct BundleSpec {
  int n = 1;
  double nu = 1.0;
  double lambda = 1.0;

  void validate() const;
  double nu_over_lambda() const { return nu / lambda; }
};

enum class TrichotomyCase { Collapse1, Collapse2i, Extinct2ii, Contract2iii };

std::string to_string(TrichotomyCase c);
TrichotomyCase case_from_string(const std::string& s);
bool is_collapse(TrichotomyCase c);

struct ClassState {
  double a = 0.0;
  double b = 0.0;
  double t = 0.0;
};

struct FlowSchedule {
  double T = 0.0;
  double da_dt = 0.0;
  double db_dt = 0.0;
  TrichotomyCase kase = TrichotomyCase::Collapse1;
  double a0 = 0.0;
  double b0 = 0.0;

  double a_at(double t) const { return a0 + da_dt * t; }
  double b_at(double t) const { return b0 + db_dt * t; }
};

// relative tolerance on (nu-lambda)*b0 - (nu+lambda)*a0 for the equality case
inline constexpr double kExtinctionTol = 1e-12;

TrichotomyCase classify(const BundleSpec& spec, double a0, double b0);
FlowSchedule blow_up_time(const BundleSpec& spec, double a0, double b0);
ClassState class_at(const FlowSchedule& schedule, double a0, double b0, double t);
ClassState class_at(const FlowSchedule& schedule, double t);

// (<c1(K_M), [Sigma_inf]>, <c1(K_M), [Sigma_0]>)
std::pair<double, double> canonical_pairings(const BundleSpec& spec);

}  // namespace krf
