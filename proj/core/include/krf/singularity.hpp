#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "krf/classes.hpp"
#include "krf/curvature.hpp"
#include "krf/flow.hpp"
#include "krf/profile.hpp"

namespace krf {

struct BlowupSample {
  double t = 0.0;
  double K = 0.0;
  double x = 0.0;  // location of the maximum
};

struct BlowupSequence {
  std::vector<BlowupSample> samples;

  static BlowupSequence from_monitors(const std::vector<MonitorSet>& rows, const Grid& grid);
};

enum class TypeKind { TypeI, TypeII, Inconclusive };
std::string to_string(TypeKind k);

struct TypeThresholds {
  double tail_variation = 0.25;
  double slope = -0.2;
  double decades = 2.0;
};

struct TypeVerdict {
  TypeKind kind = TypeKind::Inconclusive;
  double limsup_estimate = 0.0;  // median of (T-t)K over the tail
  double tail_max = 0.0;         // max of (T-t)K over the tail
  double tail_variation = 0.0;
  double slope = 0.0;  // d log((T-t)K) / d log(T-t) over the tail
  bool monotone = false;
  std::size_t tail_samples = 0;
  double decades_covered = 0.0;
};

TypeVerdict classify_type(const std::vector<double>& t, const std::vector<double>& K, double T,
                          const TypeThresholds& th = {});
TypeVerdict classify_type(const std::vector<MonitorSet>& history, double T, const TypeThresholds& th = {});
TypeVerdict classify_type(const BlowupSequence& seq, double T, const TypeThresholds& th = {});

struct SplittingDiagnostics {
  double s_orth = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;
};

SplittingDiagnostics splitting_factors(const DerivativeFields& d, double K);

struct Roundness {
  double ratio = 1.0;
  double mean = 0.0;
};

Roundness roundness(const CurvatureFields& c);

struct GHDiagnostics {
  double fiber_diam = 0.0;
  double base_dev = 0.0;
};

double base_deviation(const DerivativeFields& d, const FlowSchedule& schedule);
GHDiagnostics gh_diagnostics(const DerivativeFields& d, const FlowSchedule& schedule, double t);

struct Fit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t samples = 0;
};

Fit linear_fit(const std::vector<double>& x, const std::vector<double>& y);
// y = C x^p fitted in log-log; slope is the exponent p
Fit power_fit(const std::vector<double>& x, const std::vector<double>& y);

// indices whose T - t lies within the final `decades` decades of the recorded approach
std::vector<std::size_t> tail_window(const std::vector<double>& t, double T, double decades);

struct Summary {
  TrichotomyCase kase = TrichotomyCase::Collapse1;
  double T = 0.0;
  TypeVerdict verdict;
  double fiber_diam_exponent = 0.0;
  double suprho_exponent = 0.0;
  double suprho_r2_last_decade = 0.0;
  double roundness_final = 0.0;
  double base_dev_final = 0.0;
  double s_orth_exponent = 0.0;
  double s1_exponent = 0.0;
  double s2_exponent = 0.0;
  double s3_exponent = 0.0;
  TypeThresholds thresholds;
};

Summary summarize(const FlowSchedule& schedule, const std::vector<MonitorSet>& rows, const TypeThresholds& th = {});

}  // namespace krf
