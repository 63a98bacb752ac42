#include "krf/classes.hpp"

#include <cmath>

#include "krf/errors.hpp"

namespace krf {

void BundleSpec::validate() const {
  if (n < 1) throw DomainError("spec.n must be >= 1");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("spec.lambda must be > 0");
  if (!std::isfinite(nu)) throw DomainError("spec.nu must be finite");
}

std::string to_string(TrichotomyCase c) {
  switch (c) {
    case TrichotomyCase::Collapse1: return "Collapse1";
    case TrichotomyCase::Collapse2i: return "Collapse2i";
    case TrichotomyCase::Extinct2ii: return "Extinct2ii";
    case TrichotomyCase::Contract2iii: return "Contract2iii";
  }
  return "?";
}

TrichotomyCase case_from_string(const std::string& s) {
  for (auto c : {TrichotomyCase::Collapse1, TrichotomyCase::Collapse2i,
                 TrichotomyCase::Extinct2ii, TrichotomyCase::Contract2iii})
    if (to_string(c) == s) return c;
  throw DomainError("unknown case '" + s + "'");
}

bool is_collapse(TrichotomyCase c) {
  return c == TrichotomyCase::Collapse1 || c == TrichotomyCase::Collapse2i;
}

static void check_classes(double a0, double b0) {
  if (!std::isfinite(a0) || !std::isfinite(b0)) throw DomainError("class coefficients must be finite");
  if (!(a0 > 0.0)) throw DomainError("a0 must be > 0");
  if (!(b0 > a0)) throw DomainError("b0 must be > a0");
}

TrichotomyCase classify(const BundleSpec& spec, double a0, double b0) {
  spec.validate();
  check_classes(a0, b0);
  const double nu = spec.nu, lam = spec.lambda;
  if (nu <= lam) return TrichotomyCase::Collapse1;
  const double lhs = (nu - lam) * b0;
  const double rhs = (nu + lam) * a0;
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  if (std::abs(lhs - rhs) <= kExtinctionTol * scale) return TrichotomyCase::Extinct2ii;
  return lhs < rhs ? TrichotomyCase::Collapse2i : TrichotomyCase::Contract2iii;
}

FlowSchedule blow_up_time(const BundleSpec& spec, double a0, double b0) {
  FlowSchedule s;
  s.kase = classify(spec, a0, b0);
  s.a0 = a0;
  s.b0 = b0;
  s.da_dt = (spec.lambda - spec.nu) / spec.lambda;
  s.db_dt = -(spec.nu + spec.lambda) / spec.lambda;
  if (is_collapse(s.kase))
    s.T = (b0 - a0) / 2.0;
  else
    s.T = a0 * spec.lambda / (spec.nu - spec.lambda);
  return s;
}

ClassState class_at(const FlowSchedule& schedule, double a0, double b0, double t) {
  if (!(t >= 0.0)) throw DomainError("t must be >= 0");
  if (t > schedule.T) throw DomainError("t exceeds blow-up time");
  return {a0 + schedule.da_dt * t, b0 + schedule.db_dt * t, t};
}

ClassState class_at(const FlowSchedule& schedule, double t) {
  return class_at(schedule, schedule.a0, schedule.b0, t);
}

std::pair<double, double> canonical_pairings(const BundleSpec& spec) {
  return {-spec.nu - spec.lambda, -spec.nu + spec.lambda};
}

}  // namespace krf
