#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "krf/chart.hpp"
#include "krf/classes.hpp"
#include "krf/flow.hpp"

namespace krf::cli {

struct InitialConfig {
  std::string kind = "reference";  // reference | shape
  std::vector<double> shape_coeffs;  // polynomial in x, shape(0)=0, shape(1)=1
};

struct VerifyConfig {
  int k = 2;
  int points = 20;
  unsigned long long seed = 1;
  double tol = 1e-5;
  std::vector<ChartPoint> explicit_points;
  std::string perturb;  // formula id whose closed form gets perturbed
  std::vector<double> profile_coeffs{1.0, 2.0, 0.6, -0.4};
};

struct RunConfig {
  BundleSpec spec{1, 1.0, 2.0};
  double a0 = 1.0;
  double b0 = 3.0;
  int m = 257;
  double kappa = 1.0;
  SolverConfig solver;
  InitialConfig initial;
  std::string out_dir = "out";
  bool plots = true;
  VerifyConfig verify;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

// field-addressed checks of cross-field constraints; throws ConfigError
void validate_config(const RunConfig& cfg);

}  // namespace krf::cli
