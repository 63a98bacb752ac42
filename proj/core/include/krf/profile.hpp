#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "krf/classes.hpp"
#include "krf/grid.hpp"

namespace krf {

struct Profile {
  GridPtr grid;
  std::vector<double> f;
  double a = 0.0;
  double b = 0.0;
  double t = 0.0;

  std::size_t size() const { return f.size(); }
};

struct DerivativeFields {
  double kappa = 1.0;
  std::vector<double> x;
  std::vector<double> f;
  std::vector<double> f_x;
  std::vector<double> f_xx;
  std::vector<double> f_rho;
  std::vector<double> f_rhorho;
  std::vector<double> fpp_over_fp;       // f_rhorho / f_rho, finite at the sections
  std::vector<double> logfp_rr;          // (log f_rho)_rhorho
  std::vector<double> logfp_rr_over_fp;  // (log f_rho)_rhorho / f_rho, finite at the sections
  std::vector<double> F_rho;             // F = n log f + log f_rho
  std::vector<double> F_rhorho;
  std::vector<double> F_rhorho_over_fp;

  std::size_t size() const { return x.size(); }
};

struct ValidationCheck {
  std::string name;
  bool pass = true;
  std::optional<std::size_t> node;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool ok() const;
  const ValidationCheck& get(const std::string& name) const;
};

struct ClassIntegral {
  double value = 0.0;
  double deviation = 0.0;  // value - (b - a)
};

Profile reference_profile(GridPtr grid, const ClassState& state);
Profile from_shape(GridPtr grid, double a0, double b0, const std::function<double(double)>& shape);

ValidationReport validate(const Profile& p);

DerivativeFields derivatives(const Profile& p, const BundleSpec& spec);

ClassIntegral class_integral(const DerivativeFields& d, const Grid& grid);

// x,rho,f,f_rho,f_rhorho,logfp_rr
void write_snapshot_csv(std::ostream& os, const Profile& p, const DerivativeFields& d);

// second-order differences on a uniform grid: central inside, one-sided at both ends
void diff_x(const std::vector<double>& v, double h, std::vector<double>& vx, std::vector<double>& vxx);

}  // namespace krf
