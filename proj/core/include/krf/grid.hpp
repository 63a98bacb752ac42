#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace krf {

// Uniform grid on the compactified coordinate x in [0,1], x = e^{k rho}/(1+e^{k rho}).
// Node 0 and node m+1 sit on the two sections (rho = -inf, +inf).
struct Grid {
  int m = 0;
  double kappa = 1.0;
  double h = 0.0;
  std::vector<double> x;
  std::vector<double> rho;

  std::size_t size() const { return x.size(); }
  std::size_t last() const { return x.size() - 1; }

  static std::shared_ptr<const Grid> uniform(int m, double kappa = 1.0);
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(int m, double kappa = 1.0);

double rho_of_x(double x, double kappa);
double x_of_rho(double rho, double kappa);

}  // namespace krf
