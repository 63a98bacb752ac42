#include <cmath>
#include <limits>

#include "krf/errors.hpp"
#include "krf/grid.hpp"

namespace krf {

double rho_of_x(double x, double kappa) {
  if (x <= 0.0) return -std::numeric_limits<double>::infinity();
  if (x >= 1.0) return std::numeric_limits<double>::infinity();
  return std::log(x / (1.0 - x)) / kappa;
}

double x_of_rho(double rho, double kappa) {
  const double s = kappa * rho;
  if (s >= 0.0) return 1.0 / (1.0 + std::exp(-s));
  const double e = std::exp(s);
  return e / (1.0 + e);
}

std::shared_ptr<const Grid> Grid::uniform(int m, double kappa) {
  if (m < 3) throw DomainError("grid.m must be >= 3");
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw DomainError("grid.kappa must be > 0");
  auto g = std::make_shared<Grid>();
  g->m = m;
  g->kappa = kappa;
  g->h = 1.0 / (m + 1);
  g->x.resize(m + 2);
  g->rho.resize(m + 2);
  for (int i = 0; i <= m + 1; ++i) {
    g->x[i] = static_cast<double>(i) / (m + 1);
    g->rho[i] = rho_of_x(g->x[i], kappa);
  }
  g->x[m + 1] = 1.0;
  return g;
}

GridPtr make_grid(int m, double kappa) { return Grid::uniform(m, kappa); }

}  // namespace krf
