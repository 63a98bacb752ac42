#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "krf/analytic_profile.hpp"
#include "krf/errors.hpp"
#include "krf/profile.hpp"

using namespace krf;

namespace {

// reference profile written directly in rho
double fhat(double rho, double a, double b, double k) { return a + (b - a) / (1.0 + std::exp(-k * rho)); }
double fhat_rho(double rho, double a, double b, double k) {
  const double e = std::exp(k * rho);
  return (b - a) * k * e / ((1.0 + e) * (1.0 + e));
}

// Richardson-extrapolated central second derivative
template <class F>
double d2(F f, double r, double h = 1e-2) {
  auto c = [&](double s) { return (f(r + s) - 2.0 * f(r) + f(r - s)) / (s * s); };
  const double c1 = c(h), c2 = c(h / 2), c3 = c(h / 4);
  const double r1 = c2 + (c2 - c1) / 3.0, r2 = c3 + (c3 - c2) / 3.0;
  return r2 + (r2 - r1) / 15.0;
}
template <class F>
double d1(F f, double r, double h = 1e-2) {
  auto c = [&](double s) { return (f(r + s) - f(r - s)) / (2.0 * s); };
  const double c1 = c(h), c2 = c(h / 2), c3 = c(h / 4);
  const double r1 = c2 + (c2 - c1) / 3.0, r2 = c3 + (c3 - c2) / 3.0;
  return r2 + (r2 - r1) / 15.0;
}

const BundleSpec kSpec{1, 1.0, 2.0};

}  // namespace

TEST_CASE("make_grid") {
  auto g = make_grid(3, 1.0);
  REQUIRE(g->size() == 5);
  CHECK(g->x[1] == 0.25);
  CHECK(g->x[2] == 0.5);
  CHECK(g->x[3] == 0.75);
  CHECK(g->x[0] == 0.0);
  CHECK(g->x[4] == 1.0);
  CHECK(std::isinf(g->rho[0]));
  CHECK(g->rho[0] < 0);
  CHECK(std::isinf(g->rho[4]));
  CHECK(g->rho[4] > 0);
  for (double k : {0.5, 1.0, 2.0, 3.0}) CHECK(make_grid(9, k)->rho[5] == 0.0);
  const double e2 = std::exp(2.0);
  CHECK(rho_of_x(e2 / (1.0 + e2), 2.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(x_of_rho(1.0, 2.0) == doctest::Approx(e2 / (1.0 + e2)).epsilon(1e-15));
  CHECK_THROWS_AS(make_grid(2, 1.0), DomainError);
  CHECK_THROWS_AS(make_grid(9, 0.0), DomainError);
  auto g2 = make_grid(64, 1.0);
  for (std::size_t i = 1; i < g2->size(); ++i) CHECK(g2->x[i] > g2->x[i - 1]);
}

TEST_CASE("reference profile") {
  auto g = make_grid(9, 1.0);
  const Profile p = reference_profile(g, {1.0, 3.0, 0.0});
  CHECK(p.f[5] == doctest::Approx(2.0));
  CHECK(p.f.front() == 1.0);
  CHECK(p.f.back() == 3.0);
  const Profile c = reference_profile(g, {1.5, 1.5, 1.0});
  for (double v : c.f) CHECK(v == 1.5);
  CHECK_THROWS_AS(reference_profile(g, {2.0, 1.0, 0.0}), DomainError);
}

TEST_CASE("from_shape") {
  auto g = make_grid(33, 1.0);
  const Profile id = from_shape(g, 1.0, 3.0, [](double x) { return x; });
  const Profile ref = reference_profile(g, {1.0, 3.0, 0.0});
  for (std::size_t i = 0; i < g->size(); ++i) CHECK(id.f[i] == doctest::Approx(ref.f[i]).epsilon(1e-15));

  try {
    from_shape(g, 1.0, 3.0, [](double x) { return x * x; });
    FAIL("x^2 accepted");
  } catch (const AdmissibilityError& e) {
    CHECK(e.node == 0);
  }
  CHECK_NOTHROW(from_shape(g, 1.0, 3.0, [](double x) { return 0.5 * (x + x * x); }));
  try {
    from_shape(g, 1.0, 3.0, [](double x) { return x < 0.5 ? x : (x < 0.6 ? 0.5 : x); });
    FAIL("flat shape accepted");
  } catch (const AdmissibilityError& e) {
    CHECK(e.node > 0);
  }
}

TEST_CASE("derivatives of the reference profile against rho-space differentiation") {
  const double a = 1.0, b = 3.0, k = 1.0;
  auto g = make_grid(129, k);
  const Profile p = reference_profile(g, {a, b, 0.0});
  const DerivativeFields d = derivatives(p, kSpec);
  const std::size_t mid = 65;
  REQUIRE(g->x[mid] == 0.5);
  CHECK(d.f_rho[mid] == doctest::Approx(fhat_rho(0.0, a, b, k)).epsilon(1e-12));
  CHECK(d.f_rho[mid] == doctest::Approx(0.5));
  CHECK(std::abs(d.f_rhorho[mid]) < 1e-12);
  const double lrr = d2([&](double r) { return std::log(fhat_rho(r, a, b, k)); }, 0.0);
  CHECK(d.logfp_rr[mid] == doctest::Approx(lrr).epsilon(1e-8));
  CHECK(d.logfp_rr[mid] == doctest::Approx(-0.5).epsilon(1e-10));

  for (std::size_t i = 1; i + 1 < g->size(); ++i) {
    const double x = g->x[i], r = g->rho[i];
    CHECK(d.f_rho[i] == doctest::Approx(fhat_rho(r, a, b, k)).epsilon(1e-10));
    const double fpp = d1([&](double s) { return fhat_rho(s, a, b, k); }, r) / fhat_rho(r, a, b, k);
    CHECK(d.fpp_over_fp[i] == doctest::Approx(fpp).epsilon(1e-7).scale(1.0));
    CHECK(d.fpp_over_fp[i] == doctest::Approx(k * (1.0 - 2.0 * x)).epsilon(1e-12).scale(1.0));
    CHECK(d.logfp_rr[i] == doctest::Approx(-2.0 * k * k * x * (1.0 - x)).epsilon(1e-9).scale(1.0));
  }
  CHECK(d.fpp_over_fp.front() == doctest::Approx(k));
  CHECK(d.fpp_over_fp.back() == doctest::Approx(-k));
  CHECK(d.f_rho.front() == 0.0);
  CHECK(d.f_rho.back() == 0.0);
  (void)fhat;
}

TEST_CASE("endpoint limits of f_rr/f_r for a non-reference profile") {
  for (double k : {1.0, 2.0}) {
    auto g = make_grid(65, k);
    const Profile p = from_shape(g, 1.0, 2.0, [](double x) { return 0.5 * (x + x * x); });
    const DerivativeFields d = derivatives(p, kSpec);
    CHECK(d.fpp_over_fp.front() == doctest::Approx(k));
    CHECK(d.fpp_over_fp.back() == doctest::Approx(-k));
    for (std::size_t i = 1; i + 1 < g->size(); ++i) CHECK(d.f_rho[i] > 0.0);
  }
}

TEST_CASE("derivatives reject non-increasing profiles") {
  auto g = make_grid(9, 1.0);
  Profile p = reference_profile(g, {1.0, 3.0, 0.0});
  p.f[4] = p.f[5];
  p.f[6] = p.f[4];
  CHECK_THROWS_AS(derivatives(p, kSpec), AdmissibilityError);
}

TEST_CASE("validate") {
  auto g = make_grid(17, 1.0);
  for (double t : {0.0, 0.3, 0.9}) CHECK(validate(reference_profile(g, {1.0 + t, 3.0 - t, t})).ok());
  Profile p = reference_profile(g, {1.0, 3.0, 0.0});
  p.f[7] = p.f[6] - 1e-3;
  auto rep = validate(p);
  CHECK_FALSE(rep.ok());
  CHECK_FALSE(rep.get("monotonicity").pass);
  CHECK(*rep.get("monotonicity").node == 7);
  CHECK(rep.get("boundary_left").pass);

  Profile q = reference_profile(g, {1.0, 3.0, 0.0});
  q.a = 0.9;
  rep = validate(q);
  CHECK_FALSE(rep.get("boundary_left").pass);
  CHECK(rep.get("monotonicity").pass);
  CHECK(rep.get("bounds").pass);
}

TEST_CASE("class integral") {
  auto g = make_grid(33, 1.0);
  const DerivativeFields d = derivatives(reference_profile(g, {1.0, 3.0, 0.0}), kSpec);
  const ClassIntegral ci = class_integral(d, *g);
  CHECK(ci.value == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(std::abs(ci.deviation) < 1e-13);

  // smooth non-reference profile: deviation decays at second order
  auto shape = [](double x) { return x + 0.3 * std::sin(std::numbers::pi * x) * x; };
  double prev = 0.0, prev_h = 0.0;
  for (int m : {31, 63, 127, 255}) {
    auto gm = make_grid(m, 1.0);
    const double dev = std::abs(class_integral(derivatives(from_shape(gm, 1.0, 3.0, shape), kSpec), *gm).deviation);
    if (prev > 0.0) CHECK(std::log(prev / dev) / std::log(prev_h / gm->h) >= 1.8);
    prev = dev;
    prev_h = gm->h;
  }
}

TEST_CASE("property: chain rule agrees with direct differencing in rho") {
  auto shape = [](double x) { return x + 0.4 * x * (1.0 - x) * (1.0 - 0.5 * x); };
  double prev = 0.0;
  for (int m : {63, 127, 255}) {
    auto g = make_grid(m, 1.0);
    const Profile p = from_shape(g, 1.0, 2.0, shape);
    const DerivativeFields d = derivatives(p, kSpec);
    double err = 0.0;
    for (std::size_t i = 2; i + 2 < g->size(); ++i) {
      if (g->x[i] < 0.25 || g->x[i] > 0.75) continue;
      const double direct = (p.f[i + 1] - p.f[i - 1]) / (g->rho[i + 1] - g->rho[i - 1]);
      err = std::max(err, std::abs(direct - d.f_rho[i]));
    }
    if (prev > 0.0) CHECK(std::log2(prev / err) >= 1.8);
    prev = err;
  }
}

TEST_CASE("property: discrete fields converge to exact jets at second order") {
  const PolynomialProfile poly({1.0, 2.0, 0.6, -0.4}, 1.0);
  double pe[3] = {0, 0, 0};
  for (int m : {63, 127, 255}) {
    auto g = make_grid(m, 1.0);
    const DerivativeFields d = derivatives(poly.sample(g), kSpec);
    double e[3] = {0, 0, 0};
    for (std::size_t i = 0; i < g->size(); ++i) {
      const double x = g->x[i];
      const double w = x * (1.0 - x);
      // exact values from the polynomial, written out in x
      const double fx = 2.0 + 1.2 * x - 1.2 * x * x, fxx = 1.2 - 2.4 * x, fxxx = -2.4;
      const double qx = fxx / fx, qxx = fxxx / fx - qx * qx;
      const double core = -2.0 + (1.0 - 2.0 * x) * qx + w * qxx;
      e[0] = std::max(e[0], std::abs(d.fpp_over_fp[i] - ((1.0 - 2.0 * x) + w * fxx / fx)));
      e[1] = std::max(e[1], std::abs(d.logfp_rr[i] - w * core));
      e[2] = std::max(e[2], std::abs(d.logfp_rr_over_fp[i] - core / fx));
    }
    if (pe[0] > 0)
      for (int j = 0; j < 3; ++j) CHECK(std::log2(pe[j] / e[j]) >= 1.8);
    for (int j = 0; j < 3; ++j) pe[j] = e[j];
  }
}

TEST_CASE("polynomial profile jets match rho-space differentiation") {
  const PolynomialProfile poly({1.0, 2.0, 0.6, -0.4}, 1.5);
  for (double r : {-2.0, -0.7, 0.0, 0.4, 1.9}) {
    const ProfileJet j = poly.jet_rho(r);
    auto f = [&](double s) { return poly.value_rho(s); };
    auto fr = [&](double s) { return d1(f, s); };
    CHECK(j.f == doctest::Approx(f(r)));
    CHECK(j.f_rho == doctest::Approx(fr(r)).epsilon(1e-9));
    CHECK(j.f_rhorho() == doctest::Approx(d2(f, r)).epsilon(1e-7));
    CHECK(j.logfp_rr == doctest::Approx(d2([&](double s) { return std::log(poly.f_rho_at_rho(s)); }, r)).epsilon(1e-7));
  }
}

TEST_CASE("snapshot csv") {
  auto g = make_grid(3, 1.0);
  const Profile p = reference_profile(g, {1.0, 3.0, 0.0});
  std::ostringstream os;
  write_snapshot_csv(os, p, derivatives(p, kSpec));
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "x,rho,f,f_rho,f_rhorho,logfp_rr");
  std::getline(in, line);
  CHECK(line.rfind("0,-inf,1,", 0) == 0);
  std::string last;
  while (std::getline(in, line)) last = line;
  CHECK(last.rfind("1,inf,3,", 0) == 0);
}
