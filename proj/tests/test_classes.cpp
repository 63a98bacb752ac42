#include <cmath>
#include <random>

#include "doctest.h"
#include "krf/classes.hpp"
#include "krf/errors.hpp"

using namespace krf;

TEST_CASE("classify on the four worked tuples") {
  CHECK(classify({1, 1.0, 2.0}, 1.0, 3.0) == TrichotomyCase::Collapse1);
  CHECK(classify({1, 3.0, 1.0}, 1.0, 1.5) == TrichotomyCase::Collapse2i);
  CHECK(classify({1, 3.0, 1.0}, 1.0, 2.0) == TrichotomyCase::Extinct2ii);
  CHECK(classify({1, 3.0, 1.0}, 1.0, 3.0) == TrichotomyCase::Contract2iii);
}

TEST_CASE("classify rejects inadmissible classes") {
  CHECK_THROWS_AS(classify({1, 1.0, 2.0}, 0.0, 3.0), DomainError);
  CHECK_THROWS_AS(classify({1, 1.0, 2.0}, -1.0, 3.0), DomainError);
  CHECK_THROWS_AS(classify({1, 1.0, 2.0}, 2.0, 2.0), DomainError);
  CHECK_THROWS_AS(classify({1, 1.0, 2.0}, 3.0, 2.0), DomainError);
  CHECK_THROWS_AS(classify({0, 1.0, 2.0}, 1.0, 2.0), DomainError);
  CHECK_THROWS_AS(classify({1, 1.0, 0.0}, 1.0, 2.0), DomainError);
}

TEST_CASE("blow-up times") {
  CHECK(blow_up_time({1, 1.0, 2.0}, 1.0, 3.0).T == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(blow_up_time({1, 3.0, 1.0}, 1.0, 2.0).T == doctest::Approx(0.5).epsilon(1e-15));
  // smallest positive root of a_t = 0 or b_t = a_t, by scanning
  const BundleSpec s{1, 3.0, 1.0};
  const FlowSchedule sch = blow_up_time(s, 1.0, 3.0);
  double root = -1.0;
  for (int i = 1; i <= 200000 && root < 0; ++i) {
    const double t = i * 1e-5;
    const double a = 1.0 - (3.0 - 1.0) / 1.0 * t, b = 3.0 - (3.0 + 1.0) / 1.0 * t;
    if (a <= 1e-12 || b - a <= 1e-12) root = t;
  }
  CHECK(sch.T == doctest::Approx(root).epsilon(1e-9));
  CHECK(sch.T == doctest::Approx(0.5));
  CHECK(sch.kase == TrichotomyCase::Contract2iii);
}

TEST_CASE("class_at") {
  const FlowSchedule sch = blow_up_time({1, 1.0, 2.0}, 1.0, 3.0);
  const ClassState c0 = class_at(sch, 1.0, 3.0, 0.0);
  CHECK(c0.a == 1.0);
  CHECK(c0.b == 3.0);
  const ClassState cT = class_at(sch, 1.0, 3.0, 1.0);
  CHECK(cT.a == doctest::Approx(1.5));
  CHECK(cT.b == doctest::Approx(1.5));
  CHECK_THROWS_AS(class_at(sch, 1.0, 3.0, -0.1), DomainError);
  CHECK_THROWS_AS(class_at(sch, 1.0, 3.0, 1.1), DomainError);

  const FlowSchedule eq = blow_up_time({1, 2.0, 2.0}, 1.0, 5.0);
  for (double t : {0.0, 0.3, 1.7, eq.T}) CHECK(class_at(eq, t).a == 1.0);
}

TEST_CASE("canonical pairings") {
  auto p = canonical_pairings({1, 2.0, 1.0});
  CHECK(p.first == -3.0);
  CHECK(p.second == -1.0);
  p = canonical_pairings({1, 1.5, 1.5});
  CHECK(p.first == -3.0);
  CHECK(p.second == 0.0);
  p = canonical_pairings({1, 0.0, 1.0});
  CHECK(p.first == -1.0);
  CHECK(p.second == 1.0);
}

TEST_CASE("case names round trip") {
  for (auto c : {TrichotomyCase::Collapse1, TrichotomyCase::Collapse2i, TrichotomyCase::Extinct2ii,
                 TrichotomyCase::Contract2iii})
    CHECK(case_from_string(to_string(c)) == c);
  CHECK_THROWS_AS(case_from_string("Collapse3"), DomainError);
}

TEST_CASE("property: scale invariance and the b-a identity") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(0.01, 5.0);
  for (int it = 0; it < 2000; ++it) {
    const BundleSpec s{1 + it % 3, U(rng), U(rng)};
    const double a0 = U(rng), b0 = a0 + U(rng), c = U(rng);
    CHECK(classify(s, a0, b0) == classify(s, c * a0, c * b0));
    const FlowSchedule sch = blow_up_time(s, a0, b0);
    CHECK(sch.db_dt - sch.da_dt == doctest::Approx(-2.0).epsilon(1e-14));
    if (is_collapse(sch.kase)) {
      for (double frac : {0.0, 0.25, 0.5, 0.9, 1.0}) {
        const ClassState st = class_at(sch, frac * sch.T);
        CHECK(st.b - st.a == doctest::Approx(2.0 * (sch.T - st.t)).epsilon(1e-12).scale(b0));
      }
      CHECK(class_at(sch, sch.T).a > 0.0);
    }
  }
}

TEST_CASE("property: limiting class per case on random tuples") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(0.05, 4.0);
  int counts[4] = {0, 0, 0, 0};
  for (int it = 0; it < 10000; ++it) {
    BundleSpec s{1, U(rng), U(rng)};
    const double a0 = U(rng);
    double b0 = a0 + U(rng);
    if (it % 10 == 0 && s.nu > s.lambda) b0 = (s.nu + s.lambda) * a0 / (s.nu - s.lambda);
    const FlowSchedule sch = blow_up_time(s, a0, b0);
    counts[static_cast<int>(sch.kase)]++;
    const ClassState e = class_at(sch, sch.T);
    const double tol = 1e-9 * std::max(1.0, b0);
    switch (sch.kase) {
      case TrichotomyCase::Collapse1:
      case TrichotomyCase::Collapse2i:
        CHECK(std::abs(e.b - e.a) <= tol);
        CHECK(e.a > 0.0);
        break;
      case TrichotomyCase::Extinct2ii:
        CHECK(std::abs(e.a) <= tol);
        CHECK(std::abs(e.b) <= tol);
        break;
      case TrichotomyCase::Contract2iii:
        CHECK(std::abs(e.a) <= tol);
        CHECK(e.b > e.a);
        break;
    }
  }
  for (int c : counts) CHECK(c > 0);
}
