#include <benchmark/benchmark.h>

#include "krf/chart.hpp"
#include "krf/curvature.hpp"
#include "krf/flow.hpp"

using namespace krf;

namespace {

const BundleSpec kSpec{1, 1.0, 2.0};

Profile start(int m) {
  return from_shape(make_grid(m, 1.0), 1.0, 3.0, [](double x) { return 0.5 * (x + x * x); });
}

}  // namespace

static void BM_step(benchmark::State& st) {
  const FlowSchedule sch = blow_up_time(kSpec, 1.0, 3.0);
  const FlowState s{start(static_cast<int>(st.range(0))), 0.0, 0};
  SolverConfig cfg;
  for (auto _ : st) benchmark::DoNotOptimize(step(s, kSpec, sch, cfg));
}
BENCHMARK(BM_step)->Arg(129)->Arg(257)->Arg(513)->Arg(1025);

static void BM_derivatives_and_curvature(benchmark::State& st) {
  const Profile p = start(static_cast<int>(st.range(0)));
  for (auto _ : st) {
    const DerivativeFields d = derivatives(p, kSpec);
    benchmark::DoNotOptimize(scalar_curvature(d, kSpec));
  }
}
BENCHMARK(BM_derivatives_and_curvature)->Arg(257)->Arg(1025);

static void BM_monitors(benchmark::State& st) {
  const FlowSchedule sch = blow_up_time(kSpec, 1.0, 3.0);
  const FlowState s{start(static_cast<int>(st.range(0))), 0.0, 0};
  for (auto _ : st) benchmark::DoNotOptimize(monitors(s, kSpec, sch));
}
BENCHMARK(BM_monitors)->Arg(257)->Arg(1025);

static void BM_chart_oracle(benchmark::State& st) {
  const ExplicitChart ch{1, 2};
  const PolynomialProfile prof({1.0, 2.0, 0.6, -0.4}, 1.0);
  const ChartPoint p{{0.3, -0.2}, {0.8, 0.5}};
  for (auto _ : st) benchmark::DoNotOptimize(chart_oracle(ch, prof, p));
}
BENCHMARK(BM_chart_oracle);
BENCHMARK_MAIN();
