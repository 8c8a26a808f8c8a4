#include <benchmark/benchmark.h>

#include <cmath>

#include "maxdist/grid.hpp"
#include "maxdist/projection.hpp"

using namespace maxdist;

static void BM_ProjectOracle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int m = n == 3 ? 40 : (n == 2 ? 96 : 256);
  const double T1 = 1.4;
  VecN u1 = zero_vec();
  u1[0] = 0.6;
  VecN U = u1;
  const double rho = 1.2;
  for (int k = 0; k < n; ++k) U[static_cast<std::size_t>(k)] *= rho;
  const double E1 = 0.5 * rho * (n * T1 + norm2(u1, n));
  const MomentClass cls(rho, E1, U, 1.0, n);
  const VelocityGrid g(n, 0.6 + 8.0 * std::sqrt(T1), m);
  for (auto _ : state) {
    OracleSolution sol = project_oracle(cls, 1.0, g);
    benchmark::DoNotOptimize(sol.iterations);
  }
}
BENCHMARK(BM_ProjectOracle)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_ProjectClosedForm(benchmark::State& state) {
  const MomentClass cls(2.0, 6.0, VecN{2.0, 0.0, 0.0}, 1.0, 3);
  for (auto _ : state) {
    ProjectionResult r = project(cls, 1.0);
    benchmark::DoNotOptimize(r.dist_min);
  }
}
BENCHMARK(BM_ProjectClosedForm);

BENCHMARK_MAIN();
