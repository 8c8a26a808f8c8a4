#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>

#include "maxdist/field.hpp"
#include "maxdist/grid.hpp"

using namespace maxdist;

static void BM_Integrate1D(benchmark::State& state) {
  const VelocityGrid g(1, 8.0, static_cast<int>(state.range(0)));
  std::vector<double> v(g.node_count());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::exp(-0.5 * g.sq_norms()[i]);
  for (auto _ : state) {
    double r = g.integrate(v);
    benchmark::DoNotOptimize(r);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Integrate1D)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

static void BM_Moments2D(benchmark::State& state) {
  auto g = std::make_shared<const VelocityGrid>(2, 8.0, static_cast<int>(state.range(0)));
  auto dom = std::make_shared<const SpatialDomain>(SpatialDomain::homogeneous(1.0));
  const MaxwellianParams p(1.0, VecN{0.4, -0.2, 0.0}, 1.0, 1.0, 2);
  const DistributionField f = maxwellian_eval(p, g, dom);
  for (auto _ : state) {
    MomentSummary ms = moments(f);
    benchmark::DoNotOptimize(ms.E_total);
  }
}
BENCHMARK(BM_Moments2D)->Arg(32)->Arg(64)->Arg(128);

static void BM_MaxwellianEval3D(benchmark::State& state) {
  auto g = std::make_shared<const VelocityGrid>(3, 8.0, static_cast<int>(state.range(0)));
  auto dom = std::make_shared<const SpatialDomain>(SpatialDomain::homogeneous(1.0));
  const MaxwellianParams p(1.0, zero_vec(), 1.0, 1.0, 3);
  for (auto _ : state) {
    DistributionField f = maxwellian_eval(p, g, dom);
    benchmark::DoNotOptimize(f.values().data());
  }
}
BENCHMARK(BM_MaxwellianEval3D)->Arg(24)->Arg(48);
