#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>

#include "maxdist/collision.hpp"
#include "maxdist/field.hpp"
#include "maxdist/grid.hpp"

using namespace maxdist;

static void BM_QEvaluate(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  const VelocityGrid g(2, 4.4, m);
  const SphereRule s(2, k);
  const auto f = local_maxwellian(1.0, VecN{0.3, 0.0, 0.0}, 1.0, g);
  for (auto _ : state) {
    auto q = q_evaluate(f, g, s, 4096);
    benchmark::DoNotOptimize(q.data());
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * g.node_count() *
                          g.node_count() * s.size());
}
BENCHMARK(BM_QEvaluate)->Args({12, 16})->Args({16, 32})->Unit(benchmark::kMillisecond);

static void BM_BgkStep(benchmark::State& state) {
  auto g = std::make_shared<const VelocityGrid>(2, 8.0, static_cast<int>(state.range(0)));
  auto dom = std::make_shared<const SpatialDomain>(SpatialDomain::homogeneous(1.0));
  auto a = local_maxwellian(0.5, VecN{0.8, 0.0, 0.0}, 0.68, *g);
  const auto b = local_maxwellian(0.5, VecN{-0.8, 0.0, 0.0}, 0.68, *g);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  const DistributionField f(g, dom, std::move(a));
  for (auto _ : state) {
    DistributionField out = bgk_step(f, 1.0, 0.25);
    benchmark::DoNotOptimize(out.values().data());
  }
}
BENCHMARK(BM_BgkStep)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);
