#include <vector>

#include <benchmark/benchmark.h>

#include "circfuse/bessel.hpp"
#include "circfuse/distributions.hpp"
#include "circfuse/rng.hpp"
#include "circfuse/scenario.hpp"
#include "circfuse/t2t/association.hpp"
#include "circfuse/t2t/pipeline.hpp"

using namespace circfuse;

static void BM_BesselRatio(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel_i1_i0_ratio(x));
  }
}
BENCHMARK(BM_BesselRatio)->Arg(5)->Arg(100)->Arg(400);

static void BM_SampleVm(benchmark::State& state) {
  const VonMisesParams p(Angle(0.3), static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_vm(p, 10000, 7));
  }
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_SampleVm)->Arg(1)->Arg(20);

static void BM_SampleWn(benchmark::State& state) {
  const WrappedNormalParams p(Angle(0.3), 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_wn(p, 10000, 7));
  }
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_SampleWn);

static void BM_Gnn(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  CounterRng rng(5);
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n * n; ++i) {
    m(i / n, i % n) = 20.0 * rng.uniform();
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(t2t::gnn_associate(m, 13.8));
  }
}
BENCHMARK(BM_Gnn)->Arg(4)->Arg(16)->Arg(64);

static void BM_DefaultScenarioPipeline(benchmark::State& state) {
  const sim::ScenarioSpec spec = sim::ScenarioSpec::make_default();
  const sim::ScenarioData data = sim::generate_scenario(spec);
  const auto poses = spec.poses();
  for (auto _ : state) {
    benchmark::DoNotOptimize(sim::run_pipeline(data.tracks, poses, t2t::FusionConfig{}, 1.0 / 36.0));
  }
}
BENCHMARK(BM_DefaultScenarioPipeline);

BENCHMARK_MAIN();
