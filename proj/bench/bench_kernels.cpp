#include <benchmark/benchmark.h>

#include "subfv/asymptotics.hpp"
#include "subfv/subfbm.hpp"

using namespace subfv;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(1) == 0 ? Execution::serial : Execution::parallel;
}

void BM_SamplePaths(benchmark::State& state) {
  const PathSampler sampler(TimeGrid(static_cast<int>(state.range(0))), HurstParameter(0.75));
  for (auto _ : state) benchmark::DoNotOptimize(sampler.sample(256, 42, mode(state)));
  state.SetItemsProcessed(state.iterations() * 256);
}
BENCHMARK(BM_SamplePaths)
    ->ArgsProduct({{256, 1024}, {0, 1}})
    ->ArgNames({"n", "parallel"})
    ->Unit(benchmark::kMillisecond);

void BM_EmpiricalLimit(benchmark::State& state) {
  const VasicekParams p{1.0, -0.7, 0.0, 0.0};
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        empirical_limit_sample(p, HurstParameter(0.75), n, 0.01, 128, 42, Scheme::euler, mode(state)));
  state.SetItemsProcessed(state.iterations() * 128);
}
BENCHMARK(BM_EmpiricalLimit)
    ->ArgsProduct({{500, 2000}, {0, 1}})
    ->ArgNames({"n", "parallel"})
    ->Unit(benchmark::kMillisecond);

void BM_Cholesky(benchmark::State& state) {
  const auto cov = covariance_matrix(TimeGrid(static_cast<int>(state.range(0))), HurstParameter(0.75));
  for (auto _ : state) benchmark::DoNotOptimize(cholesky_with_jitter(cov));
}
BENCHMARK(BM_Cholesky)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
