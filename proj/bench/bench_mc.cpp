// Serial reference path against the OpenMP path of the same estimators.

#include "gci/correlation.hpp"
#include "gci/integration.hpp"
#include "gci/mc_kernel.hpp"
#include "gci/transport.hpp"

#include <benchmark/benchmark.h>

using namespace gci;

namespace {

Execution mode(const benchmark::State& state) { return state.range(0) == 0 ? Execution::serial : Execution::parallel; }

void BM_Correlation(benchmark::State& state) {
  const auto f = gaussian_bump(3, 0.5);
  const auto g = indicator_field(ConvexBody::simplex(3));
  const Measure mu = gaussian(3);
  for (auto _ : state) benchmark::DoNotOptimize(mc_correlation(mu, f, g, 1'000'000, 1, mode(state)));
  state.SetItemsProcessed(state.iterations() * 1'000'000);
}

void BM_Theorem11Ladder(benchmark::State& state) {
  const auto a = ConvexBody::box({-1, -0.5, -2}, {1.5, 1, 0.7});
  Budgets b;
  b.samples = 200'000;
  b.exec = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(verify_theorem_1_1(a, gaussian(3), 1.2, b, 2));
  state.SetItemsProcessed(state.iterations() * 200'000);
}

void BM_Theorem41(benchmark::State& state) {
  Budgets b;
  b.samples = 500'000;
  b.exec = mode(state);
  const Matrix sigma = Matrix::Identity(2, 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(verify_theorem_4_1(gaussian_bump(2, 0.5), sigma, exp_profile(0.5), b, 3));
  state.SetItemsProcessed(state.iterations() * 500'000);
}

}  // namespace

// Argument 0 = serial reference, 1 = parallel.
BENCHMARK(BM_Correlation)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Theorem11Ladder)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Theorem41)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
