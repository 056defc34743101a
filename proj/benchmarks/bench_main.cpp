#include <benchmark/benchmark.h>

#include "thetasum/engine.hpp"
#include "thetasum/oracle.hpp"
#include "thetasum/specfun.hpp"

namespace {

using namespace thetasum;

void BM_ZetaReal(benchmark::State& state) {
  const double s = static_cast<double>(state.range(0)) / 4.0;
  for (auto _ : state) benchmark::DoNotOptimize(specfun::zeta_real(s));
}
BENCHMARK(BM_ZetaReal)->Arg(-170)->Arg(-9)->Arg(3)->Arg(18);

void BM_DirectSum(benchmark::State& state) {
  const SumSpec spec{{1.0 / static_cast<double>(state.range(0)), 0.0}, 1.5};
  for (auto _ : state) benchmark::DoNotOptimize(oracle::direct_sum(spec).value);
}
BENCHMARK(BM_DirectSum)->RangeMultiplier(10)->Range(1, 10000);

void BM_EvalEven(benchmark::State& state) {
  const SumSpec spec{{static_cast<double>(state.range(0)) / 100.0, 0.0}, 4.0};
  for (auto _ : state) benchmark::DoNotOptimize(engine::eval_even(spec, 2, policy::OptimalFirstMin{}).value);
}
BENCHMARK(BM_EvalEven)->Arg(10)->Arg(50)->Arg(100)->Arg(200);

void BM_EvalGeneric(benchmark::State& state) {
  const SumSpec spec{{static_cast<double>(state.range(0)) / 1000.0, 0.0}, 2.5};
  for (auto _ : state) benchmark::DoNotOptimize(engine::eval_generic(spec, policy::OptimalFirstMin{}).value);
}
BENCHMARK(BM_EvalGeneric)->Arg(10)->Arg(50)->Arg(100);

void BM_ClassicalRhs(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(engine::classical_pj_rhs({0.5, 0.0}));
}
BENCHMARK(BM_ClassicalRhs);

}  // namespace

BENCHMARK_MAIN();
