#include <benchmark/benchmark.h>

#include <memory>

#include "fracdiff/fracdiff.hpp"

namespace {

using namespace fracdiff;

FractionalProblem sine_problem() {
  return FractionalProblem(FractionalOrder(0.5), 0.0, 1.0, SourceFunction::sine());
}

void BM_RunGLTrapezoidal(benchmark::State& state) {
  const auto problem = sine_problem();
  const auto grid = TimeGrid::uniform(0.0, 1.0, static_cast<std::size_t>(state.range(0)));
  const auto rule = std::make_shared<const GaussLaguerreRule>(
      build_rule(static_cast<int>(state.range(1))));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_gl(problem, grid, rule, StepMethod::trapezoidal));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RunGLTrapezoidal)
    ->ArgsProduct({{10000, 20000, 40000}, {40}})
    ->Complexity(benchmark::oN)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RunGLTrapezoidal)
    ->Name("BM_RunGLTrapezoidal_MaxRule")
    ->Args({10000, 200})
    ->Unit(benchmark::kMillisecond);

void BM_EvaluateFast(benchmark::State& state) {
  const auto problem = sine_problem();
  const auto grid = TimeGrid::uniform(0.0, 1.0, static_cast<std::size_t>(state.range(0)));
  const double delta = 0.999 / 40000;
  const auto expsum = build_expsum_for_range(problem.order, 0.25, delta, 1.0, 1e-8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_fast(problem, grid, expsum, delta));
  }
  state.counters["terms"] = static_cast<double>(expsum.size());
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EvaluateFast)
    ->Arg(10000)
    ->Arg(20000)
    ->Arg(40000)
    ->Complexity(benchmark::oN)
    ->Unit(benchmark::kMillisecond);

void BM_SplitEvaluate(benchmark::State& state) {
  const auto problem = sine_problem();
  const auto grid = TimeGrid::uniform(0.0, 1.0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        split_evaluate(problem, grid, HistoryWindow(0.05), 40, StepMethod::trapezoidal));
  }
}
BENCHMARK(BM_SplitEvaluate)->Arg(2000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_DirectIntegral(benchmark::State& state) {
  const auto problem = sine_problem();
  const auto grid = TimeGrid::uniform(0.0, 1.0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(direct_integral(problem, grid));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DirectIntegral)
    ->RangeMultiplier(2)
    ->Range(1024, 4096)
    ->Complexity(benchmark::oNSquared)
    ->Unit(benchmark::kMillisecond);

void BM_BuildRule(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_rule(static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_BuildRule)->Arg(40)->Arg(200)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
