#include <benchmark/benchmark.h>

#include "tangential/hoischen.hpp"

using namespace tangential;

static void BM_ApproximateWholeLine(benchmark::State& state) {
  ApproximationSpec spec;
  spec.f = parse("sin(x)");
  spec.m = static_cast<int>(state.range(0));
  spec.eps = parse("0.1");
  spec.K = 2;
  for (auto _ : state) benchmark::DoNotOptimize(approximate(spec));
}
BENCHMARK(BM_ApproximateWholeLine)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

static void BM_ApproximateCompact(benchmark::State& state) {
  Expr f = parse("exp(x)");
  for (auto _ : state) benchmark::DoNotOptimize(approximate_compact(f, 0.0, 1.0, 1e-6, 1, 40));
}
BENCHMARK(BM_ApproximateCompact)->Unit(benchmark::kMillisecond);
