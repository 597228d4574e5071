#include <benchmark/benchmark.h>

#include <cmath>

#include "tangential/walsh.hpp"

using namespace tangential;

namespace {

TargetSources sin_sources() {
  TargetSources s;
  s.disk = [](Complex z) { return std::sin(z); };
  s.interval = [](double x) { return Complex(std::sin(x), 0.0); };
  return s;
}

}  // namespace

static void BM_FitAtDegree(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const int degree = static_cast<int>(state.range(1));
  SampleSet s = sample_set_for(k, degree, sin_sources());
  ConstraintSystem cs;
  for (int j = -k; j <= k; ++j) cs.push_back({Functional::point(j), std::sin(static_cast<double>(j))});
  for (auto _ : state) benchmark::DoNotOptimize(fit_at_degree(s, cs, degree));
}
BENCHMARK(BM_FitAtDegree)->Args({1, 12})->Args({2, 24})->Args({3, 36})->Unit(benchmark::kMillisecond);

static void BM_CertifySupError(benchmark::State& state) {
  SampleSet s = sample_set_for(2, 24, sin_sources());
  FitResult fit = fit_at_degree(s, {}, 24);
  for (auto _ : state) benchmark::DoNotOptimize(certify_sup_error(fit.p, s, 4));
}
BENCHMARK(BM_CertifySupError)->Unit(benchmark::kMicrosecond);
