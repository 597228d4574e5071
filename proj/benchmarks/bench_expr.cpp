#include <benchmark/benchmark.h>

#include "tangential/expr.hpp"
#include "tangential/functional.hpp"

using namespace tangential;

static void BM_Parse(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parse("exp(-x^2/4)*cos(3*x) + cplx(0, 2)*sin(x)/(1 + x^2)"));
}
BENCHMARK(BM_Parse);

static void BM_Derivatives(benchmark::State& state) {
  Expr f = parse("exp(-x^2/4)*cos(3*x)");
  for (auto _ : state) benchmark::DoNotOptimize(derivatives(f, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Derivatives)->DenseRange(1, 4);

static void BM_Evaluate(benchmark::State& state) {
  Expr f = derivatives(parse("exp(-x^2/4)*cos(3*x)"), 3).back();
  double x = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate(f, x));
    x += 1e-9;
  }
}
BENCHMARK(BM_Evaluate);

static void BM_Quadrature(benchmark::State& state) {
  Expr f = parse("sin(5*x)*exp(x)");
  for (auto _ : state) benchmark::DoNotOptimize(quadrature(f, -1.0, 1.0, 1e-12));
}
BENCHMARK(BM_Quadrature);

// Nested quadrature vs the closed form through the derivative chain.
static void BM_MomentNested(benchmark::State& state) {
  Expr f = parse("sin(x)");
  Functional F = Functional::moment(2, 1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(apply_to_function(F, f));
}
BENCHMARK(BM_MomentNested);

static void BM_MomentFast(benchmark::State& state) {
  std::vector<Expr> chain = derivatives(parse("sin(x)"), 2);
  Functional F = Functional::moment(2, 1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(apply_to_function_fast(F, chain));
}
BENCHMARK(BM_MomentFast);
