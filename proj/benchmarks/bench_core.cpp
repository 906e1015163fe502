#include <benchmark/benchmark.h>

#include "cx/construct.hpp"
#include "cx/quadrature.hpp"

using namespace cx;

static void BM_HessianJet(benchmark::State& state) {
  const CounterexampleInstance inst = build_nondiv(4.0, 64, Stage::full);
  const Point x = Point::polar(0.37, 2.1);
  for (auto _ : state) benchmark::DoNotOptimize(eval_jet(inst.solution, x));
}
BENCHMARK(BM_HessianJet);

static void BM_ApplyNondiv(benchmark::State& state) {
  const CounterexampleInstance inst = build_nondiv(4.0, 64, Stage::full);
  const Point x = Point::polar(0.05, 4.0);
  for (auto _ : state) benchmark::DoNotOptimize(apply_nondiv(inst.coefficients, inst.solution, x));
}
BENCHMARK(BM_ApplyNondiv);

static void BM_CornerHessianNorm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CornerParams c = omega_for_p(4.0);
  const TruncatedCorner t = truncated_corner(c, n);
  const Domain2D d = corner_domain(c, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lp_norm(t.v_n, JetKind::hessian, d, 4.0, Tolerance(0.0, 1e-8)));
  }
}
BENCHMARK(BM_CornerHessianNorm)->Arg(16)->Arg(4096)->Unit(benchmark::kMillisecond);

static void BM_BlowupStudy(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(blowup_study(4.0, {16, 64, 256, 1024, 4096}, 1e-8));
}
BENCHMARK(BM_BlowupStudy)->Unit(benchmark::kSecond)->Iterations(1);
BENCHMARK_MAIN();
