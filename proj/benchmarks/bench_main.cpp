#include <benchmark/benchmark.h>

#include "htype/biradial.hpp"
#include "htype/gelfand.hpp"
#include "htype/group.hpp"
#include "htype/harmonic.hpp"
#include "htype/poisson.hpp"
#include "htype/special.hpp"

using namespace htype;

static void BM_GroupMul(benchmark::State& state) {
  const auto g = make_quaternionic(static_cast<int>(state.range(0)));
  auto a = g.identity(), b = g.identity();
  a.X.setConstant(0.3);
  b.X.setConstant(-0.7);
  b.Z.setConstant(1.1);
  for (auto _ : state) {
    a = g.mul(a, b);
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_GroupMul)->Arg(1)->Arg(2);

static void BM_Validate(benchmark::State& state) {
  const auto g = make_quaternionic(2);
  for (auto _ : state) benchmark::DoNotOptimize(validate_htype(g));
}
BENCHMARK(BM_Validate)->Unit(benchmark::kMicrosecond);

static void BM_Laguerre(benchmark::State& state) {
  const int l = static_cast<int>(state.range(0));
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(laguerre(l, 1.0, x));
    x += 1e-9;
  }
}
BENCHMARK(BM_Laguerre)->Arg(5)->Arg(20)->Arg(40);

static void BM_BesselGen(benchmark::State& state) {
  double x = 3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel_gen(1.0, x));
    x += 1e-9;
  }
}
BENCHMARK(BM_BesselGen);

static void BM_NormalizationConstant(benchmark::State& state) {
  const auto g = make_heisenberg(1);
  for (auto _ : state) benchmark::DoNotOptimize(normalization_constant(g));
}
BENCHMARK(BM_NormalizationConstant)->Unit(benchmark::kMillisecond);

static void BM_PoissonHatClosedForm(benchmark::State& state) {
  const PoissonKernel P(make_heisenberg(1));
  for (auto _ : state) benchmark::DoNotOptimize(poisson_hat_laguerre(P, 1.0, 3));
}
BENCHMARK(BM_PoissonHatClosedForm)->Unit(benchmark::kMicrosecond);

static void BM_PoissonHatOracle(benchmark::State& state) {
  const PoissonKernel P(make_heisenberg(1));
  for (auto _ : state) benchmark::DoNotOptimize(poisson_hat_oracle(P, SpectrumPoint::laguerre(1.0, 3), 1e-8));
}
BENCHMARK(BM_PoissonHatOracle)->Unit(benchmark::kMillisecond);

static void BM_ConvolveDirect(benchmark::State& state) {
  const auto g = make_heisenberg(1);
  const auto f = gaussian_profile(g), h = bump_profile(g, 1.5);
  const auto n = make_element(g, {0.5, 0.0}, {0.3});
  for (auto _ : state) benchmark::DoNotOptimize(convolve_direct(f, h, n));
}
BENCHMARK(BM_ConvolveDirect)->Unit(benchmark::kMillisecond);

static void BM_Extend(benchmark::State& state) {
  const auto g = make_heisenberg(1);
  const PoissonKernel P(g);
  const auto datum = BoundaryDatum::bump_plus(g, 0.5);
  const auto n = make_element(g, {2.0, 1.0}, {3.0});
  const auto route = state.range(0) == 0 ? ExtensionRoute::recentered : ExtensionRoute::support;
  for (auto _ : state) benchmark::DoNotOptimize(extend(datum, P, 1.0, n, 1e-8, route));
}
BENCHMARK(BM_Extend)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
