// Serial reference vs OpenMP for the three parallel kernels.

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "affine_lab/conjugacy.hpp"
#include "affine_lab/lift.hpp"
#include "affine_lab/literal.hpp"

using namespace affine_lab;

namespace {

Execution exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
}

void label(benchmark::State& state) { state.SetLabel(state.range(0) == 0 ? "serial" : "openmp"); }

// Irrational markings related by [[5, 6], [4, 5]] force a full search up to the bound.
void BM_SearchGl2z(benchmark::State& state) {
  const double two_pi = 2.0 * std::numbers::pi;
  const double y = two_pi / 1.7, x = -0.3 * y;
  const double p = 5 * x + 4 * y, q = 6 * x + 5 * y;
  const int bound = static_cast<int>(state.range(1));
  for (auto _ : state) {
    // A target off the orbit makes both variants exhaust the box.
    benchmark::DoNotOptimize(search_gl2z(x, y, p + 0.25, q, bound, Tolerance{}, exec_of(state)));
  }
  label(state);
}
BENCHMARK(BM_SearchGl2z)->ArgsProduct({{0, 1}, {8, 16}})->Unit(benchmark::kMillisecond);

void BM_VerifyFlowConjugacy(benchmark::State& state) {
  const AffineSurface s1 = parse_surface("cylinder:1");
  const AffineSurface s2 = parse_surface("cylinder:2pi*i/(2pi*i-1)");
  const ConjugacyVerdict v = decide(s1, s2, ConjugacyMode::Holomorphic);
  const LiftedConjugacy psi = lift(build_base(*v.witness, s1, s2));
  const int samples = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_flow_conjugacy(psi, samples, kStandardTimeGrid, Tolerance{}, 0, exec_of(state)));
  }
  label(state);
}
BENCHMARK(BM_VerifyFlowConjugacy)->ArgsProduct({{0, 1}, {1000}})->Unit(benchmark::kMillisecond);

void BM_Trajectory(benchmark::State& state) {
  const TangentVector v(parse_surface("torus:2*pi,2pi*i"), ComplexValue::approx(0.4, 1.0),
                        ComplexValue::approx(-0.8, 0.3));
  const int n = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(trajectory(v, -50.0, 50.0, n, Tolerance{}, exec_of(state)));
  label(state);
}
BENCHMARK(BM_Trajectory)->ArgsProduct({{0, 1}, {10000}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
