#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "bohmlab/hydrodynamics.hpp"
#include "bohmlab/propagator.hpp"
#include "bohmlab/ratefit.hpp"
#include "bohmlab/trajectories.hpp"
#include "bohmlab/wigner.hpp"

using namespace bohmlab;

namespace {
constexpr double kPi = std::numbers::pi;

WaveFunction make_state(int n, double eps) {
  Grid g(AxisSpec{-2.0 * kPi, 2.0 * kPi, n});
  return WaveFunction::sample(g, eps, [&](double x) {
    return std::pow(kPi, -0.25) * std::exp(-0.5 * x * x) *
           std::polar(1.0, 0.5 * std::sin(x) / eps);
  });
}

void BM_propagate_step(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const WaveFunction psi = make_state(n, 0.05);
  const Potential V = Potential::lorentz_well(0.5);
  for (auto _ : state) {
    PropagatorConfig cfg{1e-4, 64, 64};
    benchmark::DoNotOptimize(propagate(psi, V, cfg));
  }
  state.SetItemsProcessed(state.iterations() * 64);
}
BENCHMARK(BM_propagate_step)->Arg(1024)->Arg(4096);

void BM_extract_fields(benchmark::State& state) {
  const WaveFunction psi = make_state(static_cast<int>(state.range(0)), 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(extract_fields(psi));
}
BENCHMARK(BM_extract_fields)->Arg(1024)->Arg(4096);

void BM_wigner_analyze(benchmark::State& state) {
  const WaveFunction psi = make_state(static_cast<int>(state.range(0)), 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(wigner_analyze(psi));
}
BENCHMARK(BM_wigner_analyze)->Arg(512)->Arg(2048);

void BM_kinematic_trajectories(benchmark::State& state) {
  const WaveFunction psi = make_state(1024, 0.05);
  const Timeline tl = propagate(psi, Potential::zero(), PropagatorConfig{5e-4, 200, 10});
  const auto seeds = lattice_seeds(tl.grid, 1);
  const auto w = seed_weights(tl, seeds);
  for (auto _ : state) benchmark::DoNotOptimize(integrate_kinematic(tl, seeds, w));
}
BENCHMARK(BM_kinematic_trajectories);

void BM_fit_rate(benchmark::State& state) {
  const std::vector<double> eps = geometric_eps();
  std::vector<double> f;
  for (double e : eps) f.push_back(0.3 + 1.7 * std::sqrt(e));
  for (auto _ : state) benchmark::DoNotOptimize(fit_rate(eps, f));
}
BENCHMARK(BM_fit_rate);
}  // namespace

BENCHMARK_MAIN();
