#include <benchmark/benchmark.h>

#include <random>

#include "ksobs/dynamics.hpp"
#include "ksobs/injection.hpp"

using namespace ksobs;

namespace {

Vector random_coeffs(int n) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> d(0.0, 1.0);
  Vector c(n);
  for (auto& x : c) x = d(rng) / (1.0 + 0.1 * (&x - c.data()));
  return c;
}

const std::vector<double> kEighths{0.125, 0.375, 0.625, 0.875};

}  // namespace

static void BM_FlameNonlinearity(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const QuadratureGrid grid(4 * n < 2048 ? 2048 : 4 * n);
  const Vector c = random_coeffs(n);
  const ModelParams params;
  for (auto _ : state) benchmark::DoNotOptimize(flame_nonlinearity(c, grid, params));
}
BENCHMARK(BM_FlameNonlinearity)->Arg(64)->Arg(200)->Arg(512);

static void BM_ObserverStep(benchmark::State& state) {
  SimulationConfig cfg;
  cfg.t_end = 0.1;
  cfg.sensors = sensor_points(ReferenceSet::line(kEighths), 9);
  cfg.lambda_gain = 1e-7;
  cfg.initial_nominal.coeffs = random_coeffs(cfg.modes);
  cfg.initial_estimate.coeffs = Vector::Zero(cfg.modes);
  cfg.keep_states = false;
  const SpectrumTable table(cfg.modes, cfg.params.nu2);
  const InjectionOperator op(build_output_matrices(cfg.sensors, table), cfg.lambda_gain, cfg.params.nu2);
  for (auto _ : state) benchmark::DoNotOptimize(simulate(cfg, op));
  state.SetItemsProcessed(state.iterations() * cfg.steps());
}
BENCHMARK(BM_ObserverStep)->Unit(benchmark::kMillisecond);

static void BM_LambdaBuild(benchmark::State& state) {
  const int s = static_cast<int>(state.range(0));
  const auto sensors = sensor_points(ReferenceSet::line(kEighths), s);
  const SpectrumTable table(200, 1e-6);
  const auto mats = build_output_matrices(sensors, table);
  for (auto _ : state) benchmark::DoNotOptimize(InjectionOperator(mats, 1e-7, 1e-6));
}
BENCHMARK(BM_LambdaBuild)->Arg(3)->Arg(9)->Arg(20);
BENCHMARK_MAIN();
