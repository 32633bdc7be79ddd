#include <gtest/gtest.h>

#include <cmath>

#include "ksobs/dynamics.hpp"
#include "ksobs/errors.hpp"
#include "test_util.hpp"

using namespace ksobs;
using ksobs::test::kPi;

namespace {

const ModelParams kFlame{};

ModelParams fluid_params() {
  ModelParams p;
  p.variant = Variant::Fluid;
  p.nu0 = 1.0;
  return p;
}

SimulationConfig small_config(Variant v, int modes = 64, double t_end = 0.5, double dt = 1e-3) {
  SimulationConfig cfg;
  cfg.params = v == Variant::Flame ? kFlame : fluid_params();
  cfg.modes = modes;
  cfg.grid_size = 4 * modes;
  cfg.dt = dt;
  cfg.t_end = t_end;
  cfg.sensors = sensor_points(ReferenceSet::line({0.125, 0.375, 0.625, 0.875}), 2);
  cfg.initial_nominal.coeffs = Vector::Zero(modes);
  cfg.initial_nominal.coeffs[0] = 1.0;
  cfg.initial_nominal.coeffs[3] = 1.0;
  cfg.initial_estimate.coeffs = Vector::Zero(modes);
  cfg.initial_estimate.coeffs[2] = 1.0;
  cfg.initial_estimate.coeffs[3] = 0.5;
  return cfg;
}

}  // namespace

TEST(Linear, Coefficients) {
  EXPECT_EQ(linear_coefficient(1, kFlame), 0.0);
  const double l = 4 * kPi * kPi;
  EXPECT_NEAR(linear_coefficient(2, kFlame), -1e-6 * l * l + 1e-2 * l, 1e-15);
  EXPECT_NEAR(linear_coefficient(2, kFlame), 0.39323, 5e-6);
}

TEST(Linear, UnstableCount) {
  EXPECT_EQ(unstable_mode_count(kFlame, 200), 31);
  ModelParams p = kFlame;
  p.nu1 = 1e-12;
  EXPECT_EQ(unstable_mode_count(p, 200), 1);
  int prev = unstable_mode_count(kFlame, 200);
  for (double nu2 : {2e-6, 5e-6, 1e-5, 1e-4}) {
    p = kFlame;
    p.nu2 = nu2;
    const int c = unstable_mode_count(p, 200);
    EXPECT_LE(c, prev);
    prev = c;
  }
}

TEST(Linear, UnstableModesAreTheLeadingOnes) {
  // alpha-bar_31 = 4 pi^2 15^2 < nu1/nu2 = 1e4 < alpha-bar_32 = 4 pi^2 16^2.
  EXPECT_GE(linear_coefficient(31, kFlame), 0.0);
  EXPECT_GE(linear_coefficient(30, kFlame), 0.0);
  EXPECT_LT(linear_coefficient(32, kFlame), 0.0);
  EXPECT_LT(linear_coefficient(33, kFlame), 0.0);
}

TEST(Nonlinearity, ConstantStateVanishes) {
  const QuadratureGrid g(64);
  const Vector c = Vector::Unit(16, 0) * 3.0;
  EXPECT_LT(flame_nonlinearity(c, g, kFlame).cwiseAbs().maxCoeff(), 1e-13);
  EXPECT_LT(fluid_nonlinearity(c, g, fluid_params()).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Nonlinearity, FlameOnSineMode) {
  const QuadratureGrid g(64);
  const Vector c = Vector::Unit(16, 3);  // sin(4 pi x)
  const Vector got = flame_nonlinearity(c, g, kFlame);
  const double amp = 0.5 * kFlame.nu0 * 8 * kPi * kPi;
  for (int n = 1; n <= 16; ++n) {
    EXPECT_NEAR(got[n - 1], (n == 1 || n == 9) ? amp : 0.0, 1e-12) << "n=" << n;
  }
}

TEST(Nonlinearity, FluidOnSineMode) {
  const QuadratureGrid g(64);
  const ModelParams p = fluid_params();
  const Vector got = fluid_nonlinearity(Vector::Unit(16, 1), g, p);
  for (int n = 1; n <= 16; ++n) {
    EXPECT_NEAR(got[n - 1], n == 4 ? p.nu0 * kPi : 0.0, 1e-12) << "n=" << n;
  }
}

TEST(Nonlinearity, MatchesBruteForceQuadrature) {
  std::mt19937_64 rng(53);
  const int n = 24;
  const QuadratureGrid g(4 * n);
  const Vector c = test::random_vector(n, rng);
  const Vector flame = flame_nonlinearity(c, g, kFlame);
  const Vector flame_oracle = test::brute_project(
      [&](double x) { return 0.5 * kFlame.nu0 * std::pow(test::synthesize_dx(c, x), 2); }, n);
  EXPECT_LT((flame - flame_oracle).cwiseAbs().maxCoeff(), 1e-9 * flame_oracle.cwiseAbs().maxCoeff());

  const ModelParams p = fluid_params();
  const Vector fluid = fluid_nonlinearity(c, g, p);
  const Vector fluid_oracle = test::brute_project(
      [&](double x) { return p.nu0 * test::synthesize(c, x) * test::synthesize_dx(c, x); }, n);
  EXPECT_LT((fluid - fluid_oracle).cwiseAbs().maxCoeff(), 1e-9 * fluid_oracle.cwiseAbs().maxCoeff());
  EXPECT_NEAR(fluid[0], 0.0, 1e-12);
}

TEST(Nonlinearity, IsNotAdditive) {
  const QuadratureGrid g(64);
  const Vector u = Vector::Unit(16, 1);
  const Vector v = Vector::Unit(16, 3);
  const Vector sum = flame_nonlinearity(u + v, g, kFlame);
  const Vector parts = flame_nonlinearity(u, g, kFlame) + flame_nonlinearity(v, g, kFlame);
  EXPECT_GT((sum - parts).norm(), 1e-6);
}

TEST(Nonlinearity, AliasingGuard) {
  const QuadratureGrid g(60);
  EXPECT_THROW(flame_nonlinearity(Vector::Zero(16), g, kFlame), DomainError);
}

TEST(Imex, DampedScalar) {
  const ImexStepper st(Vector::Constant(1, -1.0), 0.1);
  const Vector y = Vector::Constant(1, 2.0);
  const Vector z = Vector::Zero(1);
  EXPECT_NEAR(st.step(y, z, z)[0], 2.0 * 0.95 / 1.05, 1e-15);
  EXPECT_NEAR(st.bootstrap(y, z)[0] / 2.0, 0.904762, 1e-6);
}

TEST(Imex, ConstantForcing) {
  const double dt = 0.01;
  const ImexStepper st(Vector::Zero(1), dt);
  const Vector c = Vector::Constant(1, 3.0);
  Vector y = st.bootstrap(Vector::Zero(1), c);
  EXPECT_NEAR(y[0], dt * 3.0, 1e-15);
  for (int k = 0; k < 10; ++k) {
    const Vector next = st.step(y, c, c);
    EXPECT_NEAR(next[0] - y[0], dt * 3.0, 1e-14);
    y = next;
  }
}

TEST(Imex, ForcedOdeOracle) {
  // y' = -y + sin t, y(0) = 0:  y = (sin t - cos t + e^{-t}) / 2.
  const double dt = 1e-3;
  const ImexStepper st(Vector::Constant(1, -1.0), dt);
  Vector y = Vector::Zero(1);
  Vector f_prev = Vector::Constant(1, std::sin(0.0));
  y = st.bootstrap(y, f_prev);
  for (int k = 1; k < 1000; ++k) {
    const Vector f = Vector::Constant(1, std::sin(k * dt));
    y = st.step(y, f, f_prev);
    f_prev = f;
  }
  const double t = 1.0;
  const double exact = 0.5 * (std::sin(t) - std::cos(t) + std::exp(-t));
  EXPECT_LT(std::abs(y[0] - exact), 1e-5);
}

TEST(Imex, SingularDenominator) {
  EXPECT_THROW(ImexStepper(Vector::Constant(1, 20.0), 0.1), DomainError);
  EXPECT_THROW(ImexStepper(Vector::Constant(1, -1.0), 0.0), DomainError);
}

TEST(Simulate, IdenticalStatesGiveZeroError) {
  auto cfg = small_config(Variant::Flame, 64, 0.2);
  cfg.initial_estimate = cfg.initial_nominal;
  const auto ts = simulate(cfg);
  ASSERT_EQ(ts.size(), static_cast<std::size_t>(cfg.steps()) + 1);
  for (const auto& r : ts.records) {
    EXPECT_EQ(r.error_h, 0.0);
    EXPECT_EQ(r.error_v, 0.0);
    EXPECT_EQ(r.output_error.cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(Simulate, RecordedNormsMatchStoredStates) {
  const auto cfg = small_config(Variant::Flame, 64, 0.2);
  const auto ts = simulate(cfg);
  const SpectrumTable table(cfg.modes, cfg.params.nu2);
  const auto mats = build_output_matrices(cfg.sensors, table);
  EXPECT_EQ(ts.size(), 201u);
  for (const auto& r : ts.records) {
    const Vector z = r.estimate - r.nominal;
    EXPECT_NEAR(r.error_h, norm(z, NormKind::H, table), 1e-12);
    EXPECT_NEAR(r.error_v, norm(z, NormKind::V, table), 1e-12);
    EXPECT_LT((r.output_error - mats.plain * z).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Simulate, FluidConservesMean) {
  auto cfg = small_config(Variant::Fluid, 64, 20.0);
  cfg.keep_states = true;
  const auto ts = simulate(cfg);
  ASSERT_EQ(ts.size(), 20001u);
  const double c0 = ts.records.front().nominal[0];
  double worst = 0.0;
  for (const auto& r : ts.records) worst = std::max(worst, std::abs(r.nominal[0] - c0));
  EXPECT_LT(worst, 1e-8);
}

TEST(Simulate, FlameMeanNonincreasing) {
  const auto ts = simulate(small_config(Variant::Flame, 64, 2.0));
  for (std::size_t k = 1; k < ts.size(); ++k) {
    EXPECT_LE(ts.records[k].nominal[0], ts.records[k - 1].nominal[0]) << "step " << k;
  }
}

TEST(Simulate, SecondOrderInTime) {
  auto final_state = [](double dt) {
    auto cfg = small_config(Variant::Flame, 64, 0.5, dt);
    return simulate(cfg).records.back().nominal;
  };
  const Vector a = final_state(4e-3);
  const Vector b = final_state(2e-3);
  const Vector c = final_state(1e-3);
  const double ratio = (a - b).norm() / (b - c).norm();
  EXPECT_GE(ratio, 3.5);
  EXPECT_LE(ratio, 4.5);
}

TEST(Simulate, InjectionReducesErrorOverShortHorizon) {
  // 36 sensors cover the 31 unstable modes.
  auto cfg = small_config(Variant::Flame, 64, 1.0);
  cfg.sensors = sensor_points(ReferenceSet::line({0.125, 0.375, 0.625, 0.875}), 9);
  cfg.keep_states = false;
  const SpectrumTable table(cfg.modes, cfg.params.nu2);
  const InjectionOperator op(build_output_matrices(cfg.sensors, table), 1e-5, cfg.params.nu2);
  cfg.lambda_gain = 1e-5;
  const auto obs = simulate(cfg, op);
  const auto free = simulate(cfg);
  EXPECT_LT(obs.records.back().error_v, free.records.back().error_v);
  EXPECT_TRUE(obs.records.back().nominal.size() == 0);
}

TEST(Simulate, BlowUpIsDetected) {
  auto cfg = small_config(Variant::Flame, 64, 5.0, 5e-2);
  cfg.initial_nominal.coeffs *= 1e6;
  EXPECT_THROW(simulate(cfg), BlowUpError);
}

TEST(Simulate, ConfigValidation) {
  auto cfg = small_config(Variant::Flame);
  cfg.grid_size = 4 * cfg.modes - 1;
  EXPECT_THROW(simulate(cfg), DomainError);
  cfg = small_config(Variant::Flame);
  cfg.initial_estimate.coeffs = Vector::Zero(3);
  EXPECT_THROW(simulate(cfg), DomainError);
}
