#pragma once

// Galerkin dynamics of the 1-D Kuramoto-Sivashinsky equation on the unit
// torus,
//   y_t + nu2 y_xxxx + nu1 y_xx + nu0 N(y) = f,
// with N(y) = (y_x)^2 / 2 (flame) or y y_x (fluid), integrated by
// Crank-Nicolson on the linear part and second-order Adams-Bashforth on the
// nonlinear and injection terms. The observer copy carries the output
// injection term.

#include <string_view>
#include <vector>

#include "ksobs/injection.hpp"
#include "ksobs/sensing.hpp"
#include "ksobs/spectral.hpp"

namespace ksobs {

enum class Variant { Flame, Fluid };

Variant parse_variant(std::string_view name);
std::string_view to_string(Variant v);

struct ModelParams {
  double nu2 = 1e-6;
  double nu1 = 1e-2;
  double nu0 = 1e-2;
  Variant variant = Variant::Flame;

  void validate() const;
};

// a_n = -nu2 abar_n^2 + nu1 abar_n, the eigenvalue of -nu2 d^4 - nu1 d^2 on e_n.
double linear_coefficient(int n, const ModelParams& params);
Vector linear_coefficients(int modes, const ModelParams& params);

// Number of n <= modes with a_n >= 0.
int unstable_mode_count(const ModelParams& params, int modes);

// Galerkin coordinates of P_N (nu0 (y_x)^2 / 2).
Vector flame_nonlinearity(const Vector& coeffs, const QuadratureGrid& grid, const ModelParams& params);
// Galerkin coordinates of P_N (nu0 y y_x).
Vector fluid_nonlinearity(const Vector& coeffs, const QuadratureGrid& grid, const ModelParams& params);
// Dispatches on params.variant.
Vector nonlinearity(const Vector& coeffs, const QuadratureGrid& grid, const ModelParams& params);

// Per-mode IMEX update for y' = a y + F:
//   y1 (1 - dt a/2) = y0 (1 + dt a/2) + dt (3/2 F0 - 1/2 F_prev).
class ImexStepper {
 public:
  ImexStepper(Vector linear, double dt);

  double dt() const noexcept { return dt_; }

  Vector step(const Vector& y, const Vector& f, const Vector& f_prev) const;
  // First step: the explicit term is taken by forward Euler.
  Vector bootstrap(const Vector& y, const Vector& f) const;

 private:
  double dt_;
  Vector amplification_;  // (1 + dt a/2) / (1 - dt a/2)
  Vector forcing_;        // dt / (1 - dt a/2)
};

Vector imex_step(const Vector& y, const Vector& f, const Vector& f_prev, double dt,
                 const ModelParams& params);

struct SimulationConfig {
  ModelParams params;
  int modes = 200;
  double dt = 1e-3;
  double t_end = 20.0;
  int grid_size = 2048;
  SensorSet sensors;
  double lambda_gain = 0.0;
  SpectralState initial_nominal;
  SpectralState initial_estimate;
  // When false, records carry norms and output errors only.
  bool keep_states = true;

  int steps() const;
  void validate() const;
};

struct TimeRecord {
  double t = 0.0;
  Vector nominal;
  Vector estimate;
  double error_h = 0.0;
  double error_v = 0.0;
  Vector output_error;  // Z_S y_e - Z_S y_r
};

struct TimeSeries {
  int sensor_count = 0;
  std::vector<TimeRecord> records;

  bool empty() const noexcept { return records.empty(); }
  std::size_t size() const noexcept { return records.size(); }
};

// Any |coefficient| above this (or a nonfinite one) aborts the run.
inline constexpr double kBlowUpThreshold = 1e12;

// Observer without injection (free estimate dynamics).
TimeSeries simulate(const SimulationConfig& config);
// Observer driven by `injection`, using config.lambda_gain as the gain.
TimeSeries simulate(const SimulationConfig& config, const InjectionOperator& injection);

}  // namespace ksobs
