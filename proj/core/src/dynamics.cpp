#include "ksobs/dynamics.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "ksobs/errors.hpp"
#include "ksobs/format.hpp"

namespace ksobs {

Variant parse_variant(std::string_view name) {
  if (name == "flame") return Variant::Flame;
  if (name == "fluid") return Variant::Fluid;
  throw DomainError("unknown model variant '" + std::string(name) + "' (expected flame|fluid)");
}

std::string_view to_string(Variant v) { return v == Variant::Flame ? "flame" : "fluid"; }

void ModelParams::validate() const {
  if (!(nu2 > 0.0) || !(nu1 > 0.0) || !(nu0 > 0.0)) {
    throw DomainError("model coefficients nu0, nu1, nu2 must be positive");
  }
}

double linear_coefficient(int n, const ModelParams& params) {
  const double lap = laplacian_eigenvalue(n);
  return -params.nu2 * lap * lap + params.nu1 * lap;
}

Vector linear_coefficients(int modes, const ModelParams& params) {
  Vector a(modes);
  for (int n = 1; n <= modes; ++n) a[n - 1] = linear_coefficient(n, params);
  return a;
}

int unstable_mode_count(const ModelParams& params, int modes) {
  if (modes < 1) throw DomainError("mode count must be >= 1");
  int count = 0;
  for (int n = 1; n <= modes; ++n) {
    if (linear_coefficient(n, params) >= 0.0) ++count;
  }
  return count;
}

namespace {

void check_dealiased(const Vector& coeffs, const QuadratureGrid& grid) {
  if (grid.size() < 4 * coeffs.size()) {
    throw DomainError("aliasing guard: grid of " + std::to_string(grid.size()) +
                      " samples needs at least 4N = " + std::to_string(4 * coeffs.size()));
  }
}

}  // namespace

Vector flame_nonlinearity(const Vector& coeffs, const QuadratureGrid& grid, const ModelParams& params) {
  check_dealiased(coeffs, grid);
  const Vector dy = grid.evaluate_derivative(coeffs);
  const Vector prod = (0.5 * params.nu0) * dy.array().square();
  return grid.project(prod, static_cast<int>(coeffs.size()));
}

Vector fluid_nonlinearity(const Vector& coeffs, const QuadratureGrid& grid, const ModelParams& params) {
  check_dealiased(coeffs, grid);
  const Vector y = grid.evaluate(coeffs);
  const Vector dy = grid.evaluate_derivative(coeffs);
  const Vector prod = params.nu0 * (y.array() * dy.array());
  return grid.project(prod, static_cast<int>(coeffs.size()));
}

Vector nonlinearity(const Vector& coeffs, const QuadratureGrid& grid, const ModelParams& params) {
  return params.variant == Variant::Flame ? flame_nonlinearity(coeffs, grid, params)
                                          : fluid_nonlinearity(coeffs, grid, params);
}

ImexStepper::ImexStepper(Vector linear, double dt) : dt_(dt) {
  if (!(dt > 0.0)) throw DomainError("time step must be positive");
  const Vector denom = 1.0 - 0.5 * dt * linear.array();
  for (Eigen::Index n = 0; n < denom.size(); ++n) {
    if (denom[n] == 0.0) {
      throw DomainError("step-size error: 1 - dt a_n / 2 vanishes at mode " + std::to_string(n + 1));
    }
  }
  amplification_ = (1.0 + 0.5 * dt * linear.array()) / denom.array();
  forcing_ = dt / denom.array();
}

Vector ImexStepper::step(const Vector& y, const Vector& f, const Vector& f_prev) const {
  return amplification_.cwiseProduct(y) + forcing_.cwiseProduct(1.5 * f - 0.5 * f_prev);
}

Vector ImexStepper::bootstrap(const Vector& y, const Vector& f) const {
  return amplification_.cwiseProduct(y) + forcing_.cwiseProduct(f);
}

Vector imex_step(const Vector& y, const Vector& f, const Vector& f_prev, double dt,
                 const ModelParams& params) {
  const ImexStepper stepper(linear_coefficients(static_cast<int>(y.size()), params), dt);
  return stepper.step(y, f, f_prev);
}

int SimulationConfig::steps() const {
  return static_cast<int>(std::floor(t_end / dt + 1e-9));
}

void SimulationConfig::validate() const {
  params.validate();
  if (modes < 1) throw DomainError("N must be >= 1");
  if (!(dt > 0.0)) throw DomainError("dt must be positive");
  if (!(t_end >= dt)) throw DomainError("t_end must be >= dt");
  if (4 * modes > grid_size) {
    throw DomainError("N = " + std::to_string(modes) + " exceeds grid_M/4 = " +
                      std::to_string(grid_size / 4));
  }
  if (initial_nominal.modes() != modes || initial_estimate.modes() != modes) {
    throw DomainError("initial states must have N = " + std::to_string(modes) + " coefficients");
  }
  if (!(lambda_gain >= 0.0)) throw DomainError("lambda must be >= 0");
}

namespace {

void check_finite(const Vector& y, double t, const SpectrumTable& table, const char* which) {
  const double peak = y.cwiseAbs().maxCoeff();
  if (!std::isfinite(peak) || peak > kBlowUpThreshold) {
    const double h = norm(y, NormKind::H, table);
    throw BlowUpError(t, h,
                      std::string("blow-up in ") + which + " state at t = " + format_double(t) +
                          " (|y|_H = " + format_double(h) + ", max |coeff| = " +
                          format_double(peak) + ")");
  }
}

TimeSeries run(const SimulationConfig& config, const InjectionOperator* injection) {
  config.validate();
  const int n = config.modes;
  const QuadratureGrid grid(config.grid_size);
  const SpectrumTable table(n, config.params.nu2);
  const ImexStepper stepper(linear_coefficients(n, config.params), config.dt);
  const Matrix output = build_output_matrices(config.sensors, table).plain;

  std::optional<InjectionOperator> op;
  if (injection != nullptr) {
    if (injection->modes() != n || injection->sensors() != config.sensors.count()) {
      throw DomainError("injection operator was built for a different sensor set or mode count");
    }
    op = injection->with_gain(config.lambda_gain);
  }

  const int steps = config.steps();
  TimeSeries ts;
  ts.sensor_count = config.sensors.count();
  ts.records.reserve(static_cast<std::size_t>(steps) + 1);

  auto record = [&](int k, const Vector& yr, const Vector& ye, const Vector& omega) {
    TimeRecord rec;
    rec.t = k * config.dt;
    const Vector z = ye - yr;
    rec.error_h = norm(z, NormKind::H, table);
    rec.error_v = norm(z, NormKind::V, table);
    rec.output_error = omega;
    if (config.keep_states) {
      rec.nominal = yr;
      rec.estimate = ye;
    }
    ts.records.push_back(std::move(rec));
  };

  auto explicit_terms = [&](const Vector& yr, const Vector& ye, const Vector& omega,
                            Vector& fr, Vector& fe) {
    fr = -nonlinearity(yr, grid, config.params);
    fe = -nonlinearity(ye, grid, config.params);
    if (op) fe += op->coefficients(omega);
  };

  Vector yr = config.initial_nominal.coeffs;
  Vector ye = config.initial_estimate.coeffs;
  Vector omega = output * (ye - yr);
  record(0, yr, ye, omega);

  Vector fr, fe, fr_prev, fe_prev;
  for (int k = 0; k < steps; ++k) {
    explicit_terms(yr, ye, omega, fr, fe);
    Vector yr_next, ye_next;
    if (k == 0) {
      yr_next = stepper.bootstrap(yr, fr);
      ye_next = stepper.bootstrap(ye, fe);
    } else {
      yr_next = stepper.step(yr, fr, fr_prev);
      ye_next = stepper.step(ye, fe, fe_prev);
    }
    const double t = (k + 1) * config.dt;
    check_finite(yr_next, t, table, "nominal");
    check_finite(ye_next, t, table, "estimate");
    fr_prev = std::move(fr);
    fe_prev = std::move(fe);
    yr = std::move(yr_next);
    ye = std::move(ye_next);
    omega = output * (ye - yr);
    record(k + 1, yr, ye, omega);
  }
  return ts;
}

}  // namespace

TimeSeries simulate(const SimulationConfig& config) { return run(config, nullptr); }

TimeSeries simulate(const SimulationConfig& config, const InjectionOperator& injection) {
  return run(config, &injection);
}

}  // namespace ksobs
