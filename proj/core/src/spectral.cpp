#include "ksobs/spectral.hpp"

#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

#include <fftw3.h>

#include "ksobs/errors.hpp"

namespace ksobs {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// The FFTW planner is not reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void check_mode(int j) {
  if (j < 1) {
    throw DomainError("mode index must be >= 1, got " + std::to_string(j));
  }
}

int max_frequency(int modes) { return modes / 2; }

}  // namespace

int mode_frequency(int j) {
  check_mode(j);
  return (j % 2 == 1) ? (j - 1) / 2 : j / 2;
}

bool is_cosine_mode(int j) {
  check_mode(j);
  return j % 2 == 1;
}

double eigenfunction_value(int j, double x) {
  check_mode(j);
  if (j % 2 == 1) {
    return std::cos((j - 1) * kPi * x);
  }
  return std::sin(j * kPi * x);
}

double laplacian_eigenvalue(int j) {
  const double w = kTwoPi * mode_frequency(j);
  return w * w;
}

double basis_norm_sq(int j) {
  check_mode(j);
  return j == 1 ? 1.0 : 0.5;
}

SpectrumTable::SpectrumTable(int modes, double nu2)
    : nu2_(nu2), lap_(modes), alpha_(modes), hnorm_sq_(modes) {
  if (modes < 1) {
    throw DomainError("spectrum table needs at least one mode");
  }
  if (!(nu2 > 0.0)) {
    throw DomainError("nu2 must be positive");
  }
  for (int j = 1; j <= modes; ++j) {
    const double lap = laplacian_eigenvalue(j);
    lap_[j - 1] = lap;
    alpha_[j - 1] = (lap + 1.0) * (lap + 1.0);
    hnorm_sq_[j - 1] = basis_norm_sq(j);
  }
}

NormKind parse_norm_kind(std::string_view name) {
  if (name == "H" || name == "h") return NormKind::H;
  if (name == "V" || name == "v") return NormKind::V;
  if (name == "DA" || name == "da" || name == "D(A)") return NormKind::DA;
  throw DomainError("unknown norm kind '" + std::string(name) + "'");
}

std::string_view to_string(NormKind kind) {
  switch (kind) {
    case NormKind::H:
      return "H";
    case NormKind::V:
      return "V";
    case NormKind::DA:
      return "DA";
  }
  return "?";
}

double norm(const Vector& coeffs, NormKind kind, const SpectrumTable& table) {
  if (coeffs.size() != table.size()) {
    throw DomainError("state has " + std::to_string(coeffs.size()) +
                      " coefficients but spectrum table has " +
                      std::to_string(table.size()) + " modes");
  }
  const Vector weighted = coeffs.array().square() * table.basis_norms_sq().array();
  switch (kind) {
    case NormKind::H:
      return std::sqrt(weighted.sum());
    case NormKind::V:
      return std::sqrt(table.nu2() * (weighted.array() * table.alpha_values().array()).sum());
    case NormKind::DA:
      return std::sqrt(table.nu2() * table.nu2() *
                       (weighted.array() * table.alpha_values().array().square()).sum());
  }
  throw DomainError("unknown norm kind");
}

double norm(const SpectralState& state, NormKind kind, const SpectrumTable& table) {
  return norm(state.coeffs, kind, table);
}

struct QuadratureGrid::Plans {
  fftw_plan forward = nullptr;   // r2c
  fftw_plan backward = nullptr;  // c2r

  explicit Plans(int m) {
    std::vector<double> real(static_cast<std::size_t>(m));
    std::vector<std::complex<double>> spec(static_cast<std::size_t>(m / 2 + 1));
    auto* c = reinterpret_cast<fftw_complex*>(spec.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    std::lock_guard lock(planner_mutex());
    forward = fftw_plan_dft_r2c_1d(m, real.data(), c, flags);
    // c2r overwrites its input; callers always pass a scratch copy.
    backward = fftw_plan_dft_c2r_1d(m, c, real.data(), flags | FFTW_DESTROY_INPUT);
    if (forward == nullptr || backward == nullptr) {
      throw std::runtime_error("FFTW planning failed");
    }
  }

  ~Plans() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
  }

  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;
};

QuadratureGrid::QuadratureGrid(int samples) : samples_(samples) {
  if (samples < 2) {
    throw DomainError("quadrature grid needs at least 2 samples");
  }
  plans_ = std::make_shared<const Plans>(samples);
}

Vector QuadratureGrid::nodes() const {
  Vector x(samples_);
  for (int i = 0; i < samples_; ++i) x[i] = node(i);
  return x;
}

namespace {

// Half-spectrum Y_k (k = 0..M/2) such that the unnormalized c2r transform
// reproduces sum_n coeffs[n] e_n on the grid. Derivative order 1 multiplies
// by 2 pi i k.
std::vector<std::complex<double>> half_spectrum(const Vector& coeffs, int m, bool derivative) {
  std::vector<std::complex<double>> spec(static_cast<std::size_t>(m / 2 + 1));
  for (int n = 0; n < coeffs.size(); ++n) {
    const int j = n + 1;
    const int k = mode_frequency(j);
    std::complex<double> y;
    if (k == 0) {
      y = coeffs[n];
    } else if (j % 2 == 1) {
      y = 0.5 * coeffs[n];
    } else {
      y = std::complex<double>(0.0, -0.5 * coeffs[n]);
    }
    if (derivative) y *= std::complex<double>(0.0, kTwoPi * k);
    spec[static_cast<std::size_t>(k)] += y;
  }
  return spec;
}

Vector direct_evaluate(const Vector& coeffs, int m, bool derivative) {
  Vector out = Vector::Zero(m);
  for (int n = 0; n < coeffs.size(); ++n) {
    const int j = n + 1;
    const int k = mode_frequency(j);
    const double w = kTwoPi * k;
    for (int i = 0; i < m; ++i) {
      const double x = static_cast<double>(i) / m;
      double v;
      if (!derivative) {
        v = eigenfunction_value(j, x);
      } else if (j % 2 == 1) {
        v = -w * std::sin(w * x);
      } else {
        v = w * std::cos(w * x);
      }
      out[i] += coeffs[n] * v;
    }
  }
  return out;
}

}  // namespace

Vector QuadratureGrid::evaluate(const Vector& coeffs) const {
  if (2 * max_frequency(static_cast<int>(coeffs.size())) >= samples_) {
    return direct_evaluate(coeffs, samples_, false);
  }
  auto spec = half_spectrum(coeffs, samples_, false);
  Vector out(samples_);
  fftw_execute_dft_c2r(plans_->backward, reinterpret_cast<fftw_complex*>(spec.data()), out.data());
  return out;
}

Vector QuadratureGrid::evaluate_derivative(const Vector& coeffs) const {
  if (2 * max_frequency(static_cast<int>(coeffs.size())) >= samples_) {
    return direct_evaluate(coeffs, samples_, true);
  }
  auto spec = half_spectrum(coeffs, samples_, true);
  Vector out(samples_);
  fftw_execute_dft_c2r(plans_->backward, reinterpret_cast<fftw_complex*>(spec.data()), out.data());
  return out;
}

Vector QuadratureGrid::project(const Vector& samples, int modes) const {
  if (samples.size() != samples_) {
    throw DomainError("expected " + std::to_string(samples_) + " samples, got " +
                      std::to_string(samples.size()));
  }
  if (modes < 1) {
    throw DomainError("projection needs at least one mode");
  }
  if (samples_ <= modes) {
    throw DomainError("aliasing: grid of " + std::to_string(samples_) +
                      " samples cannot resolve " + std::to_string(modes) + " modes");
  }
  std::vector<std::complex<double>> spec(static_cast<std::size_t>(samples_ / 2 + 1));
  // r2c does not modify its input, but the signature is non-const.
  Vector in = samples;
  fftw_execute_dft_r2c(plans_->forward, in.data(), reinterpret_cast<fftw_complex*>(spec.data()));

  Vector coeffs(modes);
  const double inv_m = 1.0 / samples_;
  for (int n = 0; n < modes; ++n) {
    const int j = n + 1;
    const auto& x = spec[static_cast<std::size_t>(mode_frequency(j))];
    // sum_i s_i cos(2 pi k x_i) = Re X_k, sum_i s_i sin(2 pi k x_i) = -Im X_k.
    const double inner = (j % 2 == 1) ? x.real() : -x.imag();
    coeffs[n] = inner * inv_m / basis_norm_sq(j);
  }
  return coeffs;
}

Vector evaluate_on_grid(const SpectralState& state, const QuadratureGrid& grid) {
  return grid.evaluate(state.coeffs);
}

SpectralState project(const Vector& samples, const QuadratureGrid& grid, int modes) {
  return SpectralState{grid.project(samples, modes), 0.0};
}

}  // namespace ksobs
