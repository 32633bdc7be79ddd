#pragma once

// Periodic trigonometric eigenbasis on the unit torus [0,1), the spectrum of
// A = nu2 (-d^2/dx^2 + 1)^2, grid synthesis/projection, and the H, V and
// D(A) norms.
//
// Modes are 1-based and kept unnormalized:
//   e_j(x) = cos((j-1) pi x)  for odd j,
//   e_j(x) = sin(j pi x)      for even j,
// so ||e_1||_H^2 = 1 and ||e_j||_H^2 = 1/2 for j >= 2. Coefficient vectors are
// 0-based Eigen vectors: coeffs[j-1] multiplies e_j.

#include <memory>
#include <string_view>

#include <Eigen/Dense>

namespace ksobs {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Integer k such that e_j is cos(2 pi k x) (odd j) or sin(2 pi k x) (even j).
int mode_frequency(int j);
bool is_cosine_mode(int j);

double eigenfunction_value(int j, double x);

// -e_j'' = laplacian_eigenvalue(j) e_j.
double laplacian_eigenvalue(int j);

// ||e_j||_H^2.
double basis_norm_sq(int j);

class SpectrumTable {
 public:
  SpectrumTable(int modes, double nu2);

  int size() const noexcept { return static_cast<int>(lap_.size()); }
  double nu2() const noexcept { return nu2_; }

  // 1-based accessors.
  double laplacian(int j) const { return lap_[j - 1]; }
  double alpha(int j) const { return alpha_[j - 1]; }

  // 0-based vectors of length size().
  const Vector& laplacian_eigenvalues() const noexcept { return lap_; }
  const Vector& alpha_values() const noexcept { return alpha_; }
  const Vector& basis_norms_sq() const noexcept { return hnorm_sq_; }

 private:
  double nu2_;
  Vector lap_;       // alpha-bar_j
  Vector alpha_;     // (alpha-bar_j + 1)^2
  Vector hnorm_sq_;  // ||e_j||_H^2
};

struct SpectralState {
  Vector coeffs;
  double t = 0.0;

  int modes() const noexcept { return static_cast<int>(coeffs.size()); }
};

enum class NormKind { H, V, DA };

NormKind parse_norm_kind(std::string_view name);
std::string_view to_string(NormKind kind);

double norm(const Vector& coeffs, NormKind kind, const SpectrumTable& table);
double norm(const SpectralState& state, NormKind kind, const SpectrumTable& table);

// Uniform periodic grid x_i = i/M, i = 0..M-1, with weights 1/M. The rule is
// exact for trigonometric polynomials of degree < M. Transforms run through
// real FFTs; a grid is immutable and safe to share between threads.
class QuadratureGrid {
 public:
  explicit QuadratureGrid(int samples);

  int size() const noexcept { return samples_; }
  double weight() const noexcept { return 1.0 / samples_; }
  double node(int i) const noexcept { return static_cast<double>(i) / samples_; }
  Vector nodes() const;

  // samples[i] = sum_n coeffs[n] e_n(x_i).
  Vector evaluate(const Vector& coeffs) const;

  // Samples of d/dx of the synthesized function.
  Vector evaluate_derivative(const Vector& coeffs) const;

  // Quadrature form of the L2-orthogonal projection onto span{e_1..e_modes}.
  // Requires size() > modes.
  Vector project(const Vector& samples, int modes) const;

 private:
  struct Plans;

  int samples_;
  std::shared_ptr<const Plans> plans_;
};

Vector evaluate_on_grid(const SpectralState& state, const QuadratureGrid& grid);
SpectralState project(const Vector& samples, const QuadratureGrid& grid, int modes);

}  // namespace ksobs
