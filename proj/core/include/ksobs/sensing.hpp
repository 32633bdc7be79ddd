#pragma once

// Point sensors on the torus: reference-set admissibility, refined sensor
// sets, the output (measurement) matrices, and the constants C^P_S (oblique
// projection norm) and beta_S (Poincare-like constant on the sensor kernel).

#include <cstdint>
#include <filesystem>
#include <vector>

#include "ksobs/spectral.hpp"

namespace ksobs {

// Number of monomials in m variables with total degree <= p, (m+p)!/(m! p!).
// Throws std::range_error if the result does not fit in 64 bits.
std::uint64_t monomial_count(int m, int p);

// Reference points in [0,1)^d, one row per point. d = 1 for simulation;
// d in {2,3} is supported for the rank test only.
struct ReferenceSet {
  Matrix points;

  int dimension() const noexcept { return static_cast<int>(points.cols()); }
  int count() const noexcept { return static_cast<int>(points.rows()); }

  static ReferenceSet line(const std::vector<double>& xs);
};

enum class Admissibility { Admissible, RankDeficient };

struct AdmissibilityReport {
  Admissibility verdict;
  int rank;
  int required_rank;
};

// Rank test of the cubic monomial evaluation matrix at the reference points.
AdmissibilityReport validate_reference_set(const ReferenceSet& ref);

struct SensorSet {
  int level = 1;                   // S
  std::vector<double> points;      // x^{S,j}, j = 1..S_sigma
  std::vector<double> reference;   // x^{1,s}

  int count() const noexcept { return static_cast<int>(points.size()); }
};

// x^{S, 4(k-1)+s} = (k-1)/S + x^{1,s}/S for d = 1.
SensorSet sensor_points(const ReferenceSet& ref, int level);

// Sensors placed at arbitrary points (level recorded as given).
SensorSet sensor_set_from_points(std::vector<double> points, int level = 1);

struct OutputMatrices {
  Matrix plain;     // (r,c) = e_c(x_r), S_sigma x N
  Matrix weighted;  // (r,c) = alpha_c^{-1} e_c(x_r)
  Vector alpha;     // diagonal of D_alpha, length N

  int sensors() const noexcept { return static_cast<int>(plain.rows()); }
  int modes() const noexcept { return static_cast<int>(plain.cols()); }
};

OutputMatrices build_output_matrices(const SensorSet& sensors, const SpectrumTable& table);

// Pointwise values of the state at the sensors.
Vector measure(const SpectralState& state, const SensorSet& sensors);
Vector measure(const Vector& coeffs, const OutputMatrices& matrices);

// nu2 (16 S^2 pi^2 + 1)^2 (2S)^{-1/2}.
double cps_closed_form(int level, double nu2);

struct CpsNumeric {
  double value;        // sqrt of the largest eigenvalue of Pi-bar
  Matrix gram;         // E^T E over the first S_sigma modes (raw basis)
  Vector pi_bar_eigs;  // ascending
};

// Oblique projection constant for E_S = span{e_1..e_{S_sigma}} along the
// sensor kernel, measured in the D(A) norm: the largest singular value of
// Ebar^{-1}, where Ebar(i,j) = e_j(x_i) / ||e_j||_{D(A)}.
CpsNumeric cps_numeric(const SensorSet& sensors, const SpectrumTable& table);

// Matrix on coefficient space of P = Psi Ebar^{-1} Z_S with Psi the first
// S_sigma modes. Requires the leading S_sigma block of matrices.plain to be
// invertible.
Matrix oblique_projection(const OutputMatrices& matrices);

// Galerkin estimate of inf ||Theta||_{D(A)}^2 / ||Theta||_V^2 over
// span{e_1..e_N} intersected with the sensor kernel.
double poincare_estimate(const SensorSet& sensors, int modes, const SpectrumTable& table);

// Row-major "r,c,value" dump, 1-based indices.
void export_matrix_csv(const Matrix& m, const std::filesystem::path& path);

}  // namespace ksobs
