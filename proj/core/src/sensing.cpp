#include "ksobs/sensing.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ksobs/errors.hpp"
#include "ksobs/format.hpp"

namespace ksobs {

std::uint64_t monomial_count(int m, int p) {
  if (m < 1 || p < 0) {
    throw DomainError("monomial_count requires m >= 1 and p >= 0");
  }
  // C(m+p, p) built as C(m+i, i) = C(m+i-1, i-1) * (m+i) / i; each step is exact.
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= static_cast<std::uint64_t>(p); ++i) {
    const std::uint64_t num = static_cast<std::uint64_t>(m) + i;
    const std::uint64_t g = std::gcd(result, i);
    const std::uint64_t r = result / g;
    const std::uint64_t t = num / (i / g);
    if (r > std::numeric_limits<std::uint64_t>::max() / t) {
      throw std::range_error("monomial_count(" + std::to_string(m) + ", " + std::to_string(p) +
                             ") overflows 64 bits");
    }
    result = r * t;
  }
  return result;
}

ReferenceSet ReferenceSet::line(const std::vector<double>& xs) {
  ReferenceSet ref;
  ref.points = Eigen::Map<const Vector>(xs.data(), static_cast<Eigen::Index>(xs.size()));
  return ref;
}

namespace {

std::vector<std::array<int, 3>> cubic_exponents(int d) {
  std::vector<std::array<int, 3>> out;
  for (int a = 0; a <= 3; ++a) {
    for (int b = 0; b <= (d >= 2 ? 3 : 0); ++b) {
      for (int c = 0; c <= (d >= 3 ? 3 : 0); ++c) {
        if (a + b + c <= 3) out.push_back({a, b, c});
      }
    }
  }
  return out;
}

}  // namespace

AdmissibilityReport validate_reference_set(const ReferenceSet& ref) {
  const int d = ref.dimension();
  if (d < 1 || d > 3) {
    throw DomainError("reference set dimension must be 1, 2 or 3");
  }
  const auto required = static_cast<int>(monomial_count(d, 3));
  if (ref.count() != required) {
    throw DomainError("reference set in dimension " + std::to_string(d) + " needs " +
                      std::to_string(required) + " points, got " + std::to_string(ref.count()));
  }
  const auto exps = cubic_exponents(d);
  Matrix mm(required, required);
  for (int i = 0; i < required; ++i) {
    for (int j = 0; j < required; ++j) {
      double v = 1.0;
      for (int n = 0; n < d; ++n) v *= std::pow(ref.points(i, n), exps[j][n]);
      mm(i, j) = v;
    }
  }
  const double scale = mm.rowwise().norm().maxCoeff();
  const Eigen::FullPivLU<Matrix> lu(mm);
  const Vector pivots = lu.matrixLU().diagonal().cwiseAbs();
  const double tol = 1e-10 * scale;
  int rank = 0;
  for (Eigen::Index i = 0; i < pivots.size(); ++i) {
    if (pivots[i] > tol) ++rank;
  }
  return {rank == required ? Admissibility::Admissible : Admissibility::RankDeficient, rank,
          required};
}

SensorSet sensor_points(const ReferenceSet& ref, int level) {
  if (ref.dimension() != 1) {
    throw DomainError("sensor placement is implemented for d = 1 only");
  }
  if (level < 1) {
    throw DomainError("refinement level S must be >= 1");
  }
  SensorSet set;
  set.level = level;
  set.reference.assign(ref.points.data(), ref.points.data() + ref.count());
  set.points.reserve(static_cast<std::size_t>(level * ref.count()));
  const double inv = 1.0 / level;
  for (int k = 1; k <= level; ++k) {
    for (double x1 : set.reference) {
      set.points.push_back((k - 1) * inv + x1 * inv);
    }
  }
  return set;
}

SensorSet sensor_set_from_points(std::vector<double> points, int level) {
  SensorSet set;
  set.level = level;
  set.points = std::move(points);
  return set;
}

OutputMatrices build_output_matrices(const SensorSet& sensors, const SpectrumTable& table) {
  const int rows = sensors.count();
  const int cols = table.size();
  OutputMatrices out;
  out.plain.resize(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      out.plain(r, c) = eigenfunction_value(c + 1, sensors.points[static_cast<std::size_t>(r)]);
    }
  }
  out.alpha = table.alpha_values();
  out.weighted = out.plain * out.alpha.cwiseInverse().asDiagonal();
  return out;
}

Vector measure(const SpectralState& state, const SensorSet& sensors) {
  Vector w = Vector::Zero(sensors.count());
  for (int r = 0; r < sensors.count(); ++r) {
    const double x = sensors.points[static_cast<std::size_t>(r)];
    for (int n = 0; n < state.modes(); ++n) {
      w[r] += state.coeffs[n] * eigenfunction_value(n + 1, x);
    }
  }
  return w;
}

Vector measure(const Vector& coeffs, const OutputMatrices& matrices) {
  if (coeffs.size() != matrices.modes()) {
    throw DomainError("state length does not match output matrix");
  }
  return matrices.plain * coeffs;
}

double cps_closed_form(int level, double nu2) {
  const double s = level;
  const double f = 16.0 * s * s * std::numbers::pi * std::numbers::pi + 1.0;
  return nu2 * f * f / std::sqrt(2.0 * s);
}

CpsNumeric cps_numeric(const SensorSet& sensors, const SpectrumTable& table) {
  const int n = sensors.count();
  if (n < 1 || table.size() < n) {
    throw DomainError("cps_numeric needs at least S_sigma = " + std::to_string(n) + " modes");
  }
  Matrix e(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      e(i, j) = eigenfunction_value(j + 1, sensors.points[static_cast<std::size_t>(i)]);
    }
  }
  const Eigen::FullPivLU<Matrix> lu(e);
  if (!lu.isInvertible()) {
    throw ConstructionError("sensor evaluation matrix is singular; sensor set is inadmissible");
  }
  // ||e_j||_{D(A)} = nu2 alpha_j ||e_j||_H.
  Vector da_norm(n);
  for (int j = 0; j < n; ++j) {
    da_norm[j] = table.nu2() * table.alpha_values()[j] * std::sqrt(table.basis_norms_sq()[j]);
  }
  // Ebar = E diag(1/da_norm)  =>  Ebar^{-1} = diag(da_norm) E^{-1}.
  const Matrix ebar_inv = da_norm.asDiagonal() * lu.inverse();
  const Matrix pi_bar = ebar_inv.transpose() * ebar_inv;
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(pi_bar, Eigen::EigenvaluesOnly);

  CpsNumeric out;
  out.pi_bar_eigs = eig.eigenvalues();
  out.value = std::sqrt(out.pi_bar_eigs[n - 1]);
  out.gram = e.transpose() * e;
  return out;
}

Matrix oblique_projection(const OutputMatrices& matrices) {
  const int s = matrices.sensors();
  const int n = matrices.modes();
  if (n < s) {
    throw DomainError("oblique projection needs at least S_sigma modes");
  }
  const Eigen::FullPivLU<Matrix> lu(matrices.plain.leftCols(s));
  if (!lu.isInvertible()) {
    throw ConstructionError("leading sensor block is singular");
  }
  Matrix p = Matrix::Zero(n, n);
  p.topRows(s) = lu.solve(matrices.plain);
  return p;
}

double poincare_estimate(const SensorSet& sensors, int modes, const SpectrumTable& table) {
  const int s = sensors.count();
  if (modes <= s) {
    throw DomainError("sensor kernel is trivial: need N > S_sigma (N = " + std::to_string(modes) +
                      ", S_sigma = " + std::to_string(s) + ")");
  }
  if (table.size() < modes) {
    throw DomainError("spectrum table smaller than requested mode count");
  }
  // In coordinates u_n = ||e_n||_V theta_n the V-norm is Euclidean and the
  // quotient becomes u^T diag(nu2 alpha) u / u^T u on the transformed kernel.
  const Vector alpha = table.alpha_values().head(modes);
  const Vector hsq = table.basis_norms_sq().head(modes);
  const Vector v_norm = (table.nu2() * alpha.array() * hsq.array()).sqrt();

  Matrix e(s, modes);
  for (int r = 0; r < s; ++r) {
    for (int c = 0; c < modes; ++c) {
      e(r, c) = eigenfunction_value(c + 1, sensors.points[static_cast<std::size_t>(r)]) / v_norm[c];
    }
  }
  const Eigen::ColPivHouseholderQR<Matrix> qr(e.transpose());
  const int rank = static_cast<int>(qr.rank());
  const Matrix q = qr.householderQ();
  const Matrix kernel = q.rightCols(modes - rank);

  const Vector weight = table.nu2() * alpha;
  const Matrix reduced = kernel.transpose() * weight.asDiagonal() * kernel;
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(reduced, Eigen::EigenvaluesOnly);
  return eig.eigenvalues()[0];
}

void export_matrix_csv(const Matrix& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot open '" + path.string() + "' for writing");
  }
  out << "r,c,value\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      out << (r + 1) << ',' << (c + 1) << ',' << format_double(m(r, c)) << '\n';
    }
  }
  if (!out) {
    throw IoError("write failed for '" + path.string() + "'");
  }
}

}  // namespace ksobs
