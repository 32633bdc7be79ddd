#include "ksobs/injection.hpp"

#include <limits>
#include <string>

#include "ksobs/errors.hpp"
#include "ksobs/format.hpp"

namespace ksobs {

InjectionOperator::InjectionOperator(OutputMatrices matrices, double lambda_gain, double nu2)
    : matrices_(std::move(matrices)), lambda_(lambda_gain), nu2_(nu2) {
  if (!(lambda_gain >= 0.0)) {
    throw DomainError("injection gain lambda must be >= 0");
  }
  if (!(nu2 > 0.0)) {
    throw DomainError("nu2 must be positive");
  }
  const int s = matrices_.sensors();
  if (s < 1 || matrices_.modes() < s) {
    throw DomainError("injection needs N >= S_sigma >= 1 (N = " +
                      std::to_string(matrices_.modes()) + ", S_sigma = " + std::to_string(s) +
                      ")");
  }

  const Matrix lead = matrices_.plain.leftCols(s);
  const Eigen::JacobiSVD<Matrix> svd(lead);
  const Vector sv = svd.singularValues();
  cond_ = sv[s - 1] > 0.0 ? sv[0] / sv[s - 1] : std::numeric_limits<double>::infinity();
  if (!(cond_ <= kMaxCondition)) {
    throw ConstructionError("leading " + std::to_string(s) + "x" + std::to_string(s) +
                            " sensor block is numerically singular (cond = " +
                            format_double(cond_) +
                            "); sensor set is inadmissible for this basis ordering");
  }

  // Lambda-bar = E_^{-T} D_ E_^T, i.e. solve E_^T X = D_ E_^T.
  const Eigen::PartialPivLU<Matrix> lu_t(lead.transpose());
  lambda_bar_ = lu_t.solve(matrices_.alpha.head(s).asDiagonal() * lead.transpose());

  const Matrix sym = lambda_bar_ + lambda_bar_.transpose();
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(sym, Eigen::EigenvaluesOnly);
  eigmin_ = eig.eigenvalues()[0];
  if (!(eigmin_ > 0.0)) {
    throw ConstructionError("Lambda-bar + Lambda-bar^T is not positive definite (eigmin = " +
                            format_double(eigmin_) + ")");
  }
  lambda_mat_ = lambda_bar_ / eigmin_;
  // The leading block of D_alpha^{-1} E^T Lambda collapses to E_^T / eigmin;
  // forming it through Lambda would leak the alpha spread into rounding.
  const int n = matrices_.modes();
  gain_.resize(n, s);
  gain_.topRows(s) = lead.transpose() / eigmin_;
  if (n > s) {
    gain_.bottomRows(n - s) = matrices_.alpha.tail(n - s).cwiseInverse().asDiagonal() *
                              matrices_.plain.rightCols(n - s).transpose() * lambda_mat_;
  }
  gain_ *= -1.0 / nu2_;
}

Vector InjectionOperator::symmetric_spectrum() const {
  const Matrix sym = lambda_mat_ + lambda_mat_.transpose();
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(sym, Eigen::EigenvaluesOnly);
  return eig.eigenvalues();
}

Vector InjectionOperator::coefficients(const Vector& omega) const {
  if (omega.size() != sensors()) {
    throw DomainError("output error has length " + std::to_string(omega.size()) +
                      ", expected S_sigma = " + std::to_string(sensors()));
  }
  return lambda_ * (gain_ * omega);
}

double InjectionOperator::monotonicity_margin(const Vector& omega) const {
  if (omega.size() != sensors()) {
    throw DomainError("output error has wrong length");
  }
  return omega.dot(lambda_mat_ * omega) - 0.5 * omega.squaredNorm();
}

InjectionOperator InjectionOperator::with_gain(double lambda_gain) const {
  if (!(lambda_gain >= 0.0)) {
    throw DomainError("injection gain lambda must be >= 0");
  }
  InjectionOperator copy = *this;
  copy.lambda_ = lambda_gain;
  return copy;
}

Vector injection_coefficients(const InjectionOperator& op, const Vector& omega) {
  return op.coefficients(omega);
}

double monotonicity_check(const InjectionOperator& op, const Vector& omega) {
  return op.monotonicity_margin(omega);
}

void export_lambda_csv(const InjectionOperator& op, const std::filesystem::path& path) {
  export_matrix_csv(op.lambda_matrix(), path);
}

}  // namespace ksobs
