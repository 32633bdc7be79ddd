#pragma once

// Output injection -lambda A^{-1} Z_S^* Lambda (Z_S y_e - Z_S y_r) in Galerkin
// coordinates, with the weighting
//   Lambda-bar = E_^{-T} D_ E_^T,   Lambda = Lambda-bar / eigmin(Lambda-bar + Lambda-bar^T),
// where E_ and D_ are the leading S_sigma x S_sigma blocks of the plain output
// matrix and of D_alpha.

#include <filesystem>

#include "ksobs/sensing.hpp"

namespace ksobs {

class InjectionOperator {
 public:
  // Largest cond(E_) accepted before the sensor set is reported as
  // numerically inadmissible.
  static constexpr double kMaxCondition = 1e12;

  InjectionOperator(OutputMatrices matrices, double lambda_gain, double nu2);

  double lambda_gain() const noexcept { return lambda_; }
  double nu2() const noexcept { return nu2_; }
  int sensors() const noexcept { return matrices_.sensors(); }
  int modes() const noexcept { return matrices_.modes(); }

  const Matrix& lambda_matrix() const noexcept { return lambda_mat_; }
  const Matrix& lambda_bar() const noexcept { return lambda_bar_; }
  // eigmin(Lambda-bar + Lambda-bar^T); Lambda = Lambda-bar / eigmin.
  double normalizer() const noexcept { return eigmin_; }
  double condition_number() const noexcept { return cond_; }
  const OutputMatrices& matrices() const noexcept { return matrices_; }

  // Ascending eigenvalues of Lambda + Lambda^T.
  Vector symmetric_spectrum() const;

  // I = -(lambda/nu2) D_alpha^{-1} E^T Lambda omega.
  Vector coefficients(const Vector& omega) const;

  // omega^T Lambda omega - |omega|^2 / 2.
  double monotonicity_margin(const Vector& omega) const;

  // Copy with a different gain; Lambda is unchanged.
  InjectionOperator with_gain(double lambda_gain) const;

 private:
  OutputMatrices matrices_;
  double lambda_;
  double nu2_;
  double eigmin_ = 0.0;
  double cond_ = 0.0;
  Matrix lambda_bar_;
  Matrix lambda_mat_;
  Matrix gain_;  // -(1/nu2) D_alpha^{-1} E^T Lambda, N x S_sigma
};

Vector injection_coefficients(const InjectionOperator& op, const Vector& omega);
double monotonicity_check(const InjectionOperator& op, const Vector& omega);

void export_lambda_csv(const InjectionOperator& op, const std::filesystem::path& path);

}  // namespace ksobs
