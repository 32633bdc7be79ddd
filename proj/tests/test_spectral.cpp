#include <gtest/gtest.h>

#include "ksobs/errors.hpp"
#include "ksobs/spectral.hpp"
#include "test_util.hpp"

using namespace ksobs;
using ksobs::test::kPi;

TEST(Basis, PointValues) {
  EXPECT_DOUBLE_EQ(eigenfunction_value(1, 0.37), 1.0);
  EXPECT_NEAR(eigenfunction_value(2, 0.25), 1.0, 1e-15);
  EXPECT_NEAR(eigenfunction_value(3, 0.5), -1.0, 1e-15);
}

TEST(Basis, FrequencyPairing) {
  EXPECT_EQ(mode_frequency(1), 0);
  EXPECT_EQ(mode_frequency(2), 1);
  EXPECT_EQ(mode_frequency(3), 1);
  EXPECT_EQ(mode_frequency(4), 2);
  EXPECT_TRUE(is_cosine_mode(1));
  EXPECT_FALSE(is_cosine_mode(4));
  EXPECT_THROW(eigenfunction_value(0, 0.1), DomainError);
}

TEST(Basis, LaplacianEigenvalues) {
  EXPECT_EQ(laplacian_eigenvalue(1), 0.0);
  EXPECT_NEAR(laplacian_eigenvalue(2), 4 * kPi * kPi, 1e-12);
  EXPECT_NEAR(laplacian_eigenvalue(3), 4 * kPi * kPi, 1e-12);
  EXPECT_NEAR(laplacian_eigenvalue(9), 64 * kPi * kPi, 1e-10);
}

TEST(Basis, LaplacianByFiniteDifference) {
  const double h = 1e-4;
  for (int j = 2; j <= 7; ++j) {
    const double x = 0.1234;
    const double d2 = (eigenfunction_value(j, x + h) - 2 * eigenfunction_value(j, x) +
                       eigenfunction_value(j, x - h)) / (h * h);
    EXPECT_NEAR(-d2, laplacian_eigenvalue(j) * eigenfunction_value(j, x),
                1e-5 * laplacian_eigenvalue(j));
  }
}

TEST(SpectrumTable, AlphaIsShiftedSquare) {
  const SpectrumTable t(20, 1e-6);
  for (int j = 1; j <= 20; ++j) {
    const double lap = laplacian_eigenvalue(j);
    EXPECT_DOUBLE_EQ(t.alpha(j), (lap + 1) * (lap + 1));
    EXPECT_DOUBLE_EQ(t.basis_norms_sq()[j - 1], j == 1 ? 1.0 : 0.5);
  }
}

TEST(Grid, EvaluateConstantMode) {
  const QuadratureGrid g(16);
  Vector c = Vector::Zero(3);
  c[0] = 1.0;
  const Vector s = g.evaluate(c);
  for (int i = 0; i < 16; ++i) EXPECT_NEAR(s[i], 1.0, 1e-15);
}

TEST(Grid, EvaluateSineAtQuarterPoints) {
  const QuadratureGrid g(4);
  Vector c = Vector::Zero(2);
  c[1] = 1.0;
  const Vector s = g.evaluate(c);
  const double expect[] = {0.0, 1.0, 0.0, -1.0};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(s[i], expect[i], 1e-15);
}

TEST(Grid, EvaluateMatchesDirectSynthesis) {
  std::mt19937_64 rng(11);
  const QuadratureGrid g(256);
  const Vector c = test::random_vector(64, rng);
  const Vector s = g.evaluate(c);
  const Vector ds = g.evaluate_derivative(c);
  for (int i = 0; i < 256; i += 7) {
    EXPECT_NEAR(s[i], test::synthesize(c, g.node(i)), 1e-11);
    EXPECT_NEAR(ds[i], test::synthesize_dx(c, g.node(i)), 1e-8);
  }
}

TEST(Grid, SmallGridFallsBackToDirectSum) {
  std::mt19937_64 rng(3);
  const QuadratureGrid g(8);
  const Vector c = test::random_vector(9, rng);
  const Vector s = g.evaluate(c);
  for (int i = 0; i < 8; ++i) EXPECT_NEAR(s[i], test::synthesize(c, g.node(i)), 1e-12);
}

TEST(Grid, RoundTrip) {
  std::mt19937_64 rng(5);
  const QuadratureGrid g(512);
  for (int n : {1, 2, 31, 200}) {
    const Vector c = test::random_vector(n, rng);
    const Vector back = g.project(g.evaluate(c), n);
    EXPECT_LT((back - c).cwiseAbs().maxCoeff(), 1e-10) << "N=" << n;
  }
}

TEST(Grid, ProjectBasisFunction) {
  const QuadratureGrid g(64);
  Vector s(64);
  for (int i = 0; i < 64; ++i) s[i] = eigenfunction_value(2, g.node(i));
  const Vector c = g.project(s, 8);
  for (int n = 0; n < 8; ++n) EXPECT_NEAR(c[n], n == 1 ? 1.0 : 0.0, 1e-14);
}

TEST(Grid, ProjectNominalInitialProfile) {
  const QuadratureGrid g(2048);
  Vector s(2048);
  for (int i = 0; i < 2048; ++i) s[i] = 1.0 + std::sin(4 * kPi * g.node(i));
  const Vector c = g.project(s, 200);
  for (int n = 1; n <= 200; ++n) {
    EXPECT_NEAR(c[n - 1], (n == 1 || n == 4) ? 1.0 : 0.0, 1e-13) << "n=" << n;
  }
}

TEST(Grid, ProjectSineSquaredAgainstBruteForce) {
  const QuadratureGrid g(128);
  Vector s(128);
  for (int i = 0; i < 128; ++i) s[i] = std::pow(std::sin(2 * kPi * g.node(i)), 2);
  const Vector c = g.project(s, 12);
  const Vector oracle =
      test::brute_project([](double x) { return std::pow(std::sin(2 * kPi * x), 2); }, 12);
  EXPECT_NEAR(c[0], 0.5, 1e-14);
  EXPECT_NEAR(c[4], -0.5, 1e-14);
  EXPECT_LT((c - oracle).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Grid, ProjectRequiresMoreSamplesThanModes) {
  const QuadratureGrid g(8);
  EXPECT_THROW(g.project(Vector::Zero(8), 8), DomainError);
}

TEST(Norms, Examples) {
  const SpectrumTable t(5, 1e-6);
  Vector e1 = Vector::Zero(5);
  e1[0] = 1;
  Vector e2 = Vector::Zero(5);
  e2[1] = 1;
  EXPECT_DOUBLE_EQ(norm(e1, NormKind::H, t), 1.0);
  const double v = std::sqrt(1e-6 * std::pow(4 * kPi * kPi + 1, 2) * 0.5);
  EXPECT_NEAR(norm(e2, NormKind::V, t), v, 1e-15);
  EXPECT_NEAR(norm(e2, NormKind::V, t), 2.8622563579742e-2, 1e-15);
  for (auto k : {NormKind::H, NormKind::V, NormKind::DA}) {
    EXPECT_EQ(norm(Vector::Zero(5), k, t), 0.0);
  }
}

TEST(Norms, VNormByFineQuadrature) {
  // ||y||_V^2 = nu2 || (-d2 + 1) y ||_H^2.
  const double nu2 = 1e-6;
  std::mt19937_64 rng(17);
  const Vector c = test::random_vector(9, rng);
  const SpectrumTable t(9, nu2);
  const int m = 4096;
  double acc = 0.0;
  for (int i = 0; i < m; ++i) {
    const double x = (i + 0.5) / m;
    double val = 0.0;
    for (int j = 1; j <= 9; ++j) val += c[j - 1] * (laplacian_eigenvalue(j) + 1) * eigenfunction_value(j, x);
    acc += val * val / m;
  }
  EXPECT_NEAR(norm(c, NormKind::V, t), std::sqrt(nu2 * acc), 1e-12);
}

TEST(Norms, OrderingProperty) {
  // alpha_j >= 1 makes ||.||_DA^2 / nu2^2 >= ||.||_V^2 / nu2 >= ||.||_H^2.
  const double nu2 = 1e-3;
  const SpectrumTable t(40, nu2);
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const Vector c = test::random_vector(40, rng);
    const double h = norm(c, NormKind::H, t);
    const double v = norm(c, NormKind::V, t) / std::sqrt(nu2);
    const double da = norm(c, NormKind::DA, t) / nu2;
    EXPECT_GE(v, h * (1 - 1e-14));
    EXPECT_GE(da, v * (1 - 1e-14));
  }
}

TEST(Norms, DiscreteBasisNormsOnGrid) {
  const QuadratureGrid g(64);
  for (int j = 1; j <= 20; ++j) {
    double acc = 0.0;
    for (int i = 0; i < 64; ++i) acc += std::pow(eigenfunction_value(j, g.node(i)), 2) * g.weight();
    EXPECT_NEAR(acc, basis_norm_sq(j), 1e-14) << "j=" << j;
  }
}

TEST(Norms, ParseKind) {
  EXPECT_EQ(parse_norm_kind("V"), NormKind::V);
  EXPECT_THROW(parse_norm_kind("L7"), DomainError);
}
