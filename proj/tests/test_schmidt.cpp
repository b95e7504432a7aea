// Copyright 2026 The cobosim Authors
// SPDX-License-Identifier: Apache-2.0

#include "cobosim/schmidt.hpp"

#include <gtest/gtest.h>

#include <random>

namespace cobosim {
namespace {

Eigen::MatrixXcd random_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex{gauss(rng), gauss(rng)};
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
  return qr.householderQ();
}

TEST(Spectrum, ValidatesAndSortsDescending) {
  const SchmidtSpectrum s({0.2, 0.5, 0.3});
  EXPECT_EQ(s.d(), 3);
  EXPECT_DOUBLE_EQ(s.lambda(0), 0.5);
  EXPECT_DOUBLE_EQ(s.lambda(2), 0.2);
  EXPECT_EQ(s.rank(), 3);

  EXPECT_THROW(SchmidtSpectrum({0.5, 0.6}), std::domain_error);
  EXPECT_THROW(SchmidtSpectrum({1.2, -0.2}), std::domain_error);
  EXPECT_THROW(SchmidtSpectrum(std::vector<double>{}), std::domain_error);
}

TEST(Spectrum, RankIgnoresZeroWeights) {
  const SchmidtSpectrum s({1.0, 0.0});
  EXPECT_EQ(s.rank(), 1);
}

TEST(Purity, KnownValues) {
  EXPECT_NEAR(purity(SchmidtSpectrum::uniform(4)), 0.25, 1e-15);
  EXPECT_NEAR(purity(SchmidtSpectrum({1.0, 0.0})), 1.0, 1e-15);
  EXPECT_NEAR(purity(SchmidtSpectrum({0.7, 0.3})), 0.58, 1e-15);
}

TEST(Purity, PermutationInvariant) {
  const SchmidtSpectrum a({0.1, 0.6, 0.3});
  const SchmidtSpectrum b({0.3, 0.1, 0.6});
  EXPECT_DOUBLE_EQ(purity(a), purity(b));
}

TEST(Decompose, SeparableState) {
  Eigen::MatrixXcd gamma = Eigen::MatrixXcd::Zero(2, 2);
  gamma(0, 0) = 1.0;
  const SchmidtDecomposition dec = schmidt_decompose(gamma);
  EXPECT_NEAR(dec.spectrum.lambda(0), 1.0, 1e-14);
  EXPECT_NEAR(dec.spectrum.lambda(1), 0.0, 1e-14);
  EXPECT_NEAR(purity(dec.spectrum), 1.0, 1e-14);
}

TEST(Decompose, MaximallyEntangledState) {
  for (int d : {2, 3, 5}) {
    const Eigen::MatrixXcd gamma =
        Eigen::MatrixXcd::Identity(d, d) / std::sqrt(double(d));
    const SchmidtDecomposition dec = schmidt_decompose(gamma);
    for (int i = 0; i < d; ++i)
      EXPECT_NEAR(dec.spectrum.lambda(i), 1.0 / d, 1e-13);
    EXPECT_NEAR(purity(dec.spectrum), 1.0 / d, 1e-13);
  }
}

TEST(Decompose, ReconstructsRandomState) {
  std::mt19937_64 rng(101);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::MatrixXcd gamma(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) gamma(i, j) = Complex{gauss(rng), gauss(rng)};
    gamma /= gamma.norm();
    const SchmidtDecomposition dec = schmidt_decompose(gamma);
    EXPECT_NEAR((dec.reconstruct() - gamma).cwiseAbs().maxCoeff(), 0.0, 1e-10);
    EXPECT_NEAR((dec.left * dec.left.adjoint() -
                 Eigen::MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff(),
                0.0, 1e-10);
    EXPECT_NEAR((dec.right * dec.right.adjoint() -
                 Eigen::MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff(),
                0.0, 1e-10);
  }
}

TEST(Decompose, RejectsUnnormalizedInput) {
  EXPECT_THROW(schmidt_decompose(Eigen::MatrixXcd::Identity(2, 2)),
               std::domain_error);
}

TEST(Decompose, SpectrumInvariantUnderLocalUnitaries) {
  std::mt19937_64 rng(202);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 8; ++trial) {
    Eigen::MatrixXcd gamma(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) gamma(i, j) = Complex{gauss(rng), gauss(rng)};
    gamma /= gamma.norm();
    const Eigen::MatrixXcd rotated =
        random_unitary(3, rng) * gamma * random_unitary(3, rng);
    const double p1 = purity(schmidt_decompose(gamma).spectrum);
    const double p2 = purity(schmidt_decompose(rotated).spectrum);
    EXPECT_NEAR(p1, p2, 1e-10);
    for (int i = 0; i < 3; ++i)
      EXPECT_NEAR(schmidt_decompose(gamma).spectrum.lambda(i),
                  schmidt_decompose(rotated).spectrum.lambda(i), 1e-10);
  }
}

TEST(RandomSpectra, DeterministicAndValid) {
  const auto batch1 = random_spectra(12345, 5, 4);
  const auto batch2 = random_spectra(12345, 5, 4);
  ASSERT_EQ(batch1.size(), 5u);
  for (std::size_t k = 0; k < batch1.size(); ++k) {
    for (int i = 0; i < 4; ++i)
      EXPECT_DOUBLE_EQ(batch1[k].lambda(i), batch2[k].lambda(i));
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) sum += batch1[k].lambda(i);
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
  // Spectrum k of a batch equals the standalone spectrum with seed+k.
  const SchmidtSpectrum solo = random_spectrum(12345 + 3, 4);
  for (int i = 0; i < 4; ++i)
    EXPECT_DOUBLE_EQ(batch1[3].lambda(i), solo.lambda(i));
  // Different seeds give different spectra.
  EXPECT_NE(random_spectrum(1, 4).lambda(0), random_spectrum(2, 4).lambda(0));
}

}  // namespace
}  // namespace cobosim
