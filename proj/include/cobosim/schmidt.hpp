// Copyright 2026 The cobosim Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file schmidt.hpp
 * @brief Schmidt spectra and the Schmidt decomposition of two-fermion states.
 *
 * A two-fermion pure state sum_{m,n} Gamma_{m,n} a†_m b†_n |0> is equivalent,
 * after per-species unitary basis changes, to sum_i sqrt(lambda_i) a†_i b†_i |0>.
 * The probability vector lambda (stored sorted descending) fully determines
 * the pair's internal entanglement; its purity P = sum lambda_i^2 lies in
 * [1/d, 1].
 */

#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace cobosim {

using Complex = std::complex<double>;

class SchmidtSpectrum {
 public:
  static constexpr double kSumTolerance = 1e-12;

  /// Validates lambda_i >= 0 and sum = 1, stores sorted descending.
  explicit SchmidtSpectrum(std::vector<double> lambdas)
      : lambdas_(std::move(lambdas)) {
    if (lambdas_.empty())
      throw std::domain_error("SchmidtSpectrum: empty spectrum");
    double sum = 0.0;
    for (double& l : lambdas_) {
      if (l < -kSumTolerance)
        throw std::domain_error("SchmidtSpectrum: negative weight");
      if (l < 0.0) l = 0.0;  // clamp numerical dust
      sum += l;
    }
    if (std::abs(sum - 1.0) > kSumTolerance)
      throw std::domain_error("SchmidtSpectrum: weights do not sum to 1");
    std::sort(lambdas_.begin(), lambdas_.end(), std::greater<>());
  }

  static SchmidtSpectrum uniform(int d) {
    if (d < 1) throw std::domain_error("SchmidtSpectrum: d must be >= 1");
    return SchmidtSpectrum(std::vector<double>(d, 1.0 / d));
  }

  int d() const { return static_cast<int>(lambdas_.size()); }
  double lambda(int i) const { return lambdas_.at(i); }
  const std::vector<double>& lambdas() const { return lambdas_; }

  /// Number of nonzero weights.
  int rank(double eps = 1e-14) const {
    int r = 0;
    for (double l : lambdas_)
      if (l > eps) ++r;
    return r;
  }

 private:
  std::vector<double> lambdas_;
};

/// P = sum lambda_i^2 = Tr(rho_A^2).
inline double purity(const SchmidtSpectrum& s) {
  double p = 0.0;
  for (double l : s.lambdas()) p += l * l;
  return p;
}

struct SchmidtDecomposition {
  SchmidtSpectrum spectrum;
  Eigen::MatrixXcd left;   // rows are the rotated a-modes
  Eigen::MatrixXcd right;  // rows are the rotated b-modes

  /// Gamma = left† · diag(sqrt(lambda)) · conj(right).
  Eigen::MatrixXcd reconstruct() const {
    Eigen::VectorXd roots(spectrum.d());
    for (int i = 0; i < spectrum.d(); ++i)
      roots(i) = std::sqrt(spectrum.lambda(i));
    return left.adjoint() * roots.asDiagonal() * right.conjugate();
  }
};

/**
 * SVD route: Gamma = U diag(sigma) V†, lambda_i = sigma_i^2
 * (descending), left = U†, right = V^T.  Requires ||Gamma||_F = 1.
 */
inline SchmidtDecomposition schmidt_decompose(const Eigen::MatrixXcd& gamma) {
  if (gamma.rows() != gamma.cols() || gamma.rows() < 1)
    throw std::domain_error("schmidt_decompose: expected a square matrix");
  if (std::abs(gamma.norm() - 1.0) > 1e-10)
    throw std::domain_error("schmidt_decompose: input not normalized");
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      gamma, Eigen::ComputeFullU | Eigen::ComputeFullV);
  std::vector<double> lambdas(gamma.rows());
  for (int i = 0; i < gamma.rows(); ++i) {
    const double s = svd.singularValues()(i);
    lambdas[i] = s * s;
  }
  // Absorb SVD rounding; the weights must sum to 1 exactly.
  double sum = 0.0;
  for (double l : lambdas) sum += l;
  for (double& l : lambdas) l /= sum;
  return SchmidtDecomposition{SchmidtSpectrum(std::move(lambdas)),
                              svd.matrixU().adjoint(),
                              svd.matrixV().transpose()};
}

/**
 * Seeded reproducible spectra: spectrum k uses mt19937_64(seed + k); draws d
 * standard normals by Box-Muller on uniforms (x >> 11) * 2^-53 and normalizes
 * the squares.  Pinned exactly so sweeps can be replayed from a seed.
 */
inline SchmidtSpectrum random_spectrum(std::uint64_t seed, int d) {
  if (d < 1) throw std::domain_error("random_spectrum: d must be >= 1");
  std::mt19937_64 rng(seed);
  auto uniform01 = [&rng]() {
    constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
    double u = double(rng() >> 11) * kScale;
    return u > 0.0 ? u : kScale;
  };
  std::vector<double> lambdas;
  lambdas.reserve(d);
  while (static_cast<int>(lambdas.size()) < d) {
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double n1 = r * std::cos(2.0 * M_PI * u2);
    const double n2 = r * std::sin(2.0 * M_PI * u2);
    lambdas.push_back(n1 * n1);
    if (static_cast<int>(lambdas.size()) < d) lambdas.push_back(n2 * n2);
  }
  double sum = 0.0;
  for (double l : lambdas) sum += l;
  for (double& l : lambdas) l /= sum;
  return SchmidtSpectrum(std::move(lambdas));
}

inline std::vector<SchmidtSpectrum> random_spectra(std::uint64_t seed,
                                                   int count, int d) {
  std::vector<SchmidtSpectrum> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k)
    out.push_back(random_spectrum(seed + std::uint64_t(k), d));
  return out;
}

}  // namespace cobosim
