// Copyright 2026 The cobosim Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file rdm.hpp
 * @brief One- and two-particle reduced density matrices from expectation
 *        values, with purities.
 *
 * The one-particle matrix of species a has entries
 * rho(n, m) = <psi| a†_m a_n |psi> over the 2d modes (internal, site) of the
 * species; its raw trace equals the particle count.  The two-particle matrix
 * lives on antisymmetric pairs (k < l) with normal-ordered entries
 * rho((k,l),(m,n)) = <psi| a†_k a†_l a_n a_m |psi> = <a_l a_k psi | a_n a_m psi>,
 * a Gram matrix and hence positive semidefinite.  Purities always refer to
 * the trace-normalized matrix.
 */

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cobosim/fock.hpp"
#include "cobosim/op_algebra.hpp"

namespace cobosim {

class DensityMatrix {
 public:
  static constexpr double kTolerance = 1e-10;

  /// Takes the raw (unnormalized) matrix; validates hermiticity and
  /// positivity, stores the trace-normalized form alongside the raw trace.
  explicit DensityMatrix(const Eigen::MatrixXcd& raw) {
    if (raw.rows() != raw.cols())
      throw std::invalid_argument("DensityMatrix: not square");
    raw_trace_ = raw.trace().real();
    if (std::abs(raw.trace().imag()) > kTolerance)
      throw std::invalid_argument("DensityMatrix: complex trace");
    if (raw_trace_ <= kTolerance)
      throw std::domain_error("DensityMatrix: vanishing trace");
    normalized_ = raw / raw_trace_;
    const double herm = (normalized_ - normalized_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kTolerance)
      throw std::invalid_argument("DensityMatrix: not hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(normalized_);
    if (solver.eigenvalues().minCoeff() < -kTolerance)
      throw std::invalid_argument("DensityMatrix: negative eigenvalue");
    eigenvalues_ = solver.eigenvalues();
  }

  int dim() const { return static_cast<int>(normalized_.rows()); }

  /// Trace-normalized matrix (trace 1).
  const Eigen::MatrixXcd& matrix() const { return normalized_; }

  /// Trace of the matrix before normalization (particle count for
  /// one-particle matrices).
  double raw_trace() const { return raw_trace_; }

  Eigen::MatrixXcd raw() const { return normalized_ * raw_trace_; }

  /// Eigenvalues of the normalized matrix, ascending.
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }

 private:
  Eigen::MatrixXcd normalized_;
  Eigen::VectorXd eigenvalues_;
  double raw_trace_;
};

/// Tr(rho^2) of the normalized matrix.
inline double purity_of(const DensityMatrix& rho) {
  return (rho.matrix() * rho.matrix()).trace().real();
}

/**
 * One-particle RDM of one species: entries rho(n, m) = <a_m psi | a_n psi>
 * over the species' 2d modes, local index mu = (internal-1)*2 + site.
 */
inline DensityMatrix one_particle_rdm(const StateVector& psi, Species species,
                                      int d, const ApplyOptions& options = {}) {
  if (!psi.is_normalized(1e-8))
    throw std::invalid_argument("one_particle_rdm: psi not normalized");
  const int modes = 2 * d;
  const int offset = species == Species::A ? 0 : modes;
  std::vector<StateVector> lowered(modes);
  for (int mu = 0; mu < modes; ++mu)
    lowered[mu] = apply(OperatorExpr::annihilation(offset + mu), psi, options);
  Eigen::MatrixXcd raw(modes, modes);
  for (int n = 0; n < modes; ++n)
    for (int m = 0; m < modes; ++m)
      raw(n, m) = inner_product(lowered[m], lowered[n]);
  return DensityMatrix(raw);
}

/// Antisymmetric pair basis (k < l) over 2d modes, lexicographic.
inline std::vector<std::pair<int, int>> antisymmetric_pairs(int modes) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(modes * (modes - 1) / 2);
  for (int k = 0; k < modes; ++k)
    for (int l = k + 1; l < modes; ++l) pairs.emplace_back(k, l);
  return pairs;
}

/**
 * Two-particle RDM of one species on the antisymmetric pair basis.
 * Requires at least two particles of the species.
 */
inline DensityMatrix two_particle_rdm(const StateVector& psi, Species species,
                                      int d, const ApplyOptions& options = {}) {
  if (!psi.is_normalized(1e-8))
    throw std::invalid_argument("two_particle_rdm: psi not normalized");
  if (psi.particle_count(species, d) < 2)
    throw std::domain_error("two_particle_rdm: fewer than two particles");
  const int modes = 2 * d;
  const int offset = species == Species::A ? 0 : modes;
  const auto pairs = antisymmetric_pairs(modes);
  std::vector<StateVector> lowered;
  lowered.reserve(pairs.size());
  for (const auto& [k, l] : pairs) {
    // w_{kl} = a_l a_k |psi>  (a_k applied first).
    const OperatorExpr op = OperatorExpr::term(
        {1.0, 0.0},
        {{offset + l, OpKind::Annihilate}, {offset + k, OpKind::Annihilate}});
    lowered.push_back(apply(op, psi, options));
  }
  const int n = static_cast<int>(pairs.size());
  Eigen::MatrixXcd raw(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      raw(r, c) = inner_product(lowered[r], lowered[c]);
  return DensityMatrix(raw);
}

}  // namespace cobosim
