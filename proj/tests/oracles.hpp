// Copyright 2026 The cobosim Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file oracles.hpp
 * @brief Independent reference implementations used only by tests.
 *
 * Each oracle recomputes a quantity through a route disjoint from the library
 * code it checks: dense Jordan-Wigner matrices built from Kronecker products,
 * first-quantized antisymmetrized wavefunctions, and brute-force subset
 * enumeration for elementary symmetric polynomials.
 */

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace cobosim::oracle {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Dense Jordan-Wigner route: a†_m = I ⊗ ... ⊗ sigma+ ⊗ Z ⊗ ... ⊗ Z with the
// Z string on modes below m and basis index = sum_k bit_k 2^k.
// ---------------------------------------------------------------------------

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a,
                             const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Dense 2^n x 2^n matrix of a†_mode (create = true) or a_mode.
inline Eigen::MatrixXcd dense_mode_operator(int mode, int n_modes,
                                            bool create) {
  Eigen::MatrixXcd sigma(2, 2), z(2, 2), eye(2, 2);
  sigma.setZero();
  if (create)
    sigma(1, 0) = 1.0;  // |1><0|
  else
    sigma(0, 1) = 1.0;  // |0><1|
  z << 1.0, 0.0, 0.0, -1.0;
  eye.setIdentity();

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  // Highest mode is the most significant factor.
  for (int k = n_modes - 1; k >= 0; --k) {
    const Eigen::MatrixXcd& factor = k == mode ? sigma : (k < mode ? z : eye);
    m = kron(m, factor);
  }
  return m;
}

// ---------------------------------------------------------------------------
// First-quantized antisymmetrized-wavefunction route for creation signs.
// A determinant state over the ordered mode set S is the tensor
// psi(k_1..k_n) = (1/sqrt(n!)) det[delta_{k_i, s_j}]; creation inserts the
// new coordinate with alternating signs.
// ---------------------------------------------------------------------------

class FirstQuantized {
 public:
  FirstQuantized(int n_modes, int n_particles)
      : n_modes_(n_modes), n_particles_(n_particles) {
    int size = 1;
    for (int i = 0; i < n_particles; ++i) size *= n_modes;
    amplitudes_.assign(std::max(size, 1), Complex{0.0, 0.0});
  }

  static FirstQuantized determinant(const std::vector<int>& modes,
                                    int n_modes) {
    const int n = static_cast<int>(modes.size());
    FirstQuantized psi(n_modes, n);
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    double norm = 1.0;
    for (int i = 2; i <= n; ++i) norm *= i;
    norm = 1.0 / std::sqrt(norm);
    do {
      std::vector<int> tuple(n);
      for (int i = 0; i < n; ++i) tuple[i] = modes[perm[i]];
      psi.at(tuple) += permutation_sign(perm) * norm;
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (n == 0) psi.amplitudes_[0] = 1.0;
    return psi;
  }

  /// (a†_m psi)(k_1..k_{n+1}) =
  ///   (1/sqrt(n+1)) sum_p (-1)^{p-1} delta_{k_p, m} psi(..k_p dropped..).
  FirstQuantized create(int mode) const {
    FirstQuantized out(n_modes_, n_particles_ + 1);
    std::vector<int> tuple(n_particles_ + 1, 0);
    const double norm = 1.0 / std::sqrt(double(n_particles_ + 1));
    out.for_each_tuple(tuple, 0, [&](const std::vector<int>& t) {
      Complex value{0.0, 0.0};
      for (int p = 0; p < n_particles_ + 1; ++p) {
        if (t[p] != mode) continue;
        std::vector<int> rest;
        rest.reserve(n_particles_);
        for (int q = 0; q < n_particles_ + 1; ++q)
          if (q != p) rest.push_back(t[q]);
        value += (p % 2 == 0 ? 1.0 : -1.0) * at_const(rest);
      }
      out.at(t) = norm * value;
    });
    return out;
  }

  Complex overlap(const FirstQuantized& other) const {
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < amplitudes_.size(); ++i)
      s += std::conj(amplitudes_[i]) * other.amplitudes_[i];
    return s;
  }

  Complex& at(const std::vector<int>& tuple) {
    return amplitudes_[flatten(tuple)];
  }

  Complex at_const(const std::vector<int>& tuple) const {
    return amplitudes_[flatten(tuple)];
  }

 private:
  static double permutation_sign(const std::vector<int>& perm) {
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j)
        if (perm[i] > perm[j]) ++inversions;
    return inversions % 2 == 0 ? 1.0 : -1.0;
  }

  int flatten(const std::vector<int>& tuple) const {
    int idx = 0;
    for (int k : tuple) idx = idx * n_modes_ + k;
    return idx;
  }

  template <typename F>
  void for_each_tuple(std::vector<int>& tuple, int pos, F&& f) {
    if (pos == static_cast<int>(tuple.size())) {
      f(tuple);
      return;
    }
    for (int k = 0; k < n_modes_; ++k) {
      tuple[pos] = k;
      for_each_tuple(tuple, pos + 1, f);
    }
  }

  int n_modes_;
  int n_particles_;
  std::vector<Complex> amplitudes_;
};

/**
 * Sign of a†_mode on the determinant over `occupied` (sorted ascending,
 * not containing mode), derived through the first-quantized route:
 * coefficient of the canonical determinant of occupied + {mode}.
 */
inline double creation_sign_first_quantized(const std::vector<int>& occupied,
                                            int mode, int n_modes) {
  FirstQuantized before = FirstQuantized::determinant(occupied, n_modes);
  FirstQuantized after = before.create(mode);
  std::vector<int> target = occupied;
  target.push_back(mode);
  std::sort(target.begin(), target.end());
  FirstQuantized canonical = FirstQuantized::determinant(target, n_modes);
  return canonical.overlap(after).real();
}

// ---------------------------------------------------------------------------
// chi_N by brute-force subset enumeration.
// ---------------------------------------------------------------------------

inline double chi_subset_enumeration(const std::vector<double>& lambdas,
                                     int n) {
  const int d = static_cast<int>(lambdas.size());
  double sum = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
    if (std::popcount(mask) != n) continue;
    double product = 1.0;
    for (int i = 0; i < d; ++i)
      if ((mask >> i) & 1u) product *= lambdas[i];
    sum += product;
  }
  double factorial = 1.0;
  for (int k = 2; k <= n; ++k) factorial *= k;
  return factorial * sum;
}

}  // namespace cobosim::oracle
