// Copyright 2026 The cobosim Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file coboson.hpp
 * @brief Composite-boson creation operators, Fock states and the ladder
 *        quantities chi_N, alpha_N and the remainder state eps_N.
 *
 * For a pair spectrum lambda the coboson creation operator on site X is
 * c† = sum_i sqrt(lambda_i) a†_{i,X} b†_{i,X}.  The N-pair Fock state is
 * |N> = chi_N^{-1/2} c†^N / sqrt(N!) |0> with
 * chi_N = N! e_N(lambda)  (e_N = N-th elementary symmetric polynomial).
 * The ladder acts as c†|N-1> = alpha_N sqrt(N) |N> and
 * c|N> = alpha_N sqrt(N) |N-1> + |eps_N> with alpha_N = sqrt(chi_N/chi_{N-1});
 * the non-cobosonic remainder has
 * <eps_N|eps_N> = 1 - N chi_N/chi_{N-1} + (N-1) chi_{N+1}/chi_N, and
 * chi_{N+1}/chi_N is squeezed between 1 - N P and 1 - P.
 */

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "cobosim/fock.hpp"
#include "cobosim/op_algebra.hpp"
#include "cobosim/schmidt.hpp"

namespace cobosim {

/// c†_site = sum_i sqrt(lambda_i) a†_{i,site} b†_{i,site}.
inline OperatorExpr coboson_creation(const SchmidtSpectrum& s, Site site) {
  const int d = s.d();
  std::vector<OperatorTerm> terms;
  terms.reserve(d);
  for (int i = 1; i <= d; ++i) {
    const double root = std::sqrt(s.lambda(i - 1));
    if (root == 0.0) continue;
    terms.push_back(OperatorTerm{
        Complex{root, 0.0},
        {{mode_index(Species::A, i, site, d), OpKind::Create},
         {mode_index(Species::B, i, site, d), OpKind::Create}}});
  }
  return OperatorExpr{std::move(terms)};
}

inline OperatorExpr coboson_annihilation(const SchmidtSpectrum& s, Site site) {
  return coboson_creation(s, site).adjoint();
}

/**
 * chi_N = N! e_N(lambda), computed with the stable prefix recursion
 * e_k^(m) = e_k^(m-1) + lambda_m e_{k-1}^(m-1).  chi_0 = 1.
 */
inline double chi(const SchmidtSpectrum& s, int n) {
  if (n < 0 || n > s.d())
    throw std::domain_error("chi: N outside 0..d");
  std::vector<double> e(n + 1, 0.0);
  e[0] = 1.0;
  for (int m = 0; m < s.d(); ++m)
    for (int k = std::min(n, m + 1); k >= 1; --k)
      e[k] += s.lambda(m) * e[k - 1];
  double factorial = 1.0;
  for (int k = 2; k <= n; ++k) factorial *= k;
  return factorial * e[n];
}

namespace detail {
/// chi_{N} extended by chi_{d+1} = 0 (the (d+1)-th symmetric polynomial
/// of d weights vanishes); keeps ratio formulas uniform at N = d.
inline double chi_extended(const SchmidtSpectrum& s, int n) {
  return n > s.d() ? 0.0 : chi(s, n);
}
}  // namespace detail

/// alpha_N = sqrt(chi_N / chi_{N-1}), 1 <= N <= d.
inline double alpha(const SchmidtSpectrum& s, int n) {
  if (n < 1 || n > s.d()) throw std::domain_error("alpha: N outside 1..d");
  const double denom = chi(s, n - 1);
  if (denom <= 0.0)
    throw std::domain_error("alpha: chi_{N-1} vanishes (spectrum rank < N-1)");
  return std::sqrt(chi(s, n) / denom);
}

/// |N> = chi_N^{-1/2} c†^N / sqrt(N!) |0> on the given site; normalized.
inline StateVector build_fock_state(const SchmidtSpectrum& s, int n,
                                    Site site) {
  if (n < 0 || n > s.d())
    throw std::domain_error("build_fock_state: N outside 0..d");
  const double chi_n = chi(s, n);
  if (chi_n <= 0.0)
    throw std::domain_error("build_fock_state: chi_N = 0 (spectrum rank < N)");
  const OperatorExpr cdag = coboson_creation(s, site);
  StateVector state = StateVector::vacuum();
  double factorial = 1.0;
  for (int k = 1; k <= n; ++k) {
    state = apply(cdag, state);
    factorial *= k;
  }
  state.scale(Complex{1.0 / std::sqrt(chi_n * factorial), 0.0});
  if (!state.is_normalized(1e-10))
    throw std::runtime_error("build_fock_state: normalization drift");
  return state;
}

/// |eps_N> = c|N> - alpha_N sqrt(N) |N-1>, the non-cobosonic remainder.
inline StateVector epsilon_state(const SchmidtSpectrum& s, int n, Site site) {
  if (n < 1) throw std::domain_error("epsilon_state: N must be >= 1");
  const StateVector fock_n = build_fock_state(s, n, site);
  const StateVector fock_n1 = build_fock_state(s, n - 1, site);
  StateVector eps = apply(coboson_annihilation(s, site), fock_n);
  eps.add_scaled(Complex{-alpha(s, n) * std::sqrt(double(n)), 0.0}, fock_n1);
  return eps;
}

/// <eps_N|eps_N> = 1 - N chi_N/chi_{N-1} + (N-1) chi_{N+1}/chi_N.
inline double epsilon_norm_formula(const SchmidtSpectrum& s, int n) {
  if (n < 1 || n > s.d())
    throw std::domain_error("epsilon_norm_formula: N outside 1..d");
  const double chi_prev = chi(s, n - 1);
  if (chi_prev <= 0.0)
    throw std::domain_error("epsilon_norm_formula: chi_{N-1} vanishes");
  double value = 1.0 - n * chi(s, n) / chi_prev;
  if (n > 1) {
    const double chi_n = chi(s, n);
    if (chi_n <= 0.0)
      throw std::domain_error("epsilon_norm_formula: chi_N vanishes");
    value += (n - 1) * detail::chi_extended(s, n + 1) / chi_n;
  }
  return value;
}

/// Everything one wants to know about ladder rung N.
struct LadderReport {
  int n = 0;
  double chi_n = 0.0;
  double chi_ratio = 0.0;  // chi_{N+1} / chi_N
  double alpha_n = 0.0;
  double eps_norm_formula = 0.0;
  double eps_norm_constructed = 0.0;
  double bound_low = 0.0;   // 1 - N P
  double bound_high = 0.0;  // 1 - P
  bool bounds_hold = false;
};

/**
 * Evaluates chi_{N+1}/chi_N against its purity bounds 1 - NP <= ratio <= 1 - P
 * and assembles the full ladder diagnostics for rung N.
 */
inline LadderReport chi_ratio_bounds(const SchmidtSpectrum& s, int n,
                                     Site site = Site::L,
                                     double tolerance = 1e-12) {
  if (n < 1 || n > s.d())
    throw std::domain_error("chi_ratio_bounds: N outside 1..d");
  LadderReport report;
  report.n = n;
  report.chi_n = chi(s, n);
  if (report.chi_n <= 0.0)
    throw std::domain_error("chi_ratio_bounds: chi_N vanishes");
  report.chi_ratio = detail::chi_extended(s, n + 1) / report.chi_n;
  report.alpha_n = alpha(s, n);
  report.eps_norm_formula = epsilon_norm_formula(s, n);
  report.eps_norm_constructed = epsilon_state(s, n, site).squared_norm();
  const double p = purity(s);
  report.bound_low = 1.0 - n * p;
  report.bound_high = 1.0 - p;
  report.bounds_hold = report.chi_ratio >= report.bound_low - tolerance &&
                       report.chi_ratio <= report.bound_high + tolerance;
  return report;
}

}  // namespace cobosim
