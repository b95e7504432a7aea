// Copyright 2026 The cobosim Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file op_algebra.hpp
 * @brief Second-quantized operators as sums of scaled ordered products.
 *
 * An OperatorExpr is a finite sum of terms c * f_1 f_2 ... f_k where each
 * factor is a creation or annihilation operator on one mode and the product
 * acts on kets right-to-left (f_k first), exactly as written on paper.  No
 * symbolic reordering is performed - signs come out of the fermionic apply
 * rules - and the term key used for deduplication is the factor sequence
 * verbatim.
 */

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cobosim/fock.hpp"
#include "cobosim/sector.hpp"

namespace cobosim {

enum class OpKind : std::uint8_t { Create, Annihilate };

struct OperatorFactor {
  int mode;  // linear index
  OpKind kind;

  friend auto operator<=>(const OperatorFactor&, const OperatorFactor&) =
      default;
};

/// One scaled ordered product.  Factor sequences are capped at 8, which
/// covers every operator in this library (largest: 4-factor hopping terms).
struct OperatorTerm {
  Complex coefficient;
  std::vector<OperatorFactor> factors;

  static constexpr std::size_t kMaxFactors = 8;
};

/// Options controlling how operators act on states.
struct ApplyOptions {
  Statistics statistics = Statistics::GlobalAntisymmetric;
  int d = 0;  // required for SpeciesCommuting (species block boundary)
};

class OperatorExpr {
 public:
  OperatorExpr() = default;

  explicit OperatorExpr(std::vector<OperatorTerm> terms)
      : terms_(std::move(terms)) {
    canonicalize();
  }

  static OperatorExpr zero() { return OperatorExpr{}; }

  static OperatorExpr term(Complex coefficient,
                           std::vector<OperatorFactor> factors) {
    return OperatorExpr{{OperatorTerm{coefficient, std::move(factors)}}};
  }

  static OperatorExpr creation(int mode) {
    return term({1.0, 0.0}, {{mode, OpKind::Create}});
  }

  static OperatorExpr annihilation(int mode) {
    return term({1.0, 0.0}, {{mode, OpKind::Annihilate}});
  }

  const std::vector<OperatorTerm>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  OperatorExpr& operator+=(const OperatorExpr& other) {
    terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
    canonicalize();
    return *this;
  }

  OperatorExpr& operator*=(Complex factor) {
    for (auto& t : terms_) t.coefficient *= factor;
    canonicalize();
    return *this;
  }

  friend OperatorExpr operator+(OperatorExpr a, const OperatorExpr& b) {
    a += b;
    return a;
  }

  friend OperatorExpr operator*(Complex factor, OperatorExpr e) {
    e *= factor;
    return e;
  }

  /// Hermitian adjoint: conjugate coefficients, reverse factors, swap
  /// create <-> annihilate.
  OperatorExpr adjoint() const {
    std::vector<OperatorTerm> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      OperatorTerm adj;
      adj.coefficient = std::conj(t.coefficient);
      adj.factors.assign(t.factors.rbegin(), t.factors.rend());
      for (auto& f : adj.factors)
        f.kind = f.kind == OpKind::Create ? OpKind::Annihilate : OpKind::Create;
      out.push_back(std::move(adj));
    }
    return OperatorExpr{std::move(out)};
  }

  /// Net particle-number change per species; used for sector checks.
  std::pair<int, int> particle_number_change(const OperatorTerm& t,
                                             int d) const {
    int da = 0, db = 0;
    for (const auto& f : t.factors) {
      const int delta = f.kind == OpKind::Create ? +1 : -1;
      (species_of_index(f.mode, d) == Species::A ? da : db) += delta;
    }
    return {da, db};
  }

 private:
  void canonicalize() {
    std::map<std::vector<OperatorFactor>, Complex> merged;
    for (auto& t : terms_) {
      if (t.factors.size() > OperatorTerm::kMaxFactors)
        throw std::invalid_argument("OperatorTerm: factor sequence above cap");
      merged[t.factors] += t.coefficient;
    }
    terms_.clear();
    for (auto& [factors, coefficient] : merged) {
      if (coefficient == Complex{0.0, 0.0}) continue;
      terms_.push_back(OperatorTerm{coefficient, factors});
    }
  }

  std::vector<OperatorTerm> terms_;
};

inline std::string to_string(const OperatorTerm& t, int d) {
  std::ostringstream os;
  os << "(" << t.coefficient.real() << (t.coefficient.imag() < 0 ? "" : "+")
     << t.coefficient.imag() << "i)";
  for (const auto& f : t.factors) {
    const ModeId m = mode_from_index(f.mode, d);
    os << ' ' << (m.species == Species::A ? 'a' : 'b') << m.internal
       << (m.site == Site::L ? 'L' : 'R')
       << (f.kind == OpKind::Create ? "+" : "");
  }
  return os.str();
}

/// Apply one term to one signed basis state (right-to-left).
inline std::optional<SignedBasisState> apply_term(
    const OperatorTerm& term, FockBasisState state,
    const ApplyOptions& options = {}) {
  SignedBasisState current{state, +1};
  for (auto it = term.factors.rbegin(); it != term.factors.rend(); ++it) {
    std::uint64_t mask;
    if (options.statistics == Statistics::GlobalAntisymmetric) {
      mask = (std::uint64_t{1} << it->mode) - 1;
    } else {
      if (options.d <= 0)
        throw std::invalid_argument(
            "apply_term: SpeciesCommuting requires ApplyOptions::d");
      mask = sign_string_mask(it->mode, options.d, options.statistics);
    }
    auto next = it->kind == OpKind::Create
                    ? apply_creation(current.state, it->mode, mask)
                    : apply_annihilation(current.state, it->mode, mask);
    if (!next) return std::nullopt;
    current.state = next->state;
    current.sign *= next->sign;
  }
  return current;
}

/// Linear action of an expression on a sparse state.
inline StateVector apply(const OperatorExpr& expr, const StateVector& psi,
                         const ApplyOptions& options = {}) {
  StateVector out;
  for (const auto& term : expr.terms()) {
    for (const auto& [state, amplitude] : psi) {
      if (auto r = apply_term(term, state, options))
        out.accumulate(r->state,
                       term.coefficient * amplitude * double(r->sign));
    }
  }
  out.prune();
  return out;
}

/**
 * Dense matrix of `expr` on a sector: M(r, c) = <basis_r| expr |basis_c>.
 * Every term must conserve the sector's per-species particle numbers.
 */
inline Eigen::MatrixXcd matrix_on_sector(const OperatorExpr& expr,
                                         const Sector& sector,
                                         const ApplyOptions& options = {}) {
  for (const auto& term : expr.terms()) {
    const auto [da, db] = expr.particle_number_change(term, sector.d);
    if (da != 0 || db != 0)
      throw std::invalid_argument("matrix_on_sector: term leaks sector: " +
                                  to_string(term, sector.d));
  }
  const int n = sector.dimension();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int c = 0; c < n; ++c) {
    for (const auto& term : expr.terms()) {
      if (auto r = apply_term(term, sector.basis[c], options)) {
        const auto it = sector.index.find(r->state.bits);
        if (it == sector.index.end())
          throw std::invalid_argument(
              "matrix_on_sector: term leaves sector: " +
              to_string(term, sector.d));
        m(it->second, c) += term.coefficient * double(r->sign);
      }
    }
  }
  return m;
}

struct HermiticityReport {
  bool hermitian;
  double max_deviation;
};

/**
 * Compares the sector matrix against its conjugate transpose.  Operators with
 * particle-number-changing terms map the sector outside itself, so evolution
 * on the sector is undefined for them; they are reported non-hermitian with
 * an infinite deviation rather than an exception.
 */
inline HermiticityReport is_hermitian(const OperatorExpr& expr,
                                      const Sector& sector,
                                      double tolerance = 1e-12,
                                      const ApplyOptions& options = {}) {
  for (const auto& term : expr.terms()) {
    const auto [da, db] = expr.particle_number_change(term, sector.d);
    if (da != 0 || db != 0)
      return {false, std::numeric_limits<double>::infinity()};
  }
  const Eigen::MatrixXcd m = matrix_on_sector(expr, sector, options);
  const double deviation = (m - m.adjoint()).cwiseAbs().maxCoeff();
  return {deviation <= tolerance, deviation};
}

/// StateVector -> dense coefficient vector on a sector basis.
inline Eigen::VectorXcd to_dense(const StateVector& psi, const Sector& sector) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(sector.dimension());
  for (const auto& [state, amplitude] : psi) v(sector.index_of(state)) = amplitude;
  return v;
}

inline StateVector from_dense(const Eigen::VectorXcd& v, const Sector& sector) {
  StateVector out;
  for (int i = 0; i < sector.dimension(); ++i)
    out.accumulate(sector.basis[i], v(i));
  out.prune();
  return out;
}

}  // namespace cobosim
