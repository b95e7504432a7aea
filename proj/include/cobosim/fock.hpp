// Copyright 2026 The cobosim Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file fock.hpp
 * @brief Fermionic mode indexing, occupation-number basis states and sparse
 *        state vectors.
 *
 * The simulator works with two distinguishable fermion species (a and b),
 * each with d internal modes on two sites (L and R): 4d modes in total.
 * Modes carry a fixed total order
 *
 *     linear index = species * 2d + (internal - 1) * 2 + site
 *
 * i.e. the whole species-a block comes first, then species b; within a
 * species the internal index is the major key and the site (L before R) is
 * the fastest-varying key.  For d = 2 this reads
 *
 *     0:a1L  1:a1R  2:a2L  3:a2R  4:b1L  5:b1R  6:b2L  7:b2R
 *
 * A basis state is a bitmask over these modes; the canonical ket for a mask
 * with occupied modes m1 < m2 < ... is  a†_{m1} a†_{m2} ... |0>.  Applying a
 * creation/annihilation operator on mode m produces the Jordan-Wigner sign
 * (-1)^(number of occupied modes preceding m).
 */

#pragma once

#include <bit>
#include <cmath>
#include <compare>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace cobosim {

using Complex = std::complex<double>;

enum class Species : std::uint8_t { A = 0, B = 1 };
enum class Site : std::uint8_t { L = 0, R = 1 };

/// One fermionic mode: species, internal index (1..d) and site.
struct ModeId {
  Species species;
  int internal;
  Site site;

  friend bool operator==(const ModeId&, const ModeId&) = default;
};

/// Total number of modes for internal dimension d.
constexpr int mode_count(int d) { return 4 * d; }

/// Bijection ModeId -> 0..4d-1 (see file comment for the ordering).
inline int mode_index(Species species, int internal, Site site, int d) {
  if (d < 1) throw std::domain_error("mode_index: d must be >= 1");
  if (internal < 1 || internal > d)
    throw std::domain_error("mode_index: internal index " +
                            std::to_string(internal) + " outside 1.." +
                            std::to_string(d));
  return static_cast<int>(species) * 2 * d + (internal - 1) * 2 +
         static_cast<int>(site);
}

inline int mode_index(const ModeId& m, int d) {
  return mode_index(m.species, m.internal, m.site, d);
}

/// Inverse of mode_index; round-trips for every valid index.
inline ModeId mode_from_index(int index, int d) {
  if (index < 0 || index >= mode_count(d))
    throw std::domain_error("mode_from_index: index out of range");
  const Species species = index < 2 * d ? Species::A : Species::B;
  const int within = index % (2 * d);
  return ModeId{species, within / 2 + 1, static_cast<Site>(within % 2)};
}

inline Species species_of_index(int index, int d) {
  return index < 2 * d ? Species::A : Species::B;
}

/**
 * Occupation-number basis state: one bit per mode, bit i = mode with linear
 * index i.  Equality and ordering are on the raw bit pattern; the ordering
 * (ascending as unsigned integers) is the deterministic basis order used by
 * sector enumeration.
 */
struct FockBasisState {
  std::uint64_t bits = 0;

  friend auto operator<=>(const FockBasisState&, const FockBasisState&) =
      default;

  bool occupied(int mode) const { return (bits >> mode) & 1u; }
  int particle_count() const { return std::popcount(bits); }

  /// Mask covering one species block.
  static std::uint64_t species_mask(Species s, int d) {
    const std::uint64_t block = (std::uint64_t{1} << (2 * d)) - 1;
    return s == Species::A ? block : block << (2 * d);
  }

  int species_count(Species s, int d) const {
    return std::popcount(bits & species_mask(s, d));
  }
};

/// Basis state together with a fermionic sign.
struct SignedBasisState {
  FockBasisState state;
  int sign;  // +1 or -1
};

/**
 * Cross-species statistics convention.  All implemented operators conserve
 * per-species particle number, so physical results do not depend on this
 * choice; the alternative convention exists to make that statement testable.
 */
enum class Statistics {
  /// All 4d modes anticommute under one global ordering (default).
  GlobalAntisymmetric,
  /// a-modes and b-modes commute; the sign string stays within one species.
  SpeciesCommuting,
};

/// Modes contributing to the sign of an operator on mode `m`.
inline std::uint64_t sign_string_mask(int mode, int d, Statistics statistics) {
  std::uint64_t below = (std::uint64_t{1} << mode) - 1;
  if (statistics == Statistics::SpeciesCommuting)
    below &= FockBasisState::species_mask(species_of_index(mode, d), d);
  return below;
}

/**
 * Apply a†_mode.  Empty result if the mode is already occupied; otherwise the
 * new state and the sign (-1)^(occupied modes in sign_mask).
 */
inline std::optional<SignedBasisState> apply_creation(
    FockBasisState state, int mode, std::uint64_t sign_mask) {
  if (state.occupied(mode)) return std::nullopt;
  const int parity = std::popcount(state.bits & sign_mask);
  return SignedBasisState{FockBasisState{state.bits | (std::uint64_t{1} << mode)},
                          (parity & 1) ? -1 : +1};
}

/// Apply a_mode; empty if the mode is unoccupied.  Same sign rule.
inline std::optional<SignedBasisState> apply_annihilation(
    FockBasisState state, int mode, std::uint64_t sign_mask) {
  if (!state.occupied(mode)) return std::nullopt;
  const int parity = std::popcount(state.bits & sign_mask);
  return SignedBasisState{FockBasisState{state.bits & ~(std::uint64_t{1} << mode)},
                          (parity & 1) ? -1 : +1};
}

// Convenience overloads under the default global convention.
inline std::optional<SignedBasisState> apply_creation(FockBasisState state,
                                                      int mode) {
  return apply_creation(state, mode, (std::uint64_t{1} << mode) - 1);
}

inline std::optional<SignedBasisState> apply_annihilation(FockBasisState state,
                                                          int mode) {
  return apply_annihilation(state, mode, (std::uint64_t{1} << mode) - 1);
}

inline std::optional<SignedBasisState> apply_creation(FockBasisState state,
                                                      const ModeId& m, int d) {
  return apply_creation(state, mode_index(m, d));
}

inline std::optional<SignedBasisState> apply_annihilation(FockBasisState state,
                                                          const ModeId& m,
                                                          int d) {
  return apply_annihilation(state, mode_index(m, d));
}

/**
 * Sparse complex superposition over basis states.  Amplitudes below the prune
 * threshold are dropped by the arithmetic operations; iteration order is the
 * deterministic basis order.
 */
class StateVector {
 public:
  using Map = std::map<FockBasisState, Complex>;
  static constexpr double kDefaultPruneThreshold = 1e-14;
  static constexpr double kNormTolerance = 1e-12;

  StateVector() = default;

  static StateVector vacuum() {
    StateVector v;
    v.amplitudes_[FockBasisState{}] = Complex{1.0, 0.0};
    return v;
  }

  static StateVector basis(FockBasisState s, Complex amplitude = {1.0, 0.0}) {
    StateVector v;
    if (std::abs(amplitude) > kDefaultPruneThreshold)
      v.amplitudes_[s] = amplitude;
    return v;
  }

  bool empty() const { return amplitudes_.empty(); }
  std::size_t size() const { return amplitudes_.size(); }

  Complex amplitude(FockBasisState s) const {
    auto it = amplitudes_.find(s);
    return it == amplitudes_.end() ? Complex{0.0, 0.0} : it->second;
  }

  /// Raw accumulation; callers prune when the operation is finished.
  void accumulate(FockBasisState s, Complex amplitude) {
    amplitudes_[s] += amplitude;
  }

  /// this += factor * other, pruned at the default threshold.
  void add_scaled(Complex factor, const StateVector& other) {
    for (const auto& [s, a] : other.amplitudes_) amplitudes_[s] += factor * a;
    prune();
  }

  void scale(Complex factor) {
    for (auto& [s, a] : amplitudes_) a *= factor;
    prune();
  }

  void prune(double threshold = kDefaultPruneThreshold) {
    for (auto it = amplitudes_.begin(); it != amplitudes_.end();) {
      if (std::abs(it->second) < threshold)
        it = amplitudes_.erase(it);
      else
        ++it;
    }
  }

  double squared_norm() const {
    double s = 0.0;
    for (const auto& [_, a] : amplitudes_) s += std::norm(a);
    return s;
  }

  double norm() const { return std::sqrt(squared_norm()); }

  void normalize() {
    const double n = norm();
    if (n < 1e-154) throw std::domain_error("normalize: zero-norm state");
    scale(Complex{1.0 / n, 0.0});
  }

  bool is_normalized(double tolerance = kNormTolerance) const {
    return std::abs(norm() - 1.0) <= tolerance;
  }

  /// Per-species particle count; throws if the support mixes sectors.
  int particle_count(Species s, int d) const {
    if (amplitudes_.empty())
      throw std::domain_error("particle_count: empty state");
    const int n = amplitudes_.begin()->first.species_count(s, d);
    for (const auto& [state, _] : amplitudes_)
      if (state.species_count(s, d) != n)
        throw std::domain_error(
            "particle_count: state has support on multiple sectors");
    return n;
  }

  Map::const_iterator begin() const { return amplitudes_.begin(); }
  Map::const_iterator end() const { return amplitudes_.end(); }

 private:
  Map amplitudes_;
};

/// <phi|psi>, conjugate-linear in the first argument.
inline Complex inner_product(const StateVector& phi, const StateVector& psi) {
  // Iterate the smaller support.
  const StateVector& small = phi.size() <= psi.size() ? phi : psi;
  const StateVector& large = phi.size() <= psi.size() ? psi : phi;
  const bool swapped = &small != &phi;
  Complex result{0.0, 0.0};
  for (const auto& [s, a] : small) {
    const Complex b = large.amplitude(s);
    result += swapped ? std::conj(b) * a : std::conj(a) * b;
  }
  return result;
}

/// a + factor * b as a new vector.
inline StateVector add_scaled(const StateVector& a, Complex factor,
                              const StateVector& b) {
  StateVector out = a;
  out.add_scaled(factor, b);
  return out;
}

inline StateVector normalized(StateVector v) {
  v.normalize();
  return v;
}

}  // namespace cobosim
