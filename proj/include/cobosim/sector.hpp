// Copyright 2026 The cobosim Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file sector.hpp
 * @brief Fixed-particle-number sectors of the 4d-mode Fock space.
 *
 * Every Hamiltonian in this library conserves the particle number of each
 * species separately, so states live in sectors labelled (n_a, n_b).  A
 * Sector enumerates the complete basis of such a subspace in a deterministic
 * order (ascending occupation bitmask) together with the inverse index map.
 */

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "cobosim/fock.hpp"

namespace cobosim {

struct Sector {
  int d = 0;
  int n_a = 0;
  int n_b = 0;
  std::vector<FockBasisState> basis;
  std::unordered_map<std::uint64_t, int> index;

  int dimension() const { return static_cast<int>(basis.size()); }

  int index_of(FockBasisState s) const {
    auto it = index.find(s.bits);
    if (it == index.end())
      throw std::invalid_argument("Sector: state outside sector");
    return it->second;
  }

  bool contains(FockBasisState s) const { return index.count(s.bits) != 0; }
};

namespace detail {

/// All masks with `count` bits set among `width` bits, ascending.
inline std::vector<std::uint64_t> bit_combinations(int width, int count) {
  std::vector<std::uint64_t> out;
  if (count == 0) {
    out.push_back(0);
    return out;
  }
  if (count > width) return out;
  // Gosper's hack walks fixed-popcount masks in increasing order.
  std::uint64_t v = (std::uint64_t{1} << count) - 1;
  const std::uint64_t limit = std::uint64_t{1} << width;
  while (v < limit) {
    out.push_back(v);
    const std::uint64_t c = v & -v;
    const std::uint64_t r = v + c;
    v = (((r ^ v) >> 2) / c) | r;
  }
  return out;
}

}  // namespace detail

/// Complete, duplicate-free, deterministic basis of the (n_a, n_b) sector.
inline Sector enumerate_sector(int d, int n_a, int n_b) {
  if (d < 1) throw std::domain_error("enumerate_sector: d must be >= 1");
  if (n_a < 0 || n_a > 2 * d || n_b < 0 || n_b > 2 * d)
    throw std::domain_error("enumerate_sector: particle count out of 0..2d");
  Sector sector;
  sector.d = d;
  sector.n_a = n_a;
  sector.n_b = n_b;
  const auto a_masks = detail::bit_combinations(2 * d, n_a);
  const auto b_masks = detail::bit_combinations(2 * d, n_b);
  sector.basis.reserve(a_masks.size() * b_masks.size());
  // b-major composition keeps the overall list ascending: the b block
  // occupies the high bits.
  for (const std::uint64_t b : b_masks)
    for (const std::uint64_t a : a_masks)
      sector.basis.push_back(FockBasisState{a | (b << (2 * d))});
  sector.index.reserve(sector.basis.size());
  for (int i = 0; i < sector.dimension(); ++i)
    sector.index.emplace(sector.basis[i].bits, i);
  return sector;
}

/// Sector of a (nonempty, sector-pure) state.
inline Sector sector_of(const StateVector& psi, int d) {
  return enumerate_sector(d, psi.particle_count(Species::A, d),
                          psi.particle_count(Species::B, d));
}

}  // namespace cobosim
