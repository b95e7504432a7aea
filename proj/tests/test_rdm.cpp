// Copyright 2026 The cobosim Authors
// SPDX-License-Identifier: Apache-2.0

#include "cobosim/rdm.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "cobosim/coboson.hpp"
#include "cobosim/protocols.hpp"
#include "cobosim/schmidt.hpp"
#include "cobosim/sector.hpp"

namespace cobosim {
namespace {

StateVector random_sector_state(std::mt19937_64& rng, const Sector& sector) {
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  StateVector psi;
  for (const auto& basis_state : sector.basis)
    psi.accumulate(basis_state, {coeff(rng), coeff(rng)});
  psi.normalize();
  return psi;
}

TEST(OneParticleRdm, SingleCobosonHasSpectrumLambda) {
  for (int d : {2, 3}) {
    const auto s = SchmidtSpectrum::uniform(d);
    const StateVector psi =
        apply(coboson_creation(s, Site::L), StateVector::vacuum());
    const DensityMatrix rho = one_particle_rdm(psi, Species::A, d);
    EXPECT_NEAR(rho.raw_trace(), 1.0, 1e-12);
    EXPECT_NEAR(purity_of(rho), 1.0 / d, 1e-12);
    // Diagonal weight 1/d on every occupied L mode, nothing elsewhere.
    for (int i = 1; i <= d; ++i) {
      const int mu_l = (i - 1) * 2;
      EXPECT_NEAR(std::abs(rho.matrix()(mu_l, mu_l) - Complex{1.0 / d, 0.0}),
                  0.0, 1e-12);
      EXPECT_NEAR(std::abs(rho.matrix()(mu_l + 1, mu_l + 1)), 0.0, 1e-12);
    }
  }
}

TEST(OneParticleRdm, NonuniformSpectrumShowsUp) {
  const SchmidtSpectrum s({0.7, 0.3});
  const StateVector psi =
      apply(coboson_creation(s, Site::L), StateVector::vacuum());
  const DensityMatrix rho = one_particle_rdm(psi, Species::A, 2);
  EXPECT_NEAR(purity_of(rho), 0.58, 1e-12);
  Eigen::VectorXd eigenvalues = rho.eigenvalues();
  std::sort(eigenvalues.data(), eigenvalues.data() + eigenvalues.size(),
            std::greater<>());
  EXPECT_NEAR(eigenvalues(0), 0.7, 1e-12);
  EXPECT_NEAR(eigenvalues(1), 0.3, 1e-12);
}

TEST(OneParticleRdm, TwoCobosonStateHasRawTraceTwo) {
  const int d = 3;
  const StateVector psi = coboson_pair_state(SchmidtSpectrum::uniform(d));
  const DensityMatrix rho = one_particle_rdm(psi, Species::A, d);
  EXPECT_NEAR(rho.raw_trace(), 2.0, 1e-12);
  EXPECT_NEAR(purity_of(rho), 1.0 / (2 * d), 1e-12);
}

TEST(OneParticleRdm, EntangledPairIsMaximallyMixedForEveryPhase) {
  // (a†_L b†_L + e^{i phi} a†_R b†_R)|0> / sqrt(2) at d = 1.
  const int d = 1;
  for (double phi : {0.0, 0.41, M_PI / 2, 2.2, M_PI}) {
    const Complex phase = std::polar(1.0, phi);
    std::vector<OperatorTerm> terms;
    terms.push_back({Complex{1.0 / std::sqrt(2.0), 0.0},
                     {{mode_index(Species::A, 1, Site::L, d), OpKind::Create},
                      {mode_index(Species::B, 1, Site::L, d), OpKind::Create}}});
    terms.push_back({phase / std::sqrt(2.0),
                     {{mode_index(Species::A, 1, Site::R, d), OpKind::Create},
                      {mode_index(Species::B, 1, Site::R, d), OpKind::Create}}});
    const StateVector psi =
        apply(OperatorExpr{std::move(terms)}, StateVector::vacuum());
    const DensityMatrix rho = one_particle_rdm(psi, Species::A, d);
    EXPECT_NEAR(
        (rho.matrix() - Eigen::MatrixXcd::Identity(2, 2) / 2.0).cwiseAbs()
            .maxCoeff(),
        0.0, 1e-12);
    EXPECT_NEAR(purity_of(rho), 0.5, 1e-12);
  }
}

TEST(OneParticleRdm, RejectsUnnormalizedState) {
  StateVector psi = StateVector::basis(FockBasisState{0b1}, {2.0, 0.0});
  EXPECT_THROW(one_particle_rdm(psi, Species::A, 1), std::invalid_argument);
}

TEST(TwoParticleRdm, InitialAndFinalBunchingPurities) {
  for (int d : {2, 3, 4}) {
    const auto s = SchmidtSpectrum::uniform(d);
    const DensityMatrix rho_i =
        two_particle_rdm(coboson_pair_state(s), Species::A, d);
    EXPECT_NEAR(purity_of(rho_i), 1.0 / (d * d), 1e-11);
    const DensityMatrix rho_f =
        two_particle_rdm(bunched_target_state(s), Species::A, d);
    EXPECT_NEAR(purity_of(rho_f), 1.0 / (d * (d - 1)), 1e-11);
  }
}

TEST(TwoParticleRdm, PureTwoFermionStateHasPurityOne) {
  // a†_1L a†_2L |0>: a single antisymmetric pair, rank-1 projector.
  const int d = 2;
  StateVector psi;
  const OperatorTerm term{
      {1.0, 0.0},
      {{mode_index(Species::A, 1, Site::L, d), OpKind::Create},
       {mode_index(Species::A, 2, Site::L, d), OpKind::Create}}};
  const auto r = apply_term(term, FockBasisState{});
  psi.accumulate(r->state, term.coefficient * double(r->sign));
  const DensityMatrix rho = two_particle_rdm(psi, Species::A, d);
  EXPECT_NEAR(purity_of(rho), 1.0, 1e-12);
  EXPECT_NEAR(rho.raw_trace(), 1.0, 1e-12);
}

TEST(TwoParticleRdm, RejectsFewerThanTwoParticles) {
  const StateVector psi = apply(coboson_creation(SchmidtSpectrum::uniform(2),
                                                 Site::L),
                                StateVector::vacuum());
  EXPECT_THROW(two_particle_rdm(psi, Species::A, 2), std::domain_error);
}

TEST(PurityOf, MixedAndPureLimits) {
  for (int k : {2, 5, 9}) {
    const DensityMatrix mixed(Eigen::MatrixXcd::Identity(k, k));
    EXPECT_NEAR(purity_of(mixed), 1.0 / k, 1e-14);
  }
  Eigen::MatrixXcd projector = Eigen::MatrixXcd::Zero(4, 4);
  projector(2, 2) = 3.7;  // rank one, arbitrary scale
  EXPECT_NEAR(purity_of(DensityMatrix(projector)), 1.0, 1e-14);
}

TEST(DensityMatrix, ValidatesInput) {
  Eigen::MatrixXcd bad(2, 2);
  bad << 1.0, 1.0, -1.0, 1.0;  // not hermitian
  EXPECT_THROW(DensityMatrix{bad}, std::invalid_argument);
  Eigen::MatrixXcd negative(2, 2);
  negative << 1.0, 0.0, 0.0, -0.5;
  EXPECT_THROW(DensityMatrix{negative}, std::invalid_argument);
  EXPECT_THROW(DensityMatrix{Eigen::MatrixXcd::Zero(2, 2)}, std::domain_error);
}

TEST(Invariants, SameNonzeroSpectrumForBothSpecies) {
  std::mt19937_64 rng(33);
  const int d = 2;
  const Sector sector = enumerate_sector(d, 1, 1);
  for (int trial = 0; trial < 10; ++trial) {
    const StateVector psi = random_sector_state(rng, sector);
    Eigen::VectorXd ev_a = one_particle_rdm(psi, Species::A, d).eigenvalues();
    Eigen::VectorXd ev_b = one_particle_rdm(psi, Species::B, d).eigenvalues();
    std::sort(ev_a.data(), ev_a.data() + ev_a.size());
    std::sort(ev_b.data(), ev_b.data() + ev_b.size());
    EXPECT_NEAR((ev_a - ev_b).cwiseAbs().maxCoeff(), 0.0, 1e-9);
  }
}

Eigen::MatrixXcd random_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex{gauss(rng), gauss(rng)};
  return Eigen::HouseholderQR<Eigen::MatrixXcd>(m).householderQ();
}

// Rotating the species-a modes by U conjugates the matrix: rho -> U rho U†.
TEST(Invariants, BasisCovariance) {
  std::mt19937_64 rng(34);
  for (int d = 1; d <= 3; ++d) {
    const Sector sector = enumerate_sector(d, 1, 1);
    const std::uint64_t b_mask = FockBasisState::species_mask(Species::B, d);
    for (int trial = 0; trial < 4; ++trial) {
      const StateVector psi = random_sector_state(rng, sector);
      const Eigen::MatrixXcd u = random_unitary(2 * d, rng);
      StateVector rotated;
      for (const auto& [state, amplitude] : psi) {
        const int nu = std::countr_zero(state.bits);  // the single a-mode
        for (int mu = 0; mu < 2 * d; ++mu)
          rotated.accumulate(
              FockBasisState{(state.bits & b_mask) | (std::uint64_t{1} << mu)},
              amplitude * u(mu, nu));
      }
      rotated.prune();
      ASSERT_TRUE(rotated.is_normalized(1e-9));
      const Eigen::MatrixXcd before =
          one_particle_rdm(psi, Species::A, d).matrix();
      const Eigen::MatrixXcd after =
          one_particle_rdm(rotated, Species::A, d).matrix();
      const Eigen::MatrixXcd expected = u * before * u.adjoint();
      EXPECT_NEAR((after - expected).cwiseAbs().maxCoeff(), 0.0, 1e-10);
      EXPECT_NEAR(purity_of(one_particle_rdm(rotated, Species::A, d)),
                  purity_of(one_particle_rdm(psi, Species::A, d)), 1e-10);
    }
  }
}

TEST(Invariants, BunchingLeavesOneParticleRdmUnchanged) {
  for (int d : {2, 3, 4, 5}) {
    const auto s = SchmidtSpectrum::uniform(d);
    const Eigen::MatrixXcd rho_i =
        one_particle_rdm(coboson_pair_state(s), Species::A, d).matrix();
    const Eigen::MatrixXcd rho_f =
        one_particle_rdm(bunched_target_state(s), Species::A, d).matrix();
    EXPECT_NEAR((rho_i - rho_f).cwiseAbs().maxCoeff(), 0.0, 1e-10);
  }
}

}  // namespace
}  // namespace cobosim
