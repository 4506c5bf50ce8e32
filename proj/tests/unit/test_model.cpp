#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include "generators.hpp"
#include "mblent/errors.hpp"
#include "mblent/model.hpp"
#include "oracles.hpp"

using namespace mblent;

TEST(QuasiperiodicField, ZeroArgumentGivesAmplitude) {
  ModelParams p;
  p.L = 4;
  p.delta = 3.0;
  p.phi = 2.0 * std::numbers::pi * (1.0 - p.beta.value());  // 2 pi beta * 1 + phi = 2 pi
  EXPECT_NEAR(quasiperiodic_field(p, 1), 3.0, 1e-12);
}

TEST(QuasiperiodicField, ZeroAmplitude) {
  ModelParams p;
  p.L = 10;
  p.phi = 1.234;
  for (int j = 1; j <= p.L; ++j) EXPECT_EQ(quasiperiodic_field(p, j), 0.0);
}

TEST(QuasiperiodicField, ExactRationalPeriod) {
  ModelParams p;
  p.L = 800;
  p.delta = 3.0;
  EXPECT_NEAR(quasiperiodic_field(p, 738), 3.0, 1e-12);
  const Rational r = p.beta.reduced();
  EXPECT_EQ(r.num, 266);
  EXPECT_EQ(r.den, 369);
  p.phi = 0.77;
  for (int j = 1; j + r.den <= p.L; j += 37) {
    EXPECT_EQ(quasiperiodic_field(p, j), quasiperiodic_field(p, j + static_cast<int>(r.den)));
  }
}

TEST(QuasiperiodicField, CoordinateOutOfRange) {
  ModelParams p;
  p.L = 8;
  p.delta = 1.0;
  EXPECT_THROW(quasiperiodic_field(p, 0), std::out_of_range);
  EXPECT_THROW(quasiperiodic_field(p, 9), std::out_of_range);
  EXPECT_NO_THROW(quasiperiodic_field(p, 8));
}

TEST(QuasiperiodicField, ProfileIsZeroBased) {
  ModelParams p;
  p.L = 6;
  p.delta = 2.0;
  p.phi = 0.3;
  const auto f = field_profile(p);
  ASSERT_EQ(f.size(), 6u);
  for (int k = 0; k < 6; ++k) EXPECT_EQ(f[static_cast<std::size_t>(k)], quasiperiodic_field(p, k + 1));
}

TEST(ModelParams, Validation) {
  ModelParams p;
  p.L = 5;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p.L = 0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p.L = 4;
  p.beta.den = 0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p.beta = {};
  p.J = std::nan("");
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(SectorBasis, SmallSizes) {
  const SectorBasis b2(2);
  ASSERT_EQ(b2.size(), 2u);
  EXPECT_EQ(b2.state(0), 0b01u);
  EXPECT_EQ(b2.state(1), 0b10u);
  EXPECT_EQ(SectorBasis(4).size(), 6u);
  EXPECT_EQ(SectorBasis(12).size(), 924u);
}

TEST(SectorBasis, Errors) {
  EXPECT_THROW(SectorBasis(3), std::invalid_argument);
  EXPECT_THROW(SectorBasis(0), std::invalid_argument);
  EXPECT_THROW(SectorBasis(26), CapacityError);
  const SectorBasis b(4);
  EXPECT_THROW(b.index(0b0111), std::out_of_range);
  EXPECT_FALSE(b.contains(0b0111));
}

TEST(SectorBasis, IndexInvertsEnumeration) {
  for (int L = 2; L <= 14; L += 2) {
    const SectorBasis b(L);
    for (std::size_t k = 0; k < b.size(); ++k) {
      const Pattern s = b.state(k);
      ASSERT_EQ(std::popcount(s), L / 2);
      if (k > 0) ASSERT_LT(b.state(k - 1), s);
      ASSERT_EQ(b.index(s), k);
    }
  }
}

TEST(Hamiltonian, TwoSiteMatrix) {
  ModelParams p;
  p.L = 2;
  p.J = 0.7;
  p.V = 1.3;
  const SectorBasis basis(2);
  const Eigen::MatrixXd H = build_hamiltonian(p, basis).to_dense();
  Eigen::Matrix2d expected;
  expected << p.V / 4, -p.J, -p.J, p.V / 4;
  EXPECT_LT((H - expected).norm(), 1e-15);
}

TEST(Hamiltonian, SymmetricExactly) {
  std::mt19937_64 rng(11);
  for (int L : {2, 4, 6, 8, 10}) {
    const SectorBasis basis(L);
    const Eigen::MatrixXd H = build_hamiltonian(gen::model_params(rng, L), basis).to_dense();
    EXPECT_TRUE(H == H.transpose()) << "L=" << L;
  }
}

TEST(Hamiltonian, MismatchedSites) {
  ModelParams p;
  p.L = 6;
  EXPECT_THROW(build_hamiltonian(p, SectorBasis(4)), std::invalid_argument);
}

TEST(Hamiltonian, MatchesPauliOracle) {
  std::mt19937_64 rng(2024);
  const ModelParams p = gen::model_params(rng, 10);
  const SectorBasis basis(10);
  const Eigen::MatrixXd H = build_hamiltonian(p, basis).to_dense();
  const Eigen::MatrixXcd full = oracle::xxz_full(p);

  // No amplitude leaks out of the sector.
  double leak = 0.0;
  for (std::size_t a = 0; a < basis.size(); ++a) {
    const auto f = static_cast<Eigen::Index>(oracle::full_index(basis.state(a), 10));
    for (Eigen::Index g = 0; g < full.cols(); ++g) {
      if (std::popcount(static_cast<unsigned>(g)) != 5) leak = std::max(leak, std::abs(full(f, g)));
    }
  }
  EXPECT_EQ(leak, 0.0);

  const Eigen::MatrixXcd block = oracle::restrict_to_sector(full, basis);
  EXPECT_LT((block - H.cast<Complex>()).norm(), 1e-10);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ref(block);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> got(H);
  EXPECT_LT((ref.eigenvalues() - got.eigenvalues()).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Hamiltonian, TraceAndExpectation) {
  std::mt19937_64 rng(5);
  const ModelParams p = gen::model_params(rng, 8);
  auto basis = build_sector_basis(8);
  const SparseHamiltonian H = build_hamiltonian(p, *basis);
  const Eigen::MatrixXd D = H.to_dense();
  EXPECT_NEAR(H.trace(), D.trace(), 1e-12);
  const SectorState psi = gen::sector_state(rng, basis);
  const Complex e = H.expectation(psi.amplitudes());
  EXPECT_NEAR(e.real(), psi.amplitudes().dot(D.cast<Complex>() * psi.amplitudes()).real(), 1e-12);
  EXPECT_NEAR(e.imag(), 0.0, 1e-12);
  EXPECT_GE(H.norm_bound(), Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(D).eigenvalues().cwiseAbs().maxCoeff());
}

TEST(NeelState, Patterns) {
  EXPECT_EQ(neel_pattern(2), 0b01u);
  EXPECT_EQ(neel_pattern(4), 0b0101u);
  for (int L : {2, 4}) {
    auto basis = build_sector_basis(L);
    const SectorState psi = neel_state(basis);
    EXPECT_EQ(psi.norm(), 1.0);
    EXPECT_EQ(psi.amplitudes()(static_cast<Eigen::Index>(basis->index(neel_pattern(L)))), Complex(1.0));
  }
}

TEST(NeelState, StaggeredProfile) {
  const SectorState psi = neel_state(build_sector_basis(10));
  const auto sz = psi.sz_profile();
  for (int k = 0; k < 10; ++k) EXPECT_EQ(sz[static_cast<std::size_t>(k)], k % 2 == 0 ? 0.5 : -0.5);
}

TEST(SectorState, DimensionMismatch) {
  EXPECT_THROW(SectorState(build_sector_basis(4), Eigen::VectorXcd::Zero(5)), std::invalid_argument);
}
