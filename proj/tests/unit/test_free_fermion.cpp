#include <gtest/gtest.h>

#include <random>

#include "ptchain/ed/free_fermion.hpp"
#include "ptchain/ed/spectral_match.hpp"

using namespace ptchain;

namespace {

ChainParams random_params(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> j(-2.0, 2.0), h(0.0, 2.0), eta(0.0, 1.5);
  return {j(rng), j(rng), j(rng), j(rng), h(rng), eta(rng), n};
}

std::vector<Complex> ed_spectrum(const ChainParams& p, ed::Boundary b) {
  return ed::complex_spectrum(ed::build_hamiltonian(p, b)).eigenvalues;
}

}  // namespace

TEST(SectorMomenta, EvenSectorIsShiftedByHalfStep) {
  const auto even = ed::sector_momenta(8, ed::FermionParity::Even);
  const auto odd = ed::sector_momenta(8, ed::FermionParity::Odd);
  ASSERT_EQ(even.size(), 4u);
  ASSERT_EQ(odd.size(), 4u);
  EXPECT_DOUBLE_EQ(odd.front(), 0.0);
  EXPECT_NEAR(odd[2], pi / 2.0, 1e-15);
  EXPECT_NEAR(even.front(), pi / 8.0, 1e-15);
}

TEST(Assembly, OpenChainMatchesExactDiagonalization) {
  std::mt19937 rng(61);
  for (int n : {4, 6, 8}) {
    for (int trial = 0; trial < 3; ++trial) {
      const auto p = random_params(rng, n);
      const auto ff = ed::free_fermion_assembly(p, ed::Boundary::Open);
      ASSERT_EQ(ff.size(), std::size_t{1} << n);
      EXPECT_LT(ed::multiset_residual(ed_spectrum(p, ed::Boundary::Open), ff), 1e-8) << "n=" << n;
    }
  }
}

TEST(Assembly, RingMatchesExactDiagonalization) {
  std::mt19937 rng(62);
  for (int n : {4, 6, 8, 10}) {
    for (int trial = 0; trial < 3; ++trial) {
      const auto p = random_params(rng, n);
      const auto ff = ed::free_fermion_assembly(p, ed::Boundary::Periodic);
      ASSERT_EQ(ff.size(), std::size_t{1} << n);
      EXPECT_LT(ed::multiset_residual(ed_spectrum(p, ed::Boundary::Periodic), ff), 1e-8) << "n=" << n;
    }
  }
}

TEST(Assembly, HermitianChainIsReal) {
  const ChainParams p{1.0, 0.5, 0.3, -0.2, 0.7, 0.0, 8};
  for (auto b : {ed::Boundary::Open, ed::Boundary::Periodic})
    for (auto z : ed::free_fermion_assembly(p, b)) EXPECT_LT(std::abs(z.imag()), 1e-12);
}

TEST(Bogoliubov, EigenvaluesArePlusMinusBranches) {
  std::mt19937 rng(63);
  std::uniform_real_distribution<double> kd(0.05, pi - 0.05);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = random_params(rng, 8);
    const Momentum k(kd(rng));
    const auto block = ed::bogoliubov_block(p, k);
    const auto [minus, plus] = branch_energies(p, k.value());
    const std::array<Complex, 4> expected{minus, -minus, plus, -plus};
    EXPECT_LT(ed::multiset_residual(block.eigenvalues, expected), 1e-9);
  }
}

TEST(Bogoliubov, GramDeviationFlagsNonHermiticity) {
  const ChainParams p{2.0, 0.4, 0.0, 0.0, 1.0, 1.0, 8};
  EXPECT_NEAR(ed::bogoliubov_block(p, Momentum(pi / 4.0)).gram_deviation, 0.9805806756909204, 1e-10);
  EXPECT_LT(ed::bogoliubov_block(p.with_eta(0.0), Momentum(pi / 4.0)).gram_deviation, 1e-10);
  const auto b = ed::bogoliubov_block(p.with_eta(0.0), Momentum(1.0));
  EXPECT_LT((b.matrix - b.matrix.adjoint()).norm(), 1e-14);
}

TEST(OpenBdg, ParticleHoleSymmetricSpectrum) {
  const ChainParams p{1.1, 0.1, 2.4, -0.8, 0.2, 1.0, 6};
  const ed::Matrix m = ed::open_chain_bdg(p);
  Eigen::ComplexEigenSolver<ed::Matrix> solver(m, false);
  std::vector<Complex> ev(solver.eigenvalues().begin(), solver.eigenvalues().end()), negated;
  for (auto z : ev) negated.push_back(-z);
  EXPECT_LT(ed::multiset_residual(ev, negated), 1e-10);
}
