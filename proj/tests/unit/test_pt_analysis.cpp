#include <gtest/gtest.h>

#include <random>

#include "ptchain/pt_analysis.hpp"

using namespace ptchain;

namespace {

const ChainParams case_i{2.0, 0.4, 0.0, 0.0, 1.0, 1.0, 8};
const ChainParams case_ii{1.6, 0.8, 0.0, 0.0, 1.0, 1.0, 8};
const ChainParams case_iii{1.4, -0.6, 0.0, 0.0, 1.0, 1.0, 8};
const ChainParams staggered_pairing{1.1, 0.1, 2.4, -0.8, 0.2, 1.0, 8};

// Brute-force reality test straight from the coefficients on a dense grid.
bool dense_scan_real(const ChainParams& p, int points) {
  for (int i = 0; i <= points; ++i) {
    const double k = pi * i / points;
    const double c = std::cos(2.0 * k), s = std::sin(2.0 * k);
    const double l = p.h * p.h + p.gamma1 * p.gamma1 + p.gamma2 * p.gamma2 - 2.0 * p.gamma1 * p.gamma2 * c;
    const double m = p.j1 * p.j1 + p.j2 * p.j2 + 2.0 * p.j1 * p.j2 * c - p.eta * p.eta;
    const double n = std::pow(p.j1 * p.gamma2 + p.j2 * p.gamma1, 2) * s * s;
    if (l * m - n < -1e-12 || l + m < -1e-12) return false;
  }
  return true;
}

}  // namespace

TEST(Reality, CaseOneFullyReal) {
  const auto r = classify_reality(case_i, 1024);
  EXPECT_TRUE(r.fully_real);
  EXPECT_TRUE(r.forbidden_intervals.empty());
  EXPECT_EQ(r.mechanism, BreakingMechanism::None);
}

TEST(Reality, CaseTwoBreaksAroundHalfPi) {
  const auto r = classify_reality(case_ii, 1024);
  ASSERT_EQ(r.forbidden_intervals.size(), 1u);
  const auto iv = r.forbidden_intervals.front();
  EXPECT_TRUE(iv.contains(pi / 2.0));
  // mu(k) < 0 where 2.56 + 0.64 + 2.56 cos 2k < 1, symmetric about pi/2.
  const double edge = 0.5 * std::acos((1.0 - 3.2) / 2.56);
  EXPECT_NEAR(iv.k_lo, edge, 1e-7);
  EXPECT_NEAR(iv.k_hi, pi - edge, 1e-7);
  EXPECT_EQ(r.mechanism, BreakingMechanism::InnerRootNegative);
}

TEST(Reality, CaseThreeBreaksAtZoneEdge) {
  const auto r = classify_reality(case_iii, 1024);
  EXPECT_FALSE(r.fully_real);
  ASSERT_FALSE(r.forbidden_intervals.empty());
  EXPECT_LE(r.forbidden_intervals.front().k_lo, interval_edge_tol);
  EXPECT_GE(r.forbidden_intervals.back().k_hi, pi - interval_edge_tol);
}

TEST(Reality, FieldInducedBreakingEdges) {
  const auto r = classify_reality(staggered_pairing, 1024);
  ASSERT_EQ(r.forbidden_intervals.size(), 2u);
  EXPECT_EQ(r.mechanism, BreakingMechanism::InnerRootNegative);
  EXPECT_NEAR(r.forbidden_intervals.front().k_lo, 1.2514985314800412825, 1e-7);
  EXPECT_NEAR(r.forbidden_intervals.back().k_hi, 1.890094122109751956, 1e-7);
  EXPECT_TRUE(classify_reality(staggered_pairing.with_h(1.5), 1024).fully_real);
}

TEST(Reality, AgreesWithDenseScan) {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> j(-3.0, 3.0), h(0.0, 3.0), eta(0.0, 2.0);
  int compared = 0;
  for (int i = 0; i < 300; ++i) {
    const ChainParams p{j(rng), j(rng), j(rng), j(rng), h(rng), eta(rng), 8};
    // Skip points too close to the threshold to be decided by either scan.
    if (dense_scan_real(p.with_eta(p.eta * 1.01), 20000) != dense_scan_real(p.with_eta(p.eta * 0.99), 20000))
      continue;
    EXPECT_EQ(classify_reality(p, 1024).fully_real, dense_scan_real(p, 20000));
    EXPECT_EQ(spectrum_fully_real(p, 1024), dense_scan_real(p, 20000));
    ++compared;
  }
  EXPECT_GT(compared, 250);
}

TEST(Reality, RejectsCoarseGrid) { EXPECT_THROW((void)classify_reality(case_i, 16), std::invalid_argument); }

TEST(Threshold, ClosedFormPicksSmallerBranch) {
  const auto t = eta_critical_isotropic(case_i);
  EXPECT_DOUBLE_EQ(t.eta_c, 1.6);
  EXPECT_EQ(t.which_min, ThresholdBranch::Diff);
  EXPECT_DOUBLE_EQ(t.k_star, pi / 2.0);
  const auto u = eta_critical_isotropic(case_iii);
  EXPECT_NEAR(u.eta_c, 0.8, 1e-15);
  EXPECT_EQ(u.which_min, ThresholdBranch::Sum);
  EXPECT_EQ(u.k_star, 0.0);
  EXPECT_THROW((void)eta_critical_isotropic(staggered_pairing), std::invalid_argument);
}

TEST(Threshold, NumericMatchesClosedFormOnRandomChains) {
  std::mt19937 rng(22);
  std::uniform_real_distribution<double> j(-3.0, 3.0), h(0.0, 3.0);
  for (int i = 0; i < 40; ++i) {
    ChainParams p{j(rng), j(rng), 0.0, 0.0, h(rng), 0.0, 8};
    const double expected = std::min(std::abs(p.j1 + p.j2), std::abs(p.j1 - p.j2));
    EXPECT_NEAR(eta_critical_numeric(p, 7.0, 1e-10), expected, 1e-8);
  }
}

TEST(Threshold, AnisotropicStaysBelowIsotropicBound) {
  const double eta_c = eta_critical_numeric(staggered_pairing, 3.0, 1e-12);
  EXPECT_NEAR(eta_c, 0.9979450462947311, 1e-8);
  EXPECT_LE(eta_c, 1.0);
}

TEST(Threshold, RejectsDegenerateBracket) {
  EXPECT_THROW((void)eta_critical_numeric(case_i, 0.0, 1e-9), std::invalid_argument);
  EXPECT_THROW((void)eta_critical_numeric(case_i, 2.0, 0.0), std::invalid_argument);
  EXPECT_DOUBLE_EQ(eta_critical_numeric(case_i, 1.0, 1e-9), 1.0);
}

TEST(Touching, CaseTwoTouchesAtHalfPiAtThreshold) {
  const auto ks = branch_touch_points(case_ii.with_eta(0.8), 1024);
  ASSERT_EQ(ks.size(), 1u);
  EXPECT_NEAR(ks.front(), pi / 2.0, 1e-6);
}

TEST(Touching, CaseThreeTouchesAtZero) {
  const auto ks = branch_touch_points(case_iii.with_eta(0.8), 1024);
  ASSERT_EQ(ks.size(), 1u);
  EXPECT_NEAR(ks.front(), 0.0, 1e-6);
}

TEST(Touching, UnbrokenGappedChainHasNone) {
  EXPECT_TRUE(branch_touch_points(case_i.with_h(3.0).with_eta(0.5), 1024).empty());
}

TEST(Reality, WeakCouplingBreaksThroughNegativeSum) {
  const auto r = classify_reality(ChainParams{0.1, 0.1, 0.0, 0.0, 0.1, 1.0, 8}, 256);
  EXPECT_EQ(r.mechanism, BreakingMechanism::SumNegative);
  ASSERT_EQ(r.forbidden_intervals.size(), 1u);
  EXPECT_EQ(r.forbidden_intervals.front().k_lo, 0.0);
  EXPECT_EQ(r.forbidden_intervals.front().k_hi, pi);
}
