#include <gtest/gtest.h>

#include <cmath>

#include "mixwel/rounding.hpp"

using namespace mixwel;

TEST(Ocrs, AcceptanceSchedule) {
  EXPECT_DOUBLE_EQ(build_ocrs({1.0}).acceptance()[0], 0.5);
  const Rank1Ocrs two = build_ocrs({0.5, 0.5});
  EXPECT_DOUBLE_EQ(two.acceptance()[0], 0.5);
  EXPECT_NEAR(two.acceptance()[1], 2.0 / 3.0, 1e-15);
  EXPECT_EQ(build_ocrs({}).size(), 0u);
  EXPECT_FALSE(run_ocrs(build_ocrs({}), {}, std::vector<double>{}));
}

TEST(Ocrs, RejectsInfeasibleProbabilities) {
  EXPECT_THROW(build_ocrs({0.6, 0.6}), InfeasibleError);
  EXPECT_THROW(build_ocrs({1.5}), DomainError);
  EXPECT_NO_THROW(build_ocrs({0.5, 0.5 + 1e-12}));
}

TEST(Ocrs, RunExamples) {
  const Rank1Ocrs one = build_ocrs({1.0});
  EXPECT_EQ(run_ocrs(one, {true}, std::vector<double>{0.3}), 0u);
  EXPECT_FALSE(run_ocrs(one, {false}, std::vector<double>{0.0}));
  const Rank1Ocrs two = build_ocrs({0.5, 0.5});
  EXPECT_EQ(run_ocrs(two, {true, true}, std::vector<double>{0.9, 0.1}), 1u);
  EXPECT_EQ(run_ocrs(two, {true, true}, std::vector<double>{0.1, 0.1}), 0u);
  EXPECT_THROW(run_ocrs(two, {true}, std::vector<double>{0.1, 0.1}), ArityError);
}

TEST(Ocrs, UnconditionalAcceptanceOfSecondElement) {
  // Pr[element 2 accepted] = 0.5·(1 − 0.25)·(2/3) = 0.25.
  const Rank1Ocrs s = build_ocrs({0.5, 0.5});
  Rng rng(Seed{2});
  const int trials = 1000000;
  int hits = 0;
  for (int k = 0; k < trials; ++k) {
    const std::vector<bool> active{rng.bernoulli(0.5), rng.bernoulli(0.5)};
    const std::vector<double> coins{rng.uniform01(), rng.uniform01()};
    hits += run_ocrs(s, active, coins) == std::optional<std::size_t>(1) ? 1 : 0;
  }
  const double sigma = std::sqrt(0.25 * 0.75 / trials);
  EXPECT_NEAR(static_cast<double>(hits) / trials, 0.25, 3 * sigma);
}

TEST(CorrelatedRound, FullSurrogateMassIsAllOrNothing) {
  const int m = 4;
  const FractionalAllocation x(2, m, {{0, ItemSet::full(m), 1.0}});
  const CorrelatedRounder rounder(x);
  Rng rng(Seed{8});
  const int trials = 100000;
  int kept = 0;
  for (int k = 0; k < trials; ++k) {
    const RoundingOutcome r = rounder.round(rng);
    EXPECT_EQ(r.drawn[0], ItemSet::full(m));
    EXPECT_TRUE(r.accepted[0].empty() || r.accepted[0] == ItemSet::full(m));
    EXPECT_TRUE(r.accepted[1].empty());
    kept += r.accepted[0].empty() ? 0 : 1;
  }
  EXPECT_NEAR(static_cast<double>(kept) / trials, 0.5, 3 * std::sqrt(0.25 / trials));
}

TEST(CorrelatedRound, EmptySolutionAllocatesNothing) {
  const RoundingOutcome r = correlated_round(FractionalAllocation(3, 2, {}), Seed{1});
  for (ItemSet t : r.accepted) EXPECT_TRUE(t.empty());
}

TEST(CorrelatedRound, IntegralDisjointBundlesKeepEachItemHalfTheTime) {
  const int m = 4;
  const FractionalAllocation x(3, m, {{0, ItemSet{0}, 1.0}, {1, ItemSet{1, 2}, 1.0}, {2, ItemSet{3}, 1.0}});
  const CorrelatedRounder rounder(x);
  Rng rng(Seed{4});
  const int trials = 100000;
  std::vector<int> kept(m, 0);
  for (int k = 0; k < trials; ++k) {
    const RoundingOutcome r = rounder.round(rng);
    for (std::size_t i = 0; i < 3; ++i) {
      for (int j : r.accepted[i].items()) ++kept[j];
    }
  }
  const double sigma = std::sqrt(0.25 / trials);
  for (int j = 0; j < m; ++j) EXPECT_GE(static_cast<double>(kept[j]) / trials, 0.5 - 3 * sigma) << j;
}

TEST(CorrelatedRound, FeasibleAndHalfSelectableOnFractionalSolutions) {
  const int m = 3;
  const FractionalAllocation x(3, m,
                               {{0, ItemSet{0, 1}, 0.4},
                                {0, ItemSet{2}, 0.3},
                                {1, ItemSet{0, 2}, 0.5},
                                {1, ItemSet{1}, 0.2},
                                {2, ItemSet{0, 1, 2}, 0.1}});
  ASSERT_TRUE(x.feasible());
  const CorrelatedRounder rounder(x);
  Rng rng(Seed{12});
  const int trials = 100000;
  std::vector<std::vector<int>> drawn(3, std::vector<int>(m)), kept(3, std::vector<int>(m));
  for (int k = 0; k < trials; ++k) {
    const RoundingOutcome r = rounder.round(rng);
    ItemSet used;
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_TRUE(r.accepted[i].subset_of(r.drawn[i]));
      EXPECT_FALSE(r.accepted[i].intersects(used));
      used = used | r.accepted[i];
      for (int j : r.drawn[i].items()) ++drawn[i][j];
      for (int j : r.accepted[i].items()) ++kept[i][j];
    }
    EXPECT_TRUE(r.accepted[0].empty() || r.accepted[0] == r.drawn[0]);
  }
  for (std::size_t i = 0; i < 3; ++i) {
    for (int j = 0; j < m; ++j) {
      if (drawn[i][j] < 1000) continue;
      const double rate = static_cast<double>(kept[i][j]) / drawn[i][j];
      EXPECT_NEAR(rate, 0.5, 3 * std::sqrt(0.25 / drawn[i][j])) << i << "," << j;
    }
  }
}

TEST(CorrelatedRound, RejectsInfeasibleSolutions) {
  const FractionalAllocation x(2, 2, {{0, ItemSet{0}, 0.8}, {1, ItemSet{0}, 0.8}});
  EXPECT_THROW(CorrelatedRounder{x}, InfeasibleError);
}

TEST(CorrelatedRound, DeterministicGivenSeed) {
  const FractionalAllocation x(2, 2, {{0, ItemSet{0}, 0.5}, {1, ItemSet{0, 1}, 0.5}});
  for (std::uint64_t s = 0; s < 20; ++s) {
    EXPECT_EQ(correlated_round(x, Seed{s}).accepted, correlated_round(x, Seed{s}).accepted);
  }
}
