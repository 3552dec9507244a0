#include <gtest/gtest.h>

#include <cmath>

#include "mixwel/algorithms.hpp"
#include "mixwel/harness.hpp"
#include "mixwel/hardgen.hpp"
#include "oracles.hpp"

using namespace mixwel;

TEST(SaSucc, SuccinctOnlyIsOptimal) {
  const Instance inst(3, {SingleMinded(3, 2, ItemSet{0, 1}), SingleMinded(3, 1.5, ItemSet{1, 2}),
                          SingleMinded(3, 1, ItemSet{2})});
  const AlgorithmReport r = sa_succ(inst);
  EXPECT_EQ(r.branch, "succinct_only");
  EXPECT_DOUBLE_EQ(r.welfare, 3.0);
}

TEST(SaSucc, PicksTheBestCandidate) {
  // Bidder 0 alone on everything beats any split with the two
  // single-minded bidders.
  const int m = 4;
  const Instance inst(m, {XosClauses(m, {{2.5, 2.5, 2.5, 2.5}}), SingleMinded(m, 1, ItemSet{0}),
                          SingleMinded(m, 1, ItemSet{3})});
  const AlgorithmReport r = sa_succ(inst);
  EXPECT_NEAR(r.welfare, oracle::brute_force_welfare(inst), 1e-9);
  EXPECT_EQ(r.branch, "opt_with_0");
}

TEST(SaSucc, WithinThreeMinusTwoOverN) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int other = 1 + static_cast<int>(seed % 3);
    const Instance inst = random_mixed_instance(RandomFamily::kSaSm, 6, other, 2, Seed{seed});
    const double opt = oracle::brute_force_welfare(inst);
    const double bound = 3.0 - 2.0 / other;
    const AlgorithmReport exact = sa_succ(inst);
    const AlgorithmReport half = sa_succ(inst, half_oracle_subsolver);
    EXPECT_LE(exact.welfare, opt + 1e-9);
    EXPECT_GE(exact.welfare * bound, opt - 1e-9) << seed;
    EXPECT_GE(half.welfare * bound, opt - 1e-9) << seed;
    EXPECT_NEAR(welfare(inst, half.allocation), half.welfare, 1e-9);
  }
}

TEST(SaSucc, CapApplies) {
  EXPECT_THROW(sa_succ(unit_xos_instance(1, 19)), CapError);
}

TEST(HalfOracle, KeepsAtLeastHalf) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = random_mixed_instance(RandomFamily::kSaSm, 6, 3, 0, Seed{seed});
    const double opt = optimal_welfare(inst).welfare;
    EXPECT_GE(welfare(inst, half_oracle_subsolver(inst)), opt / 2 - 1e-9) << seed;
  }
  // Three unit-value bidders: drops bidder 2 and stops at 2 ≥ 3/2.
  const Allocation a = half_oracle_subsolver(unit_xos_instance(3, 3));
  EXPECT_EQ(a.support(), 2);
  EXPECT_TRUE(a[2].empty());
}

TEST(XosSucc, SurrogateAtIndexZeroAndLpAboveOptimum) {
  const Instance inst = random_mixed_instance(RandomFamily::kXosSm, 6, 2, 3, Seed{5});
  const XosSuccPipeline p(inst);
  EXPECT_EQ(p.surrogate().members().size(), 3u);
  EXPECT_GE(p.lp_value(), oracle::brute_force_welfare(inst) - 1e-7);
  EXPECT_EQ(p.lp().x.num_bidders(), 3u);
}

TEST(XosSucc, TrialsAreFeasibleAndBounded) {
  const Instance inst = random_mixed_instance(RandomFamily::kXosSm, 6, 2, 2, Seed{9});
  const double opt = oracle::brute_force_welfare(inst);
  const XosSuccPipeline p(inst);
  for (std::uint64_t s = 0; s < 200; ++s) {
    const AlgorithmReport r = p.run(Seed{s});
    EXPECT_LE(r.welfare, opt + 1e-9);
    EXPECT_NEAR(welfare(inst, r.allocation), r.welfare, 1e-12);
    ASSERT_TRUE(r.lp_value);
  }
}

TEST(XosSucc, MeanWelfareIsAtLeastHalfTheOptimum) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const Instance inst = random_mixed_instance(RandomFamily::kXosSm, 6, 2, 2, Seed{200 + seed});
    const RatioReport r = empirical_ratio(inst, AlgorithmId::kXosSucc, 4000, Seed{seed});
    EXPECT_GE(r.mean, r.optimum / 2 - 3 * r.std_error - 1e-9) << seed;
  }
}

TEST(XosSucc, UnitDemandExample) {
  // Three unit-demand bidders on three items: every item is kept with
  // probability 1/2, so the mean is 3/2.
  const RatioReport r = empirical_ratio(unit_xos_instance(3, 3), AlgorithmId::kXosSucc, 20000, Seed{1});
  EXPECT_DOUBLE_EQ(r.optimum, 3.0);
  ASSERT_TRUE(r.lp_value);
  EXPECT_NEAR(*r.lp_value, 3.0, 1e-9);
  EXPECT_NEAR(r.mean, 1.5, 4 * r.std_error);
}

TEST(BestOfRepetition, NeverWorseThanTheFirstRun) {
  const Instance inst = random_mixed_instance(RandomFamily::kXosSm, 6, 2, 2, Seed{31});
  const XosSuccPipeline p(inst);
  auto alg = [&](Seed s) { return p.run(s); };
  const AlgorithmReport first = alg(derive_seed(Seed{4}, 0));
  const AlgorithmReport best = best_of_repetition(alg, 16, Seed{4});
  EXPECT_GE(best.welfare, first.welfare);
  EXPECT_THROW(best_of_repetition(alg, 0, Seed{4}), DomainError);
}

TEST(Harness, NamesRoundTrip) {
  for (auto a : {AlgorithmId::kGiveAll, AlgorithmId::kSaSucc, AlgorithmId::kSaSuccHalf, AlgorithmId::kXosSucc,
                 AlgorithmId::kExact}) {
    EXPECT_EQ(parse_algorithm(algorithm_name(a)), a);
  }
  EXPECT_THROW(parse_algorithm("greedy"), DomainError);
  EXPECT_TRUE(is_randomized(AlgorithmId::kXosSucc));
  EXPECT_FALSE(is_randomized(AlgorithmId::kSaSucc));
}

TEST(Harness, GiveAllAndExact) {
  const Instance inst(2, {XosClauses(2, {{1, 1}}), SingleMinded(2, 3, ItemSet{0, 1})});
  const AlgorithmReport g = give_all(inst);
  EXPECT_EQ(g.branch, "bidder_1");
  EXPECT_DOUBLE_EQ(g.welfare, 3.0);
  const RatioReport e = empirical_ratio(inst, AlgorithmId::kExact, 5, Seed{0});
  EXPECT_DOUBLE_EQ(e.ratio, 1.0);
  EXPECT_DOUBLE_EQ(e.std_error, 0.0);
}

TEST(Harness, ThreadCountDoesNotChangeResults) {
  const Instance inst = random_mixed_instance(RandomFamily::kXosSm, 6, 2, 2, Seed{3});
  const XosSuccPipeline p(inst);
  EXPECT_EQ(run_trials(p, 257, Seed{6}, 1), run_trials(p, 257, Seed{6}, 4));
}

TEST(Harness, Moments) {
  const Moments m = moments({1, 2, 3, 4});
  EXPECT_DOUBLE_EQ(m.mean, 2.5);
  EXPECT_NEAR(m.std_error, std::sqrt(5.0 / 3.0 / 4.0), 1e-15);
  EXPECT_DOUBLE_EQ(moments({7}).std_error, 0.0);
}
