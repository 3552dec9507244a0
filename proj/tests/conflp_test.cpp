#include <gtest/gtest.h>

#include "mixwel/conflp.hpp"
#include "mixwel/exact.hpp"
#include "mixwel/hardgen.hpp"
#include "oracles.hpp"

using namespace mixwel;

namespace {

LpOptions column_generation() {
  LpOptions o;
  o.mode = LpMode::kColumnGeneration;
  return o;
}

}  // namespace

TEST(ConfigurationLp, SingleBidderGetsEverything) {
  const Instance inst(3, {XosClauses(3, {{1, 2, 0.5}, {3, 0, 0}})});
  const LpSolution s = solve_configuration_lp(inst);
  EXPECT_NEAR(s.value, 3.5, 1e-9);
  EXPECT_NEAR(s.x.objective(inst.bidders()), 3.5, 1e-9);
}

TEST(ConfigurationLp, TwoUnitDemandBidders) {
  const Instance inst = unit_xos_instance(2, 2);
  EXPECT_NEAR(lp_value_only(inst), 2.0, 1e-9);
  EXPECT_NEAR(lp_value_only(inst, column_generation()), 2.0, 1e-9);
}

TEST(ConfigurationLp, ZeroValuationsGiveZero) {
  const Instance inst(2, {XosClauses(2, {{0, 0}}), SingleMinded(2, 0.0, ItemSet{0})});
  EXPECT_DOUBLE_EQ(lp_value_only(inst), 0.0);
  EXPECT_TRUE(solve_configuration_lp(inst).x.entries().empty());
}

TEST(ConfigurationLp, FractionalOptimumBeatsIntegral) {
  // Three single-minded bidders on pairs of a triangle: OPT 1, LP 3/2.
  const Instance inst(3, {SingleMinded(3, 1, ItemSet{0, 1}), SingleMinded(3, 1, ItemSet{1, 2}),
                          SingleMinded(3, 1, ItemSet{0, 2})});
  EXPECT_NEAR(lp_value_only(inst), 1.5, 1e-9);
  EXPECT_NEAR(optimal_welfare(inst).welfare, 1.0, 1e-12);
}

TEST(ConfigurationLp, FeasibleSparseAndAboveOptimum) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto family = seed % 2 ? RandomFamily::kXosSm : RandomFamily::kSaSm;
    const Instance inst = random_mixed_instance(family, 6, 2, 2, Seed{seed});
    const LpSolution s = solve_configuration_lp(inst);
    EXPECT_LE(s.x.max_violation(), 1e-7);
    EXPECT_LE(s.x.support(), inst.num_bidders() + inst.num_items() + 1);
    EXPECT_GE(s.value, oracle::brute_force_welfare(inst) - 1e-7) << seed;
    // Dual feasibility: no bundle prices in with positive reduced cost.
    for (std::size_t i = 0; i < inst.num_bidders(); ++i) {
      for (ItemSet::Mask b = 1; b < (1u << inst.num_items()); ++b) {
        double price = s.bidder_utilities[i];
        for (int j : ItemSet(b).items()) price += s.item_prices[j];
        EXPECT_LE(inst.bidder(i).value(ItemSet(b)), price + 1e-7);
      }
    }
  }
}

TEST(ConfigurationLp, ColumnGenerationMatchesDense) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = random_mixed_instance(RandomFamily::kXosSm, 6, 3, 3, Seed{100 + seed});
    const double dense = lp_value_only(inst);
    const LpSolution cg = solve_configuration_lp(inst, column_generation());
    EXPECT_NEAR(cg.value, dense, 1e-7 * std::max(1.0, dense)) << seed;
    EXPECT_GE(cg.rounds, 1);
  }
}

TEST(ConfigurationLp, SurrogatePairMatchesWrapper) {
  const int m = 4;
  const SurrogateValuation s = make_surrogate(m, {SingleMinded(m, 2, ItemSet{0, 1}), SingleMinded(m, 1, ItemSet{2})});
  const std::vector<Valuation> bidders{Valuation(s), Valuation(XosClauses(m, {{1, 1, 1, 1}}))};
  EXPECT_DOUBLE_EQ(lp_value_only(bidders, m), solve_configuration_lp(bidders, m).value);
}

TEST(ConfigurationLp, Deterministic) {
  const Instance inst = random_mixed_instance(RandomFamily::kSaSm, 6, 3, 2, Seed{77});
  const LpSolution a = solve_configuration_lp(inst);
  const LpSolution b = solve_configuration_lp(inst);
  ASSERT_EQ(a.x.entries().size(), b.x.entries().size());
  for (std::size_t k = 0; k < a.x.entries().size(); ++k) {
    EXPECT_EQ(a.x.entries()[k].bundle, b.x.entries()[k].bundle);
    EXPECT_EQ(a.x.entries()[k].weight, b.x.entries()[k].weight);
  }
}

TEST(ConfigurationLp, CapAndArity) {
  EXPECT_THROW(lp_value_only(unit_xos_instance(1, 15)), CapError);
  const std::vector<Valuation> mixed{XosClauses(2, {{1, 1}}), XosClauses(3, {{1, 1, 1}})};
  EXPECT_THROW(lp_value_only(mixed, 2), ArityError);
}

TEST(FractionalAllocation, MassesAndViolation) {
  const FractionalAllocation x(2, 3, {{0, ItemSet{0, 1}, 0.5}, {1, ItemSet{1, 2}, 0.75}});
  EXPECT_DOUBLE_EQ(x.item_mass(1), 1.25);
  EXPECT_DOUBLE_EQ(x.item_mass(2, 1), 0.75);
  EXPECT_DOUBLE_EQ(x.bidder_mass(0), 0.5);
  EXPECT_NEAR(x.max_violation(), 0.25, 1e-15);
  EXPECT_FALSE(x.feasible());
  EXPECT_THROW(FractionalAllocation(1, 2, {{1, ItemSet{0}, 0.5}}), ArityError);
}
