#include <gtest/gtest.h>

#include "mixwel/hardgen.hpp"
#include "mixwel/valuations.hpp"
#include "oracles.hpp"

using namespace mixwel;

TEST(Value, XosIsMaxOverClauses) {
  const Valuation v = XosClauses(2, {{1, 0}, {0, 1}});
  EXPECT_DOUBLE_EQ(v.value(ItemSet{0, 1}), 1.0);
  EXPECT_DOUBLE_EQ(v.value(ItemSet{}), 0.0);
}

TEST(Value, OneTwoFiresBothIndicators) {
  const OneTwoValuation v(4, {{ItemSet{0, 1}, ItemSet{2, 3}}, {ItemSet{0, 2}, ItemSet{1, 3}}}, 0, {1});
  EXPECT_DOUBLE_EQ(v.value(ItemSet{}), 0.0);
  EXPECT_DOUBLE_EQ(v.value(ItemSet{0, 1}), 1.0);  // A_{0,0}, but 0 is not in X
  EXPECT_DOUBLE_EQ(v.value(ItemSet{0, 2}), 2.0);
  EXPECT_DOUBLE_EQ(v.value(ItemSet{0, 1, 2, 3}), 2.0);
}

TEST(Value, SetCoverAtInputBundleIsLambdaMinusOne) {
  // Pairwise intersecting X_ℓ, so no two complements cover M: 2-sparse.
  const int m = 6;
  const std::vector<ItemSet> xs{ItemSet{0, 1, 2}, ItemSet{0, 3, 4}, ItemSet{1, 3, 5}, ItemSet{2, 4, 5}};
  std::vector<ItemSet> comps;
  for (ItemSet x : xs) comps.push_back(x.complement(m));
  ASSERT_TRUE(is_lambda_sparse(comps, 2, m));
  const SetCoverSubadditive f(m, comps, 2);
  for (ItemSet x : xs) EXPECT_EQ(f.raw_value(x), 1);

  // A shared item makes every subfamily of complements miss it.
  const std::vector<ItemSet> ys{ItemSet{0, 5}, ItemSet{1, 5}, ItemSet{2, 3, 5}};
  std::vector<ItemSet> ycomps;
  for (ItemSet y : ys) ycomps.push_back(y.complement(m));
  const SetCoverSubadditive g(m, ycomps, 4, 0.5);
  for (ItemSet y : ys) {
    EXPECT_EQ(g.raw_value(y), 3);
    EXPECT_DOUBLE_EQ(g.value(y), 1.5);
  }
}

TEST(Value, SingleMindedAndSurrogateExamples) {
  const SingleMinded a(4, 1.0, ItemSet{1});
  const SingleMinded b(4, 2.0, ItemSet{2, 3});
  const SurrogateValuation s = make_surrogate(4, {a, b});
  EXPECT_DOUBLE_EQ(s.value(ItemSet{1, 2, 3}), 3.0);
  EXPECT_DOUBLE_EQ(s.value(ItemSet{1, 2}), 1.0);
  EXPECT_DOUBLE_EQ(s.value(ItemSet{}), 0.0);
  const auto split = s.split(ItemSet{1, 2, 3});
  EXPECT_EQ(split[0], ItemSet{1});
  EXPECT_EQ(split[1], (ItemSet{2, 3}));
}

TEST(Demand, SingleMindedExamples) {
  const Valuation v = SingleMinded(3, 5.0, ItemSet{1, 2});
  EXPECT_EQ(v.demand(std::vector<double>{0, 2, 2}), (ItemSet{1, 2}));
  EXPECT_EQ(v.demand(std::vector<double>{0, 3, 3}), ItemSet{});
}

TEST(Demand, XosExampleUsesSecondClause) {
  const Valuation v = XosClauses(2, {{2, 1}, {0, 3}});
  const std::vector<double> prices{1, 1};
  const ItemSet d = v.demand(prices);
  EXPECT_EQ(d, ItemSet{1});
  EXPECT_DOUBLE_EQ(oracle::utility(v, d, prices), 2.0);
}

TEST(Demand, RejectsBadPrices) {
  const Valuation v = SingleMinded(2, 1.0, ItemSet{0});
  EXPECT_THROW(v.demand(std::vector<double>{1.0}), ArityError);
  EXPECT_THROW(v.demand(std::vector<double>{-1.0, 0.0}), DomainError);
}

TEST(Demand, MatchesExhaustiveArgmaxOnRandomQueries) {
  Rng rng(Seed{17});
  for (int q = 0; q < 100; ++q) {
    const int m = 3 + rng.below_int(4);
    std::vector<Valuation> candidates{random_xos(m, 1 + rng.below_int(3), rng), random_single_minded(m, rng),
                                      random_set_cover(m, rng)};
    std::vector<double> prices(m);
    for (auto& p : prices) p = std::round(rng.uniform01() * 30.0) / 10.0;
    for (const auto& v : candidates) {
      const ItemSet d = v.demand(prices);
      EXPECT_NEAR(oracle::utility(v, d, prices), oracle::best_utility(v, prices), 1e-9);
    }
  }
}

TEST(SetCover, Examples) {
  EXPECT_EQ(phi_set_cover(std::vector<ItemSet>{ItemSet{1}}, ItemSet{}), CoverNumber(0));
  EXPECT_EQ(phi_set_cover(std::vector<ItemSet>{ItemSet{1, 2}, ItemSet{2, 3}}, ItemSet{1, 3}), CoverNumber(2));
  EXPECT_TRUE(phi_set_cover(std::vector<ItemSet>{ItemSet{1}}, ItemSet{1, 2}).is_infinite());
}

TEST(SetCover, SparsityExamples) {
  EXPECT_FALSE(is_lambda_sparse(std::vector<ItemSet>{ItemSet::full(3)}, 1, 3));
  for (int lambda : {1, 2, 10}) {
    EXPECT_TRUE(is_lambda_sparse(std::vector<ItemSet>{ItemSet{0}, ItemSet{1}}, lambda, 3));
  }
  const auto family = sample_sparse_family(8, 4, 6, 0.2, Seed{3});
  const int cover = oracle::naive_cover(family, ItemSet::full(8));
  EXPECT_TRUE(cover < 0 || cover > 4) << cover;
}

TEST(SetCover, MatchesSubfamilyEnumeration) {
  Rng rng(Seed{5});
  for (int q = 0; q < 200; ++q) {
    std::vector<ItemSet> family;
    const int k = 1 + rng.below_int(6);
    for (int i = 0; i < k; ++i) family.push_back(ItemSet(rng.below(64)));
    const ItemSet target(rng.below(64));
    const CoverNumber phi = phi_set_cover(family, target);
    const int naive = oracle::naive_cover(family, target);
    if (naive < 0) {
      EXPECT_TRUE(phi.is_infinite());
    } else {
      EXPECT_EQ(phi, CoverNumber(naive));
    }
  }
}

TEST(SetCover, ConstructionRejectsNonSparseFamilies) {
  EXPECT_THROW(SetCoverSubadditive(3, {ItemSet{0, 1}, ItemSet{2}}, 2), DomainError);
  EXPECT_THROW(SetCoverSubadditive(3, {ItemSet{0}}, 3), DomainError);  // odd λ
  EXPECT_NO_THROW(SetCoverSubadditive(3, {ItemSet{0}, ItemSet{1}}, 2));
}

namespace {

// f_X by the three-case formula, computing φ by subfamily enumeration.
double naive_fx(const std::vector<ItemSet>& comps, int lambda, int m, ItemSet s) {
  auto phi = [&](ItemSet t) {
    const int c = oracle::naive_cover(comps, t);
    return c < 0 ? 1 << 20 : c;
  };
  if (phi(s) < lambda / 2.0) return phi(s);
  if (phi(s.complement(m)) < lambda / 2.0) return lambda - phi(s.complement(m));
  return lambda / 2.0;
}

}  // namespace

TEST(SetCover, MatchesNaiveFormulaAndProperties) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const int m = 7;
    const int lambda = seed % 2 ? 4 : 2;
    const auto comps = sample_sparse_family(m, lambda, lambda == 2 ? 3 : 6, lambda == 2 ? 0.4 : 0.25, Seed{seed});
    const SetCoverSubadditive f(m, comps, lambda);
    const Valuation v(f);
    for (ItemSet::Mask s = 0; s < (1u << m); ++s) {
      EXPECT_DOUBLE_EQ(f.value(ItemSet(s)), naive_fx(comps, lambda, m, ItemSet(s)));
      EXPECT_EQ(f.raw_value(ItemSet(s)) + f.raw_value(ItemSet(s).complement(m)), lambda);
    }
    EXPECT_FALSE(find_monotonicity_violation(v));
    EXPECT_FALSE(find_subadditivity_violation(v));
  }
}

TEST(Properties, ClassesAreMonotoneAndSubadditive) {
  Rng rng(Seed{23});
  for (int q = 0; q < 20; ++q) {
    const int m = 5;
    const Valuation xos = random_xos(m, 3, rng);
    const Valuation sm = random_single_minded(m, rng);
    EXPECT_FALSE(find_monotonicity_violation(xos));
    EXPECT_FALSE(find_subadditivity_violation(xos));
    EXPECT_FALSE(find_monotonicity_violation(sm));
  }
  const auto fam = sample_intersecting_family(6, 2, 3, Seed{4});
  for (const auto& v : one_two_valuations(fam, make_disj_input(2, 3, DisjMode::kZeroInstance, Seed{0}))) {
    EXPECT_FALSE(find_monotonicity_violation(v));
    EXPECT_FALSE(find_subadditivity_violation(v));
  }
}

TEST(Properties, DetectsViolations) {
  std::vector<double> superadditive{0, 1, 1, 3};
  const Valuation v = ExplicitValuation(2, superadditive);
  const auto bad = find_subadditivity_violation(v);
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->first | bad->second, (ItemSet{0, 1}));
  EXPECT_THROW(ExplicitValuation(2, {0, 2, 1, 1}), DomainError);
}

TEST(Surrogate, MatchesBruteForceSubWelfare) {
  Rng rng(Seed{31});
  for (int q = 0; q < 30; ++q) {
    const int m = 5;
    std::vector<Valuation> members;
    for (int k = 0; k < 3; ++k) members.push_back(random_single_minded(m, rng));
    const SurrogateValuation s = make_surrogate(m, members);
    const Instance inst(m, members);
    for (ItemSet::Mask t = 0; t < (1u << m); ++t) {
      std::vector<Valuation> restricted;
      for (const auto& v : members) {
        const auto& sm = *v.get_if<SingleMinded>();
        restricted.push_back(SingleMinded(m, sm.bundle().subset_of(ItemSet(t)) ? sm.weight() : 0.0, sm.bundle()));
      }
      EXPECT_NEAR(s.value(ItemSet(t)), oracle::brute_force_welfare(Instance(m, restricted)), 1e-9);
      const auto parts = s.split(ItemSet(t));
      double w = 0.0;
      ItemSet used;
      for (std::size_t k = 0; k < parts.size(); ++k) {
        EXPECT_TRUE(parts[k].subset_of(ItemSet(t)));
        EXPECT_FALSE(parts[k].intersects(used));
        used = used | parts[k];
        w += members[k].value(parts[k]);
      }
      EXPECT_NEAR(w, s.value(ItemSet(t)), 1e-9);
    }
    EXPECT_FALSE(find_monotonicity_violation(Valuation(s)));
  }
}

TEST(ComposedGrid, MatchesDefiningFormula) {
  const int rows = 2, cols = 3;
  const std::vector<ItemSet> sets{ItemSet{0, 2}, ItemSet{1}, ItemSet{0, 1, 2}};
  const Valuation inner = XosClauses(rows, {{1, 0.5}, {0.2, 1}});
  const ComposedGridValuation g(rows, cols, 1.5, sets, {0, 1}, inner);
  for (ItemSet::Mask s = 0; s < (1u << (rows * cols)); ++s) {
    double best = 0.0;
    for (int l : {0, 1}) {
      double sum = 0.0;
      for (int j : sets[l].items()) {
        ItemSet col;
        for (int r = 0; r < rows; ++r) {
          if (ItemSet(s).contains(j * rows + r)) col = col.with(r);
        }
        sum += inner.value(col);
      }
      best = std::max(best, sum);
    }
    EXPECT_NEAR(g.value(ItemSet(s)), 1.5 * best, 1e-12);
  }
  EXPECT_FALSE(find_monotonicity_violation(Valuation(g)));
}

TEST(ClassNames, RoundTrip) {
  for (auto c : {ValuationClass::kSingleMinded, ValuationClass::kXos, ValuationClass::kSubadditiveSetCover,
                 ValuationClass::kOneTwo, ValuationClass::kComposedGrid, ValuationClass::kExplicit,
                 ValuationClass::kSurrogate}) {
    EXPECT_EQ(parse_class_name(class_name(c)), c);
  }
  EXPECT_FALSE(parse_class_name("bogus"));
  EXPECT_TRUE(is_succinct_class(ValuationClass::kSingleMinded));
  EXPECT_FALSE(is_succinct_class(ValuationClass::kXos));
}
