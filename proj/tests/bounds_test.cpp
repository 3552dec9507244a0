#include <gtest/gtest.h>

#include <cmath>

#include "mixwel/bounds.hpp"
#include "oracles.hpp"

using namespace mixwel;

namespace {

std::vector<long double> as_long(const OptProfile& p) {
  return std::vector<long double>(p.values().begin(), p.values().end());
}

}  // namespace

TEST(Binomial, MatchesPascalUpTo60) {
  const auto c = oracle::pascal(60);
  for (int n = 0; n <= 60; ++n) {
    for (int k = 0; k <= n; ++k) EXPECT_EQ(binom(n, k), static_cast<double>(c[n][k])) << n << "," << k;
  }
  EXPECT_EQ(binom(5, 7), 0.0);
  EXPECT_EQ(binom(5, -1), 0.0);
}

TEST(Binomial, LargeArgumentsStayAccurate) {
  // C(150, 75) ≈ 9.2826e43.
  const double lg = std::lgamma(151.0) - 2 * std::lgamma(76.0);
  EXPECT_NEAR(std::log(binom(150, 75)), lg, 1e-10);
}

TEST(Binomial, Int32ModeWrapsFromThirty) {
  EXPECT_EQ(binom(20, 10, BinomialMode::kJavaInt32), 184756.0);
  EXPECT_NE(binom(34, 17, BinomialMode::kJavaInt32), binom(34, 17));
}

TEST(OptProfile, Shapes) {
  const OptProfile x = OptProfile::xos(4);
  EXPECT_DOUBLE_EQ(x(0), 0.0);
  EXPECT_DOUBLE_EQ(x(1), 1.0);
  EXPECT_NEAR(x(4), 4 * (1 - std::pow(0.75, 4)), 1e-15);
  EXPECT_EQ(OptProfile::sa().values(), (std::vector<double>{0, 1, 1, 1.5}));
  EXPECT_THROW(OptProfile::sa(4), DomainError);
  EXPECT_THROW(OptProfile::custom({0, 2, 1}), DomainError);
}

TEST(Beta, MatchesReferenceSum) {
  for (int n : {2, 3, 5, 10, 40}) {
    const OptProfile opt = OptProfile::xos(n);
    for (double p : {0.1, 0.5, static_cast<double>(n) / (n + 1)}) {
      const double mine = beta(BetaQuery{n, p, 0.0, std::nullopt}, opt);
      const long double ref = oracle::beta_reference(n, p, 0.0L, as_long(opt), 1, n);
      EXPECT_NEAR(mine, static_cast<double>(ref), 1e-12) << n << " " << p;
    }
  }
}

TEST(Beta, SubadditiveProfileAtTheReferencePoint) {
  const OptProfile sa = OptProfile::sa();
  const BetaResult r = beta_detail(BetaQuery{3, 0.8, 0.01, std::nullopt}, sa);
  const long double ref = oracle::beta_reference(3, 0.8L, 0.01L, as_long(sa), 1, 3);
  EXPECT_NEAR(r.beta, static_cast<double>(ref), 1e-12);
  EXPECT_GT(r.beta, 2.0);
}

TEST(Beta, TwoBiddersHandValue) {
  // n = 2, p = 2/3, t* = 1: (4/3 + 1/3) / (1/9 + 4/9 + 4/9·1.5) = 1.3636…
  const double b = beta(BetaQuery{2, 2.0 / 3, 0.0, 1}, OptProfile::xos(2));
  EXPECT_NEAR(b, (5.0 / 3) / (1.0 / 9 + 4.0 / 9 + 4.0 / 9 * 1.5), 1e-14);
}

TEST(Beta, ShiftsLinearlyInDelta) {
  const BetaQuery q0{6, 0.4, 0.0, std::nullopt};
  BetaQuery q1 = q0;
  q1.delta = 0.25;
  EXPECT_NEAR(beta(q0, OptProfile::xos(6)) - beta(q1, OptProfile::xos(6)), 0.25, 1e-15);
}

TEST(Beta, RejectsBadQueries) {
  EXPECT_THROW(beta(BetaQuery{3, 1.0, 0.0, std::nullopt}, OptProfile::xos(3)), DomainError);
  EXPECT_THROW(beta(BetaQuery{3, 0.5, 0.0, std::nullopt}, OptProfile::xos(4)), DomainError);
  EXPECT_THROW(beta(BetaQuery{3, 0.5, 0.0, 4}, OptProfile::xos(3)), DomainError);
}

TEST(ReferenceRatios, Values) {
  const ReferenceRatios r = reference_ratios(3);
  EXPECT_DOUBLE_EQ(r.sa_alg, 3.0 - 2.0 / 3);
  EXPECT_DOUBLE_EQ(r.xos_alg, 2.0);
  EXPECT_NEAR(r.xos_classic, 1 / (1 - 8.0 / 27), 1e-15);
  EXPECT_NEAR(reference_ratios(100000).xos_classic, e_over_e_minus_1(), 1e-5);
}

TEST(Separation, SweepHoldsForSmallN) {
  const SeparationReport r = verify_xos_separation(40);
  EXPECT_EQ(r.rows.size(), 39u);
  EXPECT_TRUE(r.sweep_ok());
  EXPECT_FALSE(r.tail);
}
