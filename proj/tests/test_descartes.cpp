#include "egteq/descartes.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace egteq;

TEST(Descartes, BoundAndParity) {
  // (t - 1)(t - 2)(t + 3) = t^3 - 7t + 6
  RationalPoly p({Rational(6), Rational(-7), Rational(0), Rational(1)});
  EXPECT_EQ(descartes_bound(p), 2);
  // t^2 - t + 1: two sign changes, no real roots
  RationalPoly q({Rational(1), Rational(-1), Rational(1)});
  EXPECT_EQ(descartes_bound(q), 2);
  EXPECT_EQ(sturm_count_positive(q), 0);
}

TEST(Descartes, ShiftedCountMatchesConvolution) {
  oracle::RandomRationalGames rnd(4);
  for (int trial = 0; trial < 40; ++trial) {
    RationalGame g = rnd.game(2 + trial % 4);
    RationalPoly P = equilibrium_poly_t(g, rnd.q());
    for (std::uint64_t n : {0u, 1u, 2u, 3u, 7u, 16u, 41u}) {
      EXPECT_EQ(shifted_sign_count(P, n), oracle::sign_changes_by_convolution(P, n)) << "n = " << n;
    }
  }
}

TEST(Descartes, SnLimitReachesRootCount) {
  // t^2 - t + 1 needs a few multiplications by (1 + t) to lose its sign changes
  RationalPoly q({Rational(1), Rational(-1), Rational(1)});
  SnLimit lim = sn_limit(q, 10000);
  EXPECT_TRUE(lim.converged);
  EXPECT_EQ(lim.value, 0);
  EXPECT_EQ(shifted_sign_count(q, lim.n_star), 0);
  EXPECT_GT(shifted_sign_count(q, lim.n_star - 1), 0);
  for (std::size_t i = 1; i < lim.trace.size(); ++i) EXPECT_LE(lim.trace[i].second, lim.trace[i - 1].second);
}

TEST(Descartes, SnLimitWithoutOracleUsesStability) {
  RationalPoly p({Rational(6), Rational(-7), Rational(0), Rational(1)});
  SnLimit lim = sn_limit(p, 10000, {.use_root_count = false, .exact_n_star = false});
  EXPECT_TRUE(lim.converged);
  EXPECT_EQ(lim.value, 2);
  EXPECT_EQ(lim.stop, SnStop::stable);
}

TEST(Descartes, SnLimitFlagsCap) {
  // roots close to the positive axis need a large n
  RationalPoly p({Rational(10001, 10000), Rational(-2), Rational(1)});  // (t-1)^2 + 1e-4
  SnLimit lim = sn_limit(p, 8);
  EXPECT_FALSE(lim.converged);
  EXPECT_EQ(lim.stop, SnStop::cap_reached);
}

TEST(Descartes, N0BoundKillsAllSignChanges) {
  const std::vector<RationalPoly> positive{
      RationalPoly({Rational(1), Rational(-1), Rational(1)}),
      RationalPoly({Rational(2), Rational(-3), Rational(2)}),
      RationalPoly({Rational(10001, 10000), Rational(-2), Rational(1)}),
      RationalPoly({Rational(5), Rational(-4), Rational(3), Rational(-2), Rational(1)}),
  };
  for (const auto& p : positive) {
    N0Bound b = n0_bound(p);
    EXPECT_GT(b.min_value, 0.0);
    EXPECT_EQ(shifted_sign_count(p, b.n0), 0) << p << " n0 = " << b.n0;
  }
  EXPECT_THROW(n0_bound(RationalPoly({Rational(-1), Rational(1)})), std::domain_error);
}
