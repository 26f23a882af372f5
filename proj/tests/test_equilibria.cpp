#include "egteq/equilibria.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace egteq;

TEST(Equilibria, QuadraticRootLocation) {
  const Rational a(1), b(-3), c(2);
  EXPECT_EQ(quadratic_root_location(a, b, c, Rational(0), Rational(3, 2)), QuadraticRootLocation::one_inside);
  EXPECT_EQ(quadratic_root_location(a, b, c, Rational(0), Rational(0)), QuadraticRootLocation::both_greater);
  EXPECT_EQ(quadratic_root_location(a, b, c, Rational(3), Rational(3)), QuadraticRootLocation::both_less);
  EXPECT_EQ(quadratic_root_location(a, b, c, Rational(0), Rational(3)), QuadraticRootLocation::both_inside);
  EXPECT_EQ(quadratic_root_location(Rational(1), Rational(0), Rational(1), Rational(0), Rational(1)),
            QuadraticRootLocation::none_real);
  EXPECT_THROW(quadratic_root_location(Rational(0), b, c, Rational(0), Rational(1)), std::invalid_argument);
}

TEST(Equilibria, CubicSequences) {
  EXPECT_EQ(cubic_positive_roots(Rational(1), Rational(-6), Rational(11), Rational(-6)), 3);
  EXPECT_EQ(cubic_positive_roots(Rational(1), Rational(1), Rational(1), Rational(1)), 0);
  EXPECT_EQ(cubic_positive_roots(Rational(1), Rational(0), Rational(-1), Rational(0)), 1);
  EXPECT_THROW(cubic_positive_roots(Rational(0), Rational(1), Rational(1), Rational(1)), std::invalid_argument);
}

TEST(Equilibria, CubicSequencesAgreeWithSturm) {
  oracle::RandomRationalGames rnd(31);
  for (int trial = 0; trial < 300; ++trial) {
    Rational a = rnd.value(), b = rnd.value(), c = rnd.value(), d = rnd.value();
    if (a == 0) continue;
    EXPECT_EQ(cubic_positive_roots(a, b, c, d), sturm_count_positive(RationalPoly({d, c, b, a})));
  }
}

TEST(Equilibria, StabilityLabelsFollowSlope) {
  const RationalPoly g =
      RationalPoly::linear_factor(Rational(0)) * RationalPoly::linear_factor(Rational(1, 2)) * RationalPoly::linear_factor(Rational(1));
  std::vector<LocatedRoot> roots{{{Rational(0), Rational(0)}, 1}, {{Rational(1, 2), Rational(1, 2)}, 1}, {{Rational(1), Rational(1)}, 1}};
  auto labels = stability_labels(g, roots);
  EXPECT_EQ(labels, (std::vector<Stability>{Stability::unstable, Stability::stable, Stability::unstable}));
  labels = stability_labels(-g, roots);
  EXPECT_EQ(labels, (std::vector<Stability>{Stability::stable, Stability::unstable, Stability::stable}));
  const RationalPoly dbl = RationalPoly::linear_factor(Rational(1, 3)) * RationalPoly::linear_factor(Rational(1, 3));
  EXPECT_EQ(stability_labels(dbl, {{{Rational(1, 3), Rational(1, 3)}, 2}}), std::vector<Stability>{Stability::undetermined});
}

TEST(Equilibria, WorkedThreePlayerGame) {
  RationalGame g(3, {Rational(0), Rational(1), Rational(2)}, {Rational(2), Rational(1), Rational(0)});
  const auto rep = count_equilibria(g, MutationRate(Rational(1, 10)), {.locate = true, .trace_sn = true});
  ASSERT_TRUE(rep.sn.has_value());
  EXPECT_TRUE(rep.sn->converged);
  EXPECT_EQ(rep.sn->value, rep.interior_count_multiplicity);
  EXPECT_EQ(rep.count, oracle::grid_roots_unit_interval(rm_vector_field(g, Rational(1, 10)), 1000000));
  EXPECT_EQ(static_cast<int>(rep.equilibria.size()), rep.count);
  for (std::size_t i = 1; i < rep.equilibria.size(); ++i) {
    EXPECT_LT(rep.equilibria[i - 1].location.hi, rep.equilibria[i].location.lo);
    EXPECT_NE(rep.equilibria[i - 1].stability, rep.equilibria[i].stability);
  }
}

TEST(Equilibria, HalfMutationAlwaysHasCentre) {
  oracle::RandomRationalGames rnd(41);
  for (int trial = 0; trial < 30; ++trial) {
    const auto rep = count_equilibria(rnd.game(2 + trial % 4), MutationRate(Rational(1, 2)));
    bool found = false;
    for (const auto& e : rep.equilibria) found = found || (e.location.exact() && e.location.lo == Rational(1, 2));
    EXPECT_TRUE(found);
  }
}

TEST(Equilibria, ReplicatorBoundaryEquilibria) {
  oracle::RandomRationalGames rnd(42);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 2 + trial % 4;
    RationalGame g = rnd.game(d);
    const auto rep = count_equilibria(g, MutationRate(Rational(0)));
    ASSERT_GE(rep.equilibria.size(), 2u);
    EXPECT_TRUE(rep.equilibria.front().boundary);
    EXPECT_EQ(rep.equilibria.front().location.lo, 0);
    EXPECT_EQ(rep.equilibria.back().location.lo, 1);
    std::vector<Rational> beta;
    for (int k = 0; k < d; ++k) beta.push_back(g.beta(k) * Rational(binomial(d - 1, k)));
    EXPECT_EQ(rep.interior_count, sturm_count_positive(RationalPoly(beta)));
  }
}

TEST(Equilibria, DegenerateGameRejected) {
  RationalGame zero(3, {Rational(0), Rational(0), Rational(0)}, {Rational(0), Rational(0), Rational(0)});
  EXPECT_THROW(count_equilibria(zero, MutationRate(Rational(1, 4))), DegenerateGame);
}

TEST(Equilibria, DoubleInteriorRoot) {
  // beta_k C(2, k) = (1, -2, 1): the gain function is (1 - x)^2 (t - 1)^2
  RationalGame g(3, {Rational(1), Rational(-1), Rational(1)}, {Rational(0), Rational(0), Rational(0)});
  const auto rep = count_equilibria(g, MutationRate(Rational(0)));
  EXPECT_EQ(rep.interior_count, 1);
  EXPECT_EQ(rep.interior_count_multiplicity, 2);
  ASSERT_EQ(rep.equilibria.size(), 3u);
  EXPECT_EQ(rep.equilibria[1].multiplicity, 2);
  EXPECT_EQ(rep.equilibria[1].stability, Stability::undetermined);
}
