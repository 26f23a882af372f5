#include "egteq/sturm.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace egteq;

namespace {

RationalPoly from_roots(std::initializer_list<Rational> roots) {
  RationalPoly p = RationalPoly::constant(Rational(1));
  for (const auto& r : roots) p = p * RationalPoly::linear_factor(r);
  return p;
}

}  // namespace

TEST(Sturm, CountsPositiveRoots) {
  EXPECT_EQ(sturm_count_positive(from_roots({Rational(1), Rational(2), Rational(-3)})), 2);
  EXPECT_EQ(sturm_count_positive(from_roots({Rational(-1), Rational(-2)})), 0);
  // t^2 + 1 has no real roots
  EXPECT_EQ(sturm_count_positive(RationalPoly({Rational(1), Rational(0), Rational(1)})), 0);
}

TEST(Sturm, RootAtOriginIsNotPositive) {
  EXPECT_EQ(sturm_count_positive(from_roots({Rational(0), Rational(5)})), 1);
}

TEST(Sturm, MultipleRootsCountedOnceOrWithMultiplicity) {
  RationalPoly p = from_roots({Rational(1, 3), Rational(1, 3), Rational(1, 3), Rational(2), Rational(-1)});
  EXPECT_EQ(sturm_count_positive(p), 2);
  EXPECT_EQ(sturm_count_positive_with_multiplicity(p), 4);
}

TEST(Sturm, YunFactorsHaveTheRightMultiplicities) {
  RationalPoly p = from_roots({Rational(1), Rational(2), Rational(2), Rational(3), Rational(3), Rational(3)}) * Rational(-4);
  auto f = square_free_decomposition(p);
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f[0].multiplicity, 1);
  EXPECT_EQ(f[0].factor, RationalPoly::linear_factor(Rational(1)));
  EXPECT_EQ(f[1].factor, RationalPoly::linear_factor(Rational(2)));
  EXPECT_EQ(f[2].factor, RationalPoly::linear_factor(Rational(3)));
  EXPECT_EQ(f[2].multiplicity, 3);
}

TEST(Sturm, IntervalCountExcludesEndpoints) {
  RationalPoly p = from_roots({Rational(0), Rational(1, 2), Rational(1), Rational(3, 4)});
  EXPECT_EQ(sturm_count_interval(p, Rational(0), Rational(1)), 2);
  EXPECT_EQ(sturm_count_interval(p, Rational(1, 2), Rational(1)), 1);
}

TEST(Sturm, IsolationBracketsEveryRoot) {
  RationalPoly p = from_roots({Rational(1, 10), Rational(1, 9), Rational(1, 2), Rational(7, 8)});
  auto br = isolate_roots(p, Rational(0), Rational(1), default_root_width());
  ASSERT_EQ(br.size(), 4u);
  const Rational expected[] = {Rational(1, 10), Rational(1, 9), Rational(1, 2), Rational(7, 8)};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_LE(br[i].lo, expected[i]);
    EXPECT_GE(br[i].hi, expected[i]);
    EXPECT_LE(br[i].hi - br[i].lo, default_root_width());
    EXPECT_TRUE(br[i].exact());
  }
}

TEST(Sturm, SimplestRationalBetween) {
  EXPECT_EQ(simplest_rational_between(Rational(3, 10), Rational(2, 5)), Rational(1, 3));
  EXPECT_EQ(simplest_rational_between(Rational(-7, 4), Rational(-3, 2)), Rational(-3, 2));
  EXPECT_EQ(simplest_rational_between(Rational(-1, 3), Rational(1, 5)), Rational(0));
  EXPECT_EQ(simplest_rational_between(Rational(21, 10), Rational(29, 10)), Rational(5, 2));
  EXPECT_EQ(simplest_rational_between(Rational(7, 8), Rational(7, 8)), Rational(7, 8));
}

TEST(Sturm, IrrationalRootRefinedToWidth) {
  RationalPoly p({Rational(-2), Rational(0), Rational(1)});  // t^2 - 2
  auto br = isolate_roots(p, Rational(0), Rational(2), Rational(1, 1000000000));
  ASSERT_EQ(br.size(), 1u);
  EXPECT_NEAR(br[0].approx(), std::sqrt(2.0), 1e-9);
  EXPECT_LT(sign(p(br[0].lo)), 0);
  EXPECT_GT(sign(p(br[0].hi)), 0);
}

TEST(Sturm, AgreesWithGridOracleOnRandomPolynomials) {
  std::mt19937_64 gen(21);
  std::uniform_int_distribution<long> num(-1000, 1000);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Rational> c;
    for (int k = 0; k <= 6; ++k) c.emplace_back(num(gen), 1 + trial % 5);
    for (auto& v : c) v.canonicalize();
    RationalPoly p(c);
    if (p.degree() < 1) continue;
    EXPECT_EQ(sturm_count_interval(p, Rational(0), Rational(1)), oracle::grid_roots_unit_interval(p, 100000))
        << p;
  }
}
