#include "egteq/rational.hpp"

#include <gtest/gtest.h>

using namespace egteq;

TEST(Rational, ParsesFractionsIntegersAndDecimals) {
  EXPECT_EQ(parse_rational("3/4"), Rational(3, 4));
  EXPECT_EQ(parse_rational("-6/8"), Rational(-3, 4));
  EXPECT_EQ(parse_rational("17"), Rational(17));
  EXPECT_EQ(parse_rational("0.1"), Rational(1, 10));
  EXPECT_EQ(parse_rational("-0.05"), Rational(-1, 20));
  EXPECT_EQ(parse_rational("1.5e-3"), Rational(3, 2000));
  EXPECT_EQ(parse_rational(" 2E2 "), Rational(200));
  EXPECT_EQ(parse_rational("0.5/2"), Rational(1, 4));
}

TEST(Rational, RejectsGarbage) {
  for (const char* bad : {"", "abc", "1/0", "1.2.3", "3e", "--1", "1e5x"}) {
    EXPECT_THROW(parse_rational(bad), ParseError) << bad;
  }
}

TEST(Rational, DoubleEmbeddingIsExact) {
  EXPECT_EQ(exact_from_double(0.5), Rational(1, 2));
  EXPECT_EQ(exact_from_double(-0.75), Rational(-3, 4));
  const Rational r = exact_from_double(0.1);
  EXPECT_NE(r, Rational(1, 10));
  EXPECT_EQ(r.get_d(), 0.1);
  EXPECT_THROW(exact_from_double(std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST(Rational, BinomialConvention) {
  EXPECT_EQ(binomial(5, 2), 10);
  EXPECT_EQ(binomial(5, -1), 0);
  EXPECT_EQ(binomial(5, 6), 0);
  EXPECT_EQ(binomial(-1, 0), 0);
  EXPECT_EQ(binomial(0, 0), 1);
  EXPECT_DOUBLE_EQ(binomial_d(49, 24), 63205303218876.0);
}
