#include <gtest/gtest.h>

#include <climits>

#include "nfold/integer.hpp"

using nfold::Integer;

TEST(Integer, SmallArithmetic) {
  Integer a = 7, b = -3;
  EXPECT_EQ(a + b, 4);
  EXPECT_EQ(a - b, 10);
  EXPECT_EQ(a * b, -21);
  EXPECT_EQ(-a, -7);
  EXPECT_TRUE(a.is_small());
}

TEST(Integer, OverflowPromotesAndDemotes) {
  Integer big = INT64_MAX;
  big += 1;
  EXPECT_FALSE(big.fits_int64());
  EXPECT_EQ(big.to_string(), "9223372036854775808");
  big -= 1;
  EXPECT_TRUE(big.is_small());
  EXPECT_EQ(big, Integer(INT64_MAX));

  Integer m = INT64_MIN;
  EXPECT_EQ((-m).to_string(), "9223372036854775808");
  EXPECT_EQ((m * Integer(-1)).to_string(), "9223372036854775808");
}

TEST(Integer, LargeProductsAreExact) {
  Integer x = Integer::from_string("123456789012345678901234567890");
  Integer y = x * x;
  EXPECT_EQ(y.to_string(), "15241578753238836750495351562536198787501905199875019052100");
  EXPECT_EQ(y - x * x, 0);
  EXPECT_THROW(y.to_int64(), std::overflow_error);
}

TEST(Integer, ParsingRejectsGarbage) {
  EXPECT_EQ(Integer::from_string("-42"), -42);
  EXPECT_EQ(Integer::from_string("+5"), 5);
  EXPECT_THROW(Integer::from_string(""), std::invalid_argument);
  EXPECT_THROW(Integer::from_string("-"), std::invalid_argument);
  EXPECT_THROW(Integer::from_string("1e3"), std::invalid_argument);
  EXPECT_THROW(Integer::from_string(" 1"), std::invalid_argument);
}

TEST(Integer, DivisionConventions) {
  EXPECT_EQ(nfold::floor_div(-7, 2), -4);
  EXPECT_EQ(nfold::ceil_div(-7, 2), -3);
  EXPECT_EQ(nfold::trunc_div(-7, 2), -3);
  EXPECT_EQ(nfold::trunc_mod(-7, 2), -1);
  EXPECT_EQ(nfold::floor_div(7, -2), -4);
  EXPECT_EQ(nfold::floor_div(Integer(INT64_MIN), -1).to_string(), "9223372036854775808");
  EXPECT_THROW(nfold::floor_div(1, 0), std::domain_error);
  EXPECT_EQ(nfold::gcd(12, -18), 6);
}

TEST(Integer, OrderingAcrossRepresentations) {
  const Integer huge = Integer::from_string("100000000000000000000");
  EXPECT_LT(Integer(5), huge);
  EXPECT_LT(-huge, Integer(INT64_MIN));
  EXPECT_EQ(compare_abs(-huge, huge), 0);
  EXPECT_GT(compare_abs(Integer(INT64_MIN), Integer(INT64_MAX)), 0);
  EXPECT_EQ(huge.sign(), 1);
  EXPECT_EQ((-huge).abs(), huge);
}

TEST(Integer, PowAndHash) {
  EXPECT_EQ(Integer(-3).pow(3), -27);
  EXPECT_EQ(Integer(2).pow(100).to_string(), "1267650600228229401496703205376");
  EXPECT_EQ(Integer(17).hash(), Integer::from_string("17").hash());
}
