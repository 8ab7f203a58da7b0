#include <gtest/gtest.h>

#include "generators.hpp"
#include "nfold/errors.hpp"
#include "nfold/objective.hpp"

using namespace nfold;

namespace {

class Quadratic : public UnivariateOracle {
 public:
  Integer probe(const Integer& y) const override { return (y - 3) * (y - 3); }
};

}  // namespace

TEST(Term, Values) {
  EXPECT_EQ(Term::linear(-2)(5), -10);
  EXPECT_EQ(Term::abs_power(3, 2)(-4), 48);
  EXPECT_EQ(Term::abs_power(0, 5)(100), 0);
  EXPECT_EQ(Term::zero()(7), 0);
  const Term pl = Term::piecewise_linear(1, {-1, 2}, {-2, 0, 3});
  EXPECT_EQ(pl(0), 1);
  EXPECT_EQ(pl(2), 1);
  EXPECT_EQ(pl(4), 7);
  EXPECT_EQ(pl(-1), 1);
  EXPECT_EQ(pl(-3), 5);
}

TEST(Term, Compose) {
  const Term t = Term::abs_power(1, 2).compose(-1, 2);  // (2 - z)^2
  EXPECT_EQ(t(0), 4);
  EXPECT_EQ(t(2), 0);
  EXPECT_EQ(t(5), 9);
  const Term twice = t.compose(-1, 1);  // (2 - (1 - z))^2 = (1 + z)^2
  EXPECT_EQ(twice(0), 1);
  EXPECT_EQ(twice(-1), 0);
  EXPECT_THROW(t.compose(2, 0), std::invalid_argument);
}

TEST(Term, DistanceToInterval) {
  const Term d = Term::distance_to_interval(Integer(-1), Integer(2));
  EXPECT_EQ(d(-4), 3);
  EXPECT_EQ(d(0), 0);
  EXPECT_EQ(d(2), 0);
  EXPECT_EQ(d(6), 4);
  EXPECT_EQ(Term::distance_to_interval(Integer(3), Integer(3))(0), 3);
  EXPECT_EQ(Term::distance_to_interval(std::nullopt, Integer(-2))(1), 3);
  EXPECT_EQ(Term::distance_to_interval(Integer(5), std::nullopt)(1), 4);
  EXPECT_EQ(Term::distance_to_interval(std::nullopt, std::nullopt)(100), 0);
  EXPECT_THROW(Term::distance_to_interval(Integer(1), Integer(0)), std::invalid_argument);
}

TEST(Term, ValidationRejectsNonConvex) {
  EXPECT_THROW(Term::abs_power(-1, 2), std::invalid_argument);
  EXPECT_THROW(Term::abs_power(1, 0), std::invalid_argument);
  EXPECT_THROW(Term::piecewise_linear(0, {0}, {1, 0}), std::invalid_argument);
  EXPECT_THROW(Term::piecewise_linear(0, {1, 1}, {0, 1, 2}), std::invalid_argument);
  EXPECT_THROW(Term::piecewise_linear(0, {1}, {0}), std::invalid_argument);
  EXPECT_THROW(Term::oracle(nullptr), std::invalid_argument);
}

TEST(Objective, EvaluateAndChange) {
  const SeparableConvexObjective f({Term::linear(2), Term::abs_power(1, 2), Term::zero()});
  const IntVector x{1, -2, 9};
  EXPECT_EQ(f.evaluate(x), 6);
  const IntVector g{1, 1, 0};
  for (int step = 0; step <= 4; ++step) {
    EXPECT_EQ(f.change(x, g, step), f.evaluate(x + Integer(step) * g) - f.evaluate(x));
  }
  EXPECT_THROW(f.evaluate(IntVector(2)), DimensionError);
}

TEST(Objective, AsymptoticSlope) {
  const SeparableConvexObjective f({Term::linear(-2), Term::piecewise_linear(0, {0}, {-1, 1})});
  auto s = f.asymptotic_slope(IntVector{1, 0});
  ASSERT_TRUE(s);
  EXPECT_FALSE(s->infinite);
  EXPECT_EQ(s->value, -2);
  s = f.asymptotic_slope(IntVector{1, -3});  // -2 + 3 * 1
  EXPECT_EQ(s->value, 1);
  s = f.asymptotic_slope(IntVector{-1, 0});
  EXPECT_EQ(s->value, 2);
  const SeparableConvexObjective q({Term::abs_power(1, 2), Term::linear(-5)});
  EXPECT_TRUE(q.asymptotic_slope(IntVector{1, 1})->infinite);
  EXPECT_EQ(q.asymptotic_slope(IntVector{0, 1})->value, -5);
}

TEST(Objective, OracleTermsOnlyCompare) {
  const SeparableConvexObjective f({Term::oracle(std::make_shared<Quadratic>()), Term::linear(1)});
  EXPECT_TRUE(f.has_oracle());
  EXPECT_THROW(f.evaluate(IntVector{0, 0}), OracleEvaluationError);
  EXPECT_EQ(f.change(IntVector{0, 0}, IntVector{1, 0}, 3), -9);
  EXPECT_FALSE(f.asymptotic_slope(IntVector{1, 0}).has_value());
  EXPECT_EQ(f.asymptotic_slope(IntVector{0, 1})->value, 1);
}

TEST(Objective, Constructors) {
  EXPECT_EQ(SeparableConvexObjective::zero(3).evaluate(IntVector{4, 5, 6}), 0);
  EXPECT_EQ(SeparableConvexObjective::linear(IntVector{1, -1}).evaluate(IntVector{4, 5}), -1);
  const auto joined = SeparableConvexObjective::linear(IntVector{1}).append(SeparableConvexObjective::zero(2));
  EXPECT_EQ(joined.dimension(), 3u);
}

TEST(ObjectiveProperties, TermsAreConvex) {
  gen::Rng rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    Term t;
    switch (rng.index(3)) {
      case 0: t = gen::random_cost(rng); break;
      case 1: t = Term::abs_power(rng.uniform(0, 3), static_cast<unsigned>(rng.uniform(1, 4))); break;
      default: {
        const std::size_t k = rng.index(3);
        std::vector<Integer> bps, slopes;
        std::int64_t b = rng.uniform(-5, 0), s = rng.uniform(-4, 0);
        slopes.push_back(s);
        for (std::size_t i = 0; i < k; ++i) {
          b += rng.uniform(1, 3);
          s += rng.uniform(0, 3);
          bps.push_back(b);
          slopes.push_back(s);
        }
        t = Term::piecewise_linear(rng.uniform(-3, 3), bps, slopes);
      }
    }
    if (rng.coin()) t = t.compose(rng.coin() ? 1 : -1, rng.uniform(-3, 3));
    for (std::int64_t z = -10; z <= 10; ++z) {
      EXPECT_GE(t(z - 1) + t(z + 1) - Integer(2) * t(z), 0);
    }
  }
}
