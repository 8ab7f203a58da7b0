#include <gtest/gtest.h>

#include "generators.hpp"
#include "nfold/errors.hpp"
#include "nfold/oracle.hpp"
#include "nfold/program.hpp"

using namespace nfold;

namespace {

// x1 + ... + xn = b over the bimatrix (1 ; ∅) with t = 1.
NFoldProgram sum_program(std::size_t n, Integer b, Bounds bounds) {
  NFoldProgram p;
  p.a = Bimatrix(IntMatrix::from_rows({{1}}), IntMatrix(0, 1));
  p.n = n;
  p.rhs = IntVector{std::move(b)};
  p.bounds = std::move(bounds);
  return p;
}

class Shifted : public UnivariateOracle {
 public:
  explicit Shifted(Integer center) : center_(std::move(center)) {}
  Integer probe(const Integer& y) const override { return (y - center_).abs(); }

 private:
  Integer center_;
};

}  // namespace

TEST(Bounds, Basics) {
  const Bounds b = Bounds::box(IntVector{0, -1}, IntVector{2, 1});
  EXPECT_TRUE(b.consistent());
  EXPECT_TRUE(b.contains(IntVector{2, -1}));
  EXPECT_FALSE(b.contains(IntVector{3, 0}));
  const Bounds neg = b.negated();
  EXPECT_TRUE(neg.contains(IntVector{-2, 1}));
  EXPECT_FALSE(neg.contains(IntVector{2, 0}));
  EXPECT_EQ(b.concat(Bounds::nonnegative(1)).size(), 3u);
  EXPECT_TRUE(Bounds::unbounded(2).contains(IntVector{-100, 100}));
  EXPECT_FALSE(Bounds::box(IntVector{1}, IntVector{0}).consistent());
}

TEST(NFoldProgram, ValidateShapes) {
  NFoldProgram p = sum_program(3, 2, Bounds::nonnegative(3));
  EXPECT_NO_THROW(p.validate());
  p.rhs = IntVector{1, 2};
  EXPECT_THROW(p.validate(), DimensionError);
  p = sum_program(3, 2, Bounds::nonnegative(2));
  EXPECT_THROW(p.validate(), DimensionError);
}

TEST(Solve, LinearOverSimplex) {
  const NFoldProgram p = sum_program(3, 4, Bounds::box(IntVector{0, 0, 0}, IntVector{2, 2, 2}));
  const auto r = solve(p, SeparableConvexObjective::linear(IntVector{3, 1, 2}));
  ASSERT_EQ(r.status, SolveStatus::Optimal);
  EXPECT_EQ(*r.solution, (IntVector{0, 2, 2}));
  EXPECT_EQ(*r.objective_value, 6);
}

TEST(Solve, Infeasible) {
  EXPECT_EQ(solve(sum_program(2, 5, Bounds::box(IntVector{0, 0}, IntVector{2, 2})), SeparableConvexObjective::zero(2))
                .status,
            SolveStatus::Infeasible);
  // 2x = 3 has no integer solution.
  NFoldProgram p;
  p.a = Bimatrix(IntMatrix(0, 1), IntMatrix::from_rows({{2}}));
  p.rhs = IntVector{3};
  p.bounds = Bounds::unbounded(1);
  EXPECT_EQ(solve(p, SeparableConvexObjective::zero(1)).status, SolveStatus::Infeasible);
}

TEST(Solve, Unbounded) {
  const auto r = solve(sum_program(2, 0, Bounds::unbounded(2)), SeparableConvexObjective::linear(IntVector{1, 2}));
  EXPECT_EQ(r.status, SolveStatus::Unbounded);
  // Bounded on one side only is still unbounded in the improving direction.
  Bounds half = Bounds::unbounded(2);
  half.upper[0] = Integer(5);
  EXPECT_EQ(solve(sum_program(2, 0, half), SeparableConvexObjective::linear(IntVector{-1, 0})).status,
            SolveStatus::Optimal);
}

TEST(Solve, QuadraticBalancesLoad) {
  std::vector<Term> terms(4, Term::abs_power(1, 2));
  const auto r = solve(sum_program(4, 10, Bounds::nonnegative(4)), SeparableConvexObjective(terms));
  ASSERT_EQ(r.status, SolveStatus::Optimal);
  EXPECT_EQ(*r.objective_value, 26);  // 3,3,2,2
}

TEST(Solve, OracleObjective) {
  std::vector<Term> terms{Term::oracle(std::make_shared<Shifted>(7)), Term::oracle(std::make_shared<Shifted>(-4))};
  const auto r = solve(sum_program(2, 0, Bounds::unbounded(2)), SeparableConvexObjective(terms));
  ASSERT_EQ(r.status, SolveStatus::Optimal);
  EXPECT_FALSE(r.objective_value.has_value());
  // |x - 7| + |-x + 4| is minimized on [4, 7].
  ASSERT_TRUE(r.solution);
  EXPECT_GE((*r.solution)[0], 4);
  EXPECT_LE((*r.solution)[0], 7);
}

TEST(Solve, AugmentationCapGivesBudgetStatus) {
  SolverOptions options;
  options.budget.max_augmentations = 0;
  const auto r = solve(sum_program(3, 4, Bounds::box(IntVector{0, 0, 0}, IntVector{4, 4, 4})),
                       SeparableConvexObjective::linear(IntVector{3, 1, 2}), options);
  // Either the start point is already optimal or the cap trips.
  EXPECT_TRUE(r.status == SolveStatus::BudgetExceeded || r.status == SolveStatus::Optimal);
  options.budget.max_elements = 0;
  EXPECT_EQ(solve(sum_program(3, 4, Bounds::nonnegative(3)), SeparableConvexObjective::zero(3), options).status,
            SolveStatus::BudgetExceeded);
}

TEST(AugmentStep, PicksSteepestAndBreaksTiesByOrder) {
  const GraverBasis basis(2, {IntVector{1, -1}}, 0);
  const Bounds bounds = Bounds::box(IntVector{0, 0}, IntVector{5, 5});
  auto step = augment_step(basis, IntVector{5, 0}, SeparableConvexObjective::linear(IntVector{1, 0}), bounds);
  ASSERT_EQ(step.outcome, Augmentation::Outcome::Improved);
  EXPECT_EQ(step.direction, (IntVector{-1, 1}));
  EXPECT_EQ(step.step, 5);
  EXPECT_EQ(step.change, -5);
  EXPECT_EQ(step.point, (IntVector{0, 5}));
  // Zero objective: nothing improves.
  EXPECT_EQ(augment_step(basis, IntVector{2, 3}, SeparableConvexObjective::zero(2), bounds).outcome,
            Augmentation::Outcome::None);
}

TEST(AugmentStep, ReportsUnboundedDirection) {
  const GraverBasis basis(2, {IntVector{1, -1}}, 0);
  const auto step = augment_step(basis, IntVector{0, 0}, SeparableConvexObjective::linear(IntVector{0, 1}),
                                 Bounds::unbounded(2));
  ASSERT_EQ(step.outcome, Augmentation::Outcome::Unbounded);
  EXPECT_EQ(step.direction, (IntVector{1, -1}));
}

TEST(FindFeasible, RespectsBounds) {
  const NFoldProgram p = sum_program(3, 7, Bounds::box(IntVector{1, 1, 1}, IntVector{3, 3, 3}));
  const auto x = find_feasible(p);
  ASSERT_TRUE(x);
  EXPECT_TRUE(p.is_feasible(*x));
  EXPECT_FALSE(find_feasible(sum_program(3, 10, Bounds::box(IntVector{1, 1, 1}, IntVector{3, 3, 3}))));
}

TEST(Minimize, FromGivenStart) {
  const NFoldProgram p = sum_program(2, 4, Bounds::nonnegative(2));
  const auto r = minimize(p, SeparableConvexObjective::linear(IntVector{2, 1}), IntVector{4, 0});
  ASSERT_EQ(r.status, SolveStatus::Optimal);
  EXPECT_EQ(*r.solution, (IntVector{0, 4}));
  EXPECT_EQ(r.augmentation_steps, 1u);
  EXPECT_THROW(minimize(p, SeparableConvexObjective::zero(2), IntVector{1, 1}), std::invalid_argument);
}

TEST(SolveGeneralized, LoadCostAndBounds) {
  // Two blocks of one variable each with x1 + x2 = 4 and per-block loads
  // y_i = x_i bounded by 3. Cost x1^2 + x2.
  GeneralizedNFoldProgram p;
  p.a = Bimatrix(IntMatrix::from_rows({{1}}), IntMatrix(0, 1));
  p.w = Bimatrix(IntMatrix(0, 1), IntMatrix::from_rows({{1}}));
  p.n = 2;
  p.rhs = IntVector{4};
  p.bounds = Bounds::nonnegative(2);
  p.w_bounds = Bounds::box(IntVector{0, 0}, IntVector{3, 3});
  p.f = SeparableConvexObjective({Term::abs_power(1, 2), Term::linear(1)});
  p.g = SeparableConvexObjective::zero(2);
  const auto r = solve_generalized(p);
  ASSERT_EQ(r.status, SolveStatus::Optimal);
  EXPECT_EQ(*r.solution, (IntVector{1, 3}));
  EXPECT_EQ(*r.objective_value, 4);
  EXPECT_EQ(p.objective_value(*r.solution), 4);
  ASSERT_TRUE(r.lifted_solution);
  EXPECT_EQ(r.lifted_solution->slice(2, 2), (IntVector{-1, -3}));

  SolverOptions block;
  block.route = ExtendedGraverRoute::BlockLifting;
  EXPECT_EQ(solve_generalized(p, block).objective_value, r.objective_value);

  p.w_bounds = Bounds::box(IntVector{0, 0}, IntVector{1, 1});
  EXPECT_EQ(solve_generalized(p).status, SolveStatus::Infeasible);
}

// Random small programs against the exhaustive oracle.
TEST(SolveProperties, MatchesOracleOnRandomPrograms) {
  gen::Rng rng(99);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t t = 1 + rng.index(3), n = 1 + rng.index(3);
    const std::size_t r = rng.index(2), s = rng.index(2);
    if (n * t > 6) continue;
    NFoldProgram p;
    p.a = Bimatrix(gen::to_matrix(gen::random_mat(rng, r, t, -2, 2), t),
                   gen::to_matrix(gen::random_mat(rng, s, t, -2, 2), t));
    p.n = n;
    const std::size_t nt = n * t;
    IntVector lo(nt), hi(nt), x(nt);
    for (std::size_t i = 0; i < nt; ++i) {
      lo[i] = rng.uniform(-2, 0);
      hi[i] = rng.uniform(0, 2);
      x[i] = rng.uniform(lo[i].to_int64(), hi[i].to_int64());
    }
    p.bounds = Bounds::box(lo, hi);
    p.rhs = p.matrix() * x;
    std::vector<Term> terms;
    for (std::size_t i = 0; i < nt; ++i) terms.push_back(gen::random_cost(rng));
    const SeparableConvexObjective f(terms);
    const auto got = solve(p, f);
    const auto want = brute_force_solve(p, f, 2);
    ASSERT_EQ(got.status, want.status);
    ASSERT_EQ(got.status, SolveStatus::Optimal);
    EXPECT_EQ(*got.objective_value, *want.objective_value);
    EXPECT_TRUE(p.is_feasible(*got.solution));
    ++checked;
  }
  EXPECT_GT(checked, 20);
}

TEST(SolveProperties, ObjectiveNeverIncreases) {
  gen::Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t nt = 4;
    const IntMatrix a = gen::to_matrix(gen::random_mat(rng, 1, nt, -2, 2), nt);
    const GraverBasis basis = graver_basis(a);
    IntVector x(nt);
    for (auto& v : x) v = rng.uniform(-3, 3);
    const Bounds bounds = Bounds::box(IntVector{-3, -3, -3, -3}, IntVector{3, 3, 3, 3});
    std::vector<Term> terms;
    for (std::size_t i = 0; i < nt; ++i) terms.push_back(gen::random_cost(rng));
    const SeparableConvexObjective f(terms);
    Integer value = f.evaluate(x);
    for (int steps = 0; steps < 50; ++steps) {
      const auto s = augment_step(basis, x, f, bounds);
      if (s.outcome != Augmentation::Outcome::Improved) break;
      EXPECT_TRUE(bounds.contains(s.point));
      EXPECT_TRUE((a * (s.point - x)).is_zero());
      const Integer next = f.evaluate(s.point);
      EXPECT_LT(next, value);
      EXPECT_EQ(next - value, s.change);
      x = s.point;
      value = next;
    }
  }
}
