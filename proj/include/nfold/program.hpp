#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "nfold/budget.hpp"
#include "nfold/graver.hpp"
#include "nfold/lattice.hpp"
#include "nfold/objective.hpp"

namespace nfold {

/// Coordinatewise bounds over Z ∪ {±∞}. A missing lower bound is -∞ and a
/// missing upper bound is +∞.
struct Bounds {
  std::vector<std::optional<Integer>> lower;
  std::vector<std::optional<Integer>> upper;

  static Bounds unbounded(std::size_t n);
  static Bounds nonnegative(std::size_t n);
  /// lower <= x <= upper entrywise.
  static Bounds box(const IntVector& lower, const IntVector& upper);

  std::size_t size() const noexcept { return lower.size(); }
  /// Same length and lower <= upper wherever both are finite.
  bool consistent() const;
  bool contains(const IntVector& x) const;
  Bounds concat(const Bounds& other) const;
  /// Bounds on -x.
  Bounds negated() const;

  friend bool operator==(const Bounds&, const Bounds&) = default;
};

/// A^(n) x = b, lower <= x <= upper.
struct NFoldProgram {
  Bimatrix a;
  std::size_t n = 1;
  IntVector rhs;
  Bounds bounds;

  IntMatrix matrix() const { return nfold_product(a, n); }
  std::size_t variable_count() const { return n * a.t(); }
  /// Throws DimensionError on shape mismatches.
  void validate() const;
  bool is_feasible(const IntVector& x) const;

  friend bool operator==(const NFoldProgram&, const NFoldProgram&) = default;
};

/// min f(W^(n) x) + g(x) subject to A^(n) x = b, lower <= x <= upper and
/// w_lower <= W^(n) x <= w_upper.
struct GeneralizedNFoldProgram {
  Bimatrix a;
  Bimatrix w;
  std::size_t n = 1;
  IntVector rhs;
  Bounds bounds;
  Bounds w_bounds;
  SeparableConvexObjective f;
  SeparableConvexObjective g;

  std::size_t variable_count() const { return n * a.t(); }
  std::size_t load_count() const { return w.r() + n * w.s(); }
  IntMatrix load_matrix() const { return nfold_product(w, n); }
  void validate() const;
  bool is_feasible(const IntVector& x) const;
  /// f(W^(n) x) + g(x). Throws OracleEvaluationError for oracle terms.
  Integer objective_value(const IntVector& x) const;

  friend bool operator==(const GeneralizedNFoldProgram&, const GeneralizedNFoldProgram&) = default;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded, BudgetExceeded };

std::string_view to_string(SolveStatus status);

struct SolveReport {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<IntVector> solution;
  /// Absent unless Optimal and the objective has no oracle terms.
  std::optional<Integer> objective_value;
  std::size_t augmentation_steps = 0;
  std::size_t graver_size = 0;
  /// For generalized programs: the lifted point (x, y) with y = -W^(n) x.
  std::optional<IntVector> lifted_solution;
};

struct SolverOptions {
  Budget budget;
  GraverCache* cache = nullptr;
  /// Graver source for generalized programs.
  ExtendedGraverRoute route = ExtendedGraverRoute::Assembled;
};

/// Outcome of one greedy augmentation step.
struct Augmentation {
  enum class Outcome { Improved, None, Unbounded };
  Outcome outcome = Outcome::None;
  IntVector point;      // Improved: x + step * direction
  IntVector direction;  // Improved or Unbounded
  Integer step;
  Integer change;  // objective change, negative when Improved
};

/// Best (g, α) over ±G with the optimal step for each direction. Directions
/// are scanned in canonical order, each element before its negation; ties keep
/// the first direction found. Throws BudgetExceeded when a probe along an
/// unblocked direction of an oracle objective does not settle.
Augmentation augment_step(const GraverBasis& basis, const IntVector& x, const SeparableConvexObjective& objective,
                          const Bounds& bounds);

/// Augments from `start` until no improving direction is left. `basis` must be
/// a Graver basis of the constraint matrix.
SolveReport minimize_with_basis(const GraverBasis& basis, const SeparableConvexObjective& objective,
                                const Bounds& bounds, IntVector start, const Budget& budget = {});

/// Augments a feasible start point of `program` to optimality.
SolveReport minimize(const NFoldProgram& program, const SeparableConvexObjective& objective, IntVector start,
                     const SolverOptions& options = {});

/// Some x with A x = b inside the bounds, found by augmenting an integer
/// solution of A x = b towards the bounds. nullopt when infeasible.
std::optional<IntVector> find_feasible_with_basis(const IntMatrix& a, const IntVector& rhs, const Bounds& bounds,
                                                  const GraverBasis& basis, const Budget& budget = {});

/// Throws BudgetExceeded.
std::optional<IntVector> find_feasible(const NFoldProgram& program, const SolverOptions& options = {});

SolveReport solve(const NFoldProgram& program, const SeparableConvexObjective& objective,
                  const SolverOptions& options = {});

SolveReport solve_generalized(const GeneralizedNFoldProgram& program, const SolverOptions& options = {});

}  // namespace nfold
