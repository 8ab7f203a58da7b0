#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "nfold/budget.hpp"
#include "nfold/flows.hpp"
#include "nfold/program.hpp"

namespace nfold {

/// lower <= matrix * x <= upper row by row; a missing side is unbounded.
struct RowConstraints {
  IntMatrix matrix;
  std::vector<std::optional<Integer>> lower;
  std::vector<std::optional<Integer>> upper;

  static RowConstraints equalities(IntMatrix matrix, const IntVector& rhs);
  /// Appends the rows of `other`.
  RowConstraints stack(const RowConstraints& other) const;
};

/// Calls `visit` for every integer point of the box [lo, hi] satisfying the
/// rows, in lexicographic order. Partial assignments are pruned by row-wise
/// interval arithmetic. Throws BudgetExceeded once the search exceeds
/// budget.max_enumeration_nodes nodes or the time cap.
void enumerate_box(const RowConstraints& rows, const IntVector& lo, const IntVector& hi,
                   const std::function<void(const IntVector&)>& visit, const Budget& budget = {});

struct OracleResult {
  SolveStatus status = SolveStatus::Infeasible;
  /// Lexicographically smallest minimizer.
  std::optional<IntVector> witness;
  std::optional<Integer> objective_value;
};

/// Exhaustive minimization over the box. Throws OracleEvaluationError for
/// objectives with oracle terms.
OracleResult brute_force_minimize(const RowConstraints& rows, const IntVector& lo, const IntVector& hi,
                                  const std::function<Integer(const IntVector&)>& objective,
                                  const Budget& budget = {});

/// Searches the program's bounds intersected with |x_i| <= box_limit.
OracleResult brute_force_solve(const NFoldProgram& program, const SeparableConvexObjective& objective,
                               const Integer& box_limit, const Budget& budget = {});
OracleResult brute_force_solve(const GeneralizedNFoldProgram& program, const Integer& box_limit,
                               const Budget& budget = {});

struct TransshipmentOracleResult {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<std::vector<IntVector>> flows;  // [k][e]
  std::optional<Integer> total_cost;
};

struct TransportationOracleResult {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<std::vector<std::vector<IntVector>>> flows;  // [j][i][k]
  std::optional<Integer> total_cost;
};

/// Searches 0 <= x^k_e <= u_e directly on the flow formulation: feasible flows
/// of each commodity are listed separately and then combined under the
/// shared capacities.
TransshipmentOracleResult brute_force_solve(const TransshipmentInstance& instance, const Budget& budget = {});

/// Searches 0 <= x[j][i][k] <= min(supplies[i][k], consumptions[j][k]).
TransportationOracleResult brute_force_solve(const TransportationInstance& instance, const Budget& budget = {});

}  // namespace nfold
