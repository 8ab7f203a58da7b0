#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "nfold/lattice.hpp"
#include "nfold/objective.hpp"
#include "nfold/program.hpp"

namespace nfold {

/// Multicommodity transshipment. Commodity k must satisfy
/// (incidence * x^k)_v = demands[k][v] at every vertex, so a positive demand
/// is net inflow. The combined load sum_k x^k_e may not exceed capacities[e].
/// Cost: sum_e edge_costs[e](load_e) + sum_k commodity_costs[k][e](x^k_e).
struct TransshipmentInstance {
  Digraph graph;
  std::size_t commodities = 0;
  std::vector<IntVector> demands;
  IntVector capacities;
  std::vector<Term> edge_costs;
  std::vector<std::vector<Term>> commodity_costs;

  /// Throws InvalidInstance on shape errors, negative capacities or
  /// non-convex terms. Imbalanced demands are valid input (and infeasible).
  void validate() const;
  /// Every commodity's demands sum to zero.
  bool balanced() const;

  friend bool operator==(const TransshipmentInstance&, const TransshipmentInstance&) = default;
};

struct FlowSolution {
  std::vector<IntVector> flows;  // [k][e]
  IntVector loads;               // [e]
  /// Absent when a cost term is an oracle.
  std::optional<Integer> total_cost;
};

/// Multicommodity transportation from m suppliers to n consumers. With
/// x[j][i][k] the amount of commodity k sent from supplier i to consumer j:
/// sum_j x[j][i][k] = supplies[i][k], sum_i x[j][i][k] = consumptions[j][k],
/// sum_k volumes[k] * x[j][i][k] <= capacities[i][j], x >= 0.
/// Cost: sum_{i,j} pair_costs[i][j](load_{i,j}) + sum commodity_costs[j][i][k](x[j][i][k])
/// where load_{i,j} = sum_k volumes[k] * x[j][i][k].
struct TransportationInstance {
  std::size_t suppliers = 0;
  std::size_t consumers = 0;
  std::size_t commodities = 0;
  IntVector volumes;                                          // [k]
  std::vector<IntVector> supplies;                            // [i][k]
  std::vector<IntVector> consumptions;                        // [j][k]
  std::vector<IntVector> capacities;                          // [i][j]
  std::vector<std::vector<Term>> pair_costs;                  // [i][j]
  std::vector<std::vector<std::vector<Term>>> commodity_costs;  // [j][i][k]

  /// Throws InvalidInstance on shape errors, negative data or non-convex terms.
  void validate() const;
  /// Total supply equals total consumption for every commodity.
  bool balanced() const;

  friend bool operator==(const TransportationInstance&, const TransportationInstance&) = default;
};

struct TransportationSolution {
  std::vector<std::vector<IntVector>> flows;  // [j][i][k]
  std::vector<IntVector> loads;               // [i][j]
  std::optional<Integer> total_cost;
};

/// Slack-commodity encoding: l+1 blocks of t variables, block 0 the unused
/// capacity u - sum_k x^k, bimatrix (I_t ; D), right-hand side
/// (u, D u - sum_k d^k, d^1, ..., d^l), x >= 0. The edge costs act on block 0
/// through z -> f_e(u_e - z).
struct SlackEncoding {
  NFoldProgram program;
  SeparableConvexObjective objective;
};

SlackEncoding encode_transshipment_slack(const TransshipmentInstance& instance);

/// l blocks of t variables with A = (∅ ; D), W = (I_t ; ∅), loads bounded by
/// [0, u].
GeneralizedNFoldProgram encode_transshipment_generalized(const TransshipmentInstance& instance);

/// n blocks (one per consumer) of m*l variables, variable (i, k) of block j at
/// index j*m*l + i*l + k.
GeneralizedNFoldProgram encode_transportation(const TransportationInstance& instance);

/// Reads flows back from a solution of either transshipment encoding (its
/// length tells which), checks every instance constraint and the cost.
/// Throws ConstraintViolation on any mismatch.
FlowSolution decode_transshipment(const TransshipmentInstance& instance, const IntVector& solution,
                                  const std::optional<Integer>& program_objective = {});

TransportationSolution decode_transportation(const TransportationInstance& instance, const IntVector& solution,
                                             const std::optional<Integer>& program_objective = {});

/// Exact cost of given flows; nullopt when a cost term is an oracle.
std::optional<Integer> transshipment_cost(const TransshipmentInstance& instance, const std::vector<IntVector>& flows);
std::optional<Integer> transportation_cost(const TransportationInstance& instance,
                                           const std::vector<std::vector<IntVector>>& flows);

/// Checks demands, nonnegativity and capacities.
bool transshipment_feasible(const TransshipmentInstance& instance, const std::vector<IntVector>& flows);
bool transportation_feasible(const TransportationInstance& instance,
                             const std::vector<std::vector<IntVector>>& flows);

enum class TransshipmentEncoding { Slack, Generalized };

struct TransshipmentResult {
  SolveReport report;
  std::optional<FlowSolution> solution;
};

struct TransportationResult {
  SolveReport report;
  std::optional<TransportationSolution> solution;
};

TransshipmentResult solve_transshipment(const TransshipmentInstance& instance,
                                        TransshipmentEncoding encoding = TransshipmentEncoding::Generalized,
                                        const SolverOptions& options = {});

TransportationResult solve_transportation(const TransportationInstance& instance, const SolverOptions& options = {});

/// 1_3^[n][l]: the special product of 1_3^[n] taken l times, where 1_3 is the
/// 1x3 all-ones matrix.
IntMatrix universal_matrix(std::size_t n, std::size_t l);

}  // namespace nfold
