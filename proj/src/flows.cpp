#include "nfold/flows.hpp"

#include <string>

#include "nfold/errors.hpp"

namespace nfold {

namespace {

void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidInstance(message);
}

void validate_term(const Term& t, const std::string& where) {
  try {
    t.validate();
  } catch (const std::invalid_argument& e) {
    throw InvalidInstance(where + ": " + e.what());
  }
}

IntMatrix ones_row(std::size_t n) {
  IntMatrix m(1, n);
  for (std::size_t j = 0; j < n; ++j) m(0, j) = 1;
  return m;
}

bool any_oracle(const std::vector<Term>& terms) {
  for (const auto& t : terms) {
    if (t.is_oracle()) return true;
  }
  return false;
}

void check_objective(const std::optional<Integer>& cost, const std::optional<Integer>& program_objective) {
  if (cost && program_objective && *cost != *program_objective) {
    throw ConstraintViolation("decoded cost " + cost->to_string() + " differs from program objective " +
                              program_objective->to_string());
  }
}

}  // namespace

// ---------------------------------------------------------------- transshipment

void TransshipmentInstance::validate() const {
  const std::size_t s = graph.vertex_count(), t = graph.edge_count();
  require(commodities >= 1, "transshipment needs at least one commodity");
  require(demands.size() == commodities, "demands must list one vector per commodity");
  for (std::size_t k = 0; k < commodities; ++k) {
    require(demands[k].size() == s, "demands[" + std::to_string(k) + "] must have one entry per vertex");
  }
  require(capacities.size() == t, "capacities must have one entry per edge");
  for (std::size_t e = 0; e < t; ++e) {
    require(capacities[e].sign() >= 0, "capacities[" + std::to_string(e) + "] is negative");
  }
  require(edge_costs.size() == t, "edge_costs must have one term per edge");
  for (std::size_t e = 0; e < t; ++e) validate_term(edge_costs[e], "edge_costs[" + std::to_string(e) + "]");
  require(commodity_costs.size() == commodities, "commodity_costs must list one vector per commodity");
  for (std::size_t k = 0; k < commodities; ++k) {
    require(commodity_costs[k].size() == t,
            "commodity_costs[" + std::to_string(k) + "] must have one term per edge");
    for (std::size_t e = 0; e < t; ++e) {
      validate_term(commodity_costs[k][e], "commodity_costs[" + std::to_string(k) + "][" + std::to_string(e) + "]");
    }
  }
}

bool TransshipmentInstance::balanced() const {
  for (const auto& d : demands) {
    Integer sum;
    for (const auto& v : d) sum += v;
    if (!sum.is_zero()) return false;
  }
  return true;
}

SlackEncoding encode_transshipment_slack(const TransshipmentInstance& instance) {
  instance.validate();
  const std::size_t t = instance.graph.edge_count(), l = instance.commodities;
  const IntMatrix d = incidence_matrix(instance.graph);

  IntVector slack_demand = d * instance.capacities;
  for (const auto& dk : instance.demands) slack_demand -= dk;
  IntVector rhs = concat({&instance.capacities, &slack_demand});
  for (const auto& dk : instance.demands) rhs = concat({&rhs, &dk});

  std::vector<Term> terms;
  terms.reserve((l + 1) * t);
  for (std::size_t e = 0; e < t; ++e) terms.push_back(instance.edge_costs[e].compose(-1, instance.capacities[e]));
  for (std::size_t k = 0; k < l; ++k) {
    for (std::size_t e = 0; e < t; ++e) terms.push_back(instance.commodity_costs[k][e]);
  }
  NFoldProgram program{Bimatrix(IntMatrix::identity(t), d), l + 1, std::move(rhs), Bounds::nonnegative((l + 1) * t)};
  return SlackEncoding{std::move(program), SeparableConvexObjective(std::move(terms))};
}

GeneralizedNFoldProgram encode_transshipment_generalized(const TransshipmentInstance& instance) {
  instance.validate();
  const std::size_t t = instance.graph.edge_count(), l = instance.commodities;
  const IntMatrix d = incidence_matrix(instance.graph);

  IntVector rhs(0);
  for (const auto& dk : instance.demands) rhs = concat({&rhs, &dk});
  std::vector<Term> g;
  g.reserve(l * t);
  for (std::size_t k = 0; k < l; ++k) {
    for (std::size_t e = 0; e < t; ++e) g.push_back(instance.commodity_costs[k][e]);
  }
  GeneralizedNFoldProgram p;
  p.a = Bimatrix(IntMatrix(0, t), d);
  p.w = Bimatrix(IntMatrix::identity(t), IntMatrix(0, t));
  p.n = l;
  p.rhs = std::move(rhs);
  p.bounds = Bounds::nonnegative(l * t);
  p.w_bounds = Bounds::box(IntVector(t), instance.capacities);
  p.f = SeparableConvexObjective(instance.edge_costs);
  p.g = SeparableConvexObjective(std::move(g));
  return p;
}

std::optional<Integer> transshipment_cost(const TransshipmentInstance& instance, const std::vector<IntVector>& flows) {
  const std::size_t t = instance.graph.edge_count();
  if (any_oracle(instance.edge_costs)) return std::nullopt;
  for (const auto& row : instance.commodity_costs) {
    if (any_oracle(row)) return std::nullopt;
  }
  Integer cost;
  for (std::size_t e = 0; e < t; ++e) {
    Integer load;
    for (std::size_t k = 0; k < flows.size(); ++k) {
      load += flows[k][e];
      cost += instance.commodity_costs[k][e](flows[k][e]);
    }
    cost += instance.edge_costs[e](load);
  }
  return cost;
}

bool transshipment_feasible(const TransshipmentInstance& instance, const std::vector<IntVector>& flows) {
  const std::size_t t = instance.graph.edge_count();
  if (flows.size() != instance.commodities) return false;
  const IntMatrix d = incidence_matrix(instance.graph);
  IntVector loads(t);
  for (std::size_t k = 0; k < flows.size(); ++k) {
    if (flows[k].size() != t) return false;
    for (const auto& v : flows[k]) {
      if (v.sign() < 0) return false;
    }
    if (d * flows[k] != instance.demands[k]) return false;
    loads += flows[k];
  }
  for (std::size_t e = 0; e < t; ++e) {
    if (loads[e] > instance.capacities[e]) return false;
  }
  return true;
}

FlowSolution decode_transshipment(const TransshipmentInstance& instance, const IntVector& solution,
                                  const std::optional<Integer>& program_objective) {
  const std::size_t t = instance.graph.edge_count(), l = instance.commodities;
  std::size_t first_block = 0;
  if (solution.size() == (l + 1) * t) {
    first_block = 1;
  } else if (solution.size() != l * t) {
    throw ConstraintViolation("solution length matches neither transshipment encoding");
  }
  FlowSolution out;
  out.loads = IntVector(t);
  for (std::size_t k = 0; k < l; ++k) {
    out.flows.push_back(solution.slice((first_block + k) * t, t));
    out.loads += out.flows.back();
  }
  if (first_block == 1 && solution.slice(0, t) != instance.capacities - out.loads) {
    throw ConstraintViolation("slack block differs from unused capacity");
  }
  if (!transshipment_feasible(instance, out.flows)) {
    throw ConstraintViolation("decoded transshipment flow violates the instance constraints");
  }
  out.total_cost = transshipment_cost(instance, out.flows);
  check_objective(out.total_cost, program_objective);
  return out;
}

TransshipmentResult solve_transshipment(const TransshipmentInstance& instance, TransshipmentEncoding encoding,
                                        const SolverOptions& options) {
  instance.validate();
  TransshipmentResult result;
  if (!instance.balanced()) {
    result.report.status = SolveStatus::Infeasible;
    return result;
  }
  if (encoding == TransshipmentEncoding::Slack) {
    const SlackEncoding enc = encode_transshipment_slack(instance);
    result.report = solve(enc.program, enc.objective, options);
  } else {
    result.report = solve_generalized(encode_transshipment_generalized(instance), options);
  }
  if (result.report.status == SolveStatus::Optimal) {
    result.solution = decode_transshipment(instance, *result.report.solution, result.report.objective_value);
  }
  return result;
}

// ---------------------------------------------------------------- transportation

void TransportationInstance::validate() const {
  const std::size_t m = suppliers, n = consumers, l = commodities;
  require(m >= 1 && n >= 1 && l >= 1, "transportation needs at least one supplier, consumer and commodity");
  require(volumes.size() == l, "volumes must have one entry per commodity");
  for (std::size_t k = 0; k < l; ++k) require(volumes[k].sign() >= 0, "volumes[" + std::to_string(k) + "] is negative");
  require(supplies.size() == m, "supplies must have one row per supplier");
  for (std::size_t i = 0; i < m; ++i) {
    require(supplies[i].size() == l, "supplies[" + std::to_string(i) + "] must have one entry per commodity");
    for (const auto& v : supplies[i]) require(v.sign() >= 0, "supplies[" + std::to_string(i) + "] has a negative entry");
  }
  require(consumptions.size() == n, "consumptions must have one row per consumer");
  for (std::size_t j = 0; j < n; ++j) {
    require(consumptions[j].size() == l, "consumptions[" + std::to_string(j) + "] must have one entry per commodity");
    for (const auto& v : consumptions[j]) {
      require(v.sign() >= 0, "consumptions[" + std::to_string(j) + "] has a negative entry");
    }
  }
  require(capacities.size() == m, "capacities must have one row per supplier");
  for (std::size_t i = 0; i < m; ++i) {
    require(capacities[i].size() == n, "capacities[" + std::to_string(i) + "] must have one entry per consumer");
    for (const auto& v : capacities[i]) {
      require(v.sign() >= 0, "capacities[" + std::to_string(i) + "] has a negative entry");
    }
  }
  require(pair_costs.size() == m, "pair_costs must have one row per supplier");
  for (std::size_t i = 0; i < m; ++i) {
    require(pair_costs[i].size() == n, "pair_costs[" + std::to_string(i) + "] must have one term per consumer");
    for (std::size_t j = 0; j < n; ++j) {
      validate_term(pair_costs[i][j], "pair_costs[" + std::to_string(i) + "][" + std::to_string(j) + "]");
    }
  }
  require(commodity_costs.size() == n, "commodity_costs must have one entry per consumer");
  for (std::size_t j = 0; j < n; ++j) {
    require(commodity_costs[j].size() == m,
            "commodity_costs[" + std::to_string(j) + "] must have one entry per supplier");
    for (std::size_t i = 0; i < m; ++i) {
      require(commodity_costs[j][i].size() == l, "commodity_costs[" + std::to_string(j) + "][" + std::to_string(i) +
                                                     "] must have one term per commodity");
      for (std::size_t k = 0; k < l; ++k) {
        validate_term(commodity_costs[j][i][k], "commodity_costs[" + std::to_string(j) + "][" + std::to_string(i) +
                                                    "][" + std::to_string(k) + "]");
      }
    }
  }
}

bool TransportationInstance::balanced() const {
  for (std::size_t k = 0; k < commodities; ++k) {
    Integer supply, demand;
    for (const auto& s : supplies) supply += s[k];
    for (const auto& c : consumptions) demand += c[k];
    if (supply != demand) return false;
  }
  return true;
}

GeneralizedNFoldProgram encode_transportation(const TransportationInstance& instance) {
  instance.validate();
  const std::size_t m = instance.suppliers, n = instance.consumers, l = instance.commodities;
  const std::size_t block = m * l;

  // Consumption rows of one block: sum_i x_{i,k} for each k.
  const IntMatrix per_consumer = nfold_product(Bimatrix(IntMatrix::identity(l), IntMatrix(0, l)), m);
  IntMatrix volume_row(1, l);
  for (std::size_t k = 0; k < l; ++k) volume_row(0, k) = instance.volumes[k];
  const IntMatrix loads = nfold_product(Bimatrix(IntMatrix(0, l), volume_row), m);

  IntVector rhs(block + n * l);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < l; ++k) rhs[i * l + k] = instance.supplies[i][k];
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < l; ++k) rhs[block + j * l + k] = instance.consumptions[j][k];
  }

  Bounds w_bounds = Bounds::nonnegative(n * m);
  std::vector<Term> f(n * m), g(n * block);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      w_bounds.upper[j * m + i] = instance.capacities[i][j];
      f[j * m + i] = instance.pair_costs[i][j];
      for (std::size_t k = 0; k < l; ++k) g[j * block + i * l + k] = instance.commodity_costs[j][i][k];
    }
  }

  GeneralizedNFoldProgram p;
  p.a = Bimatrix(IntMatrix::identity(block), per_consumer);
  p.w = Bimatrix(IntMatrix(0, block), loads);
  p.n = n;
  p.rhs = std::move(rhs);
  p.bounds = Bounds::nonnegative(n * block);
  p.w_bounds = std::move(w_bounds);
  p.f = SeparableConvexObjective(std::move(f));
  p.g = SeparableConvexObjective(std::move(g));
  return p;
}

std::optional<Integer> transportation_cost(const TransportationInstance& instance,
                                           const std::vector<std::vector<IntVector>>& flows) {
  for (const auto& row : instance.pair_costs) {
    if (any_oracle(row)) return std::nullopt;
  }
  for (const auto& per_consumer : instance.commodity_costs) {
    for (const auto& row : per_consumer) {
      if (any_oracle(row)) return std::nullopt;
    }
  }
  Integer cost;
  for (std::size_t j = 0; j < instance.consumers; ++j) {
    for (std::size_t i = 0; i < instance.suppliers; ++i) {
      Integer load;
      for (std::size_t k = 0; k < instance.commodities; ++k) {
        load += instance.volumes[k] * flows[j][i][k];
        cost += instance.commodity_costs[j][i][k](flows[j][i][k]);
      }
      cost += instance.pair_costs[i][j](load);
    }
  }
  return cost;
}

bool transportation_feasible(const TransportationInstance& instance,
                             const std::vector<std::vector<IntVector>>& flows) {
  const std::size_t m = instance.suppliers, n = instance.consumers, l = instance.commodities;
  if (flows.size() != n) return false;
  std::vector<IntVector> shipped(m, IntVector(l));
  for (std::size_t j = 0; j < n; ++j) {
    if (flows[j].size() != m) return false;
    IntVector received(l);
    for (std::size_t i = 0; i < m; ++i) {
      if (flows[j][i].size() != l) return false;
      Integer load;
      for (std::size_t k = 0; k < l; ++k) {
        if (flows[j][i][k].sign() < 0) return false;
        load += instance.volumes[k] * flows[j][i][k];
      }
      if (load > instance.capacities[i][j]) return false;
      received += flows[j][i];
      shipped[i] += flows[j][i];
    }
    if (received != instance.consumptions[j]) return false;
  }
  return shipped == instance.supplies;
}

TransportationSolution decode_transportation(const TransportationInstance& instance, const IntVector& solution,
                                             const std::optional<Integer>& program_objective) {
  const std::size_t m = instance.suppliers, n = instance.consumers, l = instance.commodities;
  if (solution.size() != n * m * l) throw ConstraintViolation("solution length does not match the transportation encoding");
  TransportationSolution out;
  out.flows.assign(n, std::vector<IntVector>(m));
  out.loads.assign(m, IntVector(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      out.flows[j][i] = solution.slice(j * m * l + i * l, l);
      out.loads[i][j] = dot(instance.volumes, out.flows[j][i]);
    }
  }
  if (!transportation_feasible(instance, out.flows)) {
    throw ConstraintViolation("decoded transportation flow violates the instance constraints");
  }
  out.total_cost = transportation_cost(instance, out.flows);
  check_objective(out.total_cost, program_objective);
  return out;
}

TransportationResult solve_transportation(const TransportationInstance& instance, const SolverOptions& options) {
  instance.validate();
  TransportationResult result;
  if (!instance.balanced()) {
    result.report.status = SolveStatus::Infeasible;
    return result;
  }
  result.report = solve_generalized(encode_transportation(instance), options);
  if (result.report.status == SolveStatus::Optimal) {
    result.solution = decode_transportation(instance, *result.report.solution, result.report.objective_value);
  }
  return result;
}

IntMatrix universal_matrix(std::size_t n, std::size_t l) {
  if (n == 0 || l == 0) throw std::invalid_argument("universal_matrix: n and l must be positive");
  return special_product(special_product(ones_row(3), n), l);
}

}  // namespace nfold
