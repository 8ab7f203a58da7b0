#include "nfold/commands.hpp"

#include <chrono>
#include <sstream>
#include <string>

#include "nfold/errors.hpp"
#include "nfold/graver.hpp"
#include "nfold/oracle.hpp"

namespace nfold::cli {

namespace {

using io::json;
using Clock = std::chrono::steady_clock;

int exit_code_for(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return kOk;
    case SolveStatus::Infeasible: return kInfeasible;
    case SolveStatus::Unbounded: return kUnbounded;
    case SolveStatus::BudgetExceeded: return kBudgetExceeded;
  }
  return kInputError;
}

CommandResult error_result(int code, std::string_view status, const std::string& message) {
  return {{{"status", status}, {"message", message}}, code};
}

CommandResult input_error(const std::string& message) { return error_result(kInputError, "error", message); }

void add_timing(json& stats, Clock::time_point start, const CommandOptions& options) {
  if (options.timing) stats["wall_time_seconds"] = std::chrono::duration<double>(Clock::now() - start).count();
}

GraverOptions graver_options(const CommandOptions& options) {
  GraverOptions out;
  out.budget = options.budget;
  return out;
}

json basis_json(const GraverBasis& basis) {
  json elements = json::array();
  for (const auto& g : basis.elements()) elements.push_back(io::to_json(g));
  return elements;
}

json flows_json(const std::vector<IntVector>& flows) {
  json out = json::array();
  for (const auto& f : flows) out.push_back(io::to_json(f));
  return out;
}

json transportation_flows_json(const std::vector<std::vector<IntVector>>& flows) {
  json out = json::array();
  for (const auto& per_consumer : flows) out.push_back(flows_json(per_consumer));
  return out;
}

std::vector<IntVector> transportation_loads(const TransportationInstance& inst,
                                            const std::vector<std::vector<IntVector>>& flows) {
  std::vector<IntVector> loads(inst.suppliers, IntVector(inst.consumers));
  for (std::size_t j = 0; j < inst.consumers; ++j) {
    for (std::size_t i = 0; i < inst.suppliers; ++i) loads[i][j] = dot(inst.volumes, flows[j][i]);
  }
  return loads;
}

IntVector transshipment_loads(const TransshipmentInstance& inst, const std::vector<IntVector>& flows) {
  IntVector loads(inst.graph.edge_count());
  for (const auto& f : flows) loads += f;
  return loads;
}

json status_json(SolveStatus status) { return {{"status", to_string(status)}}; }

void add_objective(json& out, const std::optional<Integer>& value) {
  if (value) out["objective_value"] = io::to_json(*value);
}

}  // namespace

CommandResult cmd_graver(const io::InstanceFile& input, const CommandOptions& options) {
  const auto start = Clock::now();
  json out = {{"status", "ok"}};
  try {
    GraverBasis basis;
    if (const auto* m = std::get_if<IntMatrix>(&input.data)) {
      basis = graver_basis(*m, graver_options(options));
    } else if (const auto* a = std::get_if<Bimatrix>(&input.data)) {
      const std::size_t n = options.n.value_or(1);
      if (n == 0) return input_error("--n must be positive");
      NFoldGraverOptions nopts;
      nopts.budget = options.budget;
      basis = nfold_graver(*a, n, nopts);
      out["n"] = n;
    } else {
      return input_error("graver expects a matrix or bimatrix instance, got " + std::string(input.kind()));
    }
    out["dimension"] = basis.ambient_dimension();
    out["size"] = basis.size();
    out["elements"] = basis_json(basis);
    json stats = {{"graver_size", basis.size()}};
    add_timing(stats, start, options);
    out["statistics"] = stats;
    return {out, kOk};
  } catch (const BudgetExceeded& e) {
    return error_result(kBudgetExceeded, "budget_exceeded", e.what());
  }
}

CommandResult cmd_complexity(const io::InstanceFile& input, const CommandOptions& options) {
  const auto start = Clock::now();
  Bimatrix a;
  if (const auto* b = std::get_if<Bimatrix>(&input.data)) {
    a = *b;
  } else if (const auto* g = std::get_if<Digraph>(&input.data)) {
    a = Bimatrix(IntMatrix::identity(g->edge_count()), incidence_matrix(*g));
  } else {
    return input_error("complexity expects a bimatrix or digraph instance, got " + std::string(input.kind()));
  }
  try {
    const std::size_t value = graver_complexity(a, graver_options(options));
    json stats = json::object();
    add_timing(stats, start, options);
    return {{{"status", "ok"}, {"graver_complexity", value}, {"statistics", stats}}, kOk};
  } catch (const BudgetExceeded& e) {
    return error_result(kBudgetExceeded, "budget_exceeded", e.what());
  }
}

CommandResult cmd_solve(const io::InstanceFile& input, const CommandOptions& options) {
  const auto start = Clock::now();
  SolverOptions solver;
  solver.budget = options.budget;
  json out;
  json stats;
  SolveStatus status = SolveStatus::Infeasible;

  if (const auto* p = std::get_if<io::NFoldProgramInstance>(&input.data)) {
    const SolveReport r = solve(p->program, p->objective, solver);
    status = r.status;
    out = status_json(status);
    add_objective(out, r.objective_value);
    if (r.solution) out["solution"] = io::to_json(*r.solution);
    stats = {{"graver_size", r.graver_size}, {"augmentation_steps", r.augmentation_steps}};
  } else if (const auto* p = std::get_if<GeneralizedNFoldProgram>(&input.data)) {
    const SolveReport r = solve_generalized(*p, solver);
    status = r.status;
    out = status_json(status);
    add_objective(out, r.objective_value);
    if (r.solution) out["solution"] = io::to_json(*r.solution);
    stats = {{"graver_size", r.graver_size}, {"augmentation_steps", r.augmentation_steps}};
  } else if (const auto* inst = std::get_if<TransshipmentInstance>(&input.data)) {
    const TransshipmentResult r = solve_transshipment(*inst, options.encoding, solver);
    status = r.report.status;
    out = status_json(status);
    if (r.solution) {
      add_objective(out, r.solution->total_cost);
      out["flows"] = flows_json(r.solution->flows);
      out["loads"] = io::to_json(r.solution->loads);
    }
    stats = {{"graver_size", r.report.graver_size},
             {"augmentation_steps", r.report.augmentation_steps},
             {"encoding", options.encoding == TransshipmentEncoding::Slack ? "slack" : "generalized"}};
  } else if (const auto* inst = std::get_if<TransportationInstance>(&input.data)) {
    const TransportationResult r = solve_transportation(*inst, solver);
    status = r.report.status;
    out = status_json(status);
    if (r.solution) {
      add_objective(out, r.solution->total_cost);
      out["flows"] = transportation_flows_json(r.solution->flows);
      out["loads"] = flows_json(r.solution->loads);
    }
    stats = {{"graver_size", r.report.graver_size}, {"augmentation_steps", r.report.augmentation_steps}};
  } else {
    return input_error("solve expects a program or flow instance, got " + std::string(input.kind()));
  }
  add_timing(stats, start, options);
  out["statistics"] = stats;
  return {out, exit_code_for(status)};
}

CommandResult cmd_oracle(const io::InstanceFile& input, const CommandOptions& options) {
  const auto start = Clock::now();
  json out;
  SolveStatus status = SolveStatus::Infeasible;
  try {
    if (const auto* p = std::get_if<io::NFoldProgramInstance>(&input.data)) {
      if (!options.box) return input_error("oracle on a raw program needs --box");
      const OracleResult r = brute_force_solve(p->program, p->objective, *options.box, options.budget);
      status = r.status;
      out = status_json(status);
      add_objective(out, r.objective_value);
      if (r.witness) out["solution"] = io::to_json(*r.witness);
    } else if (const auto* p = std::get_if<GeneralizedNFoldProgram>(&input.data)) {
      if (!options.box) return input_error("oracle on a raw program needs --box");
      const OracleResult r = brute_force_solve(*p, *options.box, options.budget);
      status = r.status;
      out = status_json(status);
      add_objective(out, r.objective_value);
      if (r.witness) out["solution"] = io::to_json(*r.witness);
    } else if (const auto* inst = std::get_if<TransshipmentInstance>(&input.data)) {
      const TransshipmentOracleResult r = brute_force_solve(*inst, options.budget);
      status = r.status;
      out = status_json(status);
      if (r.flows) {
        add_objective(out, r.total_cost);
        out["flows"] = flows_json(*r.flows);
        out["loads"] = io::to_json(transshipment_loads(*inst, *r.flows));
      }
    } else if (const auto* inst = std::get_if<TransportationInstance>(&input.data)) {
      const TransportationOracleResult r = brute_force_solve(*inst, options.budget);
      status = r.status;
      out = status_json(status);
      if (r.flows) {
        add_objective(out, r.total_cost);
        out["flows"] = transportation_flows_json(*r.flows);
        out["loads"] = flows_json(transportation_loads(*inst, *r.flows));
      }
    } else {
      return input_error("oracle expects a program or flow instance, got " + std::string(input.kind()));
    }
  } catch (const BudgetExceeded& e) {
    return error_result(kBudgetExceeded, "budget_exceeded", e.what());
  }
  json stats = json::object();
  add_timing(stats, start, options);
  out["statistics"] = stats;
  return {out, exit_code_for(status)};
}

CommandResult cmd_universal(std::size_t n, std::size_t l) {
  if (n == 0 || l == 0) return input_error("--n and --l must be positive");
  const IntMatrix m = universal_matrix(n, l);
  // The inner factor 1_3^[n] is the incidence matrix of K_{3,n}.
  const IntMatrix factor = special_product(IntMatrix::from_rows({{1, 1, 1}}), n);
  return {{{"status", "ok"},
           {"n", n},
           {"l", l},
           {"rows", m.rows()},
           {"cols", m.cols()},
           {"factor", io::to_json(factor)},
           {"matrix", io::to_json(m)}},
          kOk};
}

CommandResult run_command(std::string_view command, std::string_view input_text, const CommandOptions& options) {
  try {
    std::istringstream in{std::string(input_text)};
    const io::InstanceFile input = io::read_instance(in);
    if (command == "graver") return cmd_graver(input, options);
    if (command == "complexity") return cmd_complexity(input, options);
    if (command == "solve") return cmd_solve(input, options);
    if (command == "oracle") return cmd_oracle(input, options);
    return input_error("unknown command '" + std::string(command) + "'");
  } catch (const std::invalid_argument& e) {
    return input_error(e.what());
  } catch (const OracleEvaluationError& e) {
    return input_error(e.what());
  }
}

}  // namespace nfold::cli
