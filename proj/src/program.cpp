#include "nfold/program.hpp"

#include <chrono>
#include <functional>
#include <stdexcept>

#include "nfold/errors.hpp"

namespace nfold {

// ---------------------------------------------------------------- Bounds

Bounds Bounds::unbounded(std::size_t n) { return Bounds{std::vector<std::optional<Integer>>(n), std::vector<std::optional<Integer>>(n)}; }

Bounds Bounds::nonnegative(std::size_t n) {
  Bounds b = unbounded(n);
  for (auto& l : b.lower) l = Integer{};
  return b;
}

Bounds Bounds::box(const IntVector& lower, const IntVector& upper) {
  if (lower.size() != upper.size()) throw DimensionError("Bounds::box: lower and upper differ in length");
  Bounds b = unbounded(lower.size());
  for (std::size_t i = 0; i < lower.size(); ++i) {
    b.lower[i] = lower[i];
    b.upper[i] = upper[i];
  }
  return b;
}

bool Bounds::consistent() const {
  if (lower.size() != upper.size()) return false;
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (lower[i] && upper[i] && *lower[i] > *upper[i]) return false;
  }
  return true;
}

bool Bounds::contains(const IntVector& x) const {
  if (x.size() != size()) throw DimensionError("bounds dimension does not match point");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (lower[i] && x[i] < *lower[i]) return false;
    if (upper[i] && x[i] > *upper[i]) return false;
  }
  return true;
}

Bounds Bounds::concat(const Bounds& other) const {
  Bounds out = *this;
  out.lower.insert(out.lower.end(), other.lower.begin(), other.lower.end());
  out.upper.insert(out.upper.end(), other.upper.begin(), other.upper.end());
  return out;
}

Bounds Bounds::negated() const {
  Bounds out = unbounded(size());
  for (std::size_t i = 0; i < size(); ++i) {
    if (upper[i]) out.lower[i] = -*upper[i];
    if (lower[i]) out.upper[i] = -*lower[i];
  }
  return out;
}

// ---------------------------------------------------------------- programs

void NFoldProgram::validate() const {
  if (n == 0) throw DimensionError("n-fold program needs n >= 1");
  if (rhs.size() != a.r() + n * a.s()) throw DimensionError("right-hand side must have r + n*s entries");
  if (bounds.lower.size() != variable_count() || bounds.upper.size() != variable_count()) {
    throw DimensionError("bounds must have n*t entries");
  }
}

bool NFoldProgram::is_feasible(const IntVector& x) const {
  return x.size() == variable_count() && matrix() * x == rhs && bounds.contains(x);
}

void GeneralizedNFoldProgram::validate() const {
  if (n == 0) throw DimensionError("generalized program needs n >= 1");
  if (a.t() != w.t()) throw DimensionError("A and W must have the same column count");
  if (rhs.size() != a.r() + n * a.s()) throw DimensionError("right-hand side must have r + n*s entries");
  if (bounds.lower.size() != variable_count() || bounds.upper.size() != variable_count()) {
    throw DimensionError("bounds must have n*t entries");
  }
  if (w_bounds.lower.size() != load_count() || w_bounds.upper.size() != load_count()) {
    throw DimensionError("load bounds must have p + n*q entries");
  }
  if (f.dimension() != load_count()) throw DimensionError("load objective must have p + n*q terms");
  if (g.dimension() != variable_count()) throw DimensionError("variable objective must have n*t terms");
}

bool GeneralizedNFoldProgram::is_feasible(const IntVector& x) const {
  if (x.size() != variable_count()) return false;
  return nfold_product(a, n) * x == rhs && bounds.contains(x) && w_bounds.contains(load_matrix() * x);
}

Integer GeneralizedNFoldProgram::objective_value(const IntVector& x) const {
  return f.evaluate(load_matrix() * x) + g.evaluate(x);
}

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unbounded: return "unbounded";
    case SolveStatus::BudgetExceeded: return "budget_exceeded";
  }
  return "unknown";
}

// ---------------------------------------------------------------- augmentation

namespace {

// Largest α >= 0 keeping x + α g inside the bounds; nullopt when unblocked.
std::optional<Integer> max_step(const IntVector& x, const IntVector& g, const Bounds& bounds) {
  std::optional<Integer> best;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const int s = g[i].sign();
    std::optional<Integer> room;
    if (s > 0 && bounds.upper[i]) room = floor_div(*bounds.upper[i] - x[i], g[i]);
    if (s < 0 && bounds.lower[i]) room = floor_div(x[i] - *bounds.lower[i], -g[i]);
    if (room && (!best || *room < *best)) best = std::move(room);
  }
  if (best && best->sign() < 0) best = Integer{};
  return best;
}

// φ(α+1) - φ(α) >= 0 for φ(α) = f(x + α g) - f(x).
bool stops_improving(const SeparableConvexObjective& f, const IntVector& x, const IntVector& g, const Integer& a) {
  return f.change(x, g, a + 1) >= f.change(x, g, a);
}

// Probe cap for directions whose asymptotic behaviour is unknown.
const Integer kProbeCap = Integer(std::int64_t{1} << 62);

// Smallest minimizer of the convex φ on [0, limit], or on [0, ∞) when limit is
// absent and φ eventually stops decreasing.
Integer best_step(const SeparableConvexObjective& f, const IntVector& x, const IntVector& g,
                  const std::optional<Integer>& limit) {
  Integer lo, hi;
  if (limit) {
    hi = *limit;
  } else {
    hi = 1;
    while (!stops_improving(f, x, g, hi)) {
      hi *= 2;
      if (hi > kProbeCap) throw BudgetExceeded("oracle probe along an unblocked direction did not settle");
    }
  }
  while (lo < hi) {
    Integer mid = floor_div(lo + hi, 2);
    if (stops_improving(f, x, g, mid)) {
      hi = std::move(mid);
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

}  // namespace

Augmentation augment_step(const GraverBasis& basis, const IntVector& x, const SeparableConvexObjective& objective,
                          const Bounds& bounds) {
  if (x.size() != basis.ambient_dimension() || objective.dimension() != x.size() || bounds.size() != x.size()) {
    throw DimensionError("augment_step: basis, point, objective and bounds must agree in dimension");
  }
  Augmentation best;
  for (const auto& element : basis.elements()) {
    for (int sign : {1, -1}) {
      IntVector g = sign > 0 ? element : -element;
      auto limit = max_step(x, g, bounds);
      if (limit && limit->is_zero()) continue;
      if (objective.change(x, g, 1).sign() >= 0) continue;
      if (!limit) {
        auto slope = objective.asymptotic_slope(g);
        if (slope && !slope->infinite && slope->value.sign() < 0) {
          Augmentation out;
          out.outcome = Augmentation::Outcome::Unbounded;
          out.direction = std::move(g);
          return out;
        }
      }
      Integer step = best_step(objective, x, g, limit);
      Integer delta = objective.change(x, g, step);
      if (best.outcome == Augmentation::Outcome::None || delta < best.change) {
        best.outcome = Augmentation::Outcome::Improved;
        best.direction = std::move(g);
        best.step = std::move(step);
        best.change = std::move(delta);
      }
    }
  }
  if (best.outcome == Augmentation::Outcome::Improved) {
    best.point = x;
    best.point.add_scaled(best.step, best.direction);
  }
  return best;
}

namespace {

// Throws BudgetExceeded; never returns that status.
SolveReport run_augmentation(const GraverBasis& basis, const SeparableConvexObjective& objective,
                             const Bounds& bounds, IntVector x, const Budget& budget) {
  if (!bounds.contains(x)) throw std::invalid_argument("augmentation start point violates the bounds");
  Deadline deadline(budget);
  SolveReport report;
  report.graver_size = basis.size();
  while (true) {
    deadline.check("augmentation");
    Augmentation step = augment_step(basis, x, objective, bounds);
    if (step.outcome == Augmentation::Outcome::None) break;
    if (step.outcome == Augmentation::Outcome::Unbounded) {
      report.status = SolveStatus::Unbounded;
      return report;
    }
    x = std::move(step.point);
    if (++report.augmentation_steps > budget.max_augmentations) {
      throw BudgetExceeded("augmentation step cap of " + std::to_string(budget.max_augmentations) + " exceeded");
    }
  }
  report.status = SolveStatus::Optimal;
  if (!objective.has_oracle()) report.objective_value = objective.evaluate(x);
  report.solution = std::move(x);
  return report;
}

// The budget left after the time already spent since `start`.
Budget remaining(const Budget& budget, std::chrono::steady_clock::time_point start) {
  Budget out = budget;
  if (budget.max_time) {
    auto spent = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    out.max_time = spent >= *budget.max_time ? std::chrono::milliseconds(0) : *budget.max_time - spent;
  }
  return out;
}

std::optional<IntVector> feasible_point(const IntMatrix& a, const IntVector& rhs, const Bounds& bounds,
                                        const std::function<const GraverBasis&()>& basis, const Budget& budget) {
  if (!bounds.consistent()) return std::nullopt;
  auto x = solve_integer_system(a, rhs);
  if (!x) return std::nullopt;
  if (bounds.contains(*x)) return x;
  std::vector<Term> violation;
  violation.reserve(bounds.size());
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    violation.push_back(Term::distance_to_interval(bounds.lower[i], bounds.upper[i]));
  }
  const SeparableConvexObjective distance(std::move(violation));
  SolveReport r = run_augmentation(basis(), distance, Bounds::unbounded(bounds.size()), std::move(*x), budget);
  if (r.status != SolveStatus::Optimal || !r.objective_value->is_zero()) return std::nullopt;
  return r.solution;
}

SolveReport solve_system(const IntMatrix& a, const IntVector& rhs, const Bounds& bounds,
                         const SeparableConvexObjective& objective,
                         const std::function<GraverBasis(const Budget&)>& compute_basis, const Budget& budget) {
  const auto start = std::chrono::steady_clock::now();
  SolveReport report;
  try {
    std::optional<GraverBasis> basis;
    auto get_basis = [&]() -> const GraverBasis& {
      if (!basis) basis = compute_basis(remaining(budget, start));
      return *basis;
    };
    auto x = feasible_point(a, rhs, bounds, get_basis, remaining(budget, start));
    if (!x) {
      report.status = SolveStatus::Infeasible;
      report.graver_size = basis ? basis->size() : 0;
      return report;
    }
    report = run_augmentation(get_basis(), objective, bounds, std::move(*x), remaining(budget, start));
  } catch (const BudgetExceeded&) {
    report = SolveReport{};
    report.status = SolveStatus::BudgetExceeded;
  }
  return report;
}

NFoldGraverOptions graver_options(const SolverOptions& options, const Budget& budget) {
  NFoldGraverOptions out;
  out.budget = budget;
  out.cache = options.cache;
  return out;
}

}  // namespace

SolveReport minimize_with_basis(const GraverBasis& basis, const SeparableConvexObjective& objective,
                                const Bounds& bounds, IntVector start, const Budget& budget) {
  try {
    return run_augmentation(basis, objective, bounds, std::move(start), budget);
  } catch (const BudgetExceeded&) {
    SolveReport report;
    report.status = SolveStatus::BudgetExceeded;
    report.graver_size = basis.size();
    return report;
  }
}

SolveReport minimize(const NFoldProgram& program, const SeparableConvexObjective& objective, IntVector start,
                     const SolverOptions& options) {
  program.validate();
  if (objective.dimension() != program.variable_count()) throw DimensionError("objective must have n*t terms");
  if (!program.is_feasible(start)) throw std::invalid_argument("minimize: start point is not feasible");
  try {
    const GraverBasis basis = nfold_graver(program.a, program.n, graver_options(options, options.budget));
    return minimize_with_basis(basis, objective, program.bounds, std::move(start), options.budget);
  } catch (const BudgetExceeded&) {
    SolveReport report;
    report.status = SolveStatus::BudgetExceeded;
    return report;
  }
}

std::optional<IntVector> find_feasible_with_basis(const IntMatrix& a, const IntVector& rhs, const Bounds& bounds,
                                                  const GraverBasis& basis, const Budget& budget) {
  if (a.cols() != bounds.size() || a.rows() != rhs.size()) throw DimensionError("find_feasible: shape mismatch");
  return feasible_point(a, rhs, bounds, [&]() -> const GraverBasis& { return basis; }, budget);
}

std::optional<IntVector> find_feasible(const NFoldProgram& program, const SolverOptions& options) {
  program.validate();
  const auto start = std::chrono::steady_clock::now();
  std::optional<GraverBasis> basis;
  auto get_basis = [&]() -> const GraverBasis& {
    if (!basis) basis = nfold_graver(program.a, program.n, graver_options(options, remaining(options.budget, start)));
    return *basis;
  };
  return feasible_point(program.matrix(), program.rhs, program.bounds, get_basis, options.budget);
}

SolveReport solve(const NFoldProgram& program, const SeparableConvexObjective& objective,
                  const SolverOptions& options) {
  program.validate();
  if (objective.dimension() != program.variable_count()) throw DimensionError("objective must have n*t terms");
  return solve_system(
      program.matrix(), program.rhs, program.bounds, objective,
      [&](const Budget& b) { return nfold_graver(program.a, program.n, graver_options(options, b)); },
      options.budget);
}

SolveReport solve_generalized(const GeneralizedNFoldProgram& program, const SolverOptions& options) {
  program.validate();
  const std::size_t nx = program.variable_count();
  const std::size_t ny = program.load_count();
  const IntMatrix lifted = assemble_extended(program.a, program.w, program.n);

  IntVector rhs(lifted.rows());
  for (std::size_t i = 0; i < program.rhs.size(); ++i) rhs[i] = program.rhs[i];
  // y = -W^(n) x, so the load bounds flip sign.
  const Bounds bounds = program.bounds.concat(program.w_bounds.negated());
  std::vector<Term> terms = program.g.terms();
  for (const auto& t : program.f.terms()) terms.push_back(t.compose(-1, Integer{}));
  const SeparableConvexObjective objective(std::move(terms));

  SolveReport report = solve_system(
      lifted, rhs, bounds, objective,
      [&](const Budget& b) {
        return extended_nfold_graver(program.a, program.w, program.n, options.route, graver_options(options, b));
      },
      options.budget);
  if (report.solution) {
    report.lifted_solution = report.solution;
    report.solution = report.lifted_solution->slice(0, nx);
    if (report.lifted_solution->slice(nx, ny) != -(program.load_matrix() * *report.solution)) {
      throw ConstraintViolation("lifted solution does not satisfy y = -W x");
    }
  }
  return report;
}

}  // namespace nfold
