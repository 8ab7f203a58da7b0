#include "nfold/oracle.hpp"

#include <algorithm>
#include <string>

#include "nfold/errors.hpp"

namespace nfold {

RowConstraints RowConstraints::equalities(IntMatrix matrix, const IntVector& rhs) {
  if (matrix.rows() != rhs.size()) throw DimensionError("RowConstraints: right-hand side length");
  RowConstraints out{std::move(matrix), {}, {}};
  for (const auto& b : rhs) {
    out.lower.emplace_back(b);
    out.upper.emplace_back(b);
  }
  return out;
}

RowConstraints RowConstraints::stack(const RowConstraints& other) const {
  RowConstraints out{IntMatrix::vstack(matrix, other.matrix), lower, upper};
  out.lower.insert(out.lower.end(), other.lower.begin(), other.lower.end());
  out.upper.insert(out.upper.end(), other.upper.begin(), other.upper.end());
  return out;
}

namespace {

class BoxSearch {
 public:
  BoxSearch(const RowConstraints& rows, const IntVector& lo, const IntVector& hi,
            const std::function<void(const IntVector&)>& visit, const Budget& budget)
      : rows_(rows), lo_(lo), hi_(hi), visit_(visit), budget_(budget), deadline_(budget) {
    const std::size_t m = rows.matrix.rows(), n = lo.size();
    suffix_min_.assign(m, std::vector<Integer>(n + 1));
    suffix_max_.assign(m, std::vector<Integer>(n + 1));
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t j = n; j-- > 0;) {
        const Integer& a = rows.matrix(r, j);
        Integer x = a * lo[j], y = a * hi[j];
        if (y < x) std::swap(x, y);
        suffix_min_[r][j] = suffix_min_[r][j + 1] + x;
        suffix_max_[r][j] = suffix_max_[r][j + 1] + y;
      }
    }
    partial_.assign(m, Integer{});
    point_ = IntVector(n);
  }

  void run() {
    for (std::size_t r = 0; r < rows_.matrix.rows(); ++r) {
      if (!row_ok(r, 0)) return;
    }
    descend(0);
  }

 private:
  bool row_ok(std::size_t r, std::size_t next) const {
    if (rows_.upper[r] && partial_[r] + suffix_min_[r][next] > *rows_.upper[r]) return false;
    if (rows_.lower[r] && partial_[r] + suffix_max_[r][next] < *rows_.lower[r]) return false;
    return true;
  }

  void descend(std::size_t i) {
    if (++nodes_ > budget_.max_enumeration_nodes) {
      throw BudgetExceeded("enumeration node cap of " + std::to_string(budget_.max_enumeration_nodes) + " exceeded");
    }
    if ((nodes_ & 0xffff) == 0) deadline_.check("enumeration");
    if (i == lo_.size()) {
      visit_(point_);
      return;
    }
    const std::size_t m = rows_.matrix.rows();
    for (Integer v = lo_[i]; v <= hi_[i]; v += 1) {
      point_[i] = v;
      bool ok = true;
      for (std::size_t r = 0; r < m; ++r) {
        const Integer& a = rows_.matrix(r, i);
        if (a.is_zero()) continue;
        partial_[r] += a * v;
      }
      for (std::size_t r = 0; r < m && ok; ++r) {
        if (!rows_.matrix(r, i).is_zero()) ok = row_ok(r, i + 1);
      }
      if (ok) descend(i + 1);
      for (std::size_t r = 0; r < m; ++r) {
        const Integer& a = rows_.matrix(r, i);
        if (!a.is_zero()) partial_[r] -= a * v;
      }
    }
    point_[i] = Integer{};
  }

  const RowConstraints& rows_;
  const IntVector& lo_;
  const IntVector& hi_;
  const std::function<void(const IntVector&)>& visit_;
  const Budget& budget_;
  Deadline deadline_;
  std::vector<std::vector<Integer>> suffix_min_, suffix_max_;
  std::vector<Integer> partial_;
  IntVector point_;
  std::size_t nodes_ = 0;
};

std::pair<IntVector, IntVector> clipped_box(const Bounds& bounds, const Integer& box_limit) {
  if (box_limit.sign() < 0) throw std::invalid_argument("box limit must be nonnegative");
  IntVector lo(bounds.size()), hi(bounds.size());
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    lo[i] = -box_limit;
    hi[i] = box_limit;
    if (bounds.lower[i] && *bounds.lower[i] > lo[i]) lo[i] = *bounds.lower[i];
    if (bounds.upper[i] && *bounds.upper[i] < hi[i]) hi[i] = *bounds.upper[i];
  }
  return {lo, hi};
}

}  // namespace

void enumerate_box(const RowConstraints& rows, const IntVector& lo, const IntVector& hi,
                   const std::function<void(const IntVector&)>& visit, const Budget& budget) {
  if (lo.size() != hi.size() || rows.matrix.cols() != lo.size() || rows.lower.size() != rows.matrix.rows() ||
      rows.upper.size() != rows.matrix.rows()) {
    throw DimensionError("enumerate_box: shape mismatch");
  }
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (lo[i] > hi[i]) return;
  }
  BoxSearch(rows, lo, hi, visit, budget).run();
}

OracleResult brute_force_minimize(const RowConstraints& rows, const IntVector& lo, const IntVector& hi,
                                  const std::function<Integer(const IntVector&)>& objective, const Budget& budget) {
  OracleResult out;
  enumerate_box(
      rows, lo, hi,
      [&](const IntVector& x) {
        Integer value = objective(x);
        if (!out.objective_value || value < *out.objective_value) {
          out.objective_value = std::move(value);
          out.witness = x;
        }
      },
      budget);
  if (out.witness) out.status = SolveStatus::Optimal;
  return out;
}

OracleResult brute_force_solve(const NFoldProgram& program, const SeparableConvexObjective& objective,
                               const Integer& box_limit, const Budget& budget) {
  program.validate();
  if (objective.has_oracle()) throw OracleEvaluationError("the enumeration oracle needs exact objective values");
  auto [lo, hi] = clipped_box(program.bounds, box_limit);
  return brute_force_minimize(RowConstraints::equalities(program.matrix(), program.rhs), lo, hi,
                              [&](const IntVector& x) { return objective.evaluate(x); }, budget);
}

OracleResult brute_force_solve(const GeneralizedNFoldProgram& program, const Integer& box_limit,
                               const Budget& budget) {
  program.validate();
  if (program.f.has_oracle() || program.g.has_oracle()) {
    throw OracleEvaluationError("the enumeration oracle needs exact objective values");
  }
  auto [lo, hi] = clipped_box(program.bounds, box_limit);
  RowConstraints rows = RowConstraints::equalities(nfold_product(program.a, program.n), program.rhs)
                            .stack(RowConstraints{program.load_matrix(), program.w_bounds.lower,
                                                  program.w_bounds.upper});
  return brute_force_minimize(rows, lo, hi, [&](const IntVector& x) { return program.objective_value(x); }, budget);
}

TransshipmentOracleResult brute_force_solve(const TransshipmentInstance& instance, const Budget& budget) {
  instance.validate();
  TransshipmentOracleResult out;
  if (!instance.balanced()) return out;
  const std::size_t t = instance.graph.edge_count(), l = instance.commodities;
  const IntMatrix d = incidence_matrix(instance.graph);
  const IntVector lo(t);
  const IntVector& hi = instance.capacities;

  struct Option {
    IntVector flow;
    Integer cost;
  };
  std::vector<std::vector<Option>> options(l);
  for (std::size_t k = 0; k < l; ++k) {
    enumerate_box(
        RowConstraints::equalities(d, instance.demands[k]), lo, hi,
        [&](const IntVector& x) {
          Integer cost;
          for (std::size_t e = 0; e < t; ++e) cost += instance.commodity_costs[k][e](x[e]);
          options[k].push_back({x, std::move(cost)});
        },
        budget);
    if (options[k].empty()) return out;
  }

  // Commodities in order, each over its flows in lexicographic order, so the
  // first strict minimum is the lexicographically smallest witness.
  Deadline deadline(budget);
  std::size_t nodes = 0;
  std::vector<std::size_t> choice(l);
  IntVector load(t);
  std::optional<Integer> best;
  std::vector<std::size_t> best_choice;
  std::function<void(std::size_t, const Integer&)> combine = [&](std::size_t k, const Integer& partial) {
    if (++nodes > budget.max_enumeration_nodes) throw BudgetExceeded("oracle combination node cap exceeded");
    if ((nodes & 0xffff) == 0) deadline.check("oracle combination");
    if (k == l) {
      Integer cost = partial;
      for (std::size_t e = 0; e < t; ++e) cost += instance.edge_costs[e](load[e]);
      if (!best || cost < *best) {
        best = std::move(cost);
        best_choice = choice;
      }
      return;
    }
    for (std::size_t c = 0; c < options[k].size(); ++c) {
      const IntVector& x = options[k][c].flow;
      load += x;
      bool fits = true;
      for (std::size_t e = 0; e < t && fits; ++e) fits = load[e] <= instance.capacities[e];
      if (fits) {
        choice[k] = c;
        combine(k + 1, partial + options[k][c].cost);
      }
      load -= x;
    }
  };
  combine(0, Integer{});
  if (!best) return out;
  out.status = SolveStatus::Optimal;
  out.total_cost = best;
  out.flows.emplace();
  for (std::size_t k = 0; k < l; ++k) out.flows->push_back(options[k][best_choice[k]].flow);
  return out;
}

TransportationOracleResult brute_force_solve(const TransportationInstance& instance, const Budget& budget) {
  instance.validate();
  TransportationOracleResult out;
  if (!instance.balanced()) return out;
  const std::size_t m = instance.suppliers, n = instance.consumers, l = instance.commodities;
  const std::size_t dim = n * m * l;
  auto index = [&](std::size_t j, std::size_t i, std::size_t k) { return (j * m + i) * l + k; };

  // supply rows (i,k), consumption rows (j,k), capacity rows (i,j)
  IntMatrix a(m * l + n * l + m * n, dim);
  RowConstraints rows{IntMatrix{}, {}, {}};
  std::size_t r = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < l; ++k, ++r) {
      for (std::size_t j = 0; j < n; ++j) a(r, index(j, i, k)) = 1;
      rows.lower.emplace_back(instance.supplies[i][k]);
      rows.upper.emplace_back(instance.supplies[i][k]);
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < l; ++k, ++r) {
      for (std::size_t i = 0; i < m; ++i) a(r, index(j, i, k)) = 1;
      rows.lower.emplace_back(instance.consumptions[j][k]);
      rows.upper.emplace_back(instance.consumptions[j][k]);
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j, ++r) {
      for (std::size_t k = 0; k < l; ++k) a(r, index(j, i, k)) = instance.volumes[k];
      rows.lower.emplace_back(std::nullopt);
      rows.upper.emplace_back(instance.capacities[i][j]);
    }
  }
  rows.matrix = std::move(a);

  IntVector lo(dim), hi(dim);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t k = 0; k < l; ++k) {
        hi[index(j, i, k)] = std::min(instance.supplies[i][k], instance.consumptions[j][k]);
      }
    }
  }
  auto unpack = [&](const IntVector& x) {
    std::vector<std::vector<IntVector>> flows(n, std::vector<IntVector>(m, IntVector(l)));
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k < l; ++k) flows[j][i][k] = x[index(j, i, k)];
      }
    }
    return flows;
  };
  OracleResult r0 = brute_force_minimize(
      rows, lo, hi,
      [&](const IntVector& x) {
        auto cost = transportation_cost(instance, unpack(x));
        if (!cost) throw OracleEvaluationError("the enumeration oracle needs exact objective values");
        return *cost;
      },
      budget);
  if (r0.status != SolveStatus::Optimal) return out;
  out.status = SolveStatus::Optimal;
  out.total_cost = r0.objective_value;
  out.flows = unpack(*r0.witness);
  return out;
}

}  // namespace nfold
