// Acceptance checks. `acceptance N` runs criterion N, `acceptance` runs all
// of them. Each criterion prints one [PASS]/[FAIL] line; the exit status is
// nonzero when any selected criterion fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>

#include "generators.hpp"
#include "nfold/commands.hpp"
#include "nfold/graver.hpp"
#include "nfold/oracle.hpp"

using namespace nfold;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

// ------------------------------------------------------------------ 1

Outcome graver_complexity_k33() {
  const char* k33 = R"({"format_version":"1","kind":"digraph","payload":{"vertices":6,
    "edges":[[1,4],[1,5],[1,6],[2,4],[2,5],[2,6],[3,4],[3,5],[3,6]]}})";
  cli::CommandOptions options;
  options.budget.max_time = std::chrono::minutes(10);
  const auto start = Clock::now();
  const auto r = cli::run_command("complexity", k33, options);
  const double took = seconds_since(start);
  if (r.exit_code != cli::kOk) return fail("exit code " + std::to_string(r.exit_code) + ": " + r.output.dump());
  const auto g = r.output["graver_complexity"].get<std::size_t>();
  std::ostringstream d;
  d << "g(K3,3) = " << g << " in " << took << " s (expected 9)";
  return {g == 9 && took <= 600, d.str()};
}

// ------------------------------------------------------------------ 2

Outcome displayed_matrix() {
  const IntMatrix displayed = IntMatrix::from_rows({
      {1, 0, 0, 1, 0, 0, 1, 0, 0},
      {0, 1, 0, 0, 1, 0, 0, 1, 0},
      {0, 0, 1, 0, 0, 1, 0, 0, 1},
      {1, 1, 1, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 1, 1, 1, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 1, 1, 1},
  });
  const IntMatrix u = universal_matrix(3, 1);
  // universal_matrix(3, 1) = (I_9 ; 1_3^[3]); the factor is its bottom block.
  IntMatrix factor(6, 9);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 9; ++j) factor(i, j) = u(9 + i, j);
  }
  if (u.rows() != 15 || u.cols() != 9) return fail("universal_matrix(3,1) has shape " + std::to_string(u.rows()) + "x" +
                                                   std::to_string(u.cols()));
  if (factor != displayed) return fail("factor differs:\n" + factor.to_string());
  const auto cli_factor = cli::cmd_universal(3, 1).output["factor"];
  if (cli_factor != io::to_json(displayed)) return fail("cmd_universal factor differs");
  return {true, "1_3^[3] equals the 6x9 display entry for entry"};
}

// ------------------------------------------------------------------ 3

Outcome degenerate_nfold() {
  const Bimatrix a(IntMatrix(0, 1), IntMatrix::from_rows({{2}}));
  for (std::size_t n = 1; n <= 10; ++n) {
    IntMatrix expected(n, n);
    for (std::size_t i = 0; i < n; ++i) expected(i, i) = 2;
    if (nfold_product(a, n) != expected) return fail("A^(" + std::to_string(n) + ") != 2 I");
    const GraverBasis g = nfold_graver(a, n);
    if (!g.empty() || g.ambient_dimension() != n) return fail("G(A^(" + std::to_string(n) + ")) is not empty");
    if (!graver_basis(expected).empty()) return fail("G(2 I) is not empty");
  }
  return {true, "A^(n) = 2 I_n with empty Graver basis for n = 1..10"};
}

// ------------------------------------------------------------------ 4

Outcome graver_corpus() {
  gen::Rng rng(20240404);
  const auto start = Clock::now();
  std::size_t elements = 0;
  for (int c = 0; c < 200; ++c) {
    const std::size_t rows = 1 + rng.index(3), cols = 1 + rng.index(4);
    const auto m = gen::random_mat(rng, rows, cols, -2, 2);
    const IntMatrix a = gen::to_matrix(m, cols);
    const auto expected = gen::to_vectors(oracle::graver_basis(m, cols));
    const GraverBasis got = graver_basis(a);
    if (got.elements() != expected) return fail("case " + std::to_string(c) + " differs on\n" + a.to_string());
    elements += expected.size();
  }
  std::ostringstream d;
  d << "200/200 matrices match the oracle (" << elements << " elements) in " << seconds_since(start) << " s";
  const double took = seconds_since(start);
  return {took <= 300, d.str()};
}

// ------------------------------------------------------------------ 5

Outcome extended_equivalence() {
  gen::Rng rng(5150);
  const auto start = Clock::now();
  std::size_t elements = 0;
  for (int c = 0; c < 25; ++c) {
    const std::size_t t = 2 + rng.index(2);
    const std::size_t r = rng.index(2), s = 1, p = rng.index(2), q = rng.index(2);
    const std::size_t n = 1 + rng.index(3);
    const Bimatrix a(gen::to_matrix(gen::random_mat(rng, r, t, -1, 1), t),
                     gen::to_matrix(gen::random_mat(rng, s, t, -2, 2), t));
    const Bimatrix w(gen::to_matrix(gen::random_mat(rng, p, t, -2, 2), t),
                     gen::to_matrix(gen::random_mat(rng, q, t, -2, 2), t));
    const GraverBasis lifted = extended_nfold_graver(a, w, n, ExtendedGraverRoute::BlockLifting);
    const GraverBasis direct = graver_basis(assemble_extended(a, w, n));
    if (lifted != direct) {
      return fail("case " + std::to_string(c) + " (n=" + std::to_string(n) + ") differs; A =\n" +
                  a.stacked().to_string() + "\nW =\n" + w.stacked().to_string());
    }
    elements += direct.size();
  }
  std::ostringstream d;
  d << "25/25 cases equal (" << elements << " elements) in " << seconds_since(start) << " s";
  return {seconds_since(start) <= 300, d.str()};
}

// ------------------------------------------------------------------ 6

Outcome transshipment_equivalence() {
  gen::Rng rng(6006);
  GraverCache cache;
  SolverOptions options;
  options.cache = &cache;
  const auto start = Clock::now();
  for (int c = 0; c < 100; ++c) {
    const std::size_t side = c % 2 == 0 ? 2 : 3;
    const std::size_t l = 1 + (c / 2) % 3;
    const auto inst = gen::random_transshipment(rng, side, l, 3);
    const auto want = brute_force_solve(inst);
    const auto slack = solve_transshipment(inst, TransshipmentEncoding::Slack, options);
    const auto general = solve_transshipment(inst, TransshipmentEncoding::Generalized, options);
    const std::string tag = "instance " + std::to_string(c) + " (K" + std::to_string(side) + "," +
                            std::to_string(side) + ", l=" + std::to_string(l) + ")";
    if (want.status != SolveStatus::Optimal) return fail(tag + ": oracle status " + std::string(to_string(want.status)));
    if (slack.report.status != SolveStatus::Optimal || general.report.status != SolveStatus::Optimal) {
      return fail(tag + ": solver status " + std::string(to_string(slack.report.status)) + "/" +
                  std::string(to_string(general.report.status)));
    }
    const Integer& a = *slack.solution->total_cost;
    const Integer& b = *general.solution->total_cost;
    if (a != *want.total_cost || b != *want.total_cost) {
      return fail(tag + ": slack " + a.to_string() + ", generalized " + b.to_string() + ", oracle " +
                  want.total_cost->to_string());
    }
  }
  std::ostringstream d;
  d << "100/100 instances, both encodings equal the oracle, in " << seconds_since(start) << " s";
  return {seconds_since(start) <= 600, d.str()};
}

// ------------------------------------------------------------------ 7

Outcome transportation_equivalence() {
  gen::Rng rng(7007);
  GraverCache cache;
  SolverOptions options;
  options.cache = &cache;
  const auto start = Clock::now();
  std::size_t optimal = 0, largest_basis = 0;
  for (int c = 0; c < 50; ++c) {
    const std::size_t n = c % 2 == 0 ? 2 : 3;
    const auto inst = gen::random_transportation(rng, 2, n, 2, 2, 6);
    const auto want = brute_force_solve(inst);
    const auto got = solve_transportation(inst, options);
    const std::string tag = "instance " + std::to_string(c) + " (n=" + std::to_string(n) + ")";
    if (got.report.status != want.status) {
      return fail(tag + ": solver " + std::string(to_string(got.report.status)) + ", oracle " +
                  std::string(to_string(want.status)));
    }
    largest_basis = std::max(largest_basis, got.report.graver_size);
    if (want.status == SolveStatus::Optimal) {
      ++optimal;
      if (*got.solution->total_cost != *want.total_cost) {
        return fail(tag + ": solver " + got.solution->total_cost->to_string() + ", oracle " +
                    want.total_cost->to_string());
      }
    }
  }
  std::ostringstream d;
  d << "50/50 instances match the oracle (" << optimal << " optimal, " << 50 - optimal
    << " infeasible, Graver bases up to " << largest_basis << " elements) in " << seconds_since(start) << " s";
  return {seconds_since(start) <= 600, d.str()};
}

// ------------------------------------------------------------------ 8

// Outflow capacity of a K_{side,side} source vertex cut below what its
// commodities must send.
TransshipmentInstance starve(TransshipmentInstance inst, gen::Rng& rng) {
  const std::size_t side = inst.graph.vertex_count() / 2;
  Integer needed;
  for (const auto& d : inst.demands) needed -= d[0];
  // Edges (0, j) are the first `side` edges.
  Integer room = needed - 1;
  for (std::size_t e = 0; e < side; ++e) {
    const Integer share = e + 1 == side ? room : Integer(rng.uniform(0, room.to_int64()));
    inst.capacities[e] = share;
    room -= share;
  }
  return inst;
}

Outcome infeasibility_corpus() {
  gen::Rng rng(8008);
  int cases = 0;
  auto check_transshipment = [&](const TransshipmentInstance& inst, const std::string& tag) -> std::optional<Outcome> {
    ++cases;
    if (brute_force_solve(inst).status != SolveStatus::Infeasible) return fail(tag + ": oracle finds a solution");
    for (auto enc : {TransshipmentEncoding::Slack, TransshipmentEncoding::Generalized}) {
      const auto r = solve_transshipment(inst, enc);
      if (r.report.status != SolveStatus::Infeasible) {
        return fail(tag + ": solver status " + std::string(to_string(r.report.status)));
      }
    }
    return std::nullopt;
  };
  // Imbalanced transshipment.
  for (int c = 0; c < 6; ++c) {
    auto inst = gen::random_transshipment(rng, 2 + c % 2, 1 + c % 2, 3);
    inst.demands[rng.index(inst.commodities)][rng.index(inst.graph.vertex_count())] += rng.coin() ? 1 : -1;
    if (auto o = check_transshipment(inst, "imbalanced transshipment " + std::to_string(c))) return *o;
  }
  // Capacity-starved transshipment: balanced but the source cut is too small.
  for (int c = 0; c < 6;) {
    auto inst = gen::random_transshipment(rng, 2 + c % 2, 1 + c % 2, 3);
    Integer needed;
    for (const auto& d : inst.demands) needed -= d[0];
    if (needed.sign() <= 0) continue;
    if (auto o = check_transshipment(starve(inst, rng), "starved transshipment " + std::to_string(c))) return *o;
    ++c;
  }
  auto check_transportation = [&](const TransportationInstance& inst, const std::string& tag) -> std::optional<Outcome> {
    ++cases;
    if (brute_force_solve(inst).status != SolveStatus::Infeasible) return fail(tag + ": oracle finds a solution");
    const auto r = solve_transportation(inst);
    if (r.report.status != SolveStatus::Infeasible) return fail(tag + ": solver status " + std::string(to_string(r.report.status)));
    return std::nullopt;
  };
  // Imbalanced transportation.
  for (int c = 0; c < 4; ++c) {
    auto inst = gen::random_transportation(rng, 2, 2 + c % 2, 2, 2, 6);
    inst.supplies[rng.index(2)][rng.index(2)] += 1;
    if (auto o = check_transportation(inst, "imbalanced transportation " + std::to_string(c))) return *o;
  }
  // Capacity-starved transportation: supplier 0 cannot ship its volume.
  for (int c = 0; c < 4;) {
    auto inst = gen::random_transportation(rng, 2, 2 + c % 2, 2, 2, 6);
    Integer volume;
    for (std::size_t k = 0; k < 2; ++k) {
      inst.volumes[k] = 1 + static_cast<std::int64_t>(k);
      volume += inst.volumes[k] * inst.supplies[0][k];
    }
    if (volume.sign() <= 0) continue;
    Integer room = volume - 1;
    for (std::size_t j = 0; j < inst.consumers; ++j) {
      const Integer share = j + 1 == inst.consumers ? room : Integer(rng.uniform(0, room.to_int64()));
      inst.capacities[0][j] = share;
      room -= share;
    }
    if (auto o = check_transportation(inst, "starved transportation " + std::to_string(c))) return *o;
    ++c;
  }
  return {cases == 20, std::to_string(cases) + " infeasible instances detected by solver and oracle"};
}

// ------------------------------------------------------------------ 9

Outcome growth_report() {
  std::printf("  %-4s %-4s %-10s %-12s %-12s\n", "n", "l", "|G|", "graver_s", "solve_s");
  const Bimatrix ones(IntMatrix::identity(3), IntMatrix::from_rows({{1, 1, 1}}));
  gen::Rng rng(9009);
  for (std::size_t n = 2; n <= 4; ++n) {
    const IntMatrix factor = special_product(IntMatrix::from_rows({{1, 1, 1}}), n);
    const Bimatrix outer(IntMatrix::identity(3 * n), factor);
    for (std::size_t l = 1; l <= 6; ++l) {
      NFoldGraverOptions options;
      options.budget.max_time = std::chrono::seconds(30);
      const auto start = Clock::now();
      std::size_t size = 0;
      try {
        size = nfold_graver(outer, l, options).size();
      } catch (const BudgetExceeded&) {
        std::printf("  %-4zu %-4zu %-10s %-12s %-12s\n", n, l, "-", "> 30", "-");
        break;
      }
      const double graver_s = seconds_since(start);
      // An (l-1)-commodity transshipment over K_{3,n} has the same slack
      // lattice as 1_3^[n][l].
      std::string solve_s = "-";
      if (l >= 2) {
        TransshipmentInstance inst = gen::random_transshipment(rng, 1, l - 1, 3);
        inst.graph = Digraph::complete_bipartite(3, n);
        const std::size_t t = inst.graph.edge_count();
        inst.capacities = IntVector(t);
        for (auto& c : inst.capacities) c = rng.uniform(1, 3);
        const IntMatrix d = incidence_matrix(inst.graph);
        inst.edge_costs.assign(t, Term::linear(1));
        inst.commodity_costs.assign(l - 1, std::vector<Term>(t, Term::abs_power(1, 2)));
        IntVector load(t);
        for (std::size_t k = 0; k < l - 1; ++k) {
          IntVector x(t);
          for (std::size_t e = 0; e < t; ++e) {
            x[e] = rng.uniform(0, (inst.capacities[e] - load[e]).to_int64());
            load[e] += x[e];
          }
          inst.demands[k] = d * x;
        }
        const auto solve_start = Clock::now();
        const auto r = solve_transshipment(inst, TransshipmentEncoding::Slack);
        std::ostringstream s;
        s << seconds_since(solve_start);
        solve_s = s.str() + " (" + std::string(to_string(r.report.status)) + ")";
      }
      std::printf("  %-4zu %-4zu %-10zu %-12.4f %s\n", n, l, size, graver_s, solve_s.c_str());
    }
  }
  std::fflush(stdout);
  return {true, "growth table printed above (report only)"};
}

const char* kNames[] = {
    "",
    "Graver complexity of K3,3",
    "displayed matrix 1_3^[3]",
    "degenerate n-fold (0;2)",
    "Graver corpus vs oracle",
    "extended Graver routes",
    "transshipment vs oracle",
    "transportation vs oracle",
    "infeasibility detection",
    "empirical growth report",
};

const std::function<Outcome()> kCriteria[] = {
    nullptr,
    graver_complexity_k33,
    displayed_matrix,
    degenerate_nfold,
    graver_corpus,
    extended_equivalence,
    transshipment_equivalence,
    transportation_equivalence,
    infeasibility_corpus,
    growth_report,
};

bool run(int k) {
  Outcome o;
  try {
    o = kCriteria[k]();
  } catch (const std::exception& e) {
    o = fail(std::string("exception: ") + e.what());
  }
  std::printf("[%s] %d %s: %s\n", o.pass ? "PASS" : "FAIL", k, kNames[k], o.detail.c_str());
  std::fflush(stdout);
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 2) {
    std::fprintf(stderr, "usage: acceptance [1-9]\n");
    return 2;
  }
  if (argc == 2) {
    const int k = std::atoi(argv[1]);
    if (k < 1 || k > 9) {
      std::fprintf(stderr, "criterion must be 1..9\n");
      return 2;
    }
    return run(k) ? 0 : 1;
  }
  bool all = true;
  for (int k = 1; k <= 9; ++k) all = run(k) && all;
  return all ? 0 : 1;
}
