#include <gtest/gtest.h>

#include <chrono>

#include "generators.hpp"
#include "nfold/errors.hpp"
#include "nfold/graver.hpp"

using namespace nfold;

namespace {

std::vector<IntVector> vecs(std::initializer_list<std::initializer_list<Integer>> rows) {
  std::vector<IntVector> out;
  for (const auto& r : rows) out.emplace_back(r);
  return out;
}

const Bimatrix kSmallBimatrix(IntMatrix::from_rows({{1, 1}}), IntMatrix::from_rows({{1, -1}}));

Bimatrix k33_bimatrix() {
  return Bimatrix(IntMatrix::identity(9), incidence_matrix(Digraph::complete_bipartite(3, 3)));
}

}  // namespace

// Expected bases below were produced by the brute-force oracle in
// tests/support and frozen.

TEST(GraverBasis, FrozenSingleRows) {
  EXPECT_EQ(graver_basis(IntMatrix::from_rows({{1, 1, 1}})).elements(),
            vecs({{0, 1, -1}, {1, -1, 0}, {1, 0, -1}}));
  EXPECT_EQ(graver_basis(IntMatrix::from_rows({{1, 2}})).elements(), vecs({{2, -1}}));
  EXPECT_EQ(graver_basis(IntMatrix::from_rows({{1, 2, 3}})).elements(),
            vecs({{0, 3, -2}, {1, -2, 1}, {1, 1, -1}, {2, -1, 0}, {3, 0, -1}}));
  EXPECT_EQ(graver_basis(IntMatrix::from_rows({{2, 3, 5}})).elements(),
            vecs({{0, 5, -3}, {1, -4, 2}, {1, 1, -1}, {2, -3, 1}, {3, -2, 0}, {4, -1, -1}, {5, 0, -2}}));
}

TEST(GraverBasis, FrozenTwoRows) {
  EXPECT_EQ(graver_basis(IntMatrix::from_rows({{1, 1, 0, -1}, {0, 1, 2, 1}})).elements(),
            vecs({{0, 1, -1, 1}, {2, -2, 1, 0}, {2, -1, 0, 1}, {2, 0, -1, 2}}));
}

TEST(GraverBasis, TrivialKernel) {
  EXPECT_TRUE(graver_basis(IntMatrix::identity(4)).empty());
  EXPECT_TRUE(graver_basis(IntMatrix::from_rows({{2}})).empty());
}

TEST(GraverBasis, ZeroMatrixGivesUnitVectors) {
  EXPECT_EQ(graver_basis(IntMatrix(1, 3)).elements(), vecs({{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}));
}

TEST(GraverBasis, NonUnitPivotsHandled) {
  // Every coordinate has a non-unit coefficient.
  const IntMatrix a = IntMatrix::from_rows({{2, 3, -4}, {3, -2, 5}});
  const auto expected = gen::to_vectors(oracle::graver_basis({{2, 3, -4}, {3, -2, 5}}, 3));
  EXPECT_EQ(graver_basis(a).elements(), expected);
}

TEST(GraverBasis, ConstructorCanonicalizes) {
  const GraverBasis b(2, vecs({{-1, 2}, {1, -2}, {0, 3}}), 0);
  EXPECT_EQ(b.elements(), vecs({{0, 3}, {1, -2}}));
  EXPECT_TRUE(b.contains(IntVector{-1, 2}));
  EXPECT_FALSE(b.contains(IntVector{1, 2}));
  EXPECT_THROW(GraverBasis(2, vecs({{0, 0}}), 0), std::invalid_argument);
  EXPECT_THROW(GraverBasis(2, vecs({{1, 0, 0}}), 0), DimensionError);
}

TEST(GraverBasis, AlgorithmsAgree) {
  gen::Rng rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t rows = 1 + rng.index(2), cols = 2 + rng.index(3);
    const IntMatrix a = gen::to_matrix(gen::random_mat(rng, rows, cols, -2, 2), cols);
    GraverOptions completion;
    completion.algorithm = GraverAlgorithm::Completion;
    EXPECT_EQ(graver_basis(a), graver_basis(a, completion)) << a.to_string();
  }
}

TEST(GraverBasis, ElementBudgetIsEnforced) {
  GraverOptions options;
  options.budget.max_elements = 3;
  EXPECT_THROW(graver_basis(IntMatrix::from_rows({{2, 3, 5}}), options), BudgetExceeded);
}

TEST(GraverBasis, CacheReturnsStoredBasis) {
  GraverCache cache;
  GraverOptions options;
  options.cache = &cache;
  const IntMatrix a = IntMatrix::from_rows({{1, 2, 3}});
  const GraverBasis first = graver_basis(a, options);
  EXPECT_EQ(cache.basis_count(), 1u);
  EXPECT_EQ(graver_basis(a, options), first);
  EXPECT_EQ(cache.basis_count(), 1u);
  ASSERT_NE(cache.find_basis(a), nullptr);
  EXPECT_EQ(cache.find_basis(IntMatrix::from_rows({{1, 2, 4}})), nullptr);
}

TEST(GraverComplexity, CompleteBipartiteThreeThreeIsNine) {
  EXPECT_EQ(graver_complexity(k33_bimatrix()), 9u);
}

TEST(GraverComplexity, SmallBimatrixIsTwo) {
  // Confirmed by the n-fold oracle: G(A^(n)) for n = 1..4 has type at most 2
  // and type 2 is reached.
  EXPECT_EQ(graver_complexity(kSmallBimatrix), 2u);
  std::size_t max_type = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& g : oracle::graver_basis(oracle::nfold({{1, 1}}, {{1, -1}}, 2, n), 2 * n)) {
      max_type = std::max(max_type, block_type(gen::to_vector(g), 2));
    }
  }
  EXPECT_EQ(max_type, 2u);
}

TEST(GraverComplexity, DegenerateCases) {
  // Trivial kernel of the bottom block.
  EXPECT_EQ(graver_complexity(Bimatrix(IntMatrix(0, 1), IntMatrix::from_rows({{2}}))), 0u);
  EXPECT_EQ(graver_complexity(Bimatrix(IntMatrix::from_rows({{1, 1, 1}}), IntMatrix::from_rows({{1, 1, 1}}))), 1u);
  // Empty top: blocks never interact.
  EXPECT_EQ(graver_complexity(Bimatrix(IntMatrix(0, 2), IntMatrix::from_rows({{1, -1}}))), 1u);
}

TEST(GraverComplexity, MatchesOracleOnSmallBimatrices) {
  gen::Rng rng(77);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t t = 2 + rng.index(2);
    const auto top = gen::random_mat(rng, 1, t, -1, 1);
    const auto bottom = gen::random_mat(rng, 1, t, -1, 1);
    const Bimatrix a(gen::to_matrix(top, t), gen::to_matrix(bottom, t));
    const std::size_t g = graver_complexity(a);
    std::size_t seen = 0;
    for (std::size_t n = 1; n <= g + 1 && n * t <= 9; ++n) {
      for (const auto& v : oracle::graver_basis(oracle::nfold(top, bottom, t, n), n * t)) {
        seen = std::max(seen, block_type(gen::to_vector(v), t));
      }
    }
    EXPECT_LE(seen, g) << a.stacked().to_string();
  }
}

TEST(NFoldGraver, SmallBimatrixFrozen) {
  EXPECT_TRUE(nfold_graver(kSmallBimatrix, 1).empty());
  EXPECT_EQ(nfold_graver(kSmallBimatrix, 2).elements(), vecs({{1, 1, -1, -1}}));
  EXPECT_EQ(nfold_graver(kSmallBimatrix, 4).elements(),
            vecs({{0, 0, 0, 0, 1, 1, -1, -1},
                  {0, 0, 1, 1, -1, -1, 0, 0},
                  {0, 0, 1, 1, 0, 0, -1, -1},
                  {1, 1, -1, -1, 0, 0, 0, 0},
                  {1, 1, 0, 0, -1, -1, 0, 0},
                  {1, 1, 0, 0, 0, 0, -1, -1}}));
}

TEST(NFoldGraver, LiftingMatchesDirectComputation) {
  const Bimatrix ones(IntMatrix::identity(3), IntMatrix::from_rows({{1, 1, 1}}));
  for (std::size_t n = 1; n <= 5; ++n) {
    NFoldGraverOptions direct;
    direct.lift_by_complexity = false;
    EXPECT_EQ(nfold_graver(ones, n), nfold_graver(ones, n, direct)) << "n=" << n;
    EXPECT_EQ(nfold_graver(kSmallBimatrix, n), nfold_graver(kSmallBimatrix, n, direct)) << "n=" << n;
  }
}

TEST(NFoldGraver, DegenerateTwoIdentity) {
  const Bimatrix a(IntMatrix(0, 1), IntMatrix::from_rows({{2}}));
  for (std::size_t n = 1; n <= 10; ++n) {
    const GraverBasis g = nfold_graver(a, n);
    EXPECT_TRUE(g.empty());
    EXPECT_EQ(g.ambient_dimension(), n);
  }
}

TEST(NFoldGraver, TimeBudgetAborts) {
  NFoldGraverOptions options;
  options.budget.max_time = std::chrono::milliseconds(1);
  const Bimatrix k34(IntMatrix::identity(12), incidence_matrix(Digraph::complete_bipartite(3, 4)));
  EXPECT_THROW(nfold_graver(k34, 5, options), BudgetExceeded);
}

TEST(ExtendedGraver, AssembledShape) {
  const Bimatrix a(IntMatrix(0, 2), IntMatrix::from_rows({{1, -1}}));
  const Bimatrix w(IntMatrix::from_rows({{1, 0}}), IntMatrix::from_rows({{0, 1}}));
  const IntMatrix m = assemble_extended(a, w, 2);
  EXPECT_EQ(m.rows(), 2u + 1u + 2u);
  EXPECT_EQ(m.cols(), 4u + 1u + 2u);
  EXPECT_EQ(m.row(2), (IntVector{1, 0, 1, 0, 1, 0, 0}));
  EXPECT_EQ(m.row(3), (IntVector{0, 1, 0, 0, 0, 1, 0}));
}

TEST(ExtendedGraver, RoutesAgree) {
  gen::Rng rng(31);
  for (int trial = 0; trial < 8; ++trial) {
    const std::size_t t = 2;
    const Bimatrix a(gen::to_matrix(gen::random_mat(rng, rng.index(2), t, -1, 1), t),
                     gen::to_matrix(gen::random_mat(rng, 1, t, -1, 1), t));
    const Bimatrix w(gen::to_matrix(gen::random_mat(rng, rng.index(2), t, -1, 1), t),
                     gen::to_matrix(gen::random_mat(rng, 1, t, -1, 1), t));
    const std::size_t n = 1 + rng.index(2);
    EXPECT_EQ(extended_nfold_graver(a, w, n, ExtendedGraverRoute::BlockLifting),
              extended_nfold_graver(a, w, n, ExtendedGraverRoute::Assembled));
  }
}
