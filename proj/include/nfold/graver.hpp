#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "nfold/budget.hpp"
#include "nfold/lattice.hpp"

namespace nfold {

/// The ⊑-minimal nonzero integer kernel vectors of a matrix, stored as one
/// representative per antipodal pair {g, -g}. Representatives have a positive
/// first nonzero entry and are kept in lexicographic order.
class GraverBasis {
 public:
  GraverBasis() = default;
  /// Canonicalizes signs, sorts and removes duplicates.
  GraverBasis(std::size_t ambient_dimension, std::vector<IntVector> elements, std::uint64_t matrix_fingerprint);

  std::size_t ambient_dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  const std::vector<IntVector>& elements() const noexcept { return elements_; }
  std::uint64_t matrix_fingerprint() const noexcept { return fingerprint_; }

  /// True when g or -g is an element.
  bool contains(const IntVector& g) const;

  friend bool operator==(const GraverBasis& a, const GraverBasis& b) {
    return a.dimension_ == b.dimension_ && a.elements_ == b.elements_;
  }

 private:
  std::size_t dimension_ = 0;
  std::vector<IntVector> elements_;
  std::uint64_t fingerprint_ = 0;
};

/// Flips the sign of a nonzero vector so its first nonzero entry is positive.
IntVector canonical_representative(IntVector v);

enum class GraverAlgorithm {
  /// Completion coordinate by coordinate from a lattice basis.
  ProjectAndLift,
  /// Plain critical-pair completion over all coordinates at once.
  Completion,
};

class GraverCache;

struct GraverOptions {
  Budget budget;
  GraverAlgorithm algorithm = GraverAlgorithm::ProjectAndLift;
  /// Optional memo shared across calls; not thread-safe.
  GraverCache* cache = nullptr;
};

/// Graver basis of an arbitrary integer matrix. Returns an empty basis when
/// the integer kernel is trivial. Throws BudgetExceeded.
GraverBasis graver_basis(const IntMatrix& a, const GraverOptions& options = {});

/// Largest number of nonzero blocks of any element of G(A^(n)) over all n.
/// Zero when the bottom block has a trivial kernel.
std::size_t graver_complexity(const Bimatrix& a, const GraverOptions& options = {});

struct NFoldGraverOptions : GraverOptions {
  /// When set and n exceeds the Graver complexity g, G(A^(g)) is computed
  /// once and its elements are spread over all block placements. If g is
  /// not known and its computation grows past a fixed size, A^(n) is
  /// completed directly instead.
  bool lift_by_complexity = true;
  std::optional<std::size_t> known_complexity;
};

/// G(A^(n)).
GraverBasis nfold_graver(const Bimatrix& a, std::size_t n, const NFoldGraverOptions& options = {});

enum class ExtendedGraverRoute {
  /// Builds the bimatrix D from A and W, computes G(D^(n)), permutes blocks
  /// and keeps elements whose extra y-blocks vanish.
  BlockLifting,
  /// Runs completion directly on the assembled matrix.
  Assembled,
};

/// The matrix ((A^(n), 0), (W^(n), I)) with nt + p + nq columns.
IntMatrix assemble_extended(const Bimatrix& a, const Bimatrix& w, std::size_t n);

/// G(assemble_extended(a, w, n)).
GraverBasis extended_nfold_graver(const Bimatrix& a, const Bimatrix& w, std::size_t n,
                                  ExtendedGraverRoute route = ExtendedGraverRoute::BlockLifting,
                                  const NFoldGraverOptions& options = {});

/// Memo of Graver bases keyed by exact matrix and of complexities keyed by
/// bimatrix. Entries are only stored for completed computations.
class GraverCache {
 public:
  const GraverBasis* find_basis(const IntMatrix& a) const;
  void store_basis(const IntMatrix& a, const GraverBasis& basis);
  std::optional<std::size_t> find_complexity(const Bimatrix& a) const;
  void store_complexity(const Bimatrix& a, std::size_t value);
  std::size_t basis_count() const noexcept;

 private:
  std::multimap<std::uint64_t, std::pair<IntMatrix, GraverBasis>> bases_;
  std::multimap<std::uint64_t, std::pair<Bimatrix, std::size_t>> complexities_;
};

}  // namespace nfold
