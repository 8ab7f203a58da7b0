#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nfold/integer.hpp"

namespace nfold {

/// Integer vector whose dimension is fixed at construction.
class IntVector {
 public:
  IntVector() = default;
  explicit IntVector(std::size_t dimension) : entries_(dimension) {}
  IntVector(std::initializer_list<Integer> entries) : entries_(entries) {}
  explicit IntVector(std::vector<Integer> entries) : entries_(std::move(entries)) {}

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  Integer& operator[](std::size_t i) { return entries_[i]; }
  const Integer& operator[](std::size_t i) const { return entries_[i]; }

  auto begin() noexcept { return entries_.begin(); }
  auto end() noexcept { return entries_.end(); }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  const std::vector<Integer>& entries() const noexcept { return entries_; }

  bool is_zero() const noexcept;
  Integer l1_norm() const;
  Integer max_norm() const;
  /// Index of the first nonzero entry, or size() for the zero vector.
  std::size_t first_nonzero() const noexcept;
  IntVector slice(std::size_t offset, std::size_t length) const;

  IntVector& operator+=(const IntVector& rhs);
  IntVector& operator-=(const IntVector& rhs);
  IntVector& operator*=(const Integer& scalar);
  /// this += scalar * rhs
  IntVector& add_scaled(const Integer& scalar, const IntVector& rhs);
  IntVector operator-() const;

  friend IntVector operator+(IntVector a, const IntVector& b) { return a += b; }
  friend IntVector operator-(IntVector a, const IntVector& b) { return a -= b; }
  friend IntVector operator*(const Integer& s, IntVector v) { return v *= s; }

  friend bool operator==(const IntVector&, const IntVector&) = default;
  /// Lexicographic.
  friend std::strong_ordering operator<=>(const IntVector& a, const IntVector& b) {
    return a.entries_ <=> b.entries_;
  }

  std::string to_string() const;

 private:
  std::vector<Integer> entries_;
};

Integer dot(const IntVector& a, const IntVector& b);
IntVector concat(std::initializer_list<const IntVector*> parts);

/// x ⊑ y: same orthant and |x_i| <= |y_i| for every i. Throws DimensionError.
bool conformal_leq(const IntVector& x, const IntVector& y);

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> row_major);

  static IntMatrix identity(std::size_t n);
  /// Builds from nested rows. `cols` is needed to give zero-row matrices a width.
  static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows, std::optional<std::size_t> cols = {});
  static IntMatrix from_rows(std::initializer_list<std::initializer_list<Integer>> rows);
  static IntMatrix vstack(const IntMatrix& top, const IntMatrix& bottom);
  static IntMatrix hstack(const IntMatrix& left, const IntMatrix& right);
  /// Matrix whose columns are the given vectors (all of dimension `rows`).
  static IntMatrix from_columns(std::size_t rows, const std::vector<IntVector>& columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  std::span<const Integer> row_span(std::size_t i) const { return {entries_.data() + i * cols_, cols_}; }
  IntVector row(std::size_t i) const;
  IntVector column(std::size_t j) const;
  const std::vector<Integer>& entries() const noexcept { return entries_; }

  IntMatrix transpose() const;
  /// Copies `block` into this matrix with its top-left corner at (row, col).
  void set_block(std::size_t row, std::size_t col, const IntMatrix& block);
  IntMatrix columns_subset(const std::vector<std::size_t>& cols) const;

  IntVector operator*(const IntVector& x) const;
  IntMatrix operator*(const IntMatrix& rhs) const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  /// Stable 64-bit hash of shape and entries.
  std::uint64_t fingerprint() const;
  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> entries_;
};

/// (r,s)×t matrix split into a top block of r rows and a bottom block of s rows.
class Bimatrix {
 public:
  Bimatrix() = default;
  /// Throws DimensionError unless both blocks have the same column count.
  Bimatrix(IntMatrix top, IntMatrix bottom);

  std::size_t r() const noexcept { return top_.rows(); }
  std::size_t s() const noexcept { return bottom_.rows(); }
  std::size_t t() const noexcept { return top_.cols(); }
  const IntMatrix& top() const noexcept { return top_; }
  const IntMatrix& bottom() const noexcept { return bottom_; }
  IntMatrix stacked() const { return IntMatrix::vstack(top_, bottom_); }

  friend bool operator==(const Bimatrix&, const Bimatrix&) = default;

 private:
  IntMatrix top_;
  IntMatrix bottom_;
};

/// The (r+ns)×nt matrix with the top block repeated across the first r rows
/// and the bottom block on the diagonal. Block k occupies columns [k*t, (k+1)*t).
IntMatrix nfold_product(const Bimatrix& a, std::size_t n);

/// D^[n]: the n-fold product of the bimatrix (I_t ; D).
IntMatrix special_product(const IntMatrix& d, std::size_t n);

/// Number of nonzero t-blocks of x.
std::size_t block_type(const IntVector& x, std::size_t t);

struct Edge {
  std::size_t tail = 0;
  std::size_t head = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Loop-free digraph on vertices 0..vertex_count-1. Parallel edges are
/// allowed; edge order fixes the column order of the incidence matrix.
class Digraph {
 public:
  Digraph() = default;
  /// Throws InvalidInstance on self-loops or out-of-range endpoints.
  Digraph(std::size_t vertex_count, std::vector<Edge> edges);

  /// K_{m,n} with every edge oriented from the m-side (vertices 0..m-1) to
  /// the n-side (vertices m..m+n-1); edges listed as (i,j) in row-major order.
  static Digraph complete_bipartite(std::size_t m, std::size_t n);

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  friend bool operator==(const Digraph&, const Digraph&) = default;

 private:
  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;
};

/// s×t matrix with +1 where edge e enters v and -1 where it leaves v, so that
/// (D x)_v is net inflow at v.
IntMatrix incidence_matrix(const Digraph& g);

/// Basis of the lattice {x in Z^n : A x = 0}. The basis spans every integer
/// kernel point, not only a finite-index sublattice.
std::vector<IntVector> integer_kernel(const IntMatrix& a);

/// Some integer x with A x = b, or nullopt when none exists.
std::optional<IntVector> solve_integer_system(const IntMatrix& a, const IntVector& b);

}  // namespace nfold
