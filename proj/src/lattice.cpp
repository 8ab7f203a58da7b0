#include "nfold/lattice.hpp"

#include <algorithm>
#include <sstream>

#include "nfold/errors.hpp"

namespace nfold {

// ---------------------------------------------------------------- IntVector

bool IntVector::is_zero() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](const Integer& v) { return v.is_zero(); });
}

Integer IntVector::l1_norm() const {
  Integer out;
  for (const auto& v : entries_) out += v.abs();
  return out;
}

Integer IntVector::max_norm() const {
  Integer out;
  for (const auto& v : entries_) {
    if (compare_abs(v, out) > 0) out = v.abs();
  }
  return out;
}

std::size_t IntVector::first_nonzero() const noexcept {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!entries_[i].is_zero()) return i;
  }
  return entries_.size();
}

IntVector IntVector::slice(std::size_t offset, std::size_t length) const {
  if (offset + length > entries_.size()) throw DimensionError("vector slice out of range");
  return IntVector(std::vector<Integer>(entries_.begin() + static_cast<std::ptrdiff_t>(offset),
                                        entries_.begin() + static_cast<std::ptrdiff_t>(offset + length)));
}

IntVector& IntVector::operator+=(const IntVector& rhs) {
  if (rhs.size() != size()) throw DimensionError("vector addition: dimension mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += rhs.entries_[i];
  return *this;
}

IntVector& IntVector::operator-=(const IntVector& rhs) {
  if (rhs.size() != size()) throw DimensionError("vector subtraction: dimension mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= rhs.entries_[i];
  return *this;
}

IntVector& IntVector::operator*=(const Integer& scalar) {
  for (auto& v : entries_) v *= scalar;
  return *this;
}

IntVector& IntVector::add_scaled(const Integer& scalar, const IntVector& rhs) {
  if (rhs.size() != size()) throw DimensionError("vector addition: dimension mismatch");
  if (scalar.is_zero()) return *this;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!rhs.entries_[i].is_zero()) entries_[i] += scalar * rhs.entries_[i];
  }
  return *this;
}

IntVector IntVector::operator-() const {
  IntVector out(*this);
  for (auto& v : out.entries_) v = -v;
  return out;
}

std::string IntVector::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) os << ',';
    os << entries_[i];
  }
  os << ')';
  return os.str();
}

Integer dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw DimensionError("dot product: dimension mismatch");
  Integer out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_zero() && !b[i].is_zero()) out += a[i] * b[i];
  }
  return out;
}

IntVector concat(std::initializer_list<const IntVector*> parts) {
  std::vector<Integer> out;
  for (const IntVector* p : parts) out.insert(out.end(), p->begin(), p->end());
  return IntVector(std::move(out));
}

bool conformal_leq(const IntVector& x, const IntVector& y) {
  if (x.size() != y.size()) {
    throw DimensionError("conformal_leq: dimensions " + std::to_string(x.size()) + " and " +
                         std::to_string(y.size()) + " differ");
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    const int sx = x[i].sign();
    if (sx == 0) continue;
    if (sx != y[i].sign()) return false;
    if (compare_abs(x[i], y[i]) > 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------- IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> row_major)
    : rows_(rows), cols_(cols), entries_(std::move(row_major)) {
  if (entries_.size() != rows * cols) throw DimensionError("matrix entry count does not match shape");
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1;
  return out;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Integer>>& rows, std::optional<std::size_t> cols) {
  const std::size_t width = cols ? *cols : (rows.empty() ? 0 : rows.front().size());
  IntMatrix out(rows.size(), width);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != width) throw DimensionError("ragged matrix rows");
    for (std::size_t j = 0; j < width; ++j) out(i, j) = rows[i][j];
  }
  return out;
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<Integer>> rows) {
  std::vector<std::vector<Integer>> nested;
  for (const auto& r : rows) nested.emplace_back(r);
  return from_rows(nested);
}

IntMatrix IntMatrix::vstack(const IntMatrix& top, const IntMatrix& bottom) {
  if (top.cols() != bottom.cols()) throw DimensionError("vstack: column counts differ");
  IntMatrix out(top.rows() + bottom.rows(), top.cols());
  out.set_block(0, 0, top);
  out.set_block(top.rows(), 0, bottom);
  return out;
}

IntMatrix IntMatrix::hstack(const IntMatrix& left, const IntMatrix& right) {
  if (left.rows() != right.rows()) throw DimensionError("hstack: row counts differ");
  IntMatrix out(left.rows(), left.cols() + right.cols());
  out.set_block(0, 0, left);
  out.set_block(0, left.cols(), right);
  return out;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, const std::vector<IntVector>& columns) {
  IntMatrix out(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw DimensionError("from_columns: column has wrong dimension");
    for (std::size_t i = 0; i < rows; ++i) out(i, j) = columns[j][i];
  }
  return out;
}

IntVector IntMatrix::row(std::size_t i) const {
  auto span = row_span(i);
  return IntVector(std::vector<Integer>(span.begin(), span.end()));
}

IntVector IntMatrix::column(std::size_t j) const {
  IntVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

void IntMatrix::set_block(std::size_t row, std::size_t col, const IntMatrix& block) {
  if (row + block.rows() > rows_ || col + block.cols() > cols_) throw DimensionError("set_block out of range");
  for (std::size_t i = 0; i < block.rows(); ++i) {
    for (std::size_t j = 0; j < block.cols(); ++j) (*this)(row + i, col + j) = block(i, j);
  }
}

IntMatrix IntMatrix::columns_subset(const std::vector<std::size_t>& cols) const {
  IntMatrix out(rows_, cols.size());
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = (*this)(i, cols[j]);
  }
  return out;
}

IntVector IntMatrix::operator*(const IntVector& x) const {
  if (x.size() != cols_) throw DimensionError("matrix-vector product: dimension mismatch");
  IntVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Integer acc;
    for (std::size_t j = 0; j < cols_; ++j) {
      const Integer& a = (*this)(i, j);
      if (!a.is_zero() && !x[j].is_zero()) acc += a * x[j];
    }
    out[i] = std::move(acc);
  }
  return out;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw DimensionError("matrix product: dimension mismatch");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        if (!rhs(k, j).is_zero()) out(i, j) += a * rhs(k, j);
      }
    }
  }
  return out;
}

std::uint64_t IntMatrix::fingerprint() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xffU;
      h *= 1099511628211ULL;
    }
  };
  mix(rows_);
  mix(cols_);
  for (const auto& e : entries_) {
    if (e.is_small()) {
      mix(static_cast<std::uint64_t>(e.to_int64()));
    } else {
      for (char c : e.to_string()) mix(static_cast<unsigned char>(c));
    }
  }
  return h;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    os << '[';
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ' ';
      os << (*this)(i, j);
    }
    os << "]\n";
  }
  return os.str();
}

// ---------------------------------------------------------------- Bimatrix

Bimatrix::Bimatrix(IntMatrix top, IntMatrix bottom) : top_(std::move(top)), bottom_(std::move(bottom)) {
  if (top_.cols() != bottom_.cols()) {
    throw DimensionError("bimatrix blocks have " + std::to_string(top_.cols()) + " and " +
                         std::to_string(bottom_.cols()) + " columns");
  }
}

IntMatrix nfold_product(const Bimatrix& a, std::size_t n) {
  if (n == 0) throw std::invalid_argument("nfold_product: n must be positive");
  const std::size_t r = a.r(), s = a.s(), t = a.t();
  IntMatrix out(r + n * s, n * t);
  for (std::size_t k = 0; k < n; ++k) {
    out.set_block(0, k * t, a.top());
    out.set_block(r + k * s, k * t, a.bottom());
  }
  return out;
}

IntMatrix special_product(const IntMatrix& d, std::size_t n) {
  return nfold_product(Bimatrix(IntMatrix::identity(d.cols()), d), n);
}

std::size_t block_type(const IntVector& x, std::size_t t) {
  if (t == 0 || x.size() % t != 0) throw DimensionError("block_type: dimension is not a multiple of t");
  std::size_t type = 0;
  for (std::size_t k = 0; k < x.size() / t; ++k) {
    for (std::size_t i = 0; i < t; ++i) {
      if (!x[k * t + i].is_zero()) {
        ++type;
        break;
      }
    }
  }
  return type;
}

// ---------------------------------------------------------------- Digraph

Digraph::Digraph(std::size_t vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto& [tail, head] = edges_[e];
    if (tail >= vertex_count_ || head >= vertex_count_) {
      throw InvalidInstance("edge " + std::to_string(e) + " has an endpoint outside the vertex set");
    }
    if (tail == head) throw InvalidInstance("edge " + std::to_string(e) + " is a self-loop");
  }
}

Digraph Digraph::complete_bipartite(std::size_t m, std::size_t n) {
  std::vector<Edge> edges;
  edges.reserve(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) edges.push_back({i, m + j});
  }
  return Digraph(m + n, std::move(edges));
}

IntMatrix incidence_matrix(const Digraph& g) {
  IntMatrix out(g.vertex_count(), g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    out(g.edges()[e].tail, e) = -1;
    out(g.edges()[e].head, e) = 1;
  }
  return out;
}

// ---------------------------------------------------------------- kernels

namespace {

// Unimodular row reduction of [A^T | I]. Rows [0, rank) are in echelon form on
// the first m columns with pivots at `pivots`; rows [rank, n) vanish there and
// their identity part spans ker(A) ∩ Z^n.
struct TransposedEchelon {
  std::vector<std::vector<Integer>> rows;
  std::vector<std::size_t> pivots;
  std::size_t m = 0;
};

TransposedEchelon reduce_transpose(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  TransposedEchelon out;
  out.m = m;
  out.rows.assign(n, std::vector<Integer>(m + n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < m; ++c) out.rows[i][c] = a(c, i);
    out.rows[i][m + i] = 1;
  }
  auto& R = out.rows;
  std::size_t row = 0;
  for (std::size_t c = 0; c < m && row < n; ++c) {
    while (true) {
      std::size_t piv = n;
      for (std::size_t i = row; i < n; ++i) {
        if (R[i][c].is_zero()) continue;
        if (piv == n || compare_abs(R[i][c], R[piv][c]) < 0) piv = i;
      }
      if (piv == n) break;
      std::swap(R[row], R[piv]);
      bool cleared = true;
      for (std::size_t i = row + 1; i < n; ++i) {
        if (R[i][c].is_zero()) continue;
        const Integer q = trunc_div(R[i][c], R[row][c]);
        for (std::size_t k = 0; k < m + n; ++k) {
          if (!R[row][k].is_zero()) R[i][k] -= q * R[row][k];
        }
        if (!R[i][c].is_zero()) cleared = false;
      }
      if (cleared) {
        out.pivots.push_back(c);
        ++row;
        break;
      }
    }
  }
  return out;
}

}  // namespace

std::vector<IntVector> integer_kernel(const IntMatrix& a) {
  const auto ech = reduce_transpose(a);
  const std::size_t n = a.cols(), m = a.rows();
  std::vector<IntVector> basis;
  for (std::size_t i = ech.pivots.size(); i < n; ++i) {
    basis.emplace_back(std::vector<Integer>(ech.rows[i].begin() + static_cast<std::ptrdiff_t>(m), ech.rows[i].end()));
  }
  return basis;
}

std::optional<IntVector> solve_integer_system(const IntMatrix& a, const IntVector& b) {
  if (b.size() != a.rows()) throw DimensionError("solve_integer_system: right-hand side has wrong dimension");
  const auto ech = reduce_transpose(a);
  const std::size_t n = a.cols(), m = a.rows();
  std::vector<Integer> y(ech.pivots.size());
  for (std::size_t i = 0; i < ech.pivots.size(); ++i) {
    const std::size_t c = ech.pivots[i];
    Integer rest = b[c];
    for (std::size_t j = 0; j < i; ++j) rest -= ech.rows[j][c] * y[j];
    const Integer& p = ech.rows[i][c];
    if (!trunc_mod(rest, p).is_zero()) return std::nullopt;
    y[i] = trunc_div(rest, p);
  }
  IntVector x(n);
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i].is_zero()) continue;
    for (std::size_t k = 0; k < n; ++k) {
      const Integer& u = ech.rows[i][m + k];
      if (!u.is_zero()) x[k] += y[i] * u;
    }
  }
  if (a * x != b) return std::nullopt;
  return x;
}

}  // namespace nfold
