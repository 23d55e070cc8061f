#pragma once

// Exact linear algebra over Q. Elimination runs fraction-free on primitive
// integer rows (content is divided out after every row operation) and is
// normalized back to rationals only at the end.

#include "ihc/arith.hpp"
#include "ihc/matrix.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace ihc {

enum class PivotOrder { Forward, Reverse };

struct RankKernel {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_columns;  // in elimination order
  std::vector<std::size_t> free_columns;   // ascending
  /// Reduced row echelon form of the row space, one row per pivot (pivot entry 1).
  std::vector<RationalVector> row_basis;
  /// One vector per free column f: 1 at f, 0 at every other free column.
  std::vector<RationalVector> kernel_basis;
};

namespace detail {

inline void make_primitive(IntVector& row) {
  Integer g = content(row);
  if (g > 1)
    for (auto& x : row)
      if (x != 0) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

struct IntegerReduction {
  std::vector<IntVector> rows;  // rows[i] has its pivot at pivots[i]
  std::vector<std::size_t> pivots;
};

// Gauss-Jordan on primitive integer rows; lowest-index pivot row in the given
// column order.
inline IntegerReduction integer_gauss_jordan(std::vector<IntVector> rows, std::size_t cols,
                                             const std::vector<std::size_t>& column_order) {
  rows.erase(std::remove_if(rows.begin(), rows.end(), [](const IntVector& r) { return is_zero(r); }),
             rows.end());
  IntegerReduction out;
  std::size_t done = 0;
  std::vector<std::size_t> support;
  for (std::size_t c : column_order) {
    if (done == rows.size()) break;
    std::size_t p = done;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[done]);
    IntVector& piv = rows[done];
    if (piv[c] < 0)
      for (auto& x : piv) x = -x;
    support.clear();
    for (std::size_t j = 0; j < cols; ++j)
      if (piv[j] != 0) support.push_back(j);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == done || rows[i][c] == 0) continue;
      IntVector& r = rows[i];
      Integer g = gcd(piv[c], r[c]);
      Integer a = piv[c] / g;
      Integer b = r[c] / g;
      if (a != 1)
        for (auto& x : r)
          if (x != 0) x *= a;
      for (std::size_t j : support) r[j] -= b * piv[j];
      make_primitive(r);
    }
    out.pivots.push_back(c);
    ++done;
  }
  rows.resize(done);
  out.rows = std::move(rows);
  return out;
}

inline std::vector<IntVector> primitive_rows(const RationalMatrix& m) {
  std::vector<IntVector> rows;
  rows.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(primitive_integer_vector(m.row(i)));
  return rows;
}

}  // namespace detail

/// Rank, pivots, reduced row basis and a deterministic kernel basis of m.
inline RankKernel rank_and_kernel(const RationalMatrix& m, PivotOrder order = PivotOrder::Forward) {
  const std::size_t cols = m.cols();
  std::vector<std::size_t> column_order(cols);
  std::iota(column_order.begin(), column_order.end(), std::size_t{0});
  if (order == PivotOrder::Reverse) std::reverse(column_order.begin(), column_order.end());

  auto red = detail::integer_gauss_jordan(detail::primitive_rows(m), cols, column_order);

  RankKernel out;
  out.rank = red.pivots.size();
  out.pivot_columns = red.pivots;
  std::vector<bool> is_pivot(cols, false);
  for (auto p : red.pivots) is_pivot[p] = true;
  for (std::size_t j = 0; j < cols; ++j)
    if (!is_pivot[j]) out.free_columns.push_back(j);

  for (std::size_t i = 0; i < red.rows.size(); ++i) {
    const Integer& lead = red.rows[i][red.pivots[i]];
    RationalVector r(cols);
    for (std::size_t j = 0; j < cols; ++j)
      if (red.rows[i][j] != 0) {
        r[j] = Rational(red.rows[i][j], lead);
        r[j].canonicalize();
      }
    out.row_basis.push_back(std::move(r));
  }
  for (std::size_t f : out.free_columns) {
    RationalVector v(cols);
    v[f] = 1;
    for (std::size_t i = 0; i < out.row_basis.size(); ++i) {
      const Rational& e = out.row_basis[i][f];
      if (e != 0) v[red.pivots[i]] = -e;
    }
    out.kernel_basis.push_back(std::move(v));
  }
  return out;
}

inline std::size_t rank(const RationalMatrix& m) { return rank_and_kernel(m).rank; }

inline RationalMatrix matrix_from_rows(const std::vector<RationalVector>& rows, std::size_t cols) {
  return RationalMatrix::from_rows(rows, cols);
}

/// Reduced row echelon basis of span(vectors); deterministic for a given span.
inline std::vector<RationalVector> echelon_basis(const std::vector<RationalVector>& vectors,
                                                 std::size_t dim) {
  if (vectors.empty()) return {};
  auto rk = rank_and_kernel(RationalMatrix::from_rows(vectors, dim));
  // Sort rows by pivot column so the basis is the canonical RREF.
  std::vector<std::size_t> idx(rk.row_basis.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return rk.pivot_columns[a] < rk.pivot_columns[b]; });
  std::vector<RationalVector> out;
  for (auto i : idx) out.push_back(rk.row_basis[i]);
  return out;
}

inline std::size_t rank_of(const std::vector<RationalVector>& vectors, std::size_t dim) {
  if (vectors.empty()) return 0;
  return rank_and_kernel(RationalMatrix::from_rows(vectors, dim)).rank;
}

/// Some x with a x = b, or nullopt when inconsistent. Free variables are set to 0.
inline std::optional<RationalVector> solve(const RationalMatrix& a, std::span<const Rational> b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve: dimension mismatch");
  RationalMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto rk = rank_and_kernel(aug);
  RationalVector x(a.cols());
  for (std::size_t i = 0; i < rk.row_basis.size(); ++i) {
    std::size_t p = rk.pivot_columns[i];
    if (p == a.cols()) return std::nullopt;
    x[p] = rk.row_basis[i][a.cols()];
  }
  return x;
}

inline RationalMatrix inverse(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("inverse: matrix is not square");
  RationalMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto rk = rank_and_kernel(aug);
  if (rk.rank != n) throw std::domain_error("inverse: matrix is singular");
  RationalMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t p = rk.pivot_columns[i];
    if (p >= n) throw std::domain_error("inverse: matrix is singular");
    for (std::size_t j = 0; j < n; ++j) inv(p, j) = rk.row_basis[i][n + j];
  }
  return inv;
}

/// Incrementally grown basis, kept in semi-echelon form for membership tests.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }

  RationalVector reduce(RationalVector v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Rational f = v[pivots_[i]];
      if (f == 0) continue;
      const auto& r = rows_[i];
      for (std::size_t j = 0; j < dim_; ++j)
        if (r[j] != 0) v[j] -= f * r[j];
    }
    return v;
  }

  bool contains(const RationalVector& v) const { return is_zero(reduce(v)); }

  /// Adds v; returns false when v was already in the span.
  bool insert(const RationalVector& v) {
    if (v.size() != dim_) throw std::invalid_argument("EchelonBasis::insert: dimension mismatch");
    RationalVector r = reduce(v);
    std::size_t p = 0;
    while (p < dim_ && r[p] == 0) ++p;
    if (p == dim_) return false;
    const Rational lead = r[p];
    for (auto& x : r)
      if (x != 0) x /= lead;
    rows_.push_back(std::move(r));
    pivots_.push_back(p);
    return true;
  }

  /// Rows in insertion order; they span the same space as the inserted vectors.
  const std::vector<RationalVector>& rows() const { return rows_; }
  std::vector<RationalVector> canonical() const { return echelon_basis(rows_, dim_); }

 private:
  std::size_t dim_;
  std::vector<RationalVector> rows_;
  std::vector<std::size_t> pivots_;
};

/// Quotient of Q^dim by the span of `relations`: representatives are the
/// earliest unit vectors independent of the relations, and `projection`
/// sends a vector to its coordinates in that quotient basis.
struct QuotientBasis {
  std::vector<RationalVector> relations;  // independent, spanning the relation space
  std::vector<std::size_t> lifts;
  RationalMatrix projection;  // lifts.size() x dim

  std::size_t dim() const { return lifts.size(); }
};

inline QuotientBasis quotient_basis(const std::vector<RationalVector>& relations, std::size_t dim) {
  EchelonBasis span(dim);
  for (const auto& r : relations) span.insert(r);
  QuotientBasis q;
  q.relations = span.rows();
  for (std::size_t k = 0; k < dim; ++k) {
    RationalVector unit(dim);
    unit[k] = 1;
    if (span.insert(unit)) q.lifts.push_back(k);
  }
  RationalMatrix change(dim, dim);
  for (std::size_t c = 0; c < q.relations.size(); ++c)
    for (std::size_t r = 0; r < dim; ++r) change(r, c) = q.relations[c][r];
  for (std::size_t c = 0; c < q.lifts.size(); ++c) change(q.lifts[c], q.relations.size() + c) = 1;
  q.projection = RationalMatrix(q.lifts.size(), dim);
  if (dim > 0 && !q.lifts.empty()) {
    auto inv = inverse(change);
    for (std::size_t r = 0; r < q.lifts.size(); ++r)
      for (std::size_t c = 0; c < dim; ++c) q.projection(r, c) = inv(q.relations.size() + r, c);
  }
  return q;
}

}  // namespace ihc
