#pragma once

// Integer lattice normal forms.

#include "ihc/arith.hpp"
#include "ihc/linalg.hpp"
#include "ihc/matrix.hpp"

#include <algorithm>
#include <optional>
#include <utility>

namespace ihc {

/// h = transform * input, h in row Hermite normal form: echelon, positive
/// pivots, entries above a pivot reduced into [0, pivot), zero rows last.
struct HermiteForm {
  IntegerMatrix h;
  IntegerMatrix transform;
  std::size_t rank = 0;
};

inline HermiteForm hermite_normal_form(const IntegerMatrix& m) {
  IntegerMatrix h = m;
  IntegerMatrix u = IntegerMatrix::identity(m.rows());
  const std::size_t rows = m.rows(), cols = m.cols();

  auto swap_rows = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols; ++j) std::swap(h(a, j), h(b, j));
    for (std::size_t j = 0; j < rows; ++j) std::swap(u(a, j), u(b, j));
  };
  // row a -= q * row b
  auto sub_row = [&](std::size_t a, std::size_t b, const Integer& q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < cols; ++j) h(a, j) -= q * h(b, j);
    for (std::size_t j = 0; j < rows; ++j) u(a, j) -= q * u(b, j);
  };

  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    while (true) {
      std::optional<std::size_t> best;
      for (std::size_t i = r; i < rows; ++i)
        if (h(i, c) != 0 && (!best || abs(h(i, c)) < abs(h(*best, c)))) best = i;
      if (!best) break;
      swap_rows(r, *best);
      bool clean = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (h(i, c) == 0) continue;
        sub_row(i, r, floor_div(h(i, c), h(r, c)));
        if (h(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) {
      for (std::size_t j = 0; j < cols; ++j) h(r, j) = -h(r, j);
      for (std::size_t j = 0; j < rows; ++j) u(r, j) = -u(r, j);
    }
    for (std::size_t i = 0; i < r; ++i) sub_row(i, r, floor_div(h(i, c), h(r, c)));
    ++r;
  }
  return {std::move(h), std::move(u), r};
}

/// left * input * right = diag(diagonal), diagonal nonnegative with
/// d_1 | d_2 | ...; left_inverse = left^{-1}. All transforms unimodular.
struct SmithForm {
  IntVector diagonal;  // min(rows, cols) entries
  IntegerMatrix left;
  IntegerMatrix right;
  IntegerMatrix left_inverse;
  std::size_t rank() const {
    return static_cast<std::size_t>(
        std::count_if(diagonal.begin(), diagonal.end(), [](const Integer& d) { return d != 0; }));
  }
};

inline SmithForm smith_normal_form(const IntegerMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  IntegerMatrix a = m;
  IntegerMatrix u = IntegerMatrix::identity(rows);
  IntegerMatrix uinv = IntegerMatrix::identity(rows);
  IntegerMatrix v = IntegerMatrix::identity(cols);

  auto swap_rows = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t j = 0; j < cols; ++j) std::swap(a(x, j), a(y, j));
    for (std::size_t j = 0; j < rows; ++j) std::swap(u(x, j), u(y, j));
    for (std::size_t i = 0; i < rows; ++i) std::swap(uinv(i, x), uinv(i, y));
  };
  auto swap_cols = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t i = 0; i < rows; ++i) std::swap(a(i, x), a(i, y));
    for (std::size_t i = 0; i < cols; ++i) std::swap(v(i, x), v(i, y));
  };
  // row x -= q * row y
  auto row_op = [&](std::size_t x, std::size_t y, const Integer& q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < cols; ++j) a(x, j) -= q * a(y, j);
    for (std::size_t j = 0; j < rows; ++j) u(x, j) -= q * u(y, j);
    for (std::size_t i = 0; i < rows; ++i) uinv(i, y) += q * uinv(i, x);
  };
  // col x -= q * col y
  auto col_op = [&](std::size_t x, std::size_t y, const Integer& q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < rows; ++i) a(i, x) -= q * a(i, y);
    for (std::size_t i = 0; i < cols; ++i) v(i, x) -= q * v(i, y);
  };

  const std::size_t steps = std::min(rows, cols);
  for (std::size_t t = 0; t < steps; ++t) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a(i, j) != 0 && (!best || abs(a(i, j)) < abs(a(best->first, best->second)))) best = {{i, j}};
    if (!best) break;
    swap_rows(t, best->first);
    swap_cols(t, best->second);

    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        row_op(i, t, floor_div(a(i, t), a(t, t)));
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        col_op(j, t, floor_div(a(t, j), a(t, t)));
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) {
        // move the smallest remainder in row/column t onto the pivot
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < rows; ++i)
          if (a(i, t) != 0 && abs(a(i, t)) < abs(a(bi, bj))) bi = i, bj = t;
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a(t, j) != 0 && abs(a(t, j)) < abs(a(bi, bj))) bi = t, bj = j;
        swap_rows(t, bi);
        swap_cols(t, bj);
        continue;
      }
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < rows && !bad_row; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a(i, j) % a(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (!bad_row) break;
      row_op(t, *bad_row, Integer(-1));  // row t += row bad
    }
    if (a(t, t) < 0) {
      for (std::size_t j = 0; j < cols; ++j) a(t, j) = -a(t, j);
      for (std::size_t j = 0; j < rows; ++j) u(t, j) = -u(t, j);
      for (std::size_t i = 0; i < rows; ++i) uinv(i, t) = -uinv(i, t);
    }
  }
  SmithForm out;
  out.diagonal.resize(steps);
  for (std::size_t t = 0; t < steps; ++t) out.diagonal[t] = a(t, t);
  out.left = std::move(u);
  out.right = std::move(v);
  out.left_inverse = std::move(uinv);
  return out;
}

/// Fraction-free (Bareiss) determinant.
inline Integer determinant(const IntegerMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("determinant: matrix is not square");
  if (n == 0) return 1;
  IntegerMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = a(k, k) * a(i, j) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

/// Columns form the Hermite-canonical basis of span(columns of gens) ∩ Z^n.
inline IntegerMatrix saturated_basis(const IntegerMatrix& gens) {
  const std::size_t n = gens.rows();
  if (gens.cols() == 0) return IntegerMatrix(n, 0);
  auto snf = smith_normal_form(gens);
  const std::size_t r = snf.rank();
  IntegerMatrix rows(r, n);
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t i = 0; i < n; ++i) rows(k, i) = snf.left_inverse(i, k);
  auto hnf = hermite_normal_form(rows);
  IntegerMatrix basis(n, r);
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t i = 0; i < n; ++i) basis(i, k) = hnf.h(k, i);
  return basis;
}

}  // namespace ihc
