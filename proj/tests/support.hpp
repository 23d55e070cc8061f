#pragma once

// Test-side oracles and generators. Oracles here avoid the library's own
// elimination and lattice code so that they can disagree with it.

#include "ihc/catalog.hpp"
#include "ihc/fan.hpp"
#include "ihc/matrix.hpp"

#include <algorithm>
#include <random>
#include <vector>

namespace ihc::test {

/// Textbook Gaussian elimination over Q with first-nonzero pivoting.
inline std::size_t naive_rank(RationalMatrix m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, c) == 0) continue;
      Rational f = m(i, c) / m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

/// Cofactor expansion along the first row.
inline Integer cofactor_determinant(const IntegerMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Integer total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m(0, c) == 0) continue;
    IntegerMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0, jj = 0; j < n; ++j)
        if (j != c) minor(i - 1, jj++) = m(i, j);
    Integer term = m(0, c) * cofactor_determinant(minor);
    total += c % 2 ? -term : term;
  }
  return total;
}

inline long long binomial(long long a, long long b) {
  if (b < 0 || b > a) return 0;
  long long r = 1;
  for (long long i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return r;
}

/// h-vector of a complete simplicial fan from its face numbers.
inline std::vector<long long> h_from_face_numbers(const Fan& f) {
  const int n = f.dim();
  std::vector<long long> faces(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& c : f.cones()) ++faces[static_cast<std::size_t>(c.dim)];
  std::vector<long long> h(static_cast<std::size_t>(n) + 1, 0);
  // Σ h_k t^k = Σ_j f_j t^j (1 - t)^{n - j}
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n - j; ++i)
      h[static_cast<std::size_t>(j + i)] += faces[static_cast<std::size_t>(j)] * binomial(n - j, i) * (i % 2 ? -1 : 1);
  return h;
}

/// mpq_class(num, den) leaves the fraction unreduced.
inline Rational fraction(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(gen_); }

  Rational rational(long range) {
    long den = integer(1, 4);
    return fraction(integer(-range, range), den);
  }

  RationalMatrix matrix(std::size_t rows, std::size_t cols, long range, double density = 0.7) {
    RationalMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (coin(density)) m(i, j) = rational(range);
    return m;
  }

  /// Matrix of prescribed rank r: product of random rows x r and r x cols factors.
  RationalMatrix matrix_of_rank(std::size_t rows, std::size_t cols, std::size_t r, long range) {
    while (true) {
      auto a = matrix(rows, r, range, 1.0);
      auto b = matrix(r, cols, range, 1.0);
      auto m = a * b;
      if (naive_rank(m) == r) return m;
    }
  }

  IntegerMatrix integer_matrix(std::size_t rows, std::size_t cols, long range) {
    IntegerMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = integer(-range, range);
    return m;
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

/// Random complete fan in the plane: r primitive directions in distinct angular
/// positions, consecutive pairs forming the cones. Every angle gap is < π.
inline FanSpec random_plane_fan(Rng& rng, std::size_t r, long range) {
  while (true) {
    std::vector<std::pair<long, long>> dirs;
    for (std::size_t i = 0; i < 4 * r && dirs.size() < r; ++i) {
      long x = rng.integer(-range, range), y = rng.integer(-range, range);
      if (x == 0 && y == 0) continue;
      long g = std::gcd(std::abs(x), std::abs(y));
      x /= g;
      y /= g;
      if (std::find(dirs.begin(), dirs.end(), std::make_pair(x, y)) == dirs.end()) dirs.emplace_back(x, y);
    }
    if (dirs.size() < 3) continue;
    // sort by angle via half-plane and cross product, no floating point
    auto half = [](const std::pair<long, long>& v) { return v.second < 0 || (v.second == 0 && v.first < 0); };
    std::sort(dirs.begin(), dirs.end(), [&](const auto& a, const auto& b) {
      if (half(a) != half(b)) return half(a) < half(b);
      return a.first * b.second - a.second * b.first > 0;
    });
    bool ok = true;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      const auto& a = dirs[i];
      const auto& b = dirs[(i + 1) % dirs.size()];
      if (a.first * b.second - a.second * b.first <= 0) ok = false;  // gap ≥ π
    }
    if (!ok) continue;
    FanSpec s{"random-plane", 2, {}, {}};
    for (const auto& [x, y] : dirs) s.rays.push_back({Integer(x), Integer(y)});
    for (std::size_t i = 0; i < dirs.size(); ++i) s.max_cones.push_back({i, (i + 1) % dirs.size()});
    return s;
  }
}

/// Product fan: rays of a then rays of b, cones are products of cones.
inline FanSpec product(const FanSpec& a, const FanSpec& b) {
  FanSpec s{a.name + "x" + b.name, a.n + b.n, {}, {}};
  for (const auto& r : a.rays) {
    IntVector v = r;
    v.resize(static_cast<std::size_t>(s.n), 0);
    s.rays.push_back(v);
  }
  for (const auto& r : b.rays) {
    IntVector v(static_cast<std::size_t>(a.n), 0);
    v.insert(v.end(), r.begin(), r.end());
    s.rays.push_back(v);
  }
  for (const auto& ca : a.max_cones)
    for (const auto& cb : b.max_cones) {
      RaySet c = ca;
      for (auto i : cb) c.push_back(i + a.rays.size());
      s.max_cones.push_back(c);
    }
  return s;
}

inline std::vector<std::string> builtin_names() {
  std::vector<std::string> out;
  for (const auto& e : catalog()) out.push_back(e.name);
  return out;
}

}  // namespace ihc::test
