#pragma once

// Exact scalars. Integers and rationals are GMP-backed; mpq_class keeps every
// value in canonical form (positive denominator, reduced).

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ihc {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

// floor(a / b) for b != 0
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

/// gcd of all entries; zero for the zero vector.
inline Integer content(std::span<const Integer> v) {
  Integer g = 0;
  for (const auto& x : v) {
    if (x != 0) g = gcd(g, x);
    if (g == 1) break;
  }
  return g;
}

inline bool is_zero(std::span<const Rational> v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

inline bool is_zero(std::span<const Integer> v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

/// Clears denominators and divides out the content. Zero stays zero.
inline IntVector primitive_integer_vector(std::span<const Rational> v) {
  Integer den = 1;
  for (const auto& x : v)
    if (x != 0) den = lcm(den, x.get_den());
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].get_num() * (den / v[i].get_den());
  Integer g = content(out);
  if (g > 1)
    for (auto& x : out) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return out;
}

inline RationalVector to_rational(std::span<const Integer> v) {
  return RationalVector(v.begin(), v.end());
}

inline Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  return s;
}

inline Integer dot(std::span<const Integer> a, std::span<const Integer> b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Returns true when a = c * b for some nonzero rational c.
inline bool proportional(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) return false;
  Rational ratio = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i] == 0) != (b[i] == 0)) return false;
    if (a[i] == 0) continue;
    Rational r = a[i] / b[i];
    if (ratio == 0)
      ratio = r;
    else if (r != ratio)
      return false;
  }
  return ratio != 0;
}

template <class T>
std::string join(const std::vector<T>& v, const char* sep = ", ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    if constexpr (std::is_same_v<T, std::string>)
      s += v[i];
    else if constexpr (std::is_arithmetic_v<T>)
      s += std::to_string(v[i]);
    else
      s += v[i].get_str();
  }
  return s;
}

}  // namespace ihc
