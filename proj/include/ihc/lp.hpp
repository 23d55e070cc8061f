#pragma once

// Exact LP feasibility: phase-one simplex over Q with Bland's rule.

#include "ihc/arith.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace ihc {

enum class Relation { GreaterEqual, Equal };

/// coefficients . x  (>= | =)  rhs, or > rhs when strict.
struct LinearConstraint {
  RationalVector coefficients;
  Rational rhs = 0;
  Relation relation = Relation::GreaterEqual;
  bool strict = false;
};

struct LpResult {
  bool feasible = false;
  std::optional<RationalVector> witness;
};

namespace detail {

// Phase one on {A x (>=|=) b}, x free. Returns a feasible point or nullopt when
// the phase-one optimum is positive.
inline std::optional<RationalVector> phase_one(const std::vector<LinearConstraint>& cons,
                                               std::size_t nvars) {
  const std::size_t m = cons.size();
  std::size_t slacks = 0;
  for (const auto& c : cons)
    if (c.relation == Relation::GreaterEqual) ++slacks;
  // columns: x+ (nvars), x- (nvars), slacks, artificials (m), rhs
  const std::size_t art0 = 2 * nvars + slacks;
  const std::size_t width = art0 + m + 1;
  const std::size_t rhs = width - 1;
  std::vector<RationalVector> t(m, RationalVector(width));
  std::vector<std::size_t> basis(m);
  std::size_t s = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = cons[i];
    const int sign = c.rhs < 0 ? -1 : 1;
    for (std::size_t j = 0; j < nvars; ++j) {
      t[i][j] = sign * c.coefficients[j];
      t[i][nvars + j] = -sign * c.coefficients[j];
    }
    if (c.relation == Relation::GreaterEqual) t[i][2 * nvars + s++] = -sign;
    t[i][art0 + i] = 1;
    t[i][rhs] = sign * c.rhs;
    basis[i] = art0 + i;
  }
  // reduced costs of the phase-one objective sum(artificials)
  RationalVector cost(width);
  for (std::size_t j = 0; j < art0; ++j)
    for (std::size_t i = 0; i < m; ++i) cost[j] -= t[i][j];
  for (std::size_t i = 0; i < m; ++i) cost[rhs] -= t[i][rhs];

  while (true) {
    std::optional<std::size_t> enter;
    for (std::size_t j = 0; j < rhs; ++j)
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    if (!enter) break;
    std::optional<std::size_t> leave;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][*enter] <= 0) continue;
      Rational ratio = t[i][rhs] / t[i][*enter];
      if (!leave || ratio < best || (ratio == best && basis[i] < basis[*leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (!leave) throw std::logic_error("phase_one: unbounded phase-one objective");
    const std::size_t r = *leave, e = *enter;
    const Rational p = t[r][e];
    for (auto& x : t[r])
      if (x != 0) x /= p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || t[i][e] == 0) continue;
      const Rational f = t[i][e];
      for (std::size_t j = 0; j < width; ++j)
        if (t[r][j] != 0) t[i][j] -= f * t[r][j];
    }
    if (cost[e] != 0) {
      const Rational f = cost[e];
      for (std::size_t j = 0; j < width; ++j)
        if (t[r][j] != 0) cost[j] -= f * t[r][j];
    }
    basis[r] = e;
  }
  // cost[rhs] holds minus the objective value
  if (cost[rhs] != 0) return std::nullopt;
  RationalVector x(nvars);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < nvars)
      x[basis[i]] += t[i][rhs];
    else if (basis[i] < 2 * nvars)
      x[basis[i] - nvars] -= t[i][rhs];
  }
  return x;
}

inline bool satisfies(const LinearConstraint& c, std::span<const Rational> x) {
  Rational v = dot(c.coefficients, x);
  if (c.relation == Relation::Equal) return v == c.rhs;
  return c.strict ? v > c.rhs : v >= c.rhs;
}

}  // namespace detail

/// Decides feasibility of a system of exact linear constraints over free
/// variables. Strict constraints are homogenized and encoded as `expr >= 1`.
inline LpResult lp_feasible(const std::vector<LinearConstraint>& constraints, std::size_t variables) {
  bool any_strict = false, all_homogeneous = true;
  for (const auto& c : constraints) {
    if (c.coefficients.size() != variables)
      throw std::invalid_argument("lp_feasible: constraint has wrong variable count");
    if (c.strict && c.relation == Relation::Equal)
      throw std::invalid_argument("lp_feasible: strict equality");
    any_strict = any_strict || c.strict;
    all_homogeneous = all_homogeneous && c.rhs == 0;
  }

  std::vector<LinearConstraint> system;
  std::size_t nvars = variables;
  if (!any_strict) {
    system = constraints;
  } else if (all_homogeneous) {
    for (auto c : constraints) {
      if (c.strict) c.rhs = 1;
      c.strict = false;
      system.push_back(std::move(c));
    }
  } else {
    // a.x > b  <=>  a.x - b s > 0 with s > 0, then x / s solves the original
    nvars = variables + 1;
    for (const auto& c : constraints) {
      LinearConstraint h;
      h.coefficients = c.coefficients;
      h.coefficients.push_back(-c.rhs);
      h.relation = c.relation;
      h.rhs = c.strict ? 1 : 0;
      system.push_back(std::move(h));
    }
    LinearConstraint positive;
    positive.coefficients.assign(nvars, 0);
    positive.coefficients.back() = 1;
    positive.rhs = 1;
    system.push_back(std::move(positive));
  }

  auto x = detail::phase_one(system, nvars);
  if (!x) return {false, std::nullopt};
  if (nvars != variables) {
    const Rational s = x->back();
    x->pop_back();
    for (auto& v : *x) v /= s;
  }
  for (const auto& c : constraints)
    if (!detail::satisfies(c, *x)) throw std::logic_error("lp_feasible: witness fails verification");
  return {true, std::move(x)};
}

}  // namespace ihc
