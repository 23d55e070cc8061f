#include "ihc/catalog.hpp"
#include "ihc/lp.hpp"
#include "ihc/piecewise.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace ihc;

namespace {

LinearConstraint ge(RationalVector c, Rational rhs, bool strict = false) {
  return {std::move(c), rhs, Relation::GreaterEqual, strict};
}

bool satisfied(const std::vector<LinearConstraint>& cons, const RationalVector& x) {
  for (const auto& c : cons) {
    Rational v = dot(c.coefficients, x);
    if (c.relation == Relation::Equal ? v != c.rhs : (c.strict ? v <= c.rhs : v < c.rhs)) return false;
  }
  return true;
}

}  // namespace

TEST(LpFeasible, ContradictoryBounds) {
  EXPECT_FALSE(lp_feasible({ge({1}, 1), ge({-1}, 0)}, 1).feasible);
}

TEST(LpFeasible, SingleBoundWitness) {
  auto r = lp_feasible({ge({1}, 1)}, 1);
  ASSERT_TRUE(r.feasible);
  EXPECT_EQ(*r.witness, (RationalVector{1}));
}

TEST(LpFeasible, StrictNonHomogeneousInterval) {
  std::vector<LinearConstraint> cons{ge({2}, 1, true), ge({-1}, -1, true)};  // 1/2 < x < 1
  auto r = lp_feasible(cons, 1);
  ASSERT_TRUE(r.feasible);
  EXPECT_TRUE(satisfied(cons, *r.witness));
  EXPECT_FALSE(lp_feasible({ge({1}, 1, true), ge({-1}, -1)}, 1).feasible);  // x > 1 and x <= 1
}

TEST(LpFeasible, EqualityAndFreeVariables) {
  std::vector<LinearConstraint> cons{{{1, 1}, -3, Relation::Equal, false}, ge({1, -1}, 5)};
  auto r = lp_feasible(cons, 2);
  ASSERT_TRUE(r.feasible);
  EXPECT_TRUE(satisfied(cons, *r.witness));
}

TEST(LpFeasible, RejectsMalformedInput) {
  EXPECT_THROW(lp_feasible({ge({1, 2}, 0)}, 1), std::invalid_argument);
  EXPECT_THROW(lp_feasible({{{1}, 0, Relation::Equal, true}}, 1), std::invalid_argument);
}

TEST(LpFeasible, ProjectivePlaneStrictConvexity) {
  // The triangle's support function is a witness; the LP must find some witness.
  auto f = example("p2");
  auto p = check_polytopal(f);
  ASSERT_TRUE(p.polytopal);
  EXPECT_TRUE(is_strictly_convex(*p.support_function));
  // hand witness: min of 0, -x... as linear forms m_σ with ψ(v_ρ) = -1 on every ray
  PiecewisePolynomial hand(f, 2);
  for (auto s : f.maximal_cones()) {
    const auto& rays = f.cone(s).rays;
    // solve m · v = -1 on both rays
    RationalMatrix a(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) a(i, j) = f.rays()[rays[i]][j];
    auto m = solve(a, RationalVector{-1, -1});
    hand.set(s, Polynomial::linear(*m));
  }
  EXPECT_TRUE(is_strictly_convex(hand));
}

TEST(LpProperty, HomogeneousStrictSystemsAreScaleInvariant) {
  test::Rng rng(2718);
  for (int t = 0; t < 120; ++t) {
    auto vars = static_cast<std::size_t>(rng.integer(1, 3));
    auto count = static_cast<std::size_t>(rng.integer(1, 4));
    std::vector<LinearConstraint> cons;
    for (std::size_t i = 0; i < count; ++i) {
      RationalVector c(vars);
      for (auto& x : c) x = rng.rational(3);
      if (rng.coin(0.2))
        cons.push_back({c, 0, Relation::Equal, false});
      else
        cons.push_back(ge(c, 0, rng.coin(0.7)));
    }
    auto base = lp_feasible(cons, vars);
    if (base.feasible) EXPECT_TRUE(satisfied(cons, *base.witness));
    for (int s = 0; s < 3; ++s) {
      Rational scale = test::fraction(rng.integer(1, 9), rng.integer(1, 9));
      auto scaled = cons;
      for (auto& c : scaled)
        for (auto& x : c.coefficients) x *= scale;
      auto r = lp_feasible(scaled, vars);
      ASSERT_EQ(r.feasible, base.feasible) << "trial " << t;
      if (r.feasible) EXPECT_TRUE(satisfied(scaled, *r.witness));
    }
  }
}
