#include "ihc/linalg.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace ihc;
using ihc::test::naive_rank;
using ihc::test::Rng;

namespace {

RationalMatrix rows(std::initializer_list<std::initializer_list<long>> r) {
  std::vector<RationalVector> out;
  std::size_t cols = 0;
  for (auto row : r) {
    RationalVector v;
    for (long x : row) v.emplace_back(x);
    cols = v.size();
    out.push_back(v);
  }
  return RationalMatrix::from_rows(out, cols);
}

void expect_kernel(const RationalMatrix& m, const RankKernel& rk) {
  EXPECT_EQ(rk.rank + rk.kernel_basis.size(), m.cols());
  for (const auto& v : rk.kernel_basis) EXPECT_TRUE(is_zero(m.apply(v)));
  EXPECT_EQ(naive_rank(RationalMatrix::from_rows(rk.kernel_basis, m.cols())), rk.kernel_basis.size());
}

}  // namespace

TEST(RankKernel, IdentityHasTrivialKernel) {
  auto rk = rank_and_kernel(RationalMatrix::identity(2));
  EXPECT_EQ(rk.rank, 2u);
  EXPECT_TRUE(rk.kernel_basis.empty());
}

TEST(RankKernel, ProportionalRows) {
  auto rk = rank_and_kernel(rows({{1, 2}, {2, 4}}));
  EXPECT_EQ(rk.rank, 1u);
  ASSERT_EQ(rk.kernel_basis.size(), 1u);
  EXPECT_EQ(rk.kernel_basis[0], (RationalVector{-2, 1}));
}

TEST(RankKernel, EmptyMatrix) {
  auto rk = rank_and_kernel(RationalMatrix(0, 3));
  EXPECT_EQ(rk.rank, 0u);
  EXPECT_EQ(rk.kernel_basis.size(), 3u);
  EXPECT_EQ(rank(RationalMatrix(0, 0)), 0u);
}

TEST(RankKernel, ProjectivePlaneDivisorClassesHaveRankOne) {
  // classes of the three rays in the one-dimensional degree-2 piece: x1 = x2 = x3
  EXPECT_EQ(rank(rows({{1}, {1}, {1}})), 1u);
}

TEST(RankKernel, KernelIsDeterministicAndEchelon) {
  auto m = rows({{1, 1, 0, 2}, {0, 0, 1, 3}});
  auto a = rank_and_kernel(m);
  auto b = rank_and_kernel(m);
  EXPECT_EQ(a.kernel_basis, b.kernel_basis);
  EXPECT_EQ(a.free_columns, (std::vector<std::size_t>{1, 3}));
  expect_kernel(m, a);
}

TEST(RankKernelProperty, AgreesWithNaiveEliminationAndReversedPivots) {
  Rng rng(20240611);
  for (int trial = 0; trial < 200; ++trial) {
    auto r = static_cast<std::size_t>(rng.integer(1, 6));
    auto c = static_cast<std::size_t>(rng.integer(1, 6));
    auto m = rng.coin(0.5) ? rng.matrix(r, c, 5, 0.6)
                           : rng.matrix_of_rank(r, c, static_cast<std::size_t>(rng.integer(0, std::min(r, c))), 3);
    auto fwd = rank_and_kernel(m, PivotOrder::Forward);
    auto rev = rank_and_kernel(m, PivotOrder::Reverse);
    ASSERT_EQ(fwd.rank, naive_rank(m)) << "trial " << trial;
    ASSERT_EQ(fwd.rank, rev.rank) << "trial " << trial;
    expect_kernel(m, fwd);
    expect_kernel(m, rev);
  }
}

TEST(Solve, SolvesConsistentSystemsOnly) {
  auto a = rows({{1, 2}, {3, 4}});
  auto x = solve(a, RationalVector{5, 11});
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, (RationalVector{1, 2}));
  EXPECT_FALSE(solve(rows({{1, 1}, {1, 1}}), RationalVector{1, 2}));
}

TEST(Inverse, RoundTripAndSingular) {
  Rng rng(7);
  for (int t = 0; t < 30; ++t) {
    auto m = rng.matrix_of_rank(4, 4, 4, 4);
    EXPECT_EQ(inverse(m) * m, RationalMatrix::identity(4));
  }
  EXPECT_THROW(inverse(rows({{1, 2}, {2, 4}})), std::domain_error);
}

TEST(EchelonBasis, InsertReportsIndependence) {
  EchelonBasis e(3);
  EXPECT_TRUE(e.insert({1, 2, 3}));
  EXPECT_FALSE(e.insert({2, 4, 6}));
  EXPECT_TRUE(e.insert({0, 1, 0}));
  EXPECT_TRUE(e.contains({1, 0, 3}));
  EXPECT_FALSE(e.contains({0, 0, 1}));
  EXPECT_EQ(e.rank(), 2u);
}

TEST(EchelonBasis, CanonicalFormIndependentOfInsertionOrder) {
  auto a = echelon_basis({{1, 2, 3}, {0, 1, 0}}, 3);
  auto b = echelon_basis({{1, 3, 3}, {2, 4, 6}}, 3);
  EXPECT_EQ(a, b);
}

TEST(QuotientBasisProperty, ProjectionKillsRelationsAndFixesLifts) {
  Rng rng(99);
  for (int t = 0; t < 60; ++t) {
    auto dim = static_cast<std::size_t>(rng.integer(1, 6));
    auto count = static_cast<std::size_t>(rng.integer(0, 5));
    auto rel = rng.matrix(count, dim, 4, 0.5);
    std::vector<RationalVector> relations;
    for (std::size_t i = 0; i < count; ++i) relations.push_back(rel.row_vector(i));
    auto q = quotient_basis(relations, dim);
    ASSERT_EQ(q.dim(), dim - naive_rank(rel));
    for (const auto& r : relations) EXPECT_TRUE(is_zero(q.projection.apply(r)));
    for (std::size_t i = 0; i < q.lifts.size(); ++i) {
      RationalVector unit(dim);
      unit[q.lifts[i]] = 1;
      RationalVector expected(q.dim());
      expected[i] = 1;
      EXPECT_EQ(q.projection.apply(unit), expected);
    }
  }
}
