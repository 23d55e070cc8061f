#include "ihc/lattice.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace ihc;
using ihc::test::Rng;

namespace {

IntegerMatrix imat(std::initializer_list<std::initializer_list<long>> r) {
  std::vector<IntVector> out;
  std::size_t cols = 0;
  for (auto row : r) {
    IntVector v;
    for (long x : row) v.emplace_back(x);
    cols = v.size();
    out.push_back(v);
  }
  return IntegerMatrix::from_rows(out, cols);
}

IntegerMatrix diagonal_matrix(const SmithForm& s, std::size_t rows, std::size_t cols) {
  IntegerMatrix d(rows, cols);
  for (std::size_t i = 0; i < s.diagonal.size(); ++i) d(i, i) = s.diagonal[i];
  return d;
}

void expect_smith(const IntegerMatrix& m) {
  auto s = smith_normal_form(m);
  EXPECT_EQ(s.left * m * s.right, diagonal_matrix(s, m.rows(), m.cols()));
  EXPECT_EQ(abs(ihc::test::cofactor_determinant(s.left)), 1);
  EXPECT_EQ(abs(ihc::test::cofactor_determinant(s.right)), 1);
  EXPECT_EQ(s.left * s.left_inverse, IntegerMatrix::identity(m.rows()));
  for (std::size_t i = 0; i < s.diagonal.size(); ++i) {
    EXPECT_GE(s.diagonal[i], 0);
    if (i + 1 < s.diagonal.size() && s.diagonal[i] != 0) EXPECT_EQ(s.diagonal[i + 1] % s.diagonal[i], 0);
    if (s.diagonal[i] == 0 && i + 1 < s.diagonal.size()) EXPECT_EQ(s.diagonal[i + 1], 0);
  }
}

}  // namespace

TEST(SmithNormalForm, Identity) {
  auto s = smith_normal_form(IntegerMatrix::identity(2));
  EXPECT_EQ(s.diagonal, (IntVector{1, 1}));
}

TEST(SmithNormalForm, SingularConeOfWeightedPlaneHasIndexTwo) {
  // rays (-1,-2) and (1,0) as columns
  auto s = smith_normal_form(imat({{-1, 1}, {-2, 0}}));
  EXPECT_EQ(s.diagonal, (IntVector{1, 2}));
}

TEST(SmithNormalForm, SmoothCone) {
  auto s = smith_normal_form(imat({{0, -1}, {1, -2}}));
  EXPECT_EQ(s.diagonal, (IntVector{1, 1}));
}

TEST(SmithNormalFormProperty, UnimodularTransformsReconstructInput) {
  Rng rng(31337);
  for (int t = 0; t < 80; ++t) {
    auto r = static_cast<std::size_t>(rng.integer(1, 4));
    auto c = static_cast<std::size_t>(rng.integer(1, 4));
    expect_smith(rng.integer_matrix(r, c, 6));
  }
  expect_smith(imat({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}));
}

TEST(HermiteNormalForm, ShapeAndTransform) {
  Rng rng(5);
  for (int t = 0; t < 60; ++t) {
    auto m = rng.integer_matrix(static_cast<std::size_t>(rng.integer(1, 4)), static_cast<std::size_t>(rng.integer(1, 4)), 5);
    auto h = hermite_normal_form(m);
    EXPECT_EQ(h.transform * m, h.h);
    EXPECT_EQ(abs(ihc::test::cofactor_determinant(h.transform)), 1);
    std::size_t last = 0;
    for (std::size_t i = 0; i < h.h.rows(); ++i) {
      std::size_t p = 0;
      while (p < h.h.cols() && h.h(i, p) == 0) ++p;
      if (i >= h.rank) {
        EXPECT_EQ(p, h.h.cols());
        continue;
      }
      ASSERT_LT(p, h.h.cols());
      if (i > 0) EXPECT_GT(p, last);
      last = p;
      EXPECT_GT(h.h(i, p), 0);
      for (std::size_t above = 0; above < i; ++above) {
        EXPECT_GE(h.h(above, p), 0);
        EXPECT_LT(h.h(above, p), h.h(i, p));
      }
    }
  }
}

TEST(Determinant, AgreesWithCofactorExpansion) {
  Rng rng(17);
  for (int t = 0; t < 60; ++t) {
    auto n = static_cast<std::size_t>(rng.integer(1, 5));
    auto m = rng.integer_matrix(n, n, 7);
    EXPECT_EQ(determinant(m), ihc::test::cofactor_determinant(m));
  }
}

TEST(SaturatedBasis, SaturatesNonPrimitiveSpans) {
  auto b = saturated_basis(imat({{2}, {0}}));
  EXPECT_EQ(b, imat({{1}, {0}}));
  // two generators of index 2 in the plane: the full lattice
  auto full = saturated_basis(imat({{1, 1}, {1, -1}}));
  EXPECT_EQ(full, IntegerMatrix::identity(2));
}
