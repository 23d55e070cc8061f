#include "ihc/catalog.hpp"
#include "ihc/gpoly.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace ihc;

namespace {

IntVector iv(std::initializer_list<long> xs) { return detail::iv(xs); }

Fan cone_over_polygon(const std::vector<std::pair<long, long>>& pts) {
  std::vector<IntVector> rays;
  RaySet all;
  for (const auto& [x, y] : pts) {
    all.push_back(rays.size());
    rays.push_back(iv({x, y, 1}));
  }
  return build_fan(3, rays, {all});
}

}  // namespace

TEST(GPolynomial, ZeroConeAndSimplicialCones) {
  auto f = example("p3");
  for (ConeId id = 0; id < f.size(); ++id) EXPECT_EQ(g_polynomial(f, id), GHPolynomial::one());
  EXPECT_THROW(g_polynomial(f, 1000), UnknownCone);
}

TEST(GPolynomial, ConeOverSquare) {
  auto f = cone_over_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  EXPECT_EQ(g_polynomial(f, f.maximal_cones().front()), GHPolynomial({1, 1}));
}

TEST(GPolynomial, ConeOverPentagon) {
  auto f = cone_over_polygon({{0, 0}, {2, 0}, {3, 1}, {1, 3}, {-1, 1}});
  EXPECT_EQ(g_polynomial(f, f.maximal_cones().front()), GHPolynomial({1, 2}));
}

TEST(GPolynomial, BoundaryHOfSquareCone) {
  auto f = example("cube-face-fan");
  GPolynomials g(f);
  EXPECT_EQ(g.boundary_h(f.maximal_cones().front()), GHPolynomial({1, 2, 1}));
}

TEST(HPolynomial, GoldenValues) {
  EXPECT_EQ(h_vector(example("p2")), (std::vector<long long>{1, 1, 1}));
  EXPECT_EQ(h_vector(example("p112")), (std::vector<long long>{1, 1, 1}));
  EXPECT_EQ(h_vector(example("cube-face-fan")), (std::vector<long long>{1, 5, 5, 1}));
  EXPECT_EQ(h_vector(example("p1xp1")), (std::vector<long long>{1, 2, 1}));
  EXPECT_EQ(h_vector(example("octahedron-normal-fan-variant")), (std::vector<long long>{1, 6, 6, 1}));
}

TEST(HPolynomial, CubeExpansionByHand) {
  // (t-1)^3 + 8(t-1)^2 + 12(t-1) + 6(1+t)
  auto t1 = [](int k) { return GHPolynomial::t_minus_one_power(k); };
  auto hand = t1(3) + GHPolynomial({8}) * t1(2) + GHPolynomial({12}) * t1(1) + GHPolynomial({6, 6});
  EXPECT_EQ(h_polynomial(example("cube-face-fan")), hand);
}

TEST(HPolynomial, RequiresCompleteFan) {
  auto f = build_fan(2, {iv({1, 0}), iv({0, 1})}, {{0, 1}});
  EXPECT_THROW(h_polynomial(f), NotComplete);
}

TEST(HPolynomialProperty, PoincareDualityUnimodalityAndEndpoints) {
  for (const auto& name : test::builtin_names()) {
    auto h = h_vector(example(name));
    EXPECT_TRUE(is_palindromic(h)) << name;
    EXPECT_TRUE(is_unimodal_to_middle(h)) << name;
    EXPECT_EQ(h.front(), 1) << name;
    EXPECT_EQ(h.back(), 1) << name;
  }
}

TEST(HPolynomialProperty, SimplicialFansMatchFaceNumbers) {
  for (const auto& name : test::builtin_names()) {
    auto f = example(name);
    if (!f.flags().simplicial) continue;
    EXPECT_EQ(h_vector(f), test::h_from_face_numbers(f)) << name;
  }
  test::Rng rng(11);
  for (int t = 0; t < 25; ++t) {
    auto plane = test::random_plane_fan(rng, static_cast<std::size_t>(rng.integer(3, 7)), 3);
    auto f = build(rng.coin() ? plane : test::product(plane, example_spec("p1")));
    EXPECT_EQ(h_vector(f), test::h_from_face_numbers(f));
  }
}

TEST(GPolynomialProperty, NonnegativeOnBuiltins) {
  for (const auto& name : test::builtin_names()) {
    auto f = example(name);
    GPolynomials g(f);
    for (ConeId id = 0; id < f.size(); ++id)
      for (auto c : g.of(id).coeffs()) EXPECT_GE(c, 0) << name;
  }
}

TEST(GHPolynomial, ArithmeticAndTrim) {
  EXPECT_TRUE(GHPolynomial({0, 0}).is_zero());
  EXPECT_EQ(GHPolynomial({1, 2, 0}).coeffs(), (std::vector<long long>{1, 2}));
  EXPECT_EQ(GHPolynomial::t_minus_one_power(2), GHPolynomial({1, -2, 1}));
  EXPECT_EQ(GHPolynomial({1, 1}) * GHPolynomial({1, 1}), GHPolynomial({1, 2, 1}));
}
