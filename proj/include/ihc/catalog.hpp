#pragma once

// Built-in fans. Parameterized families are named <family>-<a>.

#include "ihc/errors.hpp"
#include "ihc/fan.hpp"

#include <charconv>
#include <string>
#include <vector>

namespace ihc {

/// Raw fan data exactly as it appears in a fan file.
struct FanSpec {
  std::string name;
  int n = 0;
  std::vector<IntVector> rays;
  std::vector<RaySet> max_cones;
};

inline Fan build(const FanSpec& s) { return build_fan(s.n, s.rays, s.max_cones, s.name); }

namespace detail {

inline IntVector iv(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline FanSpec product_of_p1(int n, std::string name) {
  FanSpec s{std::move(name), n, {}, {}};
  for (int i = 0; i < n; ++i)
    for (int sign : {1, -1}) {
      IntVector v(static_cast<std::size_t>(n), 0);
      v[static_cast<std::size_t>(i)] = sign;
      s.rays.push_back(v);
    }
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    RaySet c;
    for (int i = 0; i < n; ++i) c.push_back(static_cast<std::size_t>(2 * i + ((mask >> i) & 1)));
    s.max_cones.push_back(c);
  }
  return s;
}

inline FanSpec projective_space(int n, std::string name) {
  FanSpec s{std::move(name), n, {}, {}};
  for (int i = 0; i < n; ++i) {
    IntVector v(static_cast<std::size_t>(n), 0);
    v[static_cast<std::size_t>(i)] = 1;
    s.rays.push_back(v);
  }
  s.rays.emplace_back(static_cast<std::size_t>(n), Integer(-1));
  for (int skip = n; skip >= 0; --skip) {
    RaySet c;
    for (int i = 0; i <= n; ++i)
      if (i != skip) c.push_back(static_cast<std::size_t>(i));
    s.max_cones.push_back(c);
  }
  return s;
}

/// Cones over the facets of [-1, 1]^n.
inline FanSpec cube_face_fan(int n, std::string name) {
  FanSpec s{std::move(name), n, {}, {}};
  const auto dim = static_cast<std::size_t>(n);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    IntVector v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = (mask >> (dim - 1 - i)) & 1 ? 1 : -1;
    s.rays.push_back(v);
  }
  for (std::size_t axis = 0; axis < dim; ++axis)
    for (int sign : {-1, 1}) {
      RaySet c;
      for (std::size_t i = 0; i < s.rays.size(); ++i)
        if (s.rays[i][axis] == sign) c.push_back(i);
      s.max_cones.push_back(c);
    }
  return s;
}

inline std::optional<long> parameter(const std::string& name, const std::string& family) {
  const std::string prefix = family + "-";
  if (name.rfind(prefix, 0) != 0) return std::nullopt;
  const char* first = name.data() + prefix.size();
  const char* last = name.data() + name.size();
  long a = 0;
  auto [ptr, ec] = std::from_chars(first, last, a);
  if (ec != std::errc() || ptr != last || first == last) return std::nullopt;
  return a;
}

}  // namespace detail

struct CatalogEntry {
  std::string name;
  std::string description;
};

/// Listed entries; hirzebruch-<a> (a ≥ 0) and weighted-p11-<a> (a ≥ 1) accept any parameter.
inline std::vector<CatalogEntry> catalog() {
  return {
      {"p1", "projective line"},
      {"p2", "projective plane"},
      {"p1xp1", "product of two projective lines"},
      {"hirzebruch-1", "Hirzebruch surface F_1 (hirzebruch-<a> for any a >= 0)"},
      {"hirzebruch-2", "Hirzebruch surface F_2"},
      {"p112", "weighted projective plane P(1,1,2)"},
      {"weighted-p11-3", "weighted projective plane P(1,1,3) (weighted-p11-<a> for any a >= 1)"},
      {"p3", "projective 3-space"},
      {"p1xp1xp1", "product of three projective lines"},
      {"weighted-p1112", "weighted projective space P(1,1,1,2)"},
      {"cube-face-fan", "face fan of the cube, non-simplicial"},
      {"octahedron-normal-fan-variant", "normal fan of the octahedron with one vertex truncated, non-simplicial"},
      {"p4", "projective 4-space"},
      {"p2xp2", "product of two projective planes"},
      {"hypercube-face-fan", "face fan of the 4-cube, non-simplicial"},
  };
}

inline FanSpec example_spec(const std::string& name) {
  using detail::iv;
  if (name == "p1") return detail::projective_space(1, name);
  if (name == "p2") return {name, 2, {iv({1, 0}), iv({0, 1}), iv({-1, -1})}, {{0, 1}, {1, 2}, {2, 0}}};
  if (name == "p1xp1") return detail::product_of_p1(2, name);
  if (name == "p1xp1xp1") return detail::product_of_p1(3, name);
  if (name == "p3") return detail::projective_space(3, name);
  if (name == "p4") return detail::projective_space(4, name);
  if (name == "p112") return {name, 2, {iv({1, 0}), iv({0, 1}), iv({-1, -2})}, {{0, 1}, {1, 2}, {2, 0}}};
  if (auto a = detail::parameter(name, "hirzebruch"); a && *a >= 0)
    return {name, 2, {iv({1, 0}), iv({0, 1}), iv({-1, *a}), iv({0, -1})}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}};
  if (auto a = detail::parameter(name, "weighted-p11"); a && *a >= 1)
    return {name, 2, {iv({1, 0}), iv({0, 1}), iv({-1, -*a})}, {{0, 1}, {1, 2}, {2, 0}}};
  if (name == "weighted-p1112")
    return {name,
            3,
            {iv({1, 0, 0}), iv({0, 1, 0}), iv({0, 0, 1}), iv({-1, -1, -2})},
            {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}};
  if (name == "cube-face-fan") return detail::cube_face_fan(3, name);
  if (name == "hypercube-face-fan") return detail::cube_face_fan(4, name);
  if (name == "octahedron-normal-fan-variant") {
    // ±e1, ±e2, -e3 and the four vertices cut from +e3
    return {name,
            3,
            {iv({1, 0, 0}), iv({-1, 0, 0}), iv({0, 1, 0}), iv({0, -1, 0}), iv({0, 0, -1}), iv({1, 0, 2}),
             iv({0, 1, 2}), iv({-1, 0, 2}), iv({0, -1, 2})},
            {{0, 2, 4},
             {1, 2, 4},
             {1, 3, 4},
             {0, 3, 4},
             {5, 6, 7, 8},
             {0, 2, 5, 6},
             {1, 2, 6, 7},
             {1, 3, 7, 8},
             {0, 3, 5, 8}}};
  }
  if (name == "p2xp2") {
    FanSpec s{name, 4, {}, {}};
    for (auto block : {0, 2}) {
      for (auto v : {iv({1, 0}), iv({0, 1}), iv({-1, -1})}) {
        IntVector r(4, 0);
        r[static_cast<std::size_t>(block)] = v[0];
        r[static_cast<std::size_t>(block) + 1] = v[1];
        s.rays.push_back(r);
      }
    }
    const RaySet tri[3] = {{0, 1}, {1, 2}, {2, 0}};
    for (const auto& a : tri)
      for (const auto& b : tri) s.max_cones.push_back({a[0], a[1], b[0] + 3, b[1] + 3});
    return s;
  }
  throw UnknownExample("unknown example '" + name + "'");
}

inline Fan example(const std::string& name) { return build(example_spec(name)); }

}  // namespace ihc
