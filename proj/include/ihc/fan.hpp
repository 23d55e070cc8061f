#pragma once

// Rational fans with their full face posets.

#include "ihc/arith.hpp"
#include "ihc/errors.hpp"
#include "ihc/lattice.hpp"
#include "ihc/linalg.hpp"
#include "ihc/lp.hpp"
#include "ihc/matrix.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <iterator>
#include <tuple>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ihc {

using ConeId = std::size_t;
using RaySet = std::vector<std::size_t>;

struct Cone {
  RaySet rays;  // sorted indices into Fan::rays()
  int dim = 0;
  /// n x dim; columns are the Hermite-canonical basis of span(cone) ∩ N.
  IntegerMatrix span_basis;
  /// dim x rays.size(); generators expressed in span_basis coordinates.
  IntegerMatrix ray_coordinates;
  /// Primitive inward covectors in span_basis coordinates, one per facet.
  std::vector<IntVector> facet_normals;
  std::vector<ConeId> faces;   // all faces, including the zero cone and the cone itself
  std::vector<ConeId> facets;  // faces of dimension dim - 1
};

enum class Tristate { Unchecked, False, True };

struct FanFlags {
  bool complete = false;
  bool simplicial = false;
  Tristate polytopal = Tristate::Unchecked;
};

class Fan;
Fan build_fan(int n, std::vector<IntVector> rays, std::vector<RaySet> max_cones, std::string name = "");

class Fan {
 public:
  int dim() const { return n_; }
  const std::string& name() const { return name_; }
  const std::vector<IntVector>& rays() const { return rays_; }
  const std::vector<Cone>& cones() const { return cones_; }
  std::size_t size() const { return cones_.size(); }

  const Cone& cone(ConeId id) const {
    if (id >= cones_.size()) throw UnknownCone("unknown cone id " + std::to_string(id));
    return cones_[id];
  }

  static constexpr ConeId zero_cone() { return 0; }

  std::optional<ConeId> find(const RaySet& rays) const {
    auto it = by_rays_.find(rays);
    if (it == by_rays_.end()) return std::nullopt;
    return it->second;
  }

  std::vector<ConeId> cones_of_dim(int d) const {
    std::vector<ConeId> out;
    for (ConeId i = 0; i < cones_.size(); ++i)
      if (cones_[i].dim == d) out.push_back(i);
    return out;
  }

  const std::vector<ConeId>& maximal_cones() const { return maximal_; }
  /// Covering relations (facet, cone) of the face poset.
  const std::vector<std::pair<ConeId, ConeId>>& covering_relations() const { return covers_; }
  const FanFlags& flags() const { return flags_; }
  void record_polytopal(bool value) { flags_.polytopal = value ? Tristate::True : Tristate::False; }

  /// tau is a face of sigma (tau == sigma allowed).
  bool is_face(ConeId tau, ConeId sigma) const {
    const auto& f = cone(sigma).faces;
    return std::binary_search(f.begin(), f.end(), tau);
  }

  /// The common face a ∩ b.
  ConeId intersection(ConeId a, ConeId b) const {
    RaySet common;
    const auto& ra = cone(a).rays;
    const auto& rb = cone(b).rays;
    std::set_intersection(ra.begin(), ra.end(), rb.begin(), rb.end(), std::back_inserter(common));
    auto id = find(common);
    if (!id) throw NotAFan("intersection of cones " + std::to_string(a) + " and " + std::to_string(b) +
                           " is not a cone of the fan");
    return *id;
  }

  /// Ray index sets of the maximal cones, suitable for rebuilding the fan.
  std::vector<RaySet> maximal_ray_sets() const {
    std::vector<RaySet> out;
    for (auto id : maximal_) out.push_back(cones_[id].rays);
    return out;
  }

  std::string describe(ConeId id) const {
    const auto& c = cone(id);
    if (c.rays.empty()) return "{0}";
    std::string s = "{";
    for (std::size_t i = 0; i < c.rays.size(); ++i) s += (i ? "," : "") + std::to_string(c.rays[i]);
    return s + "}";
  }

 private:
  friend Fan build_fan(int, std::vector<IntVector>, std::vector<RaySet>, std::string);

  int n_ = 0;
  std::string name_;
  std::vector<IntVector> rays_;
  std::vector<Cone> cones_;
  std::map<RaySet, ConeId> by_rays_;
  std::vector<ConeId> maximal_;
  std::vector<std::pair<ConeId, ConeId>> covers_;
  FanFlags flags_;
};

namespace detail {

struct ConeGeometry {
  int dim = 0;
  IntegerMatrix span_basis;
  IntegerMatrix ray_coordinates;
  std::vector<IntVector> facet_normals;
  std::vector<std::uint64_t> facet_sets;  // local ray bitmasks lying on each facet
};

inline void for_each_subset(std::size_t m, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  if (k > m) return;
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Span basis, coordinates and facets of cone(gens). Facet normals come from
// kernels of rank-(d-1) generator subsets that leave all generators on one side.
inline ConeGeometry analyze_cone(int n, const std::vector<IntVector>& gens, const std::string& label) {
  const std::size_t m = gens.size();
  if (m > 64) throw NotAFan("cone " + label + " has more than 64 generators");
  IntegerMatrix g(static_cast<std::size_t>(n), m);
  for (std::size_t j = 0; j < m; ++j)
    for (int i = 0; i < n; ++i) g(i, j) = gens[j][i];
  ConeGeometry out;
  out.span_basis = saturated_basis(g);
  const std::size_t d = out.span_basis.cols();
  out.dim = static_cast<int>(d);
  out.ray_coordinates = IntegerMatrix(d, m);
  const auto basis_q = to_rational(out.span_basis);
  for (std::size_t j = 0; j < m; ++j) {
    auto x = solve(basis_q, to_rational(gens[j]));
    if (!x) throw std::logic_error("analyze_cone: generator outside its own span");
    for (std::size_t i = 0; i < d; ++i) {
      if ((*x)[i].get_den() != 1) throw std::logic_error("analyze_cone: span basis not saturated");
      out.ray_coordinates(i, j) = (*x)[i].get_num();
    }
  }
  if (d == 0) return out;

  std::set<IntVector> seen;
  for_each_subset(m, d - 1, [&](const std::vector<std::size_t>& subset) {
    RationalMatrix sub(subset.size(), d);
    for (std::size_t r = 0; r < subset.size(); ++r)
      for (std::size_t i = 0; i < d; ++i) sub(r, i) = out.ray_coordinates(i, subset[r]);
    auto rk = rank_and_kernel(sub);
    if (rk.rank + 1 != d) return;
    IntVector normal = primitive_integer_vector(rk.kernel_basis.front());
    int sign = 0;
    std::uint64_t zero_set = 0;
    for (std::size_t j = 0; j < m; ++j) {
      Integer v = 0;
      for (std::size_t i = 0; i < d; ++i) v += normal[i] * out.ray_coordinates(i, j);
      if (v == 0) {
        zero_set |= std::uint64_t{1} << j;
        continue;
      }
      int s = v > 0 ? 1 : -1;
      if (sign == 0)
        sign = s;
      else if (s != sign)
        return;
    }
    if (sign == 0) return;
    if (sign < 0)
      for (auto& x : normal) x = -x;
    if (!seen.insert(normal).second) return;
    out.facet_normals.push_back(normal);
    out.facet_sets.push_back(zero_set);
  });

  // strongly convex, and every generator spans an extreme ray
  std::uint64_t all = m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
  if (out.facet_normals.empty())
    throw NotAFan("cone " + label + " is not strongly convex");
  std::uint64_t common = all;
  for (auto fs : out.facet_sets) common &= fs;
  if (common != 0) throw NotAFan("cone " + label + " is not strongly convex");
  for (std::size_t j = 0; j < m; ++j) {
    std::uint64_t meet = all;
    for (auto fs : out.facet_sets)
      if (fs >> j & 1) meet &= fs;
    if (meet != (std::uint64_t{1} << j))
      throw NotAFan("cone " + label + ": generator " + std::to_string(j) + " is not an extreme ray");
  }
  return out;
}

// All faces of a cone as local ray bitmasks: the cone itself plus every
// intersection of facets.
inline std::set<std::uint64_t> face_masks(std::size_t m, const std::vector<std::uint64_t>& facet_sets) {
  std::uint64_t all = m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
  std::set<std::uint64_t> faces{all};
  std::vector<std::uint64_t> frontier{all};
  while (!frontier.empty()) {
    std::vector<std::uint64_t> next;
    for (auto f : frontier)
      for (auto fs : facet_sets) {
        auto g = f & fs;
        if (faces.insert(g).second) next.push_back(g);
      }
    frontier = std::move(next);
  }
  return faces;
}

inline std::string ray_set_label(const RaySet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

// The common rays of a and b span a face of both, and it is their intersection:
// some covector vanishes on the common rays, is positive on the rest of a and
// negative on the rest of b.
inline bool meet_is_common_face(int n, const std::vector<IntVector>& rays, const RaySet& a, const RaySet& b) {
  RaySet common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  std::vector<LinearConstraint> cons;
  auto row = [&](std::size_t r, int sign) {
    RationalVector c(n);
    for (int i = 0; i < n; ++i) c[i] = sign * rays[r][i];
    return c;
  };
  for (auto r : common) cons.push_back({row(r, 1), 0, Relation::Equal, false});
  for (auto r : a)
    if (!std::binary_search(common.begin(), common.end(), r))
      cons.push_back({row(r, 1), 0, Relation::GreaterEqual, true});
  for (auto r : b)
    if (!std::binary_search(common.begin(), common.end(), r))
      cons.push_back({row(r, -1), 0, Relation::GreaterEqual, true});
  return lp_feasible(cons, static_cast<std::size_t>(n)).feasible;
}

}  // namespace detail

bool check_complete(const Fan& f);

/// Builds and validates a fan from primitive rays and generating cones.
inline Fan build_fan(int n, std::vector<IntVector> rays, std::vector<RaySet> max_cones, std::string name) {
  if (n < 1) throw EmptyInput("ambient dimension must be at least 1");
  if (rays.empty()) throw EmptyInput("fan has no rays");
  if (max_cones.empty()) throw EmptyInput("fan has no cones");
  for (std::size_t i = 0; i < rays.size(); ++i) {
    if (rays[i].size() != static_cast<std::size_t>(n))
      throw NotAFan("ray " + std::to_string(i) + " does not have " + std::to_string(n) + " coordinates");
    if (content(rays[i]) != 1) throw NonPrimitiveRay("ray " + std::to_string(i) + " is not primitive");
  }
  {
    std::map<IntVector, std::size_t> seen;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      auto [it, fresh] = seen.emplace(rays[i], i);
      if (!fresh)
        throw DuplicateRay("rays " + std::to_string(it->second) + " and " + std::to_string(i) + " coincide");
    }
  }
  std::set<RaySet> generating;
  for (auto& c : max_cones) {
    std::sort(c.begin(), c.end());
    if (std::adjacent_find(c.begin(), c.end()) != c.end())
      throw NotAFan("cone " + detail::ray_set_label(c) + " repeats a ray");
    for (auto r : c)
      if (r >= rays.size()) throw NotAFan("cone " + detail::ray_set_label(c) + " references unknown ray");
    generating.insert(c);
  }

  std::map<RaySet, detail::ConeGeometry> geometry;
  std::set<RaySet> all_faces;
  const std::vector<IntVector>* ray_source = &rays;
  auto gens_of = [&](const RaySet& s) {
    std::vector<IntVector> g;
    for (auto r : s) g.push_back((*ray_source)[r]);
    return g;
  };
  for (const auto& c : generating) {
    auto geo = detail::analyze_cone(n, gens_of(c), detail::ray_set_label(c));
    for (auto mask : detail::face_masks(c.size(), geo.facet_sets)) {
      RaySet face;
      for (std::size_t j = 0; j < c.size(); ++j)
        if (mask >> j & 1) face.push_back(c[j]);
      all_faces.insert(face);
    }
    geometry.emplace(c, std::move(geo));
  }
  {
    std::vector<bool> used(rays.size(), false);
    for (const auto& f : all_faces)
      for (auto r : f) used[r] = true;
    for (std::size_t i = 0; i < rays.size(); ++i)
      if (!used[i]) throw NotAFan("ray " + std::to_string(i) + " is not a ray of any cone");
  }

  std::vector<RaySet> gen_list(generating.begin(), generating.end());
  for (std::size_t i = 0; i < gen_list.size(); ++i)
    for (std::size_t j = i + 1; j < gen_list.size(); ++j)
      if (!detail::meet_is_common_face(n, rays, gen_list[i], gen_list[j]))
        throw NotAFan("cones " + detail::ray_set_label(gen_list[i]) + " and " +
                      detail::ray_set_label(gen_list[j]) + " do not meet in a common face");

  Fan fan;
  fan.n_ = n;
  fan.name_ = std::move(name);
  fan.rays_ = std::move(rays);
  ray_source = &fan.rays_;

  struct Entry {
    int dim;
    RaySet rays;
    detail::ConeGeometry geo;
  };
  std::vector<Entry> entries;
  for (const auto& f : all_faces) {
    auto it = geometry.find(f);
    detail::ConeGeometry geo = it != geometry.end()
                                   ? it->second
                                   : detail::analyze_cone(n, gens_of(f), detail::ray_set_label(f));
    entries.push_back({geo.dim, f, std::move(geo)});
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return std::tie(a.dim, a.rays) < std::tie(b.dim, b.rays); });
  for (auto& e : entries) {
    Cone c;
    c.rays = std::move(e.rays);
    c.dim = e.dim;
    c.span_basis = std::move(e.geo.span_basis);
    c.ray_coordinates = std::move(e.geo.ray_coordinates);
    c.facet_normals = std::move(e.geo.facet_normals);
    fan.by_rays_.emplace(c.rays, fan.cones_.size());
    fan.cones_.push_back(std::move(c));
  }
  // in a validated fan the faces of a cone are exactly the cones on a subset of its rays
  std::vector<bool> is_proper_face(fan.cones_.size(), false);
  for (ConeId s = 0; s < fan.cones_.size(); ++s) {
    auto& cs = fan.cones_[s];
    for (ConeId t = 0; t < fan.cones_.size(); ++t) {
      const auto& ct = fan.cones_[t];
      if (ct.dim > cs.dim) break;
      if (!std::includes(cs.rays.begin(), cs.rays.end(), ct.rays.begin(), ct.rays.end())) continue;
      cs.faces.push_back(t);
      if (t != s) is_proper_face[t] = true;
      if (ct.dim + 1 == cs.dim) {
        cs.facets.push_back(t);
        fan.covers_.emplace_back(t, s);
      }
    }
  }
  for (ConeId i = 0; i < fan.cones_.size(); ++i)
    if (!is_proper_face[i]) fan.maximal_.push_back(i);

  fan.flags_.simplicial = std::all_of(fan.cones_.begin(), fan.cones_.end(), [](const Cone& c) {
    return c.rays.size() == static_cast<std::size_t>(c.dim);
  });
  fan.flags_.complete = check_complete(fan);
  return fan;
}

/// Pure of dimension n, every wall in exactly two maximal cones, wall graph connected.
inline bool check_complete(const Fan& f) {
  const int n = f.dim();
  const auto& maxc = f.maximal_cones();
  if (maxc.empty()) return false;
  for (auto s : maxc)
    if (f.cone(s).dim != n) return false;
  std::map<ConeId, std::size_t> pos;
  for (std::size_t i = 0; i < maxc.size(); ++i) pos[maxc[i]] = i;
  std::vector<std::size_t> parent(maxc.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto w : f.cones_of_dim(n - 1)) {
    std::vector<ConeId> around;
    for (auto s : maxc)
      if (f.is_face(w, s)) around.push_back(s);
    if (around.size() != 2) return false;
    parent[root(pos[around[0]])] = root(pos[around[1]]);
  }
  for (std::size_t i = 0; i < maxc.size(); ++i)
    if (root(i) != root(0)) return false;
  return true;
}

/// Closed star: every cone containing tau together with all of its faces.
inline std::vector<ConeId> star(const Fan& f, ConeId tau) {
  f.cone(tau);
  std::set<ConeId> out;
  for (ConeId s = 0; s < f.size(); ++s)
    if (f.is_face(tau, s))
      for (auto face : f.cone(s).faces) out.insert(face);
  return {out.begin(), out.end()};
}

struct ConeMultiplicity {
  std::optional<Integer> multiplicity;  // absent for non-simplicial cones
  bool is_smooth = false;
  bool is_simplicial = false;
};

/// Lattice index of the generators inside span(cone) ∩ N.
inline ConeMultiplicity cone_multiplicity(const Fan& f, ConeId id) {
  const auto& c = f.cone(id);
  ConeMultiplicity out;
  out.is_simplicial = c.rays.size() == static_cast<std::size_t>(c.dim);
  if (!out.is_simplicial) return out;
  auto snf = smith_normal_form(c.ray_coordinates);
  Integer mult = 1;
  for (const auto& d : snf.diagonal) mult *= d;
  out.multiplicity = mult;
  out.is_smooth = mult == 1;
  return out;
}

/// Alternating count sum over cones of (-1)^dim.
inline long euler_sum(const Fan& f) {
  long s = 0;
  for (const auto& c : f.cones()) s += (c.dim % 2 == 0) ? 1 : -1;
  return s;
}

}  // namespace ihc
