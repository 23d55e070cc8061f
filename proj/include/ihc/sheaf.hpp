#pragma once

// The minimal extension sheaf of a fan, built cone by cone as the free cover of
// the reduced boundary sections, and its section spaces over sub-fans.
//
// Grading: a polynomial of degree j has cohomological degree 2j. An element of
// E(σ) in degree D is a tuple (p_i) with p_i a polynomial on span(σ) of degree
// (D - deg g_i) / 2, one entry per generator g_i. Dense layouts concatenate the
// monomial coefficient vectors of the p_i in generator order.

#include "ihc/errors.hpp"
#include "ihc/fan.hpp"
#include "ihc/linalg.hpp"
#include "ihc/piecewise.hpp"
#include "ihc/polynomial.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <tuple>
#include <vector>

namespace ihc {

struct ConeModule {
  std::vector<int> generator_degrees;  // ascending, even
  /// dim Ē(∂σ) in degrees 0, 2, ..., degree bound. Empty for the zero cone.
  std::vector<std::size_t> boundary_reduced_dims;
  /// restrictions.at(face)[i] is the image of generator i in E(face) of degree
  /// deg g_i, dense in the face's layout. Every proper face is present.
  std::map<ConeId, std::vector<RationalVector>> restrictions;
};

class SheafModel;
SheafModel build_minimal_extension_sheaf(const Fan& f, std::optional<int> degree_bound = std::nullopt);
// the model keeps a reference to the fan
SheafModel build_minimal_extension_sheaf(Fan&&, std::optional<int> = std::nullopt) = delete;

class SheafModel {
 public:
  const Fan& fan() const { return *fan_; }
  int degree_bound() const { return bound_; }
  const ConeModule& module(ConeId id) const {
    fan_->cone(id);
    return modules_.at(id);
  }

  /// Start offset of each generator's block in E(σ)^D, plus the total at the end.
  std::vector<std::size_t> generator_offsets(ConeId id, int degree) const {
    const auto& m = module(id);
    const auto d = static_cast<std::size_t>(fan_->cone(id).dim);
    std::vector<std::size_t> off{0};
    for (int g : m.generator_degrees) {
      std::size_t size = degree >= g ? monomial_count(d, (degree - g) / 2) : 0;
      off.push_back(off.back() + size);
    }
    return off;
  }

  std::size_t block_dim(ConeId id, int degree) const { return generator_offsets(id, degree).back(); }

  /// C with B_to = B_from * C, i.e. coordinates on span(to) expressed in span(from) coordinates.
  const RationalMatrix& coordinate_change(ConeId from, ConeId to) const {
    std::lock_guard lock(cache_->mutex);
    auto key = std::make_pair(from, to);
    auto it = cache_->coordinate_change.find(key);
    if (it != cache_->coordinate_change.end()) return it->second;
    const auto b_from = to_rational(fan_->cone(from).span_basis);
    const auto& b_to = fan_->cone(to).span_basis;
    RationalMatrix c(b_from.cols(), b_to.cols());
    for (std::size_t k = 0; k < b_to.cols(); ++k) {
      auto x = solve(b_from, to_rational(b_to.column(k)));
      if (!x) throw std::logic_error("coordinate_change: cone is not a face");
      for (std::size_t j = 0; j < b_from.cols(); ++j) c(j, k) = (*x)[j];
    }
    return cache_->coordinate_change.emplace(key, std::move(c)).first->second;
  }

  /// Restriction E(from)^D -> E(to)^D for a face `to` of `from`.
  const RationalMatrix& restriction_matrix(ConeId from, ConeId to, int degree) const {
    std::lock_guard lock(cache_->mutex);
    auto key = std::make_tuple(from, to, degree);
    auto it = cache_->restriction.find(key);
    if (it != cache_->restriction.end()) return it->second;
    return cache_->restriction.emplace(key, compute_restriction(from, to, degree)).first->second;
  }

  /// Multiplication by f, homogeneous of polynomial degree e (or zero) on span(σ):
  /// E(σ)^D -> E(σ)^{D + 2e}.
  RationalMatrix multiplication_matrix(ConeId id, const Polynomial& f, int degree, int e) const {
    const auto d = static_cast<std::size_t>(fan_->cone(id).dim);
    if (f.variables() != d) throw std::invalid_argument("multiplication_matrix: wrong variable count");
    if (!f.is_zero() && f.homogeneous_degree() != e)
      throw std::invalid_argument("multiplication_matrix: polynomial is not homogeneous of the given degree");
    const auto src = generator_offsets(id, degree);
    const auto dst = generator_offsets(id, degree + 2 * e);
    RationalMatrix out(dst.back(), src.back());
    const auto& gens = module(id).generator_degrees;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (degree < gens[i]) continue;
      const int j = (degree - gens[i]) / 2;
      const auto& mons = monomials(d, j);
      for (std::size_t a = 0; a < mons.size(); ++a) {
        Polynomial mono(d);
        mono.add_term(mons[a], 1);
        auto col = (mono * f).dense(j + e);
        for (std::size_t r = 0; r < col.size(); ++r)
          if (col[r] != 0) out(dst[i] + r, src[i] + a) = col[r];
      }
    }
    return out;
  }

  /// Splits a dense element of E(σ)^D into one polynomial per generator.
  std::vector<Polynomial> coefficients(ConeId id, std::span<const Rational> block, int degree) const {
    const auto d = static_cast<std::size_t>(fan_->cone(id).dim);
    const auto off = generator_offsets(id, degree);
    if (block.size() != off.back()) throw std::invalid_argument("coefficients: block size mismatch");
    const auto& gens = module(id).generator_degrees;
    std::vector<Polynomial> out;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (degree < gens[i]) {
        out.emplace_back(d);
        continue;
      }
      out.push_back(Polynomial::from_dense(d, (degree - gens[i]) / 2, block.subspan(off[i], off[i + 1] - off[i])));
    }
    return out;
  }

 private:
  friend SheafModel build_minimal_extension_sheaf(const Fan&, std::optional<int>);

  RationalMatrix compute_restriction(ConeId from, ConeId to, int degree) const {
    if (from == to) return RationalMatrix::identity(block_dim(from, degree));
    if (!fan_->is_face(to, from)) throw std::invalid_argument("restriction_matrix: target is not a face");
    const auto d_from = static_cast<std::size_t>(fan_->cone(from).dim);
    const auto d_to = static_cast<std::size_t>(fan_->cone(to).dim);
    const auto& c = coordinate_change(from, to);
    const auto src = generator_offsets(from, degree);
    const auto dst = generator_offsets(to, degree);
    RationalMatrix out(dst.back(), src.back());
    const auto& gens = module(from).generator_degrees;
    const auto& face_gens = module(to).generator_degrees;
    const auto& images = module(from).restrictions.at(to);
    std::map<int, std::vector<Polynomial>> restricted_monomials;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (degree < gens[i]) continue;
      const int j = (degree - gens[i]) / 2;
      // image of generator i, split by the face's generators
      const auto img_off = generator_offsets(to, gens[i]);
      std::vector<std::optional<Polynomial>> parts(face_gens.size());
      for (std::size_t l = 0; l < face_gens.size(); ++l) {
        if (gens[i] < face_gens[l]) continue;
        std::span<const Rational> slice(images[i].data() + img_off[l], img_off[l + 1] - img_off[l]);
        if (is_zero(slice)) continue;
        parts[l] = Polynomial::from_dense(d_to, (gens[i] - face_gens[l]) / 2, slice);
      }
      auto& rmons = restricted_monomials[j];
      if (rmons.empty())
        for (const auto& e : monomials(d_from, j)) {
          Polynomial mono(d_from);
          mono.add_term(e, 1);
          rmons.push_back(mono.substitute(c));
        }
      for (std::size_t a = 0; a < rmons.size(); ++a) {
        if (rmons[a].is_zero()) continue;
        for (std::size_t l = 0; l < face_gens.size(); ++l) {
          if (!parts[l]) continue;
          auto col = (rmons[a] * *parts[l]).dense((degree - face_gens[l]) / 2);
          for (std::size_t r = 0; r < col.size(); ++r)
            if (col[r] != 0) out(dst[l] + r, src[i] + a) = col[r];
        }
      }
    }
    return out;
  }

  struct Cache {
    std::recursive_mutex mutex;
    std::map<std::pair<ConeId, ConeId>, RationalMatrix> coordinate_change;
    std::map<std::tuple<ConeId, ConeId, int>, RationalMatrix> restriction;
  };

  const Fan* fan_ = nullptr;
  int bound_ = 0;
  std::vector<ConeModule> modules_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Graded piece of the sections over a face-closed sub-fan. Sections are
/// stored as data on the maximal elements of the sub-fan.
struct SectionSpace {
  int degree = 0;
  std::vector<ConeId> cones;          // maximal elements, ascending
  std::vector<std::size_t> offsets;   // block starts, plus total at the end
  std::vector<RationalVector> basis;  // kernel basis of the compatibility system
  /// A section's coordinates in `basis` are its entries at these positions.
  std::vector<std::size_t> free_columns;
  std::vector<RationalVector> constraints;

  std::size_t ambient_dim() const { return offsets.back(); }
  std::size_t dim() const { return basis.size(); }

  std::optional<std::size_t> index_of(ConeId id) const {
    auto it = std::lower_bound(cones.begin(), cones.end(), id);
    if (it == cones.end() || *it != id) return std::nullopt;
    return static_cast<std::size_t>(it - cones.begin());
  }

  std::span<const Rational> block(const RationalVector& v, std::size_t i) const {
    return {v.data() + offsets[i], offsets[i + 1] - offsets[i]};
  }

  RationalVector coordinates(const RationalVector& section) const {
    RationalVector c(free_columns.size());
    for (std::size_t i = 0; i < free_columns.size(); ++i) c[i] = section[free_columns[i]];
    return c;
  }

  RationalVector combine(std::span<const Rational> coords) const {
    RationalVector v(ambient_dim());
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if (coords[b] == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j)
        if (basis[b][j] != 0) v[j] += coords[b] * basis[b][j];
    }
    return v;
  }

  bool contains(const RationalVector& v) const {
    for (const auto& row : constraints)
      if (dot(row, v) != 0) return false;
    return true;
  }
};

/// A single section: data on every maximal element of its sub-fan.
struct Section {
  int degree = 0;
  std::vector<ConeId> cones;
  std::vector<std::size_t> offsets;
  RationalVector values;
};

inline std::vector<Section> sections_of(const SectionSpace& space) {
  std::vector<Section> out;
  for (const auto& b : space.basis) out.push_back({space.degree, space.cones, space.offsets, b});
  return out;
}

/// Exact basis of the degree-D sections over a face-closed set of cones.
inline SectionSpace sections_over_subfan(const SheafModel& model, std::span<const ConeId> subfan, int degree) {
  const Fan& fan = model.fan();
  if (degree < 0 || degree % 2 != 0) throw std::invalid_argument("sections_over_subfan: degree must be even");
  if (degree > model.degree_bound())
    throw DegreeBoundTooLow("degree " + std::to_string(degree) + " exceeds the sheaf degree bound");
  std::set<ConeId> lam(subfan.begin(), subfan.end());
  for (auto c : lam)
    for (auto face : fan.cone(c).faces)
      if (!lam.count(face)) throw std::invalid_argument("sections_over_subfan: cone set is not face-closed");

  SectionSpace space;
  space.degree = degree;
  for (auto c : lam) {
    bool maximal = true;
    for (auto o : lam)
      if (o != c && fan.is_face(c, o)) {
        maximal = false;
        break;
      }
    if (maximal) space.cones.push_back(c);
  }
  space.offsets.push_back(0);
  for (auto c : space.cones) space.offsets.push_back(space.offsets.back() + model.block_dim(c, degree));
  const std::size_t width = space.ambient_dim();

  // Agreement on τ is required for every pair of maximal cones containing τ;
  // pairs already glued along a larger common face agree on τ automatically.
  std::vector<ConeId> order(lam.begin(), lam.end());
  std::stable_sort(order.begin(), order.end(),
                   [&](ConeId a, ConeId b) { return fan.cone(a).dim > fan.cone(b).dim; });
  for (auto tau : order) {
    if (model.block_dim(tau, degree) == 0) continue;
    std::vector<std::size_t> around;
    for (std::size_t i = 0; i < space.cones.size(); ++i)
      if (fan.is_face(tau, space.cones[i])) around.push_back(i);
    if (around.size() < 2) continue;
    std::vector<std::size_t> parent(around.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto root = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (std::size_t a = 0; a < around.size(); ++a)
      for (std::size_t b = a + 1; b < around.size(); ++b) {
        ConeId meet = fan.intersection(space.cones[around[a]], space.cones[around[b]]);
        if (fan.cone(meet).dim > fan.cone(tau).dim) parent[root(a)] = root(b);
      }
    std::vector<std::size_t> reps;
    std::set<std::size_t> seen_roots;
    for (std::size_t a = 0; a < around.size(); ++a)
      if (seen_roots.insert(root(a)).second) reps.push_back(around[a]);
    if (reps.size() < 2) continue;
    const auto& r0 = model.restriction_matrix(space.cones[reps[0]], tau, degree);
    for (std::size_t k = 1; k < reps.size(); ++k) {
      const auto& rk = model.restriction_matrix(space.cones[reps[k]], tau, degree);
      for (std::size_t row = 0; row < r0.rows(); ++row) {
        RationalVector eq(width);
        for (std::size_t j = 0; j < r0.cols(); ++j) eq[space.offsets[reps[0]] + j] = r0(row, j);
        for (std::size_t j = 0; j < rk.cols(); ++j) eq[space.offsets[reps[k]] + j] -= rk(row, j);
        if (!is_zero(eq)) space.constraints.push_back(std::move(eq));
      }
    }
  }
  auto rk = rank_and_kernel(RationalMatrix::from_rows(space.constraints, width));
  space.basis = std::move(rk.kernel_basis);
  space.free_columns = std::move(rk.free_columns);
  return space;
}

/// Applies a per-maximal-cone linear map (given by `block_map`) to a section,
/// producing a section laid out like `target`.
template <class BlockMap>
RationalVector map_blocks(const SectionSpace& source, const SectionSpace& target, const RationalVector& v,
                          BlockMap&& block_map) {
  RationalVector out(target.ambient_dim());
  for (std::size_t i = 0; i < source.cones.size(); ++i) {
    const RationalMatrix& m = block_map(i);
    auto in = source.block(v, i);
    auto img = m.apply(in);
    for (std::size_t r = 0; r < img.size(); ++r) out[target.offsets[i] + r] = img[r];
  }
  return out;
}

/// Builds E cone by cone in increasing dimension. The generators of E(σ) are
/// deterministic echelon lifts of a basis of Ē(∂σ) = E(∂σ) / m_σ E(∂σ).
inline SheafModel build_minimal_extension_sheaf(const Fan& f, std::optional<int> degree_bound) {
  const int bound = degree_bound.value_or(2 * f.dim());
  if (bound < 0 || bound % 2 != 0) throw std::invalid_argument("degree bound must be even and nonnegative");
  SheafModel model;
  model.fan_ = &f;
  model.bound_ = bound;
  model.modules_.resize(f.size());
  model.modules_[Fan::zero_cone()].generator_degrees = {0};

  for (ConeId id = 1; id < f.size(); ++id) {
    const auto& cone = f.cone(id);
    std::vector<ConeId> boundary;
    for (auto face : cone.faces)
      if (face != id) boundary.push_back(face);

    std::vector<SectionSpace> spaces;
    for (int degree = 0; degree <= bound; degree += 2) spaces.push_back(sections_over_subfan(model, boundary, degree));

    // linear forms on span(σ), restricted to each facet
    const auto d = static_cast<std::size_t>(cone.dim);
    const auto& facets = spaces.front().cones;
    std::vector<std::vector<Polynomial>> forms(facets.size());
    for (std::size_t i = 0; i < facets.size(); ++i) {
      const auto& c = model.coordinate_change(id, facets[i]);
      for (std::size_t j = 0; j < d; ++j) forms[i].push_back(Polynomial::linear(c.row(j)));
    }

    ConeModule mod;
    struct Lift {
      int degree;
      const SectionSpace* space;
      RationalVector values;
    };
    std::vector<Lift> lifts;
    for (std::size_t t = 0; t < spaces.size(); ++t) {
      const auto& space = spaces[t];
      const int degree = static_cast<int>(2 * t);
      EchelonBasis image(space.dim());
      if (t > 0) {
        const auto& prev = spaces[t - 1];
        for (std::size_t j = 0; j < d; ++j) {
          std::vector<RationalMatrix> mult;
          for (std::size_t i = 0; i < facets.size(); ++i)
            mult.push_back(model.multiplication_matrix(facets[i], forms[i][j], degree - 2, 1));
          for (const auto& b : prev.basis)
            image.insert(space.coordinates(map_blocks(prev, space, b, [&](std::size_t i) -> const RationalMatrix& {
              return mult[i];
            })));
        }
      }
      std::size_t count = 0;
      for (std::size_t k = 0; k < space.dim(); ++k) {
        RationalVector unit(space.dim());
        unit[k] = 1;
        if (image.insert(unit)) {
          lifts.push_back({degree, &space, space.basis[k]});
          ++count;
        }
      }
      mod.boundary_reduced_dims.push_back(count);
    }
    if (mod.boundary_reduced_dims.back() != 0)
      throw DegreeBoundTooLow("cone " + f.describe(id) + " needs generators at or above degree " +
                              std::to_string(bound));

    for (const auto& l : lifts) mod.generator_degrees.push_back(l.degree);
    for (auto face : boundary) {
      std::vector<RationalVector> images;
      for (const auto& l : lifts) {
        if (auto pos = l.space->index_of(face)) {
          auto b = l.space->block(l.values, *pos);
          images.emplace_back(b.begin(), b.end());
          continue;
        }
        std::size_t facet = 0;
        while (!f.is_face(face, l.space->cones[facet])) ++facet;
        const auto& r = model.restriction_matrix(l.space->cones[facet], face, l.degree);
        images.push_back(r.apply(l.space->block(l.values, facet)));
      }
      mod.restrictions.emplace(face, std::move(images));
    }
    model.modules_[id] = std::move(mod);
  }
  return model;
}

/// Restrictions compose: res(τ→π) ∘ res(σ→τ) = res(σ→π) for all π ≤ τ ≤ σ, D ≤ bound.
inline bool restrictions_commute(const SheafModel& model) {
  const Fan& f = model.fan();
  for (ConeId s = 0; s < f.size(); ++s)
    for (auto t : f.cone(s).faces)
      for (auto p : f.cone(t).faces) {
        if (t == s || p == t) continue;
        for (int degree = 0; degree <= model.degree_bound(); degree += 2)
          if (!(model.restriction_matrix(t, p, degree) * model.restriction_matrix(s, t, degree) ==
                model.restriction_matrix(s, p, degree)))
            return false;
      }
  return true;
}

/// One graded piece Ē^{2k}(Σ) = E^{2k}(Σ) / Σ x_i E^{2k-2}(Σ).
struct ReducedPiece {
  int degree = 0;
  SectionSpace sections;
  /// Basis of Σ x_i E^{2k-2} in section coordinates.
  std::vector<RationalVector> relations;
  /// Indices into sections.basis of the chosen quotient representatives.
  std::vector<std::size_t> lift_indices;
  /// Section coordinates -> Ē coordinates.
  RationalMatrix projection;

  std::size_t dim() const { return lift_indices.size(); }

  RationalVector project(const RationalVector& section) const {
    return projection.apply(sections.coordinates(section));
  }
  RationalVector project_coordinates(const RationalVector& coords) const { return projection.apply(coords); }
};

struct GlobalIH {
  std::vector<ReducedPiece> pieces;         // k = 0..n
  std::vector<std::size_t> section_dims;    // dim E^D(Σ) for D = 0, 2, ..., degree bound

  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> out;
    for (const auto& p : pieces) out.push_back(p.dim());
    return out;
  }
};

/// Global sections of a complete fan and their reduction modulo global linear forms.
inline GlobalIH global_ih(const SheafModel& model) {
  const Fan& f = model.fan();
  if (!f.flags().complete) throw NotComplete("global intersection cohomology requires a complete fan");
  const auto n = static_cast<std::size_t>(f.dim());
  if (model.degree_bound() < 2 * f.dim())
    throw DegreeBoundTooLow("global intersection cohomology needs degree bound >= 2n");
  std::vector<ConeId> all(f.size());
  std::iota(all.begin(), all.end(), ConeId{0});

  GlobalIH out;
  std::vector<SectionSpace> spaces;
  for (int degree = 0; degree <= model.degree_bound(); degree += 2) {
    spaces.push_back(sections_over_subfan(model, all, degree));
    out.section_dims.push_back(spaces.back().dim());
  }
  const auto& maxc = spaces.front().cones;
  std::vector<std::vector<Polynomial>> coords(maxc.size());
  for (std::size_t i = 0; i < maxc.size(); ++i)
    for (std::size_t j = 0; j < n; ++j)
      coords[i].push_back(restrict_to_span(Polynomial::variable(n, j), maxc[i], f));

  for (std::size_t k = 0; k <= n; ++k) {
    ReducedPiece piece;
    piece.degree = static_cast<int>(2 * k);
    piece.sections = spaces[k];
    const auto& space = piece.sections;
    EchelonBasis image(space.dim());
    if (k > 0) {
      const auto& prev = spaces[k - 1];
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<RationalMatrix> mult;
        for (std::size_t i = 0; i < maxc.size(); ++i)
          mult.push_back(model.multiplication_matrix(maxc[i], coords[i][j], piece.degree - 2, 1));
        for (const auto& b : prev.basis)
          image.insert(space.coordinates(
              map_blocks(prev, space, b, [&](std::size_t i) -> const RationalMatrix& { return mult[i]; })));
      }
    }
    auto q = quotient_basis(image.rows(), space.dim());
    piece.relations = std::move(q.relations);
    piece.lift_indices = std::move(q.lifts);
    piece.projection = std::move(q.projection);
    out.pieces.push_back(std::move(piece));
  }
  return out;
}

/// Σ_k h_k * dim Sym^{(D-2k)/2}(n variables): the graded dimension of a free
/// module with generators counted by h.
inline std::size_t free_module_dim(const std::vector<long long>& h, std::size_t n, int degree) {
  std::size_t total = 0;
  for (std::size_t k = 0; k < h.size(); ++k) {
    int rest = degree - 2 * static_cast<int>(k);
    if (rest < 0) continue;
    total += static_cast<std::size_t>(h[k]) * monomial_count(n, rest / 2);
  }
  return total;
}

/// Structured text dump: one record per cone in id order.
inline std::string dump_sheaf(const SheafModel& model) {
  const Fan& f = model.fan();
  std::ostringstream os;
  os << "sheaf fan=" << (f.name().empty() ? "-" : f.name()) << " n=" << f.dim()
     << " degree_bound=" << model.degree_bound() << "\n";
  for (ConeId id = 0; id < f.size(); ++id) {
    const auto& m = model.module(id);
    os << "cone " << id << " rays=" << f.describe(id) << " dim=" << f.cone(id).dim
       << " generator_degrees=[" << join(m.generator_degrees) << "]"
       << " boundary_reduced_dims=[" << join(m.boundary_reduced_dims) << "]\n";
    for (const auto& [face, images] : m.restrictions) {
      for (std::size_t i = 0; i < images.size(); ++i) {
        auto polys = model.coefficients(face, images[i], m.generator_degrees[i]);
        std::vector<std::string> parts;
        for (const auto& p : polys) parts.push_back(p.to_string({"u0", "u1", "u2", "u3", "u4", "u5"}));
        os << "  restrict g" << i << " -> cone " << face << ": [" << join(parts) << "]\n";
      }
    }
  }
  return os.str();
}

}  // namespace ihc
