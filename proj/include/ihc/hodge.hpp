#pragma once

// Cycle classes as images of star-supported sections, the spans they generate
// in Ē(Σ), and multiplication by a strictly convex conewise-linear function.

#include "ihc/errors.hpp"
#include "ihc/fan.hpp"
#include "ihc/linalg.hpp"
#include "ihc/piecewise.hpp"
#include "ihc/sheaf.hpp"

#include <numeric>
#include <optional>
#include <vector>

namespace ihc {

/// Subspace of Ē^D(Σ), in coordinates of the fixed quotient basis, kept in
/// reduced echelon form.
struct GradedSubspace {
  int degree = 0;
  std::size_t ambient_dim = 0;
  std::vector<RationalVector> basis;

  std::size_t dim() const { return basis.size(); }

  static GradedSubspace spanned_by(int degree, std::size_t ambient, const std::vector<RationalVector>& vectors) {
    return {degree, ambient, echelon_basis(vectors, ambient)};
  }

  bool contains(const RationalVector& v) const {
    EchelonBasis e(ambient_dim);
    for (const auto& b : basis) e.insert(b);
    return e.contains(v);
  }

  bool contains(const GradedSubspace& o) const {
    EchelonBasis e(ambient_dim);
    for (const auto& b : basis) e.insert(b);
    return std::all_of(o.basis.begin(), o.basis.end(), [&](const RationalVector& v) { return e.contains(v); });
  }
};

inline std::vector<ConeId> all_cones(const Fan& f) {
  std::vector<ConeId> all(f.size());
  std::iota(all.begin(), all.end(), ConeId{0});
  return all;
}

/// Coordinates (in `global.basis`) of the sections that vanish on every maximal
/// cone not containing τ.
inline std::vector<RationalVector> supported_coordinates(const SheafModel& model, const SectionSpace& global,
                                                         ConeId tau) {
  const Fan& f = model.fan();
  f.cone(tau);
  std::vector<RationalVector> rows;
  for (std::size_t i = 0; i < global.cones.size(); ++i) {
    if (f.is_face(tau, global.cones[i])) continue;
    for (std::size_t j = global.offsets[i]; j < global.offsets[i + 1]; ++j) {
      RationalVector row(global.dim());
      for (std::size_t b = 0; b < global.dim(); ++b) row[b] = global.basis[b][j];
      if (!is_zero(row)) rows.push_back(std::move(row));
    }
  }
  return rank_and_kernel(RationalMatrix::from_rows(rows, global.dim())).kernel_basis;
}

/// Exact basis of {s ∈ E(Σ)^D : s vanishes on every maximal cone not containing τ}.
inline std::vector<Section> supported_sections(const SheafModel& model, ConeId tau, int degree) {
  auto global = sections_over_subfan(model, all_cones(model.fan()), degree);
  std::vector<Section> out;
  for (const auto& c : supported_coordinates(model, global, tau))
    out.push_back({degree, global.cones, global.offsets, global.combine(c)});
  return out;
}

struct CycleClass {
  ConeId cone = 0;
  int k = 0;
  std::size_t supported_dim = 0;  // dim of the supported-section space in degree 2k
  GradedSubspace subspace;
  std::optional<RationalVector> principal;

  bool is_zero() const { return subspace.dim() == 0; }
};

inline CycleClass cycle_class(const SheafModel& model, const GlobalIH& ih, ConeId tau) {
  const Fan& f = model.fan();
  const int k = f.cone(tau).dim;
  const auto& piece = ih.pieces.at(static_cast<std::size_t>(k));
  auto coords = supported_coordinates(model, piece.sections, tau);
  std::vector<RationalVector> images;
  for (const auto& c : coords) images.push_back(piece.project_coordinates(c));
  CycleClass cc;
  cc.cone = tau;
  cc.k = k;
  cc.supported_dim = coords.size();
  cc.subspace = GradedSubspace::spanned_by(2 * k, piece.dim(), images);
  if (cc.subspace.dim() == 1) cc.principal = cc.subspace.basis.front();
  return cc;
}

inline CycleClass cycle_class(const SheafModel& model, ConeId tau) { return cycle_class(model, global_ih(model), tau); }

inline std::vector<CycleClass> all_cycle_classes(const SheafModel& model, const GlobalIH& ih) {
  std::vector<CycleClass> out;
  for (ConeId id = 0; id < model.fan().size(); ++id) out.push_back(cycle_class(model, ih, id));
  return out;
}

/// Span of the classes of all k-dimensional cones.
inline GradedSubspace hodge_space(const std::vector<CycleClass>& classes, const GlobalIH& ih, int k) {
  std::vector<RationalVector> vectors;
  for (const auto& c : classes)
    if (c.k == k) vectors.insert(vectors.end(), c.subspace.basis.begin(), c.subspace.basis.end());
  return GradedSubspace::spanned_by(2 * k, ih.pieces.at(static_cast<std::size_t>(k)).dim(), vectors);
}

inline GradedSubspace hodge_space(const SheafModel& model, const GlobalIH& ih, int k) {
  std::vector<CycleClass> classes;
  for (auto id : model.fan().cones_of_dim(k)) classes.push_back(cycle_class(model, ih, id));
  return hodge_space(classes, ih, k);
}

inline GradedSubspace hodge_space(const SheafModel& model, int k) { return hodge_space(model, global_ih(model), k); }

/// The section p·g₀ for a conewise polynomial p: the degree-0 generator of
/// every stalk restricts to the degree-0 generator of each face, so this is
/// compatible on any fan.
inline RationalVector section_from_piecewise(const SheafModel& model, const SectionSpace& space,
                                             const PiecewisePolynomial& p) {
  const Fan& f = model.fan();
  if (&p.fan() != &f) throw FanMismatch("section_from_piecewise: different fans");
  if (p.degree() != space.degree) throw std::invalid_argument("section_from_piecewise: degree mismatch");
  RationalVector v(space.ambient_dim());
  for (std::size_t i = 0; i < space.cones.size(); ++i) {
    auto local = restrict_to_span(p.on(space.cones[i]), space.cones[i], f).dense(space.degree / 2);
    const auto off = model.generator_offsets(space.cones[i], space.degree);
    for (std::size_t j = 0; j < local.size(); ++j) v[space.offsets[i] + off[0] + j] = local[j];
  }
  return v;
}

struct LefschetzOperator {
  /// maps[k] : Ē^{2k} -> Ē^{2k+2}, for k = 0..n-1.
  std::vector<RationalMatrix> maps;

  /// L^m starting in Ē^{2k}.
  RationalMatrix power(std::size_t k, std::size_t m, std::size_t source_dim) const {
    RationalMatrix out = RationalMatrix::identity(source_dim);
    for (std::size_t j = 0; j < m; ++j) out = maps.at(k + j) * out;
    return out;
  }
};

/// Multiplication by a conewise-linear p on sections, read in the fixed Ē
/// bases. Relations map to relations because p commutes with global linear forms.
inline LefschetzOperator multiplication_operator(const SheafModel& model, const GlobalIH& ih,
                                                 const PiecewisePolynomial& p) {
  const Fan& f = model.fan();
  if (&p.fan() != &f) throw FanMismatch("multiplication_operator: different fans");
  if (p.degree() != 2) throw std::invalid_argument("multiplication_operator: expected a degree-2 function");
  LefschetzOperator op;
  for (std::size_t k = 0; k + 1 < ih.pieces.size(); ++k) {
    const auto& src = ih.pieces[k];
    const auto& dst = ih.pieces[k + 1];
    std::vector<RationalMatrix> mult;
    for (auto c : src.sections.cones)
      mult.push_back(model.multiplication_matrix(c, restrict_to_span(p.on(c), c, f), src.degree, 1));
    RationalMatrix m(dst.dim(), src.dim());
    for (std::size_t col = 0; col < src.dim(); ++col) {
      const auto& lift = src.sections.basis[src.lift_indices[col]];
      auto image = map_blocks(src.sections, dst.sections, lift,
                              [&](std::size_t i) -> const RationalMatrix& { return mult[i]; });
      auto proj = dst.project(image);
      for (std::size_t r = 0; r < dst.dim(); ++r) m(r, col) = proj[r];
    }
    op.maps.push_back(std::move(m));
  }
  return op;
}

inline LefschetzOperator lefschetz_operator(const SheafModel& model, const GlobalIH& ih,
                                            const PiecewisePolynomial& psi) {
  if (&psi.fan() != &model.fan()) throw FanMismatch("lefschetz_operator: different fans");
  if (psi.degree() != 2 || !is_strictly_convex(psi))
    throw NotStrictlyConvex("Lefschetz element must be a strictly convex conewise-linear function");
  return multiplication_operator(model, ih, psi);
}

/// Image of a subspace of Ē^{2k} under one step of an operator.
inline GradedSubspace apply(const LefschetzOperator& op, const GradedSubspace& v) {
  const auto& m = op.maps.at(static_cast<std::size_t>(v.degree / 2));
  std::vector<RationalVector> images;
  for (const auto& b : v.basis) images.push_back(m.apply(b));
  return GradedSubspace::spanned_by(v.degree + 2, m.rows(), images);
}

/// rank of L^{n-2k} : Ē^{2k} -> Ē^{2(n-k)} for each 2k ≤ n.
inline std::vector<std::size_t> lefschetz_ranks(const LefschetzOperator& op, const GlobalIH& ih) {
  const std::size_t n = ih.pieces.size() - 1;
  std::vector<std::size_t> out;
  for (std::size_t k = 0; 2 * k <= n; ++k) out.push_back(rank(op.power(k, n - 2 * k, ih.pieces[k].dim())));
  return out;
}

}  // namespace ihc
