#pragma once

// Artinian reduction of the Stanley–Reisner ring of a complete simplicial fan,
// by linear algebra on face-supported monomials degree by degree.

#include "ihc/errors.hpp"
#include "ihc/fan.hpp"
#include "ihc/linalg.hpp"
#include "ihc/polynomial.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace ihc {

/// Monomials of degree k in the ray variables whose support is a cone.
struct MonomialBasis {
  int degree = 0;
  std::vector<Exponent> monomials;  // sorted
};

inline MonomialBasis sr_monomials(const Fan& f, int k) {
  MonomialBasis b{k, {}};
  const std::size_t m = f.rays().size();
  for (const auto& cone : f.cones()) {
    const auto s = cone.rays.size();
    if (static_cast<int>(s) > k || (s == 0 && k > 0)) continue;
    for (const auto& extra : monomials(s, k - static_cast<int>(s))) {
      Exponent e(m, 0);
      for (std::size_t j = 0; j < s; ++j) e[cone.rays[j]] = extra[j] + 1;
      b.monomials.push_back(std::move(e));
    }
  }
  std::sort(b.monomials.begin(), b.monomials.end());
  return b;
}

struct SRPiece {
  MonomialBasis basis;
  QuotientBasis quotient;
  std::size_t dim() const { return quotient.dim(); }
  std::size_t index_of(const Exponent& e) const {
    auto it = std::lower_bound(basis.monomials.begin(), basis.monomials.end(), e);
    if (it == basis.monomials.end() || *it != e) throw std::out_of_range("monomial is not face-supported");
    return static_cast<std::size_t>(it - basis.monomials.begin());
  }
  /// Class of a face-supported monomial in quotient coordinates.
  RationalVector class_of(const Exponent& e) const {
    RationalVector v(basis.monomials.size());
    v[index_of(e)] = 1;
    return quotient.projection.apply(v);
  }
};

/// Degrees 0..n of ℚ[Σ] / (θ₁,…,θₙ), θ_i = Σ_ρ ⟨e_i, v_ρ⟩ x_ρ.
class SRRing {
 public:
  explicit SRRing(Fan&&) = delete;
  explicit SRRing(const Fan& f) : fan_(&f) {
    if (!f.flags().simplicial) throw NotSimplicial("Stanley–Reisner path requires a simplicial fan");
    if (!f.flags().complete) throw NotComplete("Stanley–Reisner path requires a complete fan");
    const int n = f.dim();
    for (int k = 0; k <= n + 1; ++k) {
      SRPiece piece{sr_monomials(f, k), {}};
      std::vector<RationalVector> relations;
      if (k > 0) {
        const auto& prev = pieces_.back().basis.monomials;
        for (int i = 0; i < n; ++i)
          for (const auto& mono : prev) {
            RationalVector rel(piece.basis.monomials.size());
            for (std::size_t r = 0; r < f.rays().size(); ++r) {
              const auto& c = f.rays()[r][static_cast<std::size_t>(i)];
              if (c == 0) continue;
              Exponent e = mono;
              ++e[r];
              auto it = std::lower_bound(piece.basis.monomials.begin(), piece.basis.monomials.end(), e);
              // non-face supports vanish in the Stanley–Reisner ring
              if (it == piece.basis.monomials.end() || *it != e) continue;
              rel[static_cast<std::size_t>(it - piece.basis.monomials.begin())] += c;
            }
            if (!is_zero(rel)) relations.push_back(std::move(rel));
          }
      }
      piece.quotient = quotient_basis(relations, piece.basis.monomials.size());
      pieces_.push_back(std::move(piece));
    }
    if (pieces_.back().dim() != 0) throw std::logic_error("Stanley–Reisner quotient does not vanish above degree n");
    pieces_.pop_back();
  }

  const Fan& fan() const { return *fan_; }
  const SRPiece& piece(int k) const { return pieces_.at(static_cast<std::size_t>(k)); }

  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> out;
    for (const auto& p : pieces_) out.push_back(p.dim());
    return out;
  }

  /// The squarefree monomial of a cone.
  Exponent cone_monomial(ConeId id) const {
    Exponent e(fan_->rays().size(), 0);
    for (auto r : fan_->cone(id).rays) e[r] = 1;
    return e;
  }

 private:
  const Fan* fan_;
  std::vector<SRPiece> pieces_;
};

inline std::vector<std::size_t> sr_graded_dims(const Fan& f) { return SRRing(f).dims(); }

/// For each k-dimensional cone τ, the class of Π_{ρ∈τ} x_ρ in degree k.
inline std::map<ConeId, RationalVector> sr_cycle_monomials(const SRRing& ring, int k) {
  std::map<ConeId, RationalVector> out;
  for (auto id : ring.fan().cones_of_dim(k)) out.emplace(id, ring.piece(k).class_of(ring.cone_monomial(id)));
  return out;
}

inline std::map<ConeId, RationalVector> sr_cycle_monomials(const Fan& f, int k) {
  return sr_cycle_monomials(SRRing(f), k);
}

}  // namespace ihc
