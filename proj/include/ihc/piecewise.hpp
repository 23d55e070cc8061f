#pragma once

// Conewise polynomial functions on a fan: Courant functions, products, and the
// strictly convex support function that certifies polytopality.

#include "ihc/errors.hpp"
#include "ihc/fan.hpp"
#include "ihc/linalg.hpp"
#include "ihc/lp.hpp"
#include "ihc/polynomial.hpp"

#include <map>
#include <optional>
#include <vector>

namespace ihc {

/// Substitutes the span parametrization x = B_tau u into an ambient polynomial.
inline Polynomial restrict_to_span(const Polynomial& p, ConeId tau, const Fan& f) {
  if (p.variables() != static_cast<std::size_t>(f.dim()))
    throw std::invalid_argument("restrict_to_span: polynomial is not in ambient coordinates");
  if (!p.is_homogeneous()) throw std::invalid_argument("restrict_to_span: polynomial is not homogeneous");
  return p.substitute(to_rational(f.cone(tau).span_basis));
}

/// One homogeneous ambient polynomial per maximal cone. Cohomological degree is
/// twice the polynomial degree.
class PiecewisePolynomial {
 public:
  PiecewisePolynomial(const Fan& fan, int cohomological_degree) : fan_(&fan), degree_(cohomological_degree) {
    if (cohomological_degree < 0 || cohomological_degree % 2 != 0)
      throw std::invalid_argument("PiecewisePolynomial: degree must be even and nonnegative");
    for (auto s : fan.maximal_cones()) pieces_.emplace(s, Polynomial(static_cast<std::size_t>(fan.dim())));
  }

  static PiecewisePolynomial constant(const Fan& fan, const Rational& c) {
    PiecewisePolynomial p(fan, 0);
    for (auto& [s, poly] : p.pieces_) poly = Polynomial::constant(static_cast<std::size_t>(fan.dim()), c);
    return p;
  }

  const Fan& fan() const { return *fan_; }
  int degree() const { return degree_; }
  const std::map<ConeId, Polynomial>& pieces() const { return pieces_; }

  const Polynomial& on(ConeId max_cone) const {
    auto it = pieces_.find(max_cone);
    if (it == pieces_.end()) throw UnknownCone("cone " + std::to_string(max_cone) + " is not maximal");
    return it->second;
  }

  void set(ConeId max_cone, Polynomial p) {
    auto it = pieces_.find(max_cone);
    if (it == pieces_.end()) throw UnknownCone("cone " + std::to_string(max_cone) + " is not maximal");
    auto d = p.homogeneous_degree();
    if (!p.is_zero() && (!d || 2 * *d != degree_))
      throw std::invalid_argument("PiecewisePolynomial::set: piece has the wrong degree");
    it->second = std::move(p);
  }

  /// Pieces agree after restriction to every common face of two maximal cones.
  bool is_compatible() const {
    const auto& maxc = fan_->maximal_cones();
    for (std::size_t i = 0; i < maxc.size(); ++i)
      for (std::size_t j = i + 1; j < maxc.size(); ++j) {
        ConeId tau = fan_->intersection(maxc[i], maxc[j]);
        if (!(restrict_to_span(on(maxc[i]), tau, *fan_) == restrict_to_span(on(maxc[j]), tau, *fan_)))
          return false;
      }
    return true;
  }

  bool is_zero() const {
    for (const auto& [s, p] : pieces_)
      if (!p.is_zero()) return false;
    return true;
  }

  PiecewisePolynomial& add_scaled(const PiecewisePolynomial& o, const Rational& c) {
    check_same(o);
    if (o.degree_ != degree_) throw std::invalid_argument("PiecewisePolynomial: degree mismatch");
    for (auto& [s, p] : pieces_) p += o.on(s) * c;
    return *this;
  }

  friend PiecewisePolynomial multiply(const PiecewisePolynomial& a, const PiecewisePolynomial& b) {
    a.check_same(b);
    PiecewisePolynomial out(*a.fan_, a.degree_ + b.degree_);
    for (auto& [s, p] : out.pieces_) p = a.on(s) * b.on(s);
    return out;
  }

  friend bool operator==(const PiecewisePolynomial& a, const PiecewisePolynomial& b) {
    return a.fan_ == b.fan_ && a.degree_ == b.degree_ && a.pieces_ == b.pieces_;
  }

 private:
  void check_same(const PiecewisePolynomial& o) const {
    if (o.fan_ != fan_) throw FanMismatch("conewise polynomials live on different fans");
  }

  const Fan* fan_;
  int degree_;
  std::map<ConeId, Polynomial> pieces_;
};

/// The conewise-linear function equal to 1 on ray rho and 0 on every other ray.
inline PiecewisePolynomial courant_function(const Fan& f, std::size_t ray) {
  if (ray >= f.rays().size()) throw UnknownCone("unknown ray " + std::to_string(ray));
  const auto n = static_cast<std::size_t>(f.dim());
  PiecewisePolynomial out(f, 2);
  for (auto s : f.maximal_cones()) {
    const auto& c = f.cone(s);
    if (!std::binary_search(c.rays.begin(), c.rays.end(), ray)) continue;
    RationalMatrix a(c.rays.size(), n);
    RationalVector b(c.rays.size());
    for (std::size_t i = 0; i < c.rays.size(); ++i) {
      for (std::size_t j = 0; j < n; ++j) a(i, j) = f.rays()[c.rays[i]][j];
      b[i] = c.rays[i] == ray ? 1 : 0;
    }
    auto x = solve(a, b);
    if (!x)
      throw NotConewiseLinearInterpolable("no linear function on cone " + f.describe(s) + " is 1 on ray " +
                                          std::to_string(ray) + " and 0 on its other rays");
    out.set(s, Polynomial::linear(*x));
  }
  return out;
}

namespace detail {

struct Wall {
  ConeId wall, left, right;
};

inline std::vector<Wall> walls(const Fan& f) {
  std::vector<Wall> out;
  const auto& maxc = f.maximal_cones();
  for (auto w : f.cones_of_dim(f.dim() - 1)) {
    std::vector<ConeId> around;
    for (auto s : maxc)
      if (f.is_face(w, s)) around.push_back(s);
    if (around.size() == 2) out.push_back({w, around[0], around[1]});
  }
  return out;
}

}  // namespace detail

/// Degree-2 ψ that is linear on maximal cones and strictly convex across every
/// wall, in the lower-envelope convention: the linear form of a cone exceeds ψ
/// on the rays of its neighbour that are off the shared wall.
inline bool is_strictly_convex(const PiecewisePolynomial& psi) {
  if (psi.degree() != 2 || !psi.is_compatible()) return false;
  const Fan& f = psi.fan();
  for (const auto& w : detail::walls(f)) {
    auto a = psi.on(w.left), b = psi.on(w.right);
    const auto& wall_rays = f.cone(w.wall).rays;
    auto value = [&](const Polynomial& p, std::size_t r) {
      return p.evaluate(to_rational(f.rays()[r]));
    };
    for (auto r : f.cone(w.right).rays)
      if (!std::binary_search(wall_rays.begin(), wall_rays.end(), r) && !(value(a, r) > value(b, r)))
        return false;
    for (auto r : f.cone(w.left).rays)
      if (!std::binary_search(wall_rays.begin(), wall_rays.end(), r) && !(value(b, r) > value(a, r)))
        return false;
  }
  return true;
}

struct PolytopalityResult {
  bool polytopal = false;
  std::optional<PiecewisePolynomial> support_function;
};

/// Searches for a strictly convex conewise-linear function with an exact LP.
inline PolytopalityResult check_polytopal(const Fan& f) {
  if (!f.flags().complete) throw NotComplete("polytopality test requires a complete fan");
  const auto n = static_cast<std::size_t>(f.dim());
  const auto& maxc = f.maximal_cones();
  std::map<ConeId, std::size_t> slot;
  for (std::size_t i = 0; i < maxc.size(); ++i) slot[maxc[i]] = i;
  const std::size_t vars = n * maxc.size();

  std::vector<LinearConstraint> cons;
  // (m_a - m_b) . r
  auto difference = [&](ConeId a, ConeId b, std::size_t r) {
    RationalVector c(vars);
    for (std::size_t i = 0; i < n; ++i) {
      c[slot[a] * n + i] += f.rays()[r][i];
      c[slot[b] * n + i] -= f.rays()[r][i];
    }
    return c;
  };
  for (const auto& w : detail::walls(f)) {
    const auto& wall_rays = f.cone(w.wall).rays;
    for (auto r : wall_rays) cons.push_back({difference(w.left, w.right, r), 0, Relation::Equal, false});
    for (auto r : f.cone(w.right).rays)
      if (!std::binary_search(wall_rays.begin(), wall_rays.end(), r))
        cons.push_back({difference(w.left, w.right, r), 0, Relation::GreaterEqual, true});
    for (auto r : f.cone(w.left).rays)
      if (!std::binary_search(wall_rays.begin(), wall_rays.end(), r))
        cons.push_back({difference(w.right, w.left, r), 0, Relation::GreaterEqual, true});
  }
  auto lp = lp_feasible(cons, vars);
  if (!lp.feasible) return {false, std::nullopt};
  PiecewisePolynomial psi(f, 2);
  for (auto s : maxc) {
    RationalVector m(lp.witness->begin() + static_cast<long>(slot[s] * n),
                     lp.witness->begin() + static_cast<long>((slot[s] + 1) * n));
    psi.set(s, Polynomial::linear(m));
  }
  if (!is_strictly_convex(psi)) throw std::logic_error("check_polytopal: witness is not strictly convex");
  return {true, std::move(psi)};
}

}  // namespace ihc
