#pragma once

#include "ihc/arith.hpp"
#include "ihc/matrix.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ihc {

using Exponent = std::vector<int>;

/// All exponent vectors of the given total degree in `variables` variables,
/// in descending lexicographic order (x_0^d first). Cached.
inline const std::vector<Exponent>& monomials(std::size_t variables, int degree) {
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, int>, std::vector<Exponent>> cache;
  std::lock_guard lock(mutex);
  auto key = std::make_pair(variables, degree);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<Exponent> out;
  if (degree >= 0) {
    if (variables == 0) {
      if (degree == 0) out.emplace_back();
    } else {
      Exponent e(variables, 0);
      // recursive fill, first variable takes the largest share first
      auto rec = [&](auto&& self, std::size_t var, int left) -> void {
        if (var + 1 == variables) {
          e[var] = left;
          out.push_back(e);
          return;
        }
        for (int k = left; k >= 0; --k) {
          e[var] = k;
          self(self, var + 1, left - k);
        }
      };
      rec(rec, 0, degree);
    }
  }
  return cache.emplace(key, std::move(out)).first->second;
}

inline std::size_t monomial_count(std::size_t variables, int degree) {
  return monomials(variables, degree).size();
}

inline const std::map<Exponent, std::size_t>& monomial_index(std::size_t variables, int degree) {
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, int>, std::map<Exponent, std::size_t>> cache;
  const auto& mons = monomials(variables, degree);
  std::lock_guard lock(mutex);
  auto key = std::make_pair(variables, degree);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::map<Exponent, std::size_t> idx;
  for (std::size_t i = 0; i < mons.size(); ++i) idx.emplace(mons[i], i);
  return cache.emplace(key, std::move(idx)).first->second;
}

/// Sparse polynomial over Q in a fixed number of variables.
class Polynomial {
 public:
  explicit Polynomial(std::size_t variables = 0) : vars_(variables) {}

  static Polynomial constant(std::size_t variables, const Rational& c) {
    Polynomial p(variables);
    if (c != 0) p.terms_[Exponent(variables, 0)] = c;
    return p;
  }
  static Polynomial variable(std::size_t variables, std::size_t i) {
    Polynomial p(variables);
    Exponent e(variables, 0);
    e.at(i) = 1;
    p.terms_[e] = 1;
    return p;
  }
  static Polynomial linear(std::span<const Rational> coefficients) {
    Polynomial p(coefficients.size());
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
      if (coefficients[i] == 0) continue;
      Exponent e(coefficients.size(), 0);
      e[i] = 1;
      p.terms_[e] = coefficients[i];
    }
    return p;
  }
  static Polynomial from_dense(std::size_t variables, int degree, std::span<const Rational> coeffs) {
    const auto& mons = monomials(variables, degree);
    if (coeffs.size() != mons.size()) throw std::invalid_argument("Polynomial::from_dense: size mismatch");
    Polynomial p(variables);
    for (std::size_t i = 0; i < mons.size(); ++i)
      if (coeffs[i] != 0) p.terms_[mons[i]] = coeffs[i];
    return p;
  }

  std::size_t variables() const { return vars_; }
  const std::map<Exponent, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const Exponent& e, const Rational& c) {
    if (e.size() != vars_) throw std::invalid_argument("Polynomial::add_term: exponent length");
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  bool is_homogeneous() const { return homogeneous_degree().has_value() || is_zero(); }

  /// Common total degree of all terms; nullopt for zero or inhomogeneous.
  std::optional<int> homogeneous_degree() const {
    std::optional<int> d;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int k : e) s += k;
      if (d && *d != s) return std::nullopt;
      d = s;
    }
    return d;
  }

  /// Coefficients in the monomial basis of the given degree; other degrees must be absent.
  RationalVector dense(int degree) const {
    const auto& idx = monomial_index(vars_, degree);
    RationalVector out(idx.size());
    for (const auto& [e, c] : terms_) {
      auto it = idx.find(e);
      if (it == idx.end()) throw std::invalid_argument("Polynomial::dense: term of wrong degree");
      out[it->second] = c;
    }
    return out;
  }

  Polynomial& operator+=(const Polynomial& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Polynomial& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_same(b);
    Polynomial p(a.vars_);
    Exponent e(a.vars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < a.vars_; ++i) e[i] = ea[i] + eb[i];
        p.add_term(e, ca * cb);
      }
    return p;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  /// Substitutes x_j = sum_k c(j, k) y_k; the result lives in c.cols() variables.
  Polynomial substitute(const RationalMatrix& c) const {
    if (c.rows() != vars_) throw std::invalid_argument("Polynomial::substitute: row count");
    const std::size_t m = c.cols();
    std::vector<Polynomial> images;
    for (std::size_t j = 0; j < vars_; ++j) images.push_back(Polynomial::linear(c.row(j)));
    if (m == 0) {
      // only the constant term survives
      return Polynomial::constant(0, coefficient(Exponent(vars_, 0)));
    }
    std::vector<std::vector<Polynomial>> powers(vars_);
    Polynomial out(m);
    for (const auto& [e, coeff] : terms_) {
      Polynomial term = Polynomial::constant(m, coeff);
      for (std::size_t j = 0; j < vars_; ++j) {
        if (e[j] == 0) continue;
        auto& pw = powers[j];
        if (pw.empty()) pw.push_back(Polynomial::constant(m, 1));
        while (pw.size() <= static_cast<std::size_t>(e[j])) pw.push_back(pw.back() * images[j]);
        term = term * pw[e[j]];
      }
      out += term;
    }
    return out;
  }

  Rational evaluate(std::span<const Rational> x) const {
    if (x.size() != vars_) throw std::invalid_argument("Polynomial::evaluate: point dimension");
    Rational s = 0;
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      for (std::size_t i = 0; i < vars_; ++i)
        for (int k = 0; k < e[i]; ++k) t *= x[i];
      s += t;
    }
    return s;
  }

  /// Human-readable form using the given variable names (default x0, x1, ...).
  std::string to_string(const std::vector<std::string>& names = {}) const {
    if (terms_.empty()) return "0";
    std::string s;
    // descending lexicographic order, matching monomials()
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      std::string mono;
      for (std::size_t i = 0; i < vars_; ++i) {
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += i < names.size() ? names[i] : "x" + std::to_string(i);
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      Rational a = abs(c);
      std::string coef = a.get_str();
      std::string body = mono.empty() ? coef : (a == 1 ? mono : coef + "*" + mono);
      if (s.empty())
        s = (c < 0 ? "-" : "") + body;
      else
        s += (c < 0 ? " - " : " + ") + body;
    }
    return s;
  }

 private:
  void check_same(const Polynomial& o) const {
    if (o.vars_ != vars_) throw std::invalid_argument("Polynomial: variable count mismatch");
  }

  std::size_t vars_;
  std::map<Exponent, Rational> terms_;
};

}  // namespace ihc
