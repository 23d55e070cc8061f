#pragma once

// Toric g- and h-polynomials of fan face posets.

#include "ihc/errors.hpp"
#include "ihc/fan.hpp"

#include <map>
#include <string>
#include <vector>

namespace ihc {

/// Integer polynomial in t; coefficient j multiplies t^j. Trailing zeros trimmed.
class GHPolynomial {
 public:
  GHPolynomial() = default;
  explicit GHPolynomial(std::vector<long long> coeffs) : c_(std::move(coeffs)) { trim(); }

  static GHPolynomial one() { return GHPolynomial({1}); }

  /// (t - 1)^k
  static GHPolynomial t_minus_one_power(int k) {
    std::vector<long long> c{1};
    for (int i = 0; i < k; ++i) {
      std::vector<long long> next(c.size() + 1, 0);
      for (std::size_t j = 0; j < c.size(); ++j) {
        next[j + 1] += c[j];
        next[j] -= c[j];
      }
      c = std::move(next);
    }
    return GHPolynomial(std::move(c));
  }

  const std::vector<long long>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  long long operator[](std::size_t j) const { return j < c_.size() ? c_[j] : 0; }

  GHPolynomial& operator+=(const GHPolynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t j = 0; j < o.c_.size(); ++j) c_[j] += o.c_[j];
    trim();
    return *this;
  }
  friend GHPolynomial operator+(GHPolynomial a, const GHPolynomial& b) { return a += b; }
  friend GHPolynomial operator*(const GHPolynomial& a, const GHPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<long long> c(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return GHPolynomial(std::move(c));
  }
  friend bool operator==(const GHPolynomial&, const GHPolynomial&) = default;

  std::string to_string() const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t j = 0; j < c_.size(); ++j) {
      if (c_[j] == 0) continue;
      std::string term = std::to_string(c_[j] < 0 ? -c_[j] : c_[j]);
      if (j == 1) term = (c_[j] == 1 || c_[j] == -1 ? "" : term + "*") + "t";
      if (j > 1) term = (c_[j] == 1 || c_[j] == -1 ? "" : term + "*") + "t^" + std::to_string(j);
      if (s.empty())
        s = (c_[j] < 0 ? "-" : "") + term;
      else
        s += (c_[j] < 0 ? " - " : " + ") + term;
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<long long> c_;
};

/// Memoized g-polynomials of every cone of one fan.
///   g(0) = 1;  h(∂σ) = Σ_{τ < σ} g(τ) (t-1)^{d-1-dim τ};
///   g(σ) = Σ_{j <= (d-1)/2} (h_j - h_{j-1}) t^j.
class GPolynomials {
 public:
  explicit GPolynomials(const Fan& fan) : fan_(&fan), g_(fan.size()), done_(fan.size(), false) {}

  const GHPolynomial& of(ConeId id) {
    const auto& c = fan_->cone(id);
    if (done_[id]) return g_[id];
    if (c.dim == 0) {
      g_[id] = GHPolynomial::one();
    } else {
      GHPolynomial h = boundary_h(id);
      std::vector<long long> g;
      for (int j = 0; j <= (c.dim - 1) / 2; ++j) g.push_back(h[j] - (j > 0 ? h[j - 1] : 0));
      g_[id] = GHPolynomial(std::move(g));
    }
    done_[id] = true;
    return g_[id];
  }

  /// h-polynomial of the boundary complex of a cone of positive dimension.
  GHPolynomial boundary_h(ConeId id) {
    const auto& c = fan_->cone(id);
    GHPolynomial h;
    for (auto face : c.faces) {
      if (face == id) continue;
      h += of(face) * GHPolynomial::t_minus_one_power(c.dim - 1 - fan_->cone(face).dim);
    }
    return h;
  }

 private:
  const Fan* fan_;
  std::vector<GHPolynomial> g_;
  std::vector<bool> done_;
};

inline GHPolynomial g_polynomial(const Fan& f, ConeId id) {
  f.cone(id);
  GPolynomials g(f);
  return g.of(id);
}

/// h(Σ) = Σ_σ g(σ) (t-1)^{n - dim σ}; coefficient k is the target d_k.
inline GHPolynomial h_polynomial(const Fan& f) {
  if (!f.flags().complete) throw NotComplete("h-polynomial requires a complete fan");
  GPolynomials g(f);
  GHPolynomial h;
  for (ConeId id = 0; id < f.size(); ++id)
    h += g.of(id) * GHPolynomial::t_minus_one_power(f.dim() - f.cone(id).dim);
  return h;
}

/// Coefficients d_0..d_n (zero padded).
inline std::vector<long long> h_vector(const Fan& f) {
  auto h = h_polynomial(f);
  std::vector<long long> out(static_cast<std::size_t>(f.dim()) + 1, 0);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = h[k];
  return out;
}

inline bool is_palindromic(const std::vector<long long>& h) {
  for (std::size_t k = 0; k < h.size(); ++k)
    if (h[k] != h[h.size() - 1 - k]) return false;
  return true;
}

/// h_0 <= h_1 <= ... <= h_{floor(n/2)}
inline bool is_unimodal_to_middle(const std::vector<long long>& h) {
  if (h.empty()) return true;
  const std::size_t n = h.size() - 1;
  for (std::size_t k = 0; k + 1 <= n / 2; ++k)
    if (h[k] > h[k + 1]) return false;
  return true;
}

}  // namespace ihc
