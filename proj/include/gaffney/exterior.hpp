#pragma once

// Pointwise algebra of k-forms on R^n: wedge, interior product, scalar
// product and Hodge star, on dense coefficient vectors in lexicographic
// multi-index order.

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "gaffney/multiindex.hpp"

namespace gaffney {

class KForm {
 public:
  KForm(int n, int k)
      : n_(n), k_(k), c_(static_cast<std::size_t>(binomial(n, k)), 0.0) {
    check_dimension(n);
    if (k < 0 || k > n) throw std::domain_error("KForm: rank out of range");
  }

  int dim() const { return n_; }
  int rank() const { return k_; }
  std::size_t size() const { return c_.size(); }

  double& operator[](std::size_t t) { return c_[t]; }
  double operator[](std::size_t t) const { return c_[t]; }

  double coeff(const MultiIndex& I) const {
    return c_[static_cast<std::size_t>(lex_position(I, n_))];
  }
  double& coeff(const MultiIndex& I) {
    return c_[static_cast<std::size_t>(lex_position(I, n_))];
  }

  // Generalized component: arbitrary (possibly unordered, possibly repeated)
  // index tuple, resolved via the permutation sign; antisymmetry is enforced
  // here and nowhere else.
  double general(std::span<const int> tuple) const {
    if (static_cast<int>(tuple.size()) != k_)
      throw std::domain_error("general: tuple length must equal rank");
    std::vector<int> v(tuple.begin(), tuple.end());
    const int sign = permutation_sign(v);
    if (sign == 0) return 0.0;
    std::sort(v.begin(), v.end());
    return sign * c_[static_cast<std::size_t>(lex_position(MultiIndex(v), n_))];
  }
  double general(std::initializer_list<int> tuple) const {
    return general(std::span<const int>(tuple.begin(), tuple.size()));
  }

  double norm_sq() const {
    double s = 0;
    for (double x : c_) s += x * x;
    return s;
  }
  double max_abs() const {
    double m = 0;
    for (double x : c_) m = std::max(m, std::abs(x));
    return m;
  }

  KForm& operator+=(const KForm& o) {
    require_same_shape(o);
    for (std::size_t t = 0; t < c_.size(); ++t) c_[t] += o.c_[t];
    return *this;
  }
  KForm& operator-=(const KForm& o) {
    require_same_shape(o);
    for (std::size_t t = 0; t < c_.size(); ++t) c_[t] -= o.c_[t];
    return *this;
  }
  KForm& operator*=(double s) {
    for (double& x : c_) x *= s;
    return *this;
  }

  friend KForm operator+(KForm a, const KForm& b) { return a += b; }
  friend KForm operator-(KForm a, const KForm& b) { return a -= b; }
  friend KForm operator*(KForm a, double s) { return a *= s; }
  friend KForm operator*(double s, KForm a) { return a *= s; }

 private:
  void require_same_shape(const KForm& o) const {
    if (n_ != o.n_ || k_ != o.k_)
      throw std::domain_error("KForm: mismatched dimension or rank");
  }
  int n_, k_;
  std::vector<double> c_;
};

inline KForm basis_form(int n, const MultiIndex& I) {
  KForm w(n, I.rank());
  w.coeff(I) = 1.0;
  return w;
}

// dx^i
inline KForm basis_one_form(int n, int i) {
  return basis_form(n, MultiIndex({i}));
}

inline double inner(const KForm& a, const KForm& b) {
  if (a.dim() != b.dim() || a.rank() != b.rank())
    throw std::domain_error("inner: mismatched dimension or rank");
  double s = 0;
  for (std::size_t t = 0; t < a.size(); ++t) s += a[t] * b[t];
  return s;
}

// Exterior product for arbitrary ranks; bilinear, associative, and
// graded-anticommutative.  k + l > n is a domain error, never a silent zero.
inline KForm wedge(const KForm& a, const KForm& b) {
  const int n = a.dim();
  if (b.dim() != n) throw std::domain_error("wedge: mismatched dimension");
  const int k = a.rank(), l = b.rank();
  if (k + l > n) throw std::domain_error("wedge: combined rank exceeds dimension");
  KForm out(n, k + l);
  const auto Is = enumerate(n, k);
  const auto Js = enumerate(n, l);
  std::vector<int> merged;
  for (const auto& I : Is) {
    const double aI = a.coeff(I);
    if (aI == 0.0) continue;
    for (const auto& J : Js) {
      const double bJ = b.coeff(J);
      if (bJ == 0.0) continue;
      merged = I.indices();
      merged.insert(merged.end(), J.indices().begin(), J.indices().end());
      const int sign = permutation_sign(merged);
      if (sign == 0) continue;
      std::sort(merged.begin(), merged.end());
      out.coeff(MultiIndex(merged)) += sign * aI * bJ;
    }
  }
  return out;
}

// Interior product v -| w of a 1-form v with a k-form w (k >= 1).
inline KForm interior(const KForm& v, const KForm& w) {
  const int n = w.dim();
  if (v.dim() != n) throw std::domain_error("interior: mismatched dimension");
  if (v.rank() != 1) throw std::domain_error("interior: first argument must have rank 1");
  const int k = w.rank();
  if (k < 1) throw std::domain_error("interior: cannot contract a 0-form");
  KForm out(n, k - 1);
  std::vector<int> tuple(static_cast<std::size_t>(k));
  std::size_t pos = 0;
  for (const auto& M : enumerate(n, k - 1)) {
    std::copy(M.indices().begin(), M.indices().end(), tuple.begin() + 1);
    double s = 0;
    for (int j = 1; j <= n; ++j) {
      tuple[0] = j;
      s += v[static_cast<std::size_t>(j - 1)] * w.general(tuple);
    }
    out[pos++] = s;
  }
  return out;
}

// Hodge star: w ^ l = <*w; l> dx^{1...n} for every l of rank n-k.
inline KForm hodge(const KForm& w) {
  const int n = w.dim(), k = w.rank();
  KForm out(n, n - k);
  for (const auto& J : enumerate(n, n - k)) {
    std::vector<int> comp;
    comp.reserve(static_cast<std::size_t>(k));
    for (int i = 1; i <= n; ++i)
      if (!J.contains(i)) comp.push_back(i);
    std::vector<int> full = comp;
    full.insert(full.end(), J.indices().begin(), J.indices().end());
    out.coeff(J) = permutation_sign(full) * w.coeff(MultiIndex(comp));
  }
  return out;
}

}  // namespace gaffney
