#pragma once

// k-form valued fields on R^n with exact coefficient partial derivatives,
// the operators d, delta and the full gradient, field combinators with
// product rules, and the example fields used by the verification suites
// (radial annulus field, shell field, sin bump field).

#include <cmath>
#include <functional>
#include <memory>
#include <random>
#include <stdexcept>
#include <utility>

#include "gaffney/exterior.hpp"
#include "gaffney/linalg.hpp"

namespace gaffney {

// Deterministic uniform source; the mapping from raw bits to doubles is fixed
// here so seeded runs are bit-reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // uniform in [-1, 1]
  double symmetric() { return 2.0 * unit() - 1.0; }
  // uniform in [0, 1)
  double unit() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }
  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

struct FormField {
  int n = 0;
  int k = 0;
  std::function<KForm(const Vec&)> value;
  std::function<KForm(const Vec&, int)> partial;            // axis in 1..n
  std::function<KForm(const Vec&, int, int)> partial2;      // may be empty

  bool has_second() const { return static_cast<bool>(partial2); }
};

// Scalar function with analytic gradient (and optionally Hessian).
struct ScalarField {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> gradient;
  std::function<Mat(const Vec&)> hessian;  // may be empty
};

// Scalar profile s -> lambda(s); the library never differentiates profiles
// numerically, the caller supplies the derivatives.
struct Profile {
  std::function<double(double)> f;
  std::function<double(double)> df;
  std::function<double(double)> d2f;  // may be empty
};

// ---------------------------------------------------------------------------
// Differential operators (pointwise)

inline KForm d(const FormField& f, const Vec& x) {
  if (f.k >= f.n) throw std::domain_error("d: rank already equals dimension");
  KForm out(f.n, f.k + 1);
  std::vector<KForm> p;
  p.reserve(static_cast<std::size_t>(f.n));
  for (int j = 1; j <= f.n; ++j) p.push_back(f.partial(x, j));
  for (const auto& I : enumerate(f.n, f.k + 1)) {
    double s = 0;
    for (int i : I.indices()) {
      auto [sign, rest] = remove(I, i);
      s += sign * p[static_cast<std::size_t>(i - 1)].coeff(rest);
    }
    out.coeff(I) = s;
  }
  return out;
}

inline KForm delta(const FormField& f, const Vec& x) {
  if (f.k < 1) throw std::domain_error("delta: cannot lower the rank of a 0-form");
  KForm out(f.n, f.k - 1);
  for (int j = 1; j <= f.n; ++j)
    out += interior(basis_one_form(f.n, j), f.partial(x, j));
  return out;
}

// Rows indexed by multi-index position, columns by axis: (I, j) = dw^I/dx_j.
inline Mat gradient(const FormField& f, const Vec& x) {
  Mat g(static_cast<int>(binomial(f.n, f.k)), f.n);
  for (int j = 1; j <= f.n; ++j) {
    const KForm p = f.partial(x, j);
    for (std::size_t t = 0; t < p.size(); ++t) g(static_cast<int>(t), j - 1) = p[t];
  }
  return g;
}

// ---------------------------------------------------------------------------
// Combinators

inline FormField constant_field(KForm w) {
  FormField f;
  f.n = w.dim();
  f.k = w.rank();
  const int n = f.n, k = f.k;
  f.value = [w](const Vec&) { return w; };
  f.partial = [n, k](const Vec&, int) { return KForm(n, k); };
  f.partial2 = [n, k](const Vec&, int, int) { return KForm(n, k); };
  return f;
}

inline FormField add(const FormField& a, const FormField& b) {
  if (a.n != b.n || a.k != b.k) throw std::domain_error("add: mismatched fields");
  FormField f;
  f.n = a.n;
  f.k = a.k;
  f.value = [a, b](const Vec& x) { return a.value(x) + b.value(x); };
  f.partial = [a, b](const Vec& x, int j) { return a.partial(x, j) + b.partial(x, j); };
  if (a.has_second() && b.has_second())
    f.partial2 = [a, b](const Vec& x, int i, int j) {
      return a.partial2(x, i, j) + b.partial2(x, i, j);
    };
  return f;
}

inline FormField scale(const FormField& a, double c) {
  FormField f;
  f.n = a.n;
  f.k = a.k;
  f.value = [a, c](const Vec& x) { return c * a.value(x); };
  f.partial = [a, c](const Vec& x, int j) { return c * a.partial(x, j); };
  if (a.has_second())
    f.partial2 = [a, c](const Vec& x, int i, int j) { return c * a.partial2(x, i, j); };
  return f;
}

inline FormField multiply(const ScalarField& s, const FormField& a) {
  FormField f;
  f.n = a.n;
  f.k = a.k;
  f.value = [s, a](const Vec& x) { return s.value(x) * a.value(x); };
  f.partial = [s, a](const Vec& x, int j) {
    return s.value(x) * a.partial(x, j) +
           s.gradient(x)[static_cast<std::size_t>(j - 1)] * a.value(x);
  };
  if (a.has_second() && s.hessian)
    f.partial2 = [s, a](const Vec& x, int i, int j) {
      const Vec g = s.gradient(x);
      return s.value(x) * a.partial2(x, i, j) +
             g[static_cast<std::size_t>(i - 1)] * a.partial(x, j) +
             g[static_cast<std::size_t>(j - 1)] * a.partial(x, i) +
             s.hessian(x)(i - 1, j - 1) * a.value(x);
    };
  return f;
}

inline FormField wedge_field(const FormField& a, const FormField& b) {
  if (a.n != b.n) throw std::domain_error("wedge_field: mismatched dimension");
  FormField f;
  f.n = a.n;
  f.k = a.k + b.k;
  f.value = [a, b](const Vec& x) { return wedge(a.value(x), b.value(x)); };
  f.partial = [a, b](const Vec& x, int j) {
    return wedge(a.partial(x, j), b.value(x)) + wedge(a.value(x), b.partial(x, j));
  };
  if (a.has_second() && b.has_second())
    f.partial2 = [a, b](const Vec& x, int i, int j) {
      return wedge(a.partial2(x, i, j), b.value(x)) +
             wedge(a.partial(x, i), b.partial(x, j)) +
             wedge(a.partial(x, j), b.partial(x, i)) +
             wedge(a.value(x), b.partial2(x, i, j));
    };
  return f;
}

inline FormField interior_field(const FormField& v, const FormField& w) {
  if (v.n != w.n || v.k != 1) throw std::domain_error("interior_field: need a 1-form field");
  FormField f;
  f.n = w.n;
  f.k = w.k - 1;
  f.value = [v, w](const Vec& x) { return interior(v.value(x), w.value(x)); };
  f.partial = [v, w](const Vec& x, int j) {
    return interior(v.partial(x, j), w.value(x)) + interior(v.value(x), w.partial(x, j));
  };
  if (v.has_second() && w.has_second())
    f.partial2 = [v, w](const Vec& x, int i, int j) {
      return interior(v.partial2(x, i, j), w.value(x)) +
             interior(v.partial(x, i), w.partial(x, j)) +
             interior(v.partial(x, j), w.partial(x, i)) +
             interior(v.value(x), w.partial2(x, i, j));
    };
  return f;
}

// d as a field (needs second partials of the operand).
inline FormField d_field(const FormField& a) {
  if (!a.has_second())
    throw std::domain_error("d_field: operand must carry second partials");
  FormField f;
  f.n = a.n;
  f.k = a.k + 1;
  f.value = [a](const Vec& x) { return d(a, x); };
  f.partial = [a](const Vec& x, int j) {
    // shift the derivative inside: d commutes with coefficientwise d/dx_j
    FormField pj;
    pj.n = a.n;
    pj.k = a.k;
    pj.value = [a, j](const Vec& y) { return a.partial(y, j); };
    pj.partial = [a, j](const Vec& y, int i) { return a.partial2(y, i, j); };
    return d(pj, x);
  };
  return f;
}

inline FormField delta_field(const FormField& a) {
  if (!a.has_second())
    throw std::domain_error("delta_field: operand must carry second partials");
  FormField f;
  f.n = a.n;
  f.k = a.k - 1;
  f.value = [a](const Vec& x) { return delta(a, x); };
  f.partial = [a](const Vec& x, int j) {
    FormField pj;
    pj.n = a.n;
    pj.k = a.k;
    pj.value = [a, j](const Vec& y) { return a.partial(y, j); };
    pj.partial = [a, j](const Vec& y, int i) { return a.partial2(y, i, j); };
    return delta(pj, x);
  };
  return f;
}

// Central-difference wrapper for black-box fields; error is O(h^2).
inline FormField finite_difference_field(int n, int k,
                                         std::function<KForm(const Vec&)> value,
                                         double h) {
  FormField f;
  f.n = n;
  f.k = k;
  f.value = value;
  f.partial = [value, h](const Vec& x, int j) {
    Vec xp = x, xm = x;
    xp[static_cast<std::size_t>(j - 1)] += h;
    xm[static_cast<std::size_t>(j - 1)] -= h;
    return (value(xp) - value(xm)) * (0.5 / h);
  };
  return f;
}

// ---------------------------------------------------------------------------
// Polynomial fields (exact derivatives of every order used)

struct Polynomial {
  // term = coefficient times prod_j x_j^{e_j}
  struct Term {
    double c;
    std::vector<int> e;
  };
  std::vector<Term> terms;

  double eval(const Vec& x) const {
    double s = 0;
    for (const auto& t : terms) {
      double p = t.c;
      for (std::size_t j = 0; j < t.e.size(); ++j)
        for (int r = 0; r < t.e[j]; ++r) p *= x[j];
      s += p;
    }
    return s;
  }

  Polynomial derivative(int axis) const {  // axis in 1..n
    Polynomial out;
    for (const auto& t : terms) {
      const std::size_t j = static_cast<std::size_t>(axis - 1);
      if (t.e[j] == 0) continue;
      Term dt = t;
      dt.c *= t.e[j];
      dt.e[j] -= 1;
      out.terms.push_back(std::move(dt));
    }
    return out;
  }
};

inline FormField polynomial_field(int n, int k, std::vector<Polynomial> coeffs) {
  if (static_cast<std::int64_t>(coeffs.size()) != binomial(n, k))
    throw std::domain_error("polynomial_field: wrong number of coefficient polynomials");
  auto eval_all = [n, k](const std::vector<Polynomial>& ps, const Vec& x) {
    KForm w(n, k);
    for (std::size_t t = 0; t < ps.size(); ++t) w[t] = ps[t].eval(x);
    return w;
  };
  // precompute first and second derivative tables
  auto first = std::make_shared<std::vector<std::vector<Polynomial>>>();
  first->resize(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    auto& row = (*first)[static_cast<std::size_t>(j - 1)];
    row.reserve(coeffs.size());
    for (const auto& p : coeffs) row.push_back(p.derivative(j));
  }
  auto second = std::make_shared<std::vector<std::vector<std::vector<Polynomial>>>>();
  second->resize(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    (*second)[static_cast<std::size_t>(i - 1)].resize(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) {
      auto& row = (*second)[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
      for (const auto& p : (*first)[static_cast<std::size_t>(j - 1)]) row.push_back(p.derivative(i));
    }
  }
  auto base = std::make_shared<std::vector<Polynomial>>(std::move(coeffs));
  FormField f;
  f.n = n;
  f.k = k;
  f.value = [=](const Vec& x) { return eval_all(*base, x); };
  f.partial = [=](const Vec& x, int j) {
    return eval_all((*first)[static_cast<std::size_t>(j - 1)], x);
  };
  f.partial2 = [=](const Vec& x, int i, int j) {
    return eval_all((*second)[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)], x);
  };
  return f;
}

inline FormField random_polynomial_field(int n, int k, int degree, Rng& rng) {
  std::vector<Polynomial> coeffs;
  const std::int64_t count = binomial(n, k);
  for (std::int64_t c = 0; c < count; ++c) {
    Polynomial p;
    // a handful of random monomials of total degree <= degree
    for (int t = 0; t < 4; ++t) {
      Polynomial::Term term;
      term.c = rng.symmetric();
      term.e.assign(static_cast<std::size_t>(n), 0);
      int budget = degree;
      for (int j = 0; j < n && budget > 0; ++j) {
        const int e = static_cast<int>(rng.raw() % static_cast<std::uint64_t>(budget + 1));
        term.e[static_cast<std::size_t>(j)] = e;
        budget -= e;
      }
      p.terms.push_back(std::move(term));
    }
    coeffs.push_back(std::move(p));
  }
  return polynomial_field(n, k, std::move(coeffs));
}

// ---------------------------------------------------------------------------
// The example fields

// w(x) = lambda(|x|) sum_i x_i dx^i on an annulus; undefined at the origin.
inline FormField radial_annulus_field(int n, Profile lambda) {
  FormField f;
  f.n = n;
  f.k = 1;
  auto radius = [](const Vec& x) {
    const double r = norm(x);
    if (r == 0.0) throw std::domain_error("radial field evaluated at the origin");
    return r;
  };
  f.value = [n, lambda, radius](const Vec& x) {
    const double r = radius(x);
    KForm w(n, 1);
    for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = lambda.f(r) * x[static_cast<std::size_t>(i)];
    return w;
  };
  f.partial = [n, lambda, radius](const Vec& x, int j) {
    const double r = radius(x);
    const double l = lambda.f(r), dl = lambda.df(r);
    KForm w(n, 1);
    for (int i = 0; i < n; ++i) {
      double v = dl * x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j - 1)] / r;
      if (i == j - 1) v += l;
      w[static_cast<std::size_t>(i)] = v;
    }
    return w;
  };
  if (lambda.d2f)
    f.partial2 = [n, lambda, radius](const Vec& x, int i, int j) {
      const double r = radius(x);
      const double dl = lambda.df(r), d2l = lambda.d2f(r);
      KForm w(n, 1);
      const double xi = x[static_cast<std::size_t>(i - 1)], xj = x[static_cast<std::size_t>(j - 1)];
      for (int a = 0; a < n; ++a) {
        const double xa = x[static_cast<std::size_t>(a)];
        double v = (d2l - dl / r) * xa * xi * xj / (r * r);
        if (a == j - 1) v += dl * xi / r;
        if (a == i - 1) v += dl * xj / r;
        if (i == j) v += dl * xa / r;
        w[static_cast<std::size_t>(a)] = v;
      }
      return w;
    };
  return f;
}

// |x|_k = sqrt(x_1^2 + ... + x_{n-k+1}^2)
inline double cylinder_radius(const Vec& x, int n, int k) {
  double s = 0;
  for (int i = 0; i < n - k + 1; ++i) s += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
  return std::sqrt(s);
}

// w_k(x) = lambda(|x|_k) (sum_{i<=n-k+1} x_i dx^i) ^ dx^{n-k+2} ^ ... ^ dx^n.
// Nonzero coefficients sit on I = (i, n-k+2, ..., n) only.
inline FormField shell_field(int n, int k, Profile lambda) {
  if (k < 2 || k > n - 1) throw std::domain_error("shell_field: need 2 <= k <= n-1");
  FormField f;
  f.n = n;
  f.k = k;
  std::vector<int> tail;
  for (int s = n - k + 2; s <= n; ++s) tail.push_back(s);
  auto slot = [n, k, tail](int i) {
    std::vector<int> I{i};
    I.insert(I.end(), tail.begin(), tail.end());
    return lex_position(MultiIndex(I), n);
  };
  std::vector<std::int64_t> slots;
  for (int i = 1; i <= n - k + 1; ++i) slots.push_back(slot(i));
  auto radius = [n, k](const Vec& x) {
    const double r = cylinder_radius(x, n, k);
    if (r == 0.0) throw std::domain_error("shell field evaluated on the axis");
    return r;
  };
  f.value = [n, k, lambda, slots, radius](const Vec& x) {
    const double r = radius(x);
    KForm w(n, k);
    for (int i = 0; i < n - k + 1; ++i)
      w[static_cast<std::size_t>(slots[static_cast<std::size_t>(i)])] =
          lambda.f(r) * x[static_cast<std::size_t>(i)];
    return w;
  };
  f.partial = [n, k, lambda, slots, radius](const Vec& x, int j) {
    KForm w(n, k);
    if (j > n - k + 1) return w;  // lambda and x_i depend on the first block only
    const double r = radius(x);
    const double l = lambda.f(r), dl = lambda.df(r);
    for (int i = 0; i < n - k + 1; ++i) {
      double v = dl * x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j - 1)] / r;
      if (i == j - 1) v += l;
      w[static_cast<std::size_t>(slots[static_cast<std::size_t>(i)])] = v;
    }
    return w;
  };
  return f;
}

// C^2 polynomial bump: 1 on |x| <= rho, (1 - tau^2)^2 on rho <= |x| <= 1 with
// tau = (|x|^2 - rho^2)/(1 - rho^2), 0 outside the unit ball.
inline ScalarField bump_cutoff(int n, double rho) {
  const double denom = 1.0 - rho * rho;
  auto tau = [rho, denom](const Vec& x) { return (dot(x, x) - rho * rho) / denom; };
  ScalarField s;
  s.value = [tau](const Vec& x) {
    const double t = tau(x);
    if (t <= 0.0) return 1.0;
    if (t >= 1.0) return 0.0;
    const double u = 1.0 - t * t;
    return u * u;
  };
  s.gradient = [n, tau, denom](const Vec& x) {
    Vec g(static_cast<std::size_t>(n), 0.0);
    const double t = tau(x);
    if (t <= 0.0 || t >= 1.0) return g;
    const double dEdt = -4.0 * t * (1.0 - t * t);
    for (int j = 0; j < n; ++j)
      g[static_cast<std::size_t>(j)] = dEdt * 2.0 * x[static_cast<std::size_t>(j)] / denom;
    return g;
  };
  return s;
}

// w_m(x) = sin(m x_1) eta(x) dx^1 ^ ... ^ dx^k on the unit ball.
inline FormField sin_bump_field(int n, int k, double m, const ScalarField& eta) {
  std::vector<int> head;
  for (int i = 1; i <= k; ++i) head.push_back(i);
  const std::int64_t slot = lex_position(MultiIndex(head), n);
  FormField f;
  f.n = n;
  f.k = k;
  f.value = [n, k, m, eta, slot](const Vec& x) {
    KForm w(n, k);
    w[static_cast<std::size_t>(slot)] = std::sin(m * x[0]) * eta.value(x);
    return w;
  };
  f.partial = [n, k, m, eta, slot](const Vec& x, int j) {
    KForm w(n, k);
    double v = std::cos(m * x[0]) * m * eta.value(x) * (j == 1 ? 1.0 : 0.0);
    v += std::sin(m * x[0]) * eta.gradient(x)[static_cast<std::size_t>(j - 1)];
    w[static_cast<std::size_t>(slot)] = v;
    return w;
  };
  return f;
}

// ---------------------------------------------------------------------------
// Korn helpers (k = 1)

inline double sym_gradient_norm_sq(const Mat& g) {
  double s = 0;
  for (int i = 0; i < g.rows; ++i)
    for (int j = 0; j < g.cols; ++j) {
      const double v = 0.5 * (g(i, j) + g(j, i));
      s += v * v;
    }
  return s;
}

inline double curl_norm_sq(const Mat& g) {
  double s = 0;
  for (int i = 0; i < g.rows; ++i)
    for (int j = i + 1; j < g.cols; ++j) {
      const double v = g(i, j) - g(j, i);
      s += v * v;
    }
  return s;
}

inline double divergence(const Mat& g) {
  double s = 0;
  for (int i = 0; i < g.rows; ++i) s += g(i, i);
  return s;
}

}  // namespace gaffney
