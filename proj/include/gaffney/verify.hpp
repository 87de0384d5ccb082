#pragma once

// Residual checks: every identity the library claims is packaged here as an
// executable comparison between two independently computed numbers, plus the
// Rayleigh-quotient machinery used to probe sharp gradient estimates.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "gaffney/exterior.hpp"
#include "gaffney/fields.hpp"
#include "gaffney/geometry.hpp"
#include "gaffney/linalg.hpp"
#include "gaffney/multiindex.hpp"
#include "gaffney/quadrature.hpp"

namespace gaffney {

// ---------------------------------------------------------------------------
// Result records

struct IdentityResidual {
  std::string anchor;           // which identity was checked, in plain words
  double lhs = 0;
  double rhs = 0;
  double abs = 0;
  double rel = 0;
  double tol = 0;
  std::string location = "integral";  // "integral" or a point description
  bool pass = false;
};

// rel falls back to abs when every available scale is below 1e-10.
inline IdentityResidual make_residual(std::string anchor, double lhs, double rhs,
                                      double tol, std::string location = "integral",
                                      double scale = 0.0) {
  IdentityResidual r;
  r.anchor = std::move(anchor);
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs = std::abs(lhs - rhs);
  const double denom = std::max({std::abs(lhs), std::abs(rhs), std::abs(scale)});
  r.rel = (denom < 1e-10) ? r.abs : r.abs / denom;
  r.tol = tol;
  r.location = std::move(location);
  r.pass = r.rel <= tol;
  return r;
}

inline std::string point_string(const Vec& x) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
  os << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// Parallel driver (deterministic aggregation order)

inline int thread_budget() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  int budget = static_cast<int>(hw);
  if (const char* env = std::getenv("GAFFNEY_LAB_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) budget = std::min(budget, v);
  }
  return budget;
}

// Runs body(i) for i in [0, count) on up to thread_budget() threads. Each body
// must be independent; results should be written to pre-sized slots.
template <class F>
inline void parallel_for(int count, F&& body) {
  const int threads = std::min(thread_budget(), std::max(count, 1));
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
    });
  for (auto& th : pool) th.join();
}

// ---------------------------------------------------------------------------
// Pointwise gap identity

struct PointwiseGap {
  double gap = 0;         // |dw|^2 + |delta w|^2 - |grad w|^2
  double rhs_upper = 0;   // expansion over rank k+1 multi-indices
  double rhs_lower = 0;   // expansion over rank k-1 multi-indices
};

// Expands the defect |dw|^2+|delta w|^2-|grad w|^2 in two independent ways as
// a sum of 2x2 minors of the coefficient Jacobian. Requires 1 <= k <= n-1.
inline PointwiseGap pointwise_gap(const FormField& f, const Vec& x) {
  const int n = f.n, k = f.k;
  if (k < 1 || k > n - 1)
    throw std::domain_error("pointwise_gap: need 1 <= k <= n-1");
  std::vector<KForm> dw;  // dw[j] = partial_{j+1} f at x
  dw.reserve(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) dw.push_back(f.partial(x, j));
  auto pd = [&](int axis, const MultiIndex& J) {
    return dw[static_cast<std::size_t>(axis - 1)].coeff(J);
  };

  PointwiseGap g;
  {
    double grad_sq = 0;
    for (int j = 0; j < n; ++j) grad_sq += dw[static_cast<std::size_t>(j)].norm_sq();
    g.gap = d(f, x).norm_sq() + delta(f, x).norm_sq() - grad_sq;
  }

  // Both expansions run over ordered pairs i != j.
  double upper = 0;
  for (const auto& I : enumerate(n, k + 1))
    for (int i : I.indices())
      for (int j : I.indices()) {
        if (i == j) continue;
        const auto [si, Ii] = remove(I, i);
        const auto [sj, Ij] = remove(I, j);
        upper += si * sj * (pd(i, Ii) * pd(j, Ij) - pd(i, Ij) * pd(j, Ii));
      }
  g.rhs_upper = upper;

  double lower = 0;
  for (const auto& I : enumerate(n, k - 1))
    for (int i = 1; i <= n; ++i) {
      if (I.contains(i)) continue;
      for (int j = 1; j <= n; ++j) {
        if (j == i || I.contains(j)) continue;
        const auto [si, iI] = sign_insert(i, I);
        const auto [sj, jI] = sign_insert(j, I);
        lower += si * sj * (pd(i, iI) * pd(j, jI) - pd(i, jI) * pd(j, iI));
      }
    }
  g.rhs_lower = lower;
  return g;
}

// ---------------------------------------------------------------------------
// Quadrature with a two-order agreement check

struct IntegralValue {
  double value = 0;
  double error = 0;  // relative disagreement between the last two orders
};

// Evaluates the integral at `order` and a slightly finer rule; if the two
// disagree beyond tol/2 (relative), the order doubles once before reporting.
inline IntegralValue checked_integral(const std::function<QuadratureRule(int)>& rulef,
                                      const std::function<double(const Vec&)>& g,
                                      int order, double tol) {
  const double v1 = integrate(rulef(order), g);
  const double v2 = integrate(rulef(order + 4), g);
  auto rel = [](double a, double b) {
    const double s = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) / s;
  };
  if (rel(v1, v2) > 0.5 * tol) {
    const double v3 = integrate(rulef(2 * order), g);
    return {v3, rel(v2, v3)};
  }
  return {v2, rel(v1, v2)};
}

// ---------------------------------------------------------------------------
// Boundary conditions and the Gaffney quotient

enum class BoundaryCondition { tangential, normal };

inline const char* bc_name(BoundaryCondition bc) {
  return bc == BoundaryCondition::tangential ? "tangential" : "normal";
}

// nu ^ w for the tangential class, nu -| w for the normal class; both taken
// as identically zero where the rank makes the product degenerate.
inline double bc_defect(const KForm& nu1, const KForm& w, BoundaryCondition bc) {
  if (bc == BoundaryCondition::tangential) {
    if (w.rank() == w.dim()) return 0.0;
    return std::sqrt(wedge(nu1, w).norm_sq());
  }
  if (w.rank() == 0) return 0.0;
  return std::sqrt(interior(nu1, w).norm_sq());
}

// Max over boundary sample nodes of the boundary-condition defect, normalized
// by the largest field magnitude seen on the boundary.
inline double bc_residual(const Domain& dom, const FormField& f, BoundaryCondition bc,
                          int order = 6) {
  double worst = 0, scale = 1.0;
  for (const auto& patch : dom.patches) {
    const QuadratureRule rule = patch.rule(order);
    for (const auto& x : rule.nodes) {
      const KForm w = f.value(x);
      const KForm nu1 = covector(dom.n, unit_normal(patch.surface, x));
      worst = std::max(worst, bc_defect(nu1, w, bc));
      scale = std::max(scale, std::sqrt(w.norm_sq()));
    }
  }
  return worst / scale;
}

struct GaffneyReport {
  double grad_sq = 0;
  double d_sq = 0;
  double delta_sq = 0;
  double form_sq = 0;
  double quotient = 0;      // grad_sq / (d_sq + delta_sq + form_sq)
  double bc_defect = 0;     // normalized boundary-condition residual
  double quad_error = 0;    // worst relative two-order disagreement
};

struct QuotientTerms {
  double grad = 0, dsq = 0, delsq = 0, form = 0;
};

inline QuotientTerms quotient_terms(const QuadratureRule& rule, const FormField& f) {
  CompensatedSum grad, dsq, delsq, form;
  const int n = f.n, k = f.k;
  const auto upper = (k < n) ? enumerate(n, k + 1) : std::vector<MultiIndex>{};
  std::vector<KForm> p;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const Vec& x = rule.nodes[i];
    const double w = rule.weights[i];
    p.clear();
    for (int j = 1; j <= n; ++j) p.push_back(f.partial(x, j));
    double g = 0;
    for (int j = 0; j < n; ++j) g += p[static_cast<std::size_t>(j)].norm_sq();
    grad.add(w * g);
    if (k < n) {
      double s = 0;
      for (const auto& I : upper) {
        double c = 0;
        for (int idx : I.indices()) {
          const auto [sign, rest] = remove(I, idx);
          c += sign * p[static_cast<std::size_t>(idx - 1)].coeff(rest);
        }
        s += c * c;
      }
      dsq.add(w * s);
    }
    if (k > 0) {
      KForm del(n, k - 1);
      for (int j = 1; j <= n; ++j)
        del += interior(basis_one_form(n, j), p[static_cast<std::size_t>(j - 1)]);
      delsq.add(w * del.norm_sq());
    }
    form.add(w * f.value(x).norm_sq());
  }
  return {grad.value(), dsq.value(), delsq.value(), form.value()};
}

inline double terms_disagreement(const QuotientTerms& a, const QuotientTerms& b) {
  auto rel = [](double u, double v) {
    return std::abs(u - v) / std::max({1.0, std::abs(u), std::abs(v)});
  };
  return std::max({rel(a.grad, b.grad), rel(a.dsq, b.dsq),
                   rel(a.delsq, b.delsq), rel(a.form, b.form)});
}

// Rayleigh quotient |grad f|^2 / (|df|^2 + |delta f|^2 + |f|^2) over d, with
// the boundary condition verified on samples and a two-order quadrature check.
inline GaffneyReport gaffney_quotient(const Domain& dom, const FormField& f,
                                      BoundaryCondition bc, int order = 12,
                                      double tol = 1e-6, double bc_tol = 1e-8) {
  GaffneyReport rep;
  rep.bc_defect = bc_residual(dom, f, bc);
  if (rep.bc_defect > bc_tol) {
    std::ostringstream os;
    os << "gaffney_quotient: " << bc_name(bc)
       << " boundary condition violated, residual " << rep.bc_defect;
    throw std::domain_error(os.str());
  }
  QuotientTerms t1 = quotient_terms(dom.volume(order), f);
  QuotientTerms t2 = quotient_terms(dom.volume(order + 4), f);
  double err = terms_disagreement(t1, t2);
  if (err > 0.5 * tol) {
    const QuotientTerms t3 = quotient_terms(dom.volume(2 * order), f);
    err = terms_disagreement(t2, t3);
    t2 = t3;
  }
  rep.grad_sq = t2.grad;
  rep.d_sq = t2.dsq;
  rep.delta_sq = t2.delsq;
  rep.form_sq = t2.form;
  rep.quad_error = err;
  const double denom = rep.d_sq + rep.delta_sq + rep.form_sq;
  if (denom <= 0 || rep.form_sq <= 0)
    throw std::domain_error("gaffney_quotient: field vanishes on the domain");
  rep.quotient = rep.grad_sq / denom;
  return rep;
}

// ---------------------------------------------------------------------------
// Integration-by-parts identity with curvature boundary terms

// LHS:  int_Omega <d a; d b> + <delta a; delta b> - <grad a; grad b>.
// RHS:  int_bd [ -<nu ^ d(nu -| a); nu ^ b> - <nu -| delta(nu ^ a); nu -| b>
//               + curvature quadratic terms in the principal frame ].
inline IdentityResidual integral_identity_residual(const Domain& dom,
                                                   const FormField& alpha,
                                                   const FormField& beta,
                                                   int order = 12,
                                                   double tol = 1e-6) {
  const int n = alpha.n, k = alpha.k;
  if (beta.n != n || beta.k != k)
    throw std::domain_error("integral_identity_residual: mismatched fields");
  if (k < 1 || k > n - 1)
    throw std::domain_error("integral_identity_residual: need 1 <= k <= n-1");

  auto volume_integrand = [&](const Vec& x) {
    double g = 0;
    for (int j = 1; j <= n; ++j) g += inner(alpha.partial(x, j), beta.partial(x, j));
    return inner(d(alpha, x), d(beta, x)) + inner(delta(alpha, x), delta(beta, x)) - g;
  };
  const IntegralValue lhs = checked_integral(dom.volume, volume_integrand, order, tol);

  CompensatedSum rhs_sum;
  double rhs_err = 0;
  for (const auto& patch : dom.patches) {
    const FormField nu = normal_field(n, patch.surface);
    const FormField tang = interior_field(nu, alpha);  // nu -| alpha
    const FormField norm = wedge_field(nu, alpha);     // nu ^ alpha
    auto boundary_integrand = [&](const Vec& x) {
      const BoundaryFrame fr = frame(patch.surface, x);
      const KForm nu1 = covector(n, fr.nu);
      const KForm a = alpha.value(x), b = beta.value(x);
      const double t1 = inner(wedge(nu1, d(tang, x)), wedge(nu1, b));
      const double t2 = inner(interior(nu1, delta(norm, x)), interior(nu1, b));
      return -(t1 + t2) + L_nu_quadratic(fr, a, b) + K_nu_quadratic(fr, a, b);
    };
    const IntegralValue part = checked_integral(patch.rule, boundary_integrand, order, tol);
    rhs_sum.add(part.value);
    rhs_err = std::max(rhs_err, part.error);
  }

  std::ostringstream anchor;
  anchor << "integration-by-parts identity with curvature terms (" << dom.name
         << ", k=" << k << ")";
  return make_residual(anchor.str(), lhs.value, rhs_sum.value(), tol);
}

// ---------------------------------------------------------------------------
// Piecewise-smooth boundary identity

// For f obeying the boundary condition on every face:
//   |df|^2 + |delta f|^2 - |grad f|^2  (volume)
//     = sum over faces of int sum_l gamma_l |E_l ^ f|^2       (tangential)
//     = sum over faces of int sum_l gamma_l |E_l -| f|^2      (normal).
// The residual is reported relative to |grad f|^2 so that the polytope case
// (both sides zero) is still a meaningful comparison.
inline IdentityResidual piecewise_boundary_identity(const Domain& dom, const FormField& f,
                                                    BoundaryCondition bc, int order = 12,
                                                    double tol = 1e-6,
                                                    double bc_tol = 1e-8) {
  const int n = f.n, k = f.k;
  const double defect = bc_residual(dom, f, bc);
  if (defect > bc_tol) {
    std::ostringstream os;
    os << "piecewise_boundary_identity: " << bc_name(bc)
       << " boundary condition violated, residual " << defect;
    throw std::domain_error(os.str());
  }

  auto gap_integrand = [&](const Vec& x) {
    double g = 0;
    for (int j = 1; j <= n; ++j) g += f.partial(x, j).norm_sq();
    const double dd = (k < n) ? d(f, x).norm_sq() : 0.0;
    const double del = (k > 0) ? delta(f, x).norm_sq() : 0.0;
    return dd + del - g;
  };
  const IntegralValue lhs = checked_integral(dom.volume, gap_integrand, order, tol);

  auto grad_integrand = [&](const Vec& x) {
    double g = 0;
    for (int j = 1; j <= n; ++j) g += f.partial(x, j).norm_sq();
    return g;
  };
  const IntegralValue grad = checked_integral(dom.volume, grad_integrand, order, tol);

  CompensatedSum rhs_sum;
  for (const auto& patch : dom.patches) {
    auto boundary_integrand = [&](const Vec& x) {
      const BoundaryFrame fr = frame(patch.surface, x);
      const KForm w = f.value(x);
      double s = 0;
      for (int l = 0; l < n - 1; ++l) {
        const KForm el = covector(n, fr.E[static_cast<std::size_t>(l)]);
        double q = 0;
        if (bc == BoundaryCondition::tangential)
          q = (k < n) ? wedge(el, w).norm_sq() : 0.0;
        else
          q = (k > 0) ? interior(el, w).norm_sq() : 0.0;
        s += fr.gamma[static_cast<std::size_t>(l)] * q;
      }
      return s;
    };
    rhs_sum.add(checked_integral(patch.rule, boundary_integrand, order, tol).value);
  }

  std::ostringstream anchor;
  anchor << "piecewise boundary identity (" << dom.name << ", k=" << k << ", "
         << bc_name(bc) << ")";
  return make_residual(anchor.str(), lhs.value, rhs_sum.value(), tol, "integral",
                       grad.value);
}

// ---------------------------------------------------------------------------
// Closed-form annulus/shell quotient

// Rayleigh quotient of the divergence- and curl-free shell field on the
// cylindrical shell with inner radius r (the round annulus when k = 1):
//   numerator    sigma_{n-k+1} (n-k) [r^{-(n-k+1)} - 1]
//   denominator  sigma_{n-k+1} / (n-k-1) [r^{-(n-k-1)} - 1]     if n > k+1
//                -sigma_{n-k+1} log r                           if n = k+1.
// Grows like (n-k-1)(n-k)/r^2 as r -> 0 for n > k+1.
inline double annulus_quotient_closed_form(int n, int k, double r) {
  if (k < 1 || n <= k) throw std::domain_error("annulus_quotient_closed_form: need n > k >= 1");
  if (!(r > 0.0 && r < 1.0))
    throw std::domain_error("annulus_quotient_closed_form: need 0 < r < 1");
  const int m = n - k + 1;
  const double sigma = unit_sphere_measure(m);
  const double num = sigma * (n - k) * (std::pow(r, -(n - k + 1)) - 1.0);
  const double den = (n > k + 1)
                         ? sigma / (n - k - 1) * (std::pow(r, -(n - k - 1)) - 1.0)
                         : -sigma * std::log(r);
  return num / den;
}

// The field realizing the closed form: coefficient profile s^{-(n-k+1)}.
inline FormField blowup_field(int n, int k) {
  const double p = static_cast<double>(n - k + 1);
  Profile lam;
  lam.f = [p](double s) { return std::pow(s, -p); };
  lam.df = [p](double s) { return -p * std::pow(s, -p - 1.0); };
  lam.d2f = [p](double s) { return p * (p + 1.0) * std::pow(s, -p - 2.0); };
  if (k == 1) return radial_annulus_field(n, lam);
  return shell_field(n, k, lam);
}

// ---------------------------------------------------------------------------
// Symmetric-gradient (Korn) checks for vector fields

struct KornReport {
  IdentityResidual pointwise;  // |grad u|^2 = |sym grad u|^2 + 1/2 |curl u|^2
  IdentityResidual margin;     // int |sym|^2 - 1/2 int |grad|^2 = 1/2 int (div u)^2
  double sym_sq = 0;
  double grad_sq = 0;
  double half_div_sq = 0;
};

inline KornReport korn_check(const Domain& dom, const FormField& u, BoundaryCondition bc,
                             int order = 10, double tol = 1e-6,
                             double bc_tol = 1e-8) {
  if (u.k != 1) throw std::domain_error("korn_check: field must have rank 1");
  const double defect = bc_residual(dom, u, bc);
  if (defect > bc_tol)
    throw std::domain_error("korn_check: boundary condition violated");

  KornReport rep;
  double worst = 0;
  Vec worst_x;
  const QuadratureRule probe = dom.volume(6);
  for (const auto& x : probe.nodes) {
    const Mat g = gradient(u, x);
    const double res = std::abs(g.frobenius_sq() - sym_gradient_norm_sq(g)
                                - 0.5 * curl_norm_sq(g));
    if (res > worst) { worst = res; worst_x = x; }
  }
  rep.pointwise = make_residual("pointwise symmetric-gradient identity", worst, 0.0,
                                1e-12, point_string(worst_x), 1.0);
  rep.pointwise.pass = worst <= 1e-12;

  auto sym_i = [&](const Vec& x) { return sym_gradient_norm_sq(gradient(u, x)); };
  auto grad_i = [&](const Vec& x) { return gradient(u, x).frobenius_sq(); };
  auto div_i = [&](const Vec& x) { const double v = divergence(gradient(u, x)); return v * v; };
  rep.sym_sq = checked_integral(dom.volume, sym_i, order, tol).value;
  rep.grad_sq = checked_integral(dom.volume, grad_i, order, tol).value;
  rep.half_div_sq = 0.5 * checked_integral(dom.volume, div_i, order, tol).value;
  rep.margin = make_residual("symmetric-gradient margin equals half the divergence term",
                             rep.sym_sq - 0.5 * rep.grad_sq, rep.half_div_sq, tol,
                             "integral", rep.grad_sq);
  return rep;
}

// ---------------------------------------------------------------------------
// Oscillating compactly supported fields on the unit ball

// sin(m x_1) eta(x) dx^{1..k} with the polynomial bump cutoff; the quotient
// tends to 1 from below as m grows.
inline GaffneyReport oscillating_bump_report(int n, int k, double m, int order = 20) {
  const double rho = 0.5;
  const FormField f = sin_bump_field(n, k, m, bump_cutoff(n, rho));
  const int q = order + static_cast<int>(std::ceil(1.5 * m));
  auto rulef = [n, rho](int qq) {
    return radial_shell_rule(n, 0.0, 1.0, qq, qq, {rho});
  };
  QuotientTerms t1 = quotient_terms(rulef(q), f);
  QuotientTerms t2 = quotient_terms(rulef(q + 8), f);
  GaffneyReport rep;
  rep.quad_error = terms_disagreement(t1, t2);
  rep.grad_sq = t2.grad;
  rep.d_sq = t2.dsq;
  rep.delta_sq = t2.delsq;
  rep.form_sq = t2.form;
  rep.bc_defect = 0.0;  // compact support inside the ball
  rep.quotient = rep.grad_sq / (rep.d_sq + rep.delta_sq + rep.form_sq);
  return rep;
}

inline double maximizing_sequence_ratio(int n, int k, double m, int order = 20) {
  return oscillating_bump_report(n, k, m, order).quotient;
}

// ---------------------------------------------------------------------------
// Admissible trial fields

// The position covector x_i dx^i; parallel to the normal on every sphere
// centered at the origin.
inline FormField position_one_form(int n) {
  FormField f;
  f.n = n;
  f.k = 1;
  f.value = [n](const Vec& x) { return covector(n, x); };
  f.partial = [n](const Vec&, int j) { return basis_one_form(n, j); };
  f.partial2 = [n](const Vec&, int, int) { return KForm(n, 1); };
  return f;
}

// grad phi as a 1-form field; parallel to the outward normal on {phi = 0}.
inline FormField level_gradient_field(int n, const LevelSet& ls) {
  FormField f;
  f.n = n;
  f.k = 1;
  f.value = [n, ls](const Vec& x) { return covector(n, ls.grad(x)); };
  f.partial = [n, ls](const Vec& x, int j) {
    const Mat h = ls.hess(x);
    KForm w(n, 1);
    for (int l = 0; l < n; ++l) w[static_cast<std::size_t>(l)] = h(l, j - 1);
    return w;
  };
  return f;
}

// m ^ (m -| rho): vanishes under nu ^ . wherever m is parallel to nu.
inline FormField tangential_trial(const FormField& m, const FormField& rho) {
  if (m.k != 1) throw std::domain_error("tangential_trial: m must have rank 1");
  if (rho.k < 1) throw std::domain_error("tangential_trial: rho must have rank >= 1");
  return wedge_field(m, interior_field(m, rho));
}

// m -| (m ^ rho): vanishes under nu -| . wherever m is parallel to nu.
inline FormField normal_trial(const FormField& m, const FormField& rho) {
  if (m.k != 1) throw std::domain_error("normal_trial: m must have rank 1");
  if (rho.k > rho.n - 1) throw std::domain_error("normal_trial: rho must have rank <= n-1");
  return interior_field(m, wedge_field(m, rho));
}

inline Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& ta : a.terms)
    for (const auto& tb : b.terms) {
      Polynomial::Term t;
      t.c = ta.c * tb.c;
      t.e.resize(std::max(ta.e.size(), tb.e.size()), 0);
      for (std::size_t j = 0; j < ta.e.size(); ++j) t.e[j] += ta.e[j];
      for (std::size_t j = 0; j < tb.e.size(); ++j) t.e[j] += tb.e[j];
      out.terms.push_back(std::move(t));
    }
  return out;
}

// prod_r (x_axis - r) as a polynomial in n variables.
inline Polynomial axis_vanishing_poly(int n, int axis, const std::vector<double>& roots) {
  Polynomial out;
  out.terms.push_back({1.0, std::vector<int>(static_cast<std::size_t>(n), 0)});
  for (double r : roots) {
    Polynomial factor;
    std::vector<int> e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(axis - 1)] = 1;
    factor.terms.push_back({1.0, e});
    factor.terms.push_back({-r, std::vector<int>(static_cast<std::size_t>(n), 0)});
    out = poly_mul(out, factor);
  }
  return out;
}

inline Polynomial random_polynomial(int n, int degree, Rng& rng) {
  Polynomial p;
  for (int t = 0; t < 4; ++t) {
    Polynomial::Term term;
    term.c = rng.symmetric();
    term.e.assign(static_cast<std::size_t>(n), 0);
    int budget = degree;
    for (int j = 0; j < n && budget > 0; ++j) {
      const int e = static_cast<int>(rng.unit() * (budget + 1));
      term.e[static_cast<std::size_t>(j)] = e;
      budget -= e;
    }
    p.terms.push_back(std::move(term));
  }
  return p;
}

// Trial field on an axis-aligned box-like domain whose faces sit on the given
// per-axis plane offsets. The coefficient of dx^I is forced to vanish on the
// faces where the boundary condition demands it:
//   tangential: coefficient vanishes on faces x_j = c for every j not in I;
//   normal:     coefficient vanishes on faces x_j = c for every j in I.
inline FormField box_trial_field(int n, int k, const std::vector<double>& planes,
                                 BoundaryCondition bc, int degree, Rng& rng) {
  std::vector<Polynomial> coeffs;
  for (const auto& I : enumerate(n, k)) {
    Polynomial p = random_polynomial(n, degree, rng);
    for (int j = 1; j <= n; ++j) {
      const bool inside = I.contains(j);
      const bool vanish = (bc == BoundaryCondition::tangential) ? !inside : inside;
      if (vanish) p = poly_mul(p, axis_vanishing_poly(n, j, planes));
    }
    coeffs.push_back(std::move(p));
  }
  return polynomial_field(n, k, coeffs);
}

// Pointwise Hodge dual of a field (the star commutes with differentiation).
inline FormField hodge_field(const FormField& f) {
  FormField out;
  out.n = f.n;
  out.k = f.n - f.k;
  out.value = [f](const Vec& x) { return hodge(f.value(x)); };
  out.partial = [f](const Vec& x, int j) { return hodge(f.partial(x, j)); };
  if (f.has_second())
    out.partial2 = [f](const Vec& x, int i, int j) { return hodge(f.partial2(x, i, j)); };
  return out;
}

// Pullback of f under x -> x/t, the field used for scale-covariance checks.
inline FormField rescale_field(const FormField& f, double t) {
  FormField out;
  out.n = f.n;
  out.k = f.k;
  out.value = [f, t](const Vec& x) { return f.value(scaled(x, 1.0 / t)); };
  out.partial = [f, t](const Vec& x, int j) {
    return (1.0 / t) * f.partial(scaled(x, 1.0 / t), j);
  };
  return out;
}

// ---------------------------------------------------------------------------
// Randomized falsification harness

struct HarnessResult {
  int trials = 0;
  int violations = 0;       // quotients above 1 + 1e-6
  double max_quotient = 0;
  std::uint64_t argmax_seed = 0;
  std::string construction;  // which trial-field construction was used
};

// Runs `trials` seeded random admissible fields of rank k through the
// quotient; counts quotients exceeding 1 + 1e-6. The trial construction is
// m ^ (m -| rho) or m -| (m ^ rho) with rho a random polynomial field.
inline HarnessResult falsification_harness(const Domain& dom, const FormField& m, int k,
                                           BoundaryCondition bc, int trials,
                                           std::uint64_t seed, int order = 6,
                                           int degree = 3) {
  HarnessResult res;
  res.trials = trials;
  res.construction = (bc == BoundaryCondition::tangential)
                         ? "m ^ (m -| rho), rho random polynomial"
                         : "m -| (m ^ rho), rho random polynomial";
  std::vector<double> quotients(static_cast<std::size_t>(trials), 0.0);
  parallel_for(trials, [&](int t) {
    Rng rng(seed + static_cast<std::uint64_t>(t));
    const FormField rho = random_polynomial_field(dom.n, k, degree, rng);
    const FormField f = (bc == BoundaryCondition::tangential)
                            ? tangential_trial(m, rho)
                            : normal_trial(m, rho);
    quotients[static_cast<std::size_t>(t)] =
        gaffney_quotient(dom, f, bc, order, 1e-4).quotient;
  });
  for (int t = 0; t < trials; ++t) {
    const double q = quotients[static_cast<std::size_t>(t)];
    if (q > res.max_quotient) {
      res.max_quotient = q;
      res.argmax_seed = seed + static_cast<std::uint64_t>(t);
    }
    if (q > 1.0 + 1e-6) ++res.violations;
  }
  return res;
}

// ---------------------------------------------------------------------------
// Identity suites

namespace detail {

using Job = std::pair<std::string, std::function<IdentityResidual()>>;

inline std::vector<IdentityResidual> run_jobs(const std::vector<Job>& jobs) {
  std::vector<IdentityResidual> out(jobs.size());
  parallel_for(static_cast<int>(jobs.size()), [&](int i) {
    const auto& [anchor, fn] = jobs[static_cast<std::size_t>(i)];
    try {
      out[static_cast<std::size_t>(i)] = fn();
    } catch (const std::exception& e) {
      IdentityResidual r;
      r.anchor = anchor + " [error: " + e.what() + "]";
      r.pass = false;
      r.rel = 1.0;
      out[static_cast<std::size_t>(i)] = r;
    }
  });
  return out;
}

inline KForm random_form(int n, int k, Rng& rng) {
  KForm w(n, k);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = rng.symmetric();
  return w;
}

inline Vec random_point(int n, Rng& rng, double scale = 1.0) {
  Vec x(static_cast<std::size_t>(n));
  for (auto& v : x) v = scale * rng.symmetric();
  return x;
}

}  // namespace detail

// Coefficient-level algebra: decomposition, adjunction, star signs, frame
// contraction. Residuals are algebra-limited (tolerance 1e-10).
inline std::vector<IdentityResidual> algebra_suite(std::uint64_t seed = 1) {
  using detail::Job;
  std::vector<Job> jobs;
  const double tol = 1e-10;
  for (int n = 2; n <= 6; ++n) {
    std::ostringstream name;
    name << "wedge/contraction algebra (n=" << n << ")";
    const std::string base = name.str();

    jobs.emplace_back(base + ": decomposition v^(v-|w) + v-|(v^w) = |v|^2 w",
                      [n, seed, tol, base]() {
      Rng rng(seed * 1000 + static_cast<std::uint64_t>(n));
      double worst = 0;
      for (int k = 1; k <= n; ++k)
        for (int t = 0; t < 200; ++t) {
          const KForm v = detail::random_form(n, 1, rng);
          const KForm w = detail::random_form(n, k, rng);
          KForm lhs = wedge(v, interior(v, w));
          if (k < n) lhs = lhs + interior(v, wedge(v, w));
          const KForm rhs = inner(v, v) * w;
          worst = std::max(worst, (lhs - rhs).max_abs());
        }
      return make_residual(base + ": decomposition v^(v-|w) + v-|(v^w) = |v|^2 w",
                           worst, 0.0, tol, "point", 1.0);
    });

    jobs.emplace_back(base + ": adjunction <v^a;b> = <a;v-|b>",
                      [n, seed, tol, base]() {
      Rng rng(seed * 2000 + static_cast<std::uint64_t>(n));
      double worst = 0;
      for (int k = 0; k <= n - 1; ++k)
        for (int t = 0; t < 200; ++t) {
          const KForm v = detail::random_form(n, 1, rng);
          const KForm a = detail::random_form(n, k, rng);
          const KForm b = detail::random_form(n, k + 1, rng);
          worst = std::max(worst, std::abs(inner(wedge(v, a), b) - inner(a, interior(v, b))));
        }
      return make_residual(base + ": adjunction <v^a;b> = <a;v-|b>", worst, 0.0,
                           tol, "point", 1.0);
    });

    jobs.emplace_back(base + ": star involution and defining property",
                      [n, seed, tol, base]() {
      Rng rng(seed * 3000 + static_cast<std::uint64_t>(n));
      double worst = 0;
      std::vector<int> full;
      for (int i = 1; i <= n; ++i) full.push_back(i);
      const MultiIndex top(full);
      for (int k = 0; k <= n; ++k)
        for (int t = 0; t < 200; ++t) {
          const KForm w = detail::random_form(n, k, rng);
          const KForm l = detail::random_form(n, k, rng);
          const double sign = ((k * (n - k)) % 2 == 0) ? 1.0 : -1.0;
          worst = std::max(worst, (hodge(hodge(w)) - sign * w).max_abs());
          // w ^ l' has top-rank coefficient <*w; l'> for l' of rank n-k
          const KForm lp = hodge(l);
          worst = std::max(worst, std::abs(wedge(w, lp).coeff(top) - inner(hodge(w), lp)));
        }
      return make_residual(base + ": star involution and defining property", worst,
                           0.0, tol, "point", 1.0);
    });

    jobs.emplace_back(base + ": frame contraction norm and matrix formula",
                      [n, seed, tol, base]() {
      Rng rng(seed * 4000 + static_cast<std::uint64_t>(n));
      double worst = 0;
      for (int k = 1; k <= n; ++k)
        for (int t = 0; t < 200; ++t) {
          const KForm lam = detail::random_form(n, k, rng);
          const KForm v = detail::random_form(n, 1, rng);
          // |v -| lam|^2 expanded coefficient by coefficient over rank-(k-1)
          // tuples, and again through the contraction matrix
          // C^{jl} = sum_{J of rank k-1 avoiding j,l} sgn[j,J] sgn[l,J] lam^{[jJ]} lam^{[lJ]}.
          const KForm contraction = interior(v, lam);
          double brute = 0;
          for (const auto& J : enumerate(n, k - 1)) {
            double s = 0;
            for (int i = 1; i <= n; ++i) {
              if (J.contains(i)) continue;
              const auto [si, iJ] = sign_insert(i, J);
              s += si * v[static_cast<std::size_t>(i - 1)] * lam.coeff(iJ);
            }
            brute += s * s;
          }
          worst = std::max(worst, std::abs(contraction.norm_sq() - brute));
          Mat c(n, n);
          for (const auto& J : enumerate(n, k - 1))
            for (int jj = 1; jj <= n; ++jj) {
              if (J.contains(jj)) continue;
              for (int ll = 1; ll <= n; ++ll) {
                if (J.contains(ll)) continue;
                const auto [sj, jJ] = sign_insert(jj, J);
                const auto [sl, lJ] = sign_insert(ll, J);
                c(jj - 1, ll - 1) += sj * sl * lam.coeff(jJ) * lam.coeff(lJ);
              }
            }
          double qf = 0;
          for (int jj = 1; jj <= n; ++jj)
            for (int ll = 1; ll <= n; ++ll)
              qf += c(jj - 1, ll - 1) * v[static_cast<std::size_t>(jj - 1)] *
                    v[static_cast<std::size_t>(ll - 1)];
          worst = std::max(worst, std::abs(contraction.norm_sq() - qf));
        }
      return make_residual(base + ": frame contraction norm and matrix formula",
                           worst, 0.0, tol, "point", 1.0);
    });
  }
  return detail::run_jobs(jobs);
}

// Triple agreement of the pointwise gap expansions on random cubic fields.
inline std::vector<IdentityResidual> pointwise_suite(std::uint64_t seed = 1) {
  using detail::Job;
  std::vector<Job> jobs;
  const double tol = 1e-10;
  for (int n = 2; n <= 5; ++n)
    for (int k = 1; k <= n - 1; ++k) {
      std::ostringstream name;
      name << "pointwise gap expansion agreement (n=" << n << ", k=" << k << ")";
      const std::string anchor = name.str();
      jobs.emplace_back(anchor, [n, k, seed, tol, anchor]() {
        Rng rng(seed * 100 + static_cast<std::uint64_t>(10 * n + k));
        double worst = 0;
        for (int t = 0; t < 100; ++t) {
          const FormField f = random_polynomial_field(n, k, 3, rng);
          const Vec x = detail::random_point(n, rng);
          const PointwiseGap g = pointwise_gap(f, x);
          worst = std::max({worst, std::abs(g.gap - g.rhs_upper),
                            std::abs(g.gap - g.rhs_lower)});
        }
        return make_residual(anchor, worst, 0.0, tol, "point", 1.0);
      });
    }
  return detail::run_jobs(jobs);
}

// Curvature frames, the boundary quadratic forms, and convexity verdicts.
inline std::vector<IdentityResidual> boundary_suite(std::uint64_t seed = 1) {
  using detail::Job;
  std::vector<Job> jobs;
  const double tol = 1e-8;

  jobs.emplace_back("sphere principal curvatures equal 1/R", [tol]() {
    double worst = 0;
    for (int n = 3; n <= 5; ++n) {
      const double R = 1.0 + 0.25 * n;
      const LevelSet ls = sphere_level_set(n, R, true);
      const QuadratureRule rule = sphere_patch_rule(n, R, 4);
      for (const auto& x : rule.nodes) {
        const BoundaryFrame fr = frame(ls, x);
        for (double g : fr.gamma) worst = std::max(worst, std::abs(g - 1.0 / R));
      }
    }
    return make_residual("sphere principal curvatures equal 1/R", worst, 0.0, tol,
                         "point", 1.0);
  });

  jobs.emplace_back("cylinder principal curvature spectrum", [tol]() {
    double worst = 0;
    const int n = 4, block = 3;
    const double r = 0.7;
    const LevelSet ls = cylinder_level_set(n, block, r, false);
    Rng rng(17);
    for (int t = 0; t < 50; ++t) {
      Vec x(n, 0.0);
      double s = 0;
      for (int i = 0; i < block; ++i) { x[static_cast<std::size_t>(i)] = rng.symmetric(); s += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)]; }
      s = std::sqrt(s);
      if (s < 0.1) continue;
      for (int i = 0; i < block; ++i) x[static_cast<std::size_t>(i)] *= r / s;
      x[3] = rng.symmetric();
      const BoundaryFrame fr = frame(ls, x);
      std::vector<double> want(static_cast<std::size_t>(block - 1), -1.0 / r);
      want.resize(static_cast<std::size_t>(n - 1), 0.0);
      std::sort(want.begin(), want.end());
      for (std::size_t i = 0; i < fr.gamma.size(); ++i)
        worst = std::max(worst, std::abs(fr.gamma[i] - want[i]));
    }
    return make_residual("cylinder principal curvature spectrum", worst, 0.0, tol,
                         "point", 1.0);
  });

  for (const char* which : {"sphere", "ellipsoid", "cylinder"}) {
    const std::string anchor =
        std::string("curvature quadratic forms match direct boundary operators (") +
        which + ")";
    jobs.emplace_back(anchor, [anchor, which, seed, tol]() {
      Rng rng(seed * 5000 + (which[0] == 's' ? 1 : which[0] == 'e' ? 2 : 3));
      LevelSet ls;
      int n = 4;
      std::function<Vec()> draw;
      if (which[0] == 's') {
        ls = sphere_level_set(4, 1.3, true);
        draw = [&rng]() {
          Vec x(4);
          double s = 0;
          do {
            s = 0;
            for (auto& v : x) { v = rng.symmetric(); s += v * v; }
          } while (s < 1e-2);
          s = std::sqrt(s);
          for (auto& v : x) v *= 1.3 / s;
          return x;
        };
      } else if (which[0] == 'e') {
        n = 3;
        const Vec a{1.0, 1.5, 2.0};
        const Domain dom = ellipsoid(3, a);
        ls = dom.patches[0].surface;
        draw = [&rng, a]() {
          Vec u(3);
          double s = 0;
          do {
            s = 0;
            for (auto& v : u) { v = rng.symmetric(); s += v * v; }
          } while (s < 1e-2);
          s = std::sqrt(s);
          Vec x(3);
          for (int i = 0; i < 3; ++i) x[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(i)] / s;
          return x;
        };
      } else {
        ls = cylinder_level_set(4, 3, 0.8, true);
        draw = [&rng]() {
          Vec x(4);
          double s = 0;
          do {
            s = 0;
            for (int i = 0; i < 3; ++i) { x[static_cast<std::size_t>(i)] = rng.symmetric(); s += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)]; }
          } while (s < 1e-2);
          s = std::sqrt(s);
          for (int i = 0; i < 3; ++i) x[static_cast<std::size_t>(i)] *= 0.8 / s;
          x[3] = rng.symmetric();
          return x;
        };
      }
      const FormField nu = normal_field(n, ls);
      double worst = 0;
      for (int t = 0; t < 50; ++t) {
        const Vec x = draw();
        const BoundaryFrame fr = frame(ls, x);
        const KForm nu1 = covector(n, fr.nu);
        for (int k = 1; k <= n - 1; ++k) {
          Rng rloc(seed + static_cast<std::uint64_t>(100 * t + k));
          const KForm a = detail::random_form(n, k, rloc);
          const KForm b = detail::random_form(n, k, rloc);
          const double lq = inner(L_nu(nu, wedge(nu1, a), x), wedge(nu1, b));
          const double kq = inner(K_nu(nu, interior(nu1, a), x), interior(nu1, b));
          worst = std::max(worst, std::abs(lq - L_nu_quadratic(fr, a, b)));
          worst = std::max(worst, std::abs(kq - K_nu_quadratic(fr, a, b)));
        }
      }
      return make_residual(anchor, worst, 0.0, tol, "point", 1.0);
    });
  }

  jobs.emplace_back("inner-boundary concavity witness on the annulus", [tol]() {
    // With the radial field on the annulus, the quadratic form
    // <K(nu -| w); nu -| w> must go negative on the inner sphere.
    const int n = 3;
    const double r = 0.2;
    const Domain dom = annulus(n, r);
    Profile lam;
    lam.f = [](double s) { return std::pow(s, -3.0); };
    lam.df = [](double s) { return -3.0 * std::pow(s, -4.0); };
    const FormField w = radial_annulus_field(n, lam);
    double lowest = 1e300;
    const BoundaryPatch& inner = dom.patches[1];
    const QuadratureRule rule = inner.rule(4);
    for (const auto& x : rule.nodes) {
      const BoundaryFrame fr = frame(inner.surface, x);
      lowest = std::min(lowest, K_nu_quadratic(fr, w.value(x), w.value(x)));
    }
    IdentityResidual res = make_residual(
        "inner-boundary concavity witness on the annulus", lowest, 0.0, tol, "point",
        1.0);
    res.pass = lowest < -1e-6;  // the quadratic form must actually go negative
    res.rel = 0.0;
    return res;
  });

  jobs.emplace_back("convexity verdicts for the domain catalog", []() {
    double worst = 0;
    // Ball: every k-sum equals k.
    for (int k = 1; k <= 2; ++k)
      worst = std::max(worst, std::abs(k_convexity(ball(3), k).min_sum - k));
    // Annulus: smallest curvature sum is -1/r on the inner sphere.
    worst = std::max(worst, std::abs(k_convexity(annulus(3, 0.25), 1).min_sum + 4.0));
    // Torus-like domain: mean-curvature convex but not convex.
    const Domain t = solid_torus(1.0, 2.5);
    const double m1 = k_convexity(t, 1).min_sum;
    const double m2 = k_convexity(t, 2).min_sum;
    IdentityResidual res = make_residual("convexity verdicts for the domain catalog",
                                         worst, 0.0, 1e-6, "point", 1.0);
    res.pass = res.pass && (m1 < -1e-3) && (m2 >= -1e-9);
    return res;
  });

  return detail::run_jobs(jobs);
}

// Integral identities: integration by parts with curvature terms, polytope
// equality, blow-up closed form, duality and scale covariance.
inline std::vector<IdentityResidual> integral_suite(std::uint64_t seed = 1,
                                                    int order = 10) {
  using detail::Job;
  std::vector<Job> jobs;
  const double tol = 1e-6;

  for (const int which : {0, 1}) {
    const std::string dn = which == 0 ? "ball" : "annulus";
    const std::string anchor =
        "integration-by-parts identity with curvature terms (" + dn + ")";
    jobs.emplace_back(anchor, [anchor, which, seed, order, tol]() {
      const int n = 3;
      const Domain dom = which == 0 ? ball(n) : annulus(n, 0.4);
      double worst = 0;
      for (int k = 1; k <= n - 1; ++k) {
        Rng rng(seed * 7000 + static_cast<std::uint64_t>(10 * which + k));
        for (int t = 0; t < 2; ++t) {
          const FormField a = random_polynomial_field(n, k, 2, rng);
          const FormField b = random_polynomial_field(n, k, 2, rng);
          worst = std::max(worst,
                           integral_identity_residual(dom, a, b, order, tol).rel);
        }
      }
      IdentityResidual res = make_residual(anchor, worst, 0.0, tol, "integral", 1.0);
      res.pass = worst <= tol;
      return res;
    });
  }

  jobs.emplace_back("compactly supported fields close the gap", [order, tol]() {
    const GaffneyReport rep = oscillating_bump_report(3, 1, 5.0, 16);
    return make_residual("compactly supported fields close the gap", rep.grad_sq,
                         rep.d_sq + rep.delta_sq, tol);
  });

  for (const int hole : {0, 1}) {
    const std::string dn = hole ? "box with a box hole" : "unit cube";
    const std::string anchor = "flat-boundary equality (" + dn + ")";
    jobs.emplace_back(anchor, [anchor, hole, seed, order, tol]() {
      const int n = 3;
      const Domain dom = hole ? cube_with_hole(n) : unit_cube(n);
      const std::vector<double> planes =
          hole ? std::vector<double>{0.0, 0.3, 0.7, 1.0} : std::vector<double>{0.0, 1.0};
      double worst = 0;
      for (const auto bc : {BoundaryCondition::tangential, BoundaryCondition::normal}) {
        Rng rng(seed * 9000 + static_cast<std::uint64_t>(hole * 2 + (bc == BoundaryCondition::normal)));
        const FormField f = box_trial_field(n, 1, planes, bc, 2, rng);
        worst = std::max(worst, piecewise_boundary_identity(dom, f, bc, order, tol).rel);
      }
      IdentityResidual res = make_residual(anchor, worst, 0.0, tol, "integral", 1.0);
      res.pass = worst <= tol;
      return res;
    });
  }

  jobs.emplace_back("radial field matches the curvature boundary term (annulus)",
                    [order, tol]() {
    const int n = 3;
    const Domain dom = annulus(n, 0.4);
    const FormField w = blowup_field(n, 1);
    const IdentityResidual a = integral_identity_residual(dom, w, w, order, tol);
    const IdentityResidual b =
        piecewise_boundary_identity(dom, w, BoundaryCondition::tangential, order, tol);
    const double worst = std::max(a.rel, b.rel) + std::abs(a.lhs - b.lhs) /
                             std::max(1.0, std::abs(a.lhs));
    IdentityResidual res = make_residual(
        "radial field matches the curvature boundary term (annulus)", worst, 0.0, tol,
        "integral", 1.0);
    res.pass = worst <= 3 * tol;
    return res;
  });

  jobs.emplace_back("blow-up quotient matches the closed form (n=3,k=1,r=0.1)",
                    [tol]() {
    const Domain dom = annulus(3, 0.1);
    const GaffneyReport rep =
        gaffney_quotient(dom, blowup_field(3, 1), BoundaryCondition::tangential, 16, tol);
    return make_residual("blow-up quotient matches the closed form (n=3,k=1,r=0.1)",
                         rep.quotient, annulus_quotient_closed_form(3, 1, 0.1), tol);
  });

  jobs.emplace_back("quotient duality under the star (ball)", [seed, order]() {
    const int n = 3, k = 1;
    const Domain dom = ball(n);
    Rng rng(seed * 11000 + 5);
    const FormField rho = random_polynomial_field(n, k, 2, rng);
    const FormField f = tangential_trial(position_one_form(n), rho);
    const GaffneyReport qt = gaffney_quotient(dom, f, BoundaryCondition::tangential, order);
    const GaffneyReport qn =
        gaffney_quotient(dom, hodge_field(f), BoundaryCondition::normal, order);
    return make_residual("quotient duality under the star (ball)", qt.quotient,
                         qn.quotient, 1e-9);
  });

  jobs.emplace_back("scale covariance of the quotient terms (ball)", [seed, order]() {
    const int n = 3, k = 1;
    const double t = 1.7;
    Rng rng(seed * 13000 + 9);
    const FormField rho = random_polynomial_field(n, k, 2, rng);
    const FormField f = tangential_trial(position_one_form(n), rho);
    const GaffneyReport q1 = gaffney_quotient(ball(n), f, BoundaryCondition::tangential, order);
    const GaffneyReport q2 = gaffney_quotient(ball(n, t), rescale_field(f, t),
                                              BoundaryCondition::tangential, order);
    const double sg = std::pow(t, n - 2), sf = std::pow(t, n);
    const double worst = std::max(
        {std::abs(q2.grad_sq - sg * q1.grad_sq) / std::max(1.0, sg * q1.grad_sq),
         std::abs(q2.d_sq - sg * q1.d_sq) / std::max(1.0, sg * q1.d_sq),
         std::abs(q2.delta_sq - sg * q1.delta_sq) / std::max(1.0, sg * q1.delta_sq),
         std::abs(q2.form_sq - sf * q1.form_sq) / std::max(1.0, sf * q1.form_sq)});
    IdentityResidual res = make_residual("scale covariance of the quotient terms (ball)",
                                         worst, 0.0, 1e-6, "integral", 1.0);
    res.pass = worst <= 1e-6;
    return res;
  });

  jobs.emplace_back("symmetric-gradient margin on the cube", [seed, order, tol]() {
    Rng rng(seed * 15000 + 3);
    const FormField u =
        box_trial_field(3, 1, {0.0, 1.0}, BoundaryCondition::tangential, 2, rng);
    const KornReport rep = korn_check(unit_cube(3), u, BoundaryCondition::tangential, order);
    const double worst = std::max(rep.pointwise.lhs, rep.margin.rel);
    IdentityResidual res = make_residual("symmetric-gradient margin on the cube", worst,
                                         0.0, tol, "integral", 1.0);
    res.pass = rep.pointwise.pass && rep.margin.pass;
    return res;
  });

  return detail::run_jobs(jobs);
}

inline std::vector<IdentityResidual> run_suite(const std::string& name,
                                               std::uint64_t seed = 1, int order = 8) {
  if (name == "algebra") return algebra_suite(seed);
  if (name == "pointwise") return pointwise_suite(seed);
  if (name == "boundary") return boundary_suite(seed);
  if (name == "integral") return integral_suite(seed, order);
  if (name == "all") {
    std::vector<IdentityResidual> out;
    for (const char* s : {"algebra", "pointwise", "boundary", "integral"}) {
      auto part = run_suite(s, seed, order);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  throw std::domain_error("unknown suite: " + name);
}

}  // namespace gaffney
