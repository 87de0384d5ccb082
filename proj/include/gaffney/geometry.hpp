#pragma once

// Level-set domains with analytic normals and curvature frames, the boundary
// operators L^nu / K^nu and their curvature quadratic forms, k-convexity
// testing, and the domain catalog (ball, annulus, shell, box, ellipsoid,
// torus, cube with a hole).

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "gaffney/exterior.hpp"
#include "gaffney/fields.hpp"
#include "gaffney/linalg.hpp"
#include "gaffney/quadrature.hpp"

namespace gaffney {

// Defining function of a boundary piece: interior is {phi < 0}, so grad phi
// points outward; hess is the analytic Hessian.
struct LevelSet {
  std::function<double(const Vec&)> phi;
  std::function<Vec(const Vec&)> grad;
  std::function<Mat(const Vec&)> hess;
};

inline constexpr double kSingularGradient = 1e-12;

inline Vec unit_normal(const LevelSet& ls, const Vec& x) {
  Vec g = ls.grad(x);
  const double m = norm(g);
  if (m < kSingularGradient)
    throw std::domain_error("unit_normal: gradient of the defining function vanishes");
  return scaled(g, 1.0 / m);
}

// Jacobian of the unit-normal extension nu = grad phi / |grad phi|:
// entry (l, j) = d nu^l / dx_j.
inline Mat normal_jacobian(const LevelSet& ls, const Vec& x) {
  const Vec g = ls.grad(x);
  const double m = norm(g);
  if (m < kSingularGradient)
    throw std::domain_error("normal_jacobian: gradient of the defining function vanishes");
  const Mat h = ls.hess(x);
  const int n = static_cast<int>(g.size());
  Vec nu = scaled(g, 1.0 / m);
  Mat out(n, n);
  for (int j = 0; j < n; ++j) {
    double proj = 0;
    for (int l = 0; l < n; ++l) proj += nu[static_cast<std::size_t>(l)] * h(l, j);
    for (int l = 0; l < n; ++l)
      out(l, j) = h(l, j) / m - nu[static_cast<std::size_t>(l)] * proj / m;
  }
  return out;
}

inline KForm covector(int n, const Vec& v) {
  KForm w(n, 1);
  for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)];
  return w;
}

// The unit normal as a 1-form field with analytic first partials, defined on
// a neighborhood of the boundary piece.
inline FormField normal_field(int n, const LevelSet& ls) {
  FormField f;
  f.n = n;
  f.k = 1;
  f.value = [n, ls](const Vec& x) { return covector(n, unit_normal(ls, x)); };
  f.partial = [n, ls](const Vec& x, int j) {
    const Mat jac = normal_jacobian(ls, x);
    KForm w(n, 1);
    for (int l = 0; l < n; ++l) w[static_cast<std::size_t>(l)] = jac(l, j - 1);
    return w;
  };
  return f;
}

// A different defining function for the same surface: psi = phi (1 + phi^2).
// Used to confirm that boundary quantities do not depend on the extension.
inline LevelSet perturbed_extension(const LevelSet& ls) {
  LevelSet out;
  out.phi = [ls](const Vec& x) {
    const double p = ls.phi(x);
    return p * (1.0 + p * p);
  };
  out.grad = [ls](const Vec& x) {
    const double p = ls.phi(x);
    return scaled(ls.grad(x), 1.0 + 3.0 * p * p);
  };
  out.hess = [ls](const Vec& x) {
    const double p = ls.phi(x);
    const Vec g = ls.grad(x);
    Mat h = ls.hess(x);
    const int n = h.rows;
    Mat out_h(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out_h(i, j) = h(i, j) * (1.0 + 3.0 * p * p) +
                      6.0 * p * g[static_cast<std::size_t>(i)] * g[static_cast<std::size_t>(j)];
    return out_h;
  };
  return out;
}

// ---------------------------------------------------------------------------
// Curvature frame

struct BoundaryFrame {
  Vec x;
  Vec nu;                    // outward unit normal
  std::vector<Vec> E;        // principal directions, orthonormal, tangent
  std::vector<double> gamma; // principal curvatures, ascending, paired with E
};

inline BoundaryFrame frame(const LevelSet& ls, const Vec& x) {
  const int n = static_cast<int>(x.size());
  BoundaryFrame fr;
  fr.x = x;
  fr.nu = unit_normal(ls, x);
  const Mat b = normal_jacobian(ls, x);
  // project onto the tangent space and symmetrize: s = sym(p b p), p = I - nu nu^T
  Mat pb(n, n);
  for (int l = 0; l < n; ++l)
    for (int j = 0; j < n; ++j) {
      double v = b(l, j);
      for (int m = 0; m < n; ++m)
        v -= fr.nu[static_cast<std::size_t>(l)] * fr.nu[static_cast<std::size_t>(m)] * b(m, j);
      pb(l, j) = v;
    }
  Mat s(n, n);
  for (int l = 0; l < n; ++l)
    for (int j = 0; j < n; ++j) {
      double v = 0;
      for (int m = 0; m < n; ++m)
        v += pb(l, m) * (((m == j) ? 1.0 : 0.0) - fr.nu[static_cast<std::size_t>(m)] * fr.nu[static_cast<std::size_t>(j)]);
      s(l, j) = v;
    }
  for (int l = 0; l < n; ++l)
    for (int j = l + 1; j < n; ++j) {
      const double v = 0.5 * (s(l, j) + s(j, l));
      s(l, j) = v;
      s(j, l) = v;
    }
  const SymEigen eig = jacobi_eigen(s);
  // drop the eigenpair aligned with nu (its eigenvalue is an exact zero of
  // the projected operator)
  int drop = 0;
  double best = -1;
  for (int i = 0; i < n; ++i) {
    const double a = std::abs(dot(eig.vectors[static_cast<std::size_t>(i)], fr.nu));
    if (a > best) {
      best = a;
      drop = i;
    }
  }
  for (int i = 0; i < n; ++i) {
    if (i == drop) continue;
    fr.gamma.push_back(eig.values[static_cast<std::size_t>(i)]);
    fr.E.push_back(eig.vectors[static_cast<std::size_t>(i)]);
  }
  return fr;
}

// ---------------------------------------------------------------------------
// Domains

struct BoundaryPatch {
  std::string label;
  LevelSet surface;
  std::function<QuadratureRule(int order)> rule;  // includes surface Jacobian
};

struct Domain {
  std::string name;
  int n = 0;
  double diameter = 2.0;
  std::function<QuadratureRule(int order)> volume;
  std::vector<BoundaryPatch> patches;
};

// ---------------------------------------------------------------------------
// Boundary operators

// L^nu(w) = sum_I w^I d(nu -| dx^I); zero map on 0-forms.
inline KForm L_nu(const FormField& nu, const KForm& w, const Vec& x) {
  if (w.rank() == 0) return KForm(w.dim(), 0);
  return d(interior_field(nu, constant_field(w)), x);
}

// K^nu(w) = sum_I w^I delta(nu ^ dx^I); zero map on n-forms.
inline KForm K_nu(const FormField& nu, const KForm& w, const Vec& x) {
  if (w.rank() == w.dim()) return KForm(w.dim(), w.rank());
  return delta(wedge_field(nu, constant_field(w)), x);
}

// wedge of the selected frame covectors: E_{i_1} ^ ... ^ E_{i_m}
inline KForm frame_wedge(const BoundaryFrame& fr, const MultiIndex& I) {
  const int n = static_cast<int>(fr.nu.size());
  KForm w(n, 0);
  w[0] = 1.0;
  for (int i : I.indices())
    w = wedge(w, covector(n, fr.E[static_cast<std::size_t>(i - 1)]));
  return w;
}

// <L^nu(nu ^ a); nu ^ b> expressed through the curvature frame:
// sum over I in T^k_{n-1} of <a;E_I><b;E_I> (gamma_{i_1}+...+gamma_{i_k}).
inline double L_nu_quadratic(const BoundaryFrame& fr, const KForm& alpha, const KForm& beta) {
  const int n = alpha.dim(), k = alpha.rank();
  if (beta.dim() != n || beta.rank() != k)
    throw std::domain_error("L_nu_quadratic: mismatched forms");
  double s = 0;
  for (const auto& I : enumerate(n - 1, k)) {
    const KForm eI = frame_wedge(fr, I);
    double gsum = 0;
    for (int j : I.indices()) gsum += fr.gamma[static_cast<std::size_t>(j - 1)];
    s += inner(alpha, eI) * inner(beta, eI) * gsum;
  }
  return s;
}

// <K^nu(nu -| a); nu -| b> expressed through the curvature frame:
// sum over I in T^{k-1}_{n-1} of <a; nu ^ E_I><b; nu ^ E_I> sum_{j not in I} gamma_j.
inline double K_nu_quadratic(const BoundaryFrame& fr, const KForm& alpha, const KForm& beta) {
  const int n = alpha.dim(), k = alpha.rank();
  if (beta.dim() != n || beta.rank() != k)
    throw std::domain_error("K_nu_quadratic: mismatched forms");
  if (k < 1) return 0.0;
  const KForm nuform = covector(n, fr.nu);
  double s = 0;
  for (const auto& I : enumerate(n - 1, k - 1)) {
    const KForm lam = wedge(nuform, frame_wedge(fr, I));
    double gsum = 0;
    for (int j = 1; j <= n - 1; ++j)
      if (!I.contains(j)) gsum += fr.gamma[static_cast<std::size_t>(j - 1)];
    s += inner(alpha, lam) * inner(beta, lam) * gsum;
  }
  return s;
}

// ---------------------------------------------------------------------------
// k-convexity

struct ConvexityResult {
  double min_sum = 0;  // minimum over samples of the smallest k-sum of curvatures
  Vec witness;
  std::string patch;
};

inline ConvexityResult k_convexity(const Domain& d, int k, int sample_order = 8) {
  if (k < 1 || k > d.n - 1) throw std::domain_error("k_convexity: need 1 <= k <= n-1");
  ConvexityResult res;
  bool first = true;
  for (const auto& patch : d.patches) {
    const QuadratureRule rule = patch.rule(sample_order);
    for (const Vec& x : rule.nodes) {
      BoundaryFrame fr = frame(patch.surface, x);
      // gamma is ascending, so the smallest k-sum is the sum of the first k
      double s = 0;
      for (int i = 0; i < k; ++i) s += fr.gamma[static_cast<std::size_t>(i)];
      if (first || s < res.min_sum) {
        res.min_sum = s;
        res.witness = x;
        res.patch = patch.label;
        first = false;
      }
    }
  }
  if (first) throw std::domain_error("k_convexity: domain has no boundary samples");
  return res;
}

// ---------------------------------------------------------------------------
// Rule helpers

// Embed a rule on n-1 coordinates into R^n by pinning coordinate `axis`
// (1-based) to `value`.
inline QuadratureRule pin_coordinate(const QuadratureRule& rule, int axis, double value) {
  QuadratureRule out;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    Vec x = rule.nodes[i];
    x.insert(x.begin() + (axis - 1), value);
    out.push(std::move(x), rule.weights[i]);
  }
  return out;
}

inline QuadratureRule sphere_patch_rule(int n, double radius, int order) {
  QuadratureRule sphere = unit_sphere_rule(n, order);
  QuadratureRule out;
  const double jac = std::pow(radius, n - 1);
  for (std::size_t i = 0; i < sphere.size(); ++i)
    out.push(scaled(sphere.nodes[i], radius), jac * sphere.weights[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Catalog

inline LevelSet sphere_level_set(int n, double radius, bool outward) {
  // outward: interior is |x| < radius; otherwise the interior lies outside
  // the sphere (inner boundary of an annulus) and the normal points inward.
  const double sign = outward ? 1.0 : -1.0;
  LevelSet ls;
  ls.phi = [radius, sign](const Vec& x) { return sign * (dot(x, x) - radius * radius); };
  ls.grad = [sign](const Vec& x) { return scaled(x, 2.0 * sign); };
  ls.hess = [sign](const Vec& x) {
    const int n = static_cast<int>(x.size());
    Mat h(n, n);
    for (int i = 0; i < n; ++i) h(i, i) = 2.0 * sign;
    return h;
  };
  (void)n;
  return ls;
}

inline Domain ball(int n, double radius = 1.0) {
  check_dimension(n);
  Domain d;
  d.name = "ball";
  d.n = n;
  d.diameter = 2.0 * radius;
  d.volume = [n, radius](int order) {
    return radial_shell_rule(n, 0.0, radius, order, order);
  };
  d.patches.push_back({"sphere", sphere_level_set(n, radius, true),
                       [n, radius](int order) { return sphere_patch_rule(n, radius, order); }});
  return d;
}

inline Domain annulus(int n, double r) {
  check_dimension(n);
  if (r <= 0.0 || r >= 1.0) throw std::domain_error("annulus: need 0 < r < 1");
  Domain d;
  d.name = "annulus";
  d.n = n;
  d.diameter = 2.0;
  d.volume = [n, r](int order) { return radial_shell_rule(n, r, 1.0, order, order); };
  d.patches.push_back({"outer", sphere_level_set(n, 1.0, true),
                       [n](int order) { return sphere_patch_rule(n, 1.0, order); }});
  d.patches.push_back({"inner", sphere_level_set(n, r, false),
                       [n, r](int order) { return sphere_patch_rule(n, r, order); }});
  return d;
}

inline Domain box(int n, const Vec& lo, const Vec& hi) {
  check_dimension(n);
  Domain d;
  d.name = "box";
  d.n = n;
  double diam = 0;
  for (int i = 0; i < n; ++i) {
    const double s = hi[static_cast<std::size_t>(i)] - lo[static_cast<std::size_t>(i)];
    diam += s * s;
  }
  d.diameter = std::sqrt(diam);
  d.volume = [lo, hi](int order) { return box_rule(lo, hi, order); };
  for (int axis = 1; axis <= n; ++axis) {
    Vec flo, fhi;
    for (int i = 0; i < n; ++i) {
      if (i == axis - 1) continue;
      flo.push_back(lo[static_cast<std::size_t>(i)]);
      fhi.push_back(hi[static_cast<std::size_t>(i)]);
    }
    for (int side = 0; side < 2; ++side) {
      const double c = (side == 0) ? lo[static_cast<std::size_t>(axis - 1)]
                                   : hi[static_cast<std::size_t>(axis - 1)];
      const double sign = (side == 0) ? -1.0 : 1.0;  // outward normal = sign * e_axis
      LevelSet face;
      face.phi = [axis, c, sign](const Vec& x) {
        return sign * (x[static_cast<std::size_t>(axis - 1)] - c);
      };
      face.grad = [n, axis, sign](const Vec&) {
        Vec g(static_cast<std::size_t>(n), 0.0);
        g[static_cast<std::size_t>(axis - 1)] = sign;
        return g;
      };
      face.hess = [n](const Vec&) { return Mat(n, n); };
      d.patches.push_back({(side == 0 ? "face-lo-" : "face-hi-") + std::to_string(axis),
                           face,
                           [flo, fhi, axis, c](int order) {
                             return pin_coordinate(box_rule(flo, fhi, order), axis, c);
                           }});
    }
  }
  return d;
}

inline Domain unit_cube(int n) {
  return box(n, Vec(static_cast<std::size_t>(n), 0.0), Vec(static_cast<std::size_t>(n), 1.0));
}

// Unit cube with the open box (a, b)^n removed; a generalized polytope.
inline Domain cube_with_hole(int n, double a = 0.3, double b = 0.7) {
  check_dimension(n);
  if (!(0.0 < a && a < b && b < 1.0)) throw std::domain_error("cube_with_hole: need 0 < a < b < 1");
  Domain d;
  d.name = "cube_with_hole";
  d.n = n;
  d.diameter = std::sqrt(static_cast<double>(n));
  // volume rule: tensor cells of the grid {0,a,b,1}^n minus the middle cell
  d.volume = [n, a, b](int order) {
    const std::array<double, 4> edges{0.0, a, b, 1.0};
    QuadratureRule out;
    std::vector<int> cell(static_cast<std::size_t>(n), 0);
    while (true) {
      bool middle = true;
      for (int i = 0; i < n; ++i)
        if (cell[static_cast<std::size_t>(i)] != 1) middle = false;
      if (!middle) {
        Vec lo(static_cast<std::size_t>(n)), hi(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
          lo[static_cast<std::size_t>(i)] = edges[static_cast<std::size_t>(cell[static_cast<std::size_t>(i)])];
          hi[static_cast<std::size_t>(i)] = edges[static_cast<std::size_t>(cell[static_cast<std::size_t>(i)] + 1)];
        }
        QuadratureRule r = box_rule(lo, hi, order);
        for (std::size_t t = 0; t < r.size(); ++t) out.push(std::move(r.nodes[t]), r.weights[t]);
      }
      int i = n - 1;
      while (i >= 0 && ++cell[static_cast<std::size_t>(i)] == 3) {
        cell[static_cast<std::size_t>(i)] = 0;
        --i;
      }
      if (i < 0) break;
    }
    return out;
  };
  // outer faces
  Domain outer = unit_cube(n);
  for (auto& p : outer.patches) d.patches.push_back(std::move(p));
  // hole faces: boundary of the removed box, outward normal of the domain
  // points INTO the hole
  for (int axis = 1; axis <= n; ++axis) {
    Vec flo, fhi;
    for (int i = 0; i < n; ++i) {
      if (i == axis - 1) continue;
      flo.push_back(a);
      fhi.push_back(b);
    }
    for (int side = 0; side < 2; ++side) {
      const double c = (side == 0) ? a : b;
      const double sign = (side == 0) ? 1.0 : -1.0;  // into the hole
      LevelSet face;
      face.phi = [axis, c, sign](const Vec& x) {
        return sign * (x[static_cast<std::size_t>(axis - 1)] - c);
      };
      face.grad = [n, axis, sign](const Vec&) {
        Vec g(static_cast<std::size_t>(n), 0.0);
        g[static_cast<std::size_t>(axis - 1)] = sign;
        return g;
      };
      face.hess = [n](const Vec&) { return Mat(n, n); };
      d.patches.push_back({(side == 0 ? "hole-lo-" : "hole-hi-") + std::to_string(axis),
                           face,
                           [flo, fhi, axis, c](int order) {
                             return pin_coordinate(box_rule(flo, fhi, order), axis, c);
                           }});
    }
  }
  return d;
}

// { r < |x|_k < 1 } x (0,1)^{k-1}: the domain carrying the cylindrical shell
// field.  The first n-k+1 coordinates form the annular block.
inline LevelSet cylinder_level_set(int n, int block, double radius, bool outward) {
  const double sign = outward ? 1.0 : -1.0;
  LevelSet ls;
  ls.phi = [block, radius, sign](const Vec& x) {
    double s = 0;
    for (int i = 0; i < block; ++i) s += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
    return sign * (s - radius * radius);
  };
  ls.grad = [n, block, sign](const Vec& x) {
    Vec g(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < block; ++i) g[static_cast<std::size_t>(i)] = 2.0 * sign * x[static_cast<std::size_t>(i)];
    return g;
  };
  ls.hess = [n, block, sign](const Vec&) {
    Mat h(n, n);
    for (int i = 0; i < block; ++i) h(i, i) = 2.0 * sign;
    return h;
  };
  return ls;
}

inline Domain shell(int n, int k, double r) {
  check_dimension(n);
  if (k < 1 || k > n - 1) throw std::domain_error("shell: need 1 <= k <= n-1");
  if (r <= 0.0 || r >= 1.0) throw std::domain_error("shell: need 0 < r < 1");
  if (k == 1) return annulus(n, r);
  const int block = n - k + 1;
  Domain d;
  d.name = "shell";
  d.n = n;
  d.diameter = 2.0 + std::sqrt(static_cast<double>(k - 1));
  const Vec blo(static_cast<std::size_t>(k - 1), 0.0);
  const Vec bhi(static_cast<std::size_t>(k - 1), 1.0);
  d.volume = [block, r, blo, bhi](int order) {
    return product_rule(radial_shell_rule(block, r, 1.0, order, order),
                        box_rule(blo, bhi, order));
  };
  auto lateral_rule = [block, blo, bhi](double radius, int order) {
    return product_rule(sphere_patch_rule(block, radius, order), box_rule(blo, bhi, order));
  };
  d.patches.push_back({"lateral-outer", cylinder_level_set(n, block, 1.0, true),
                       [lateral_rule](int order) { return lateral_rule(1.0, order); }});
  d.patches.push_back({"lateral-inner", cylinder_level_set(n, block, r, false),
                       [lateral_rule, r](int order) { return lateral_rule(r, order); }});
  for (int axis = block + 1; axis <= n; ++axis) {
    Vec flo(static_cast<std::size_t>(k - 2), 0.0);
    Vec fhi(static_cast<std::size_t>(k - 2), 1.0);
    for (int side = 0; side < 2; ++side) {
      const double c = (side == 0) ? 0.0 : 1.0;
      const double sign = (side == 0) ? -1.0 : 1.0;
      LevelSet face;
      face.phi = [axis, c, sign](const Vec& x) {
        return sign * (x[static_cast<std::size_t>(axis - 1)] - c);
      };
      face.grad = [n, axis, sign](const Vec&) {
        Vec g(static_cast<std::size_t>(n), 0.0);
        g[static_cast<std::size_t>(axis - 1)] = sign;
        return g;
      };
      face.hess = [n](const Vec&) { return Mat(n, n); };
      d.patches.push_back({(side == 0 ? "cap-lo-" : "cap-hi-") + std::to_string(axis),
                           face,
                           [block, r, flo, fhi, axis, c](int order) {
                             QuadratureRule base = product_rule(
                                 radial_shell_rule(block, r, 1.0, order, order),
                                 flo.empty() ? QuadratureRule{{Vec{}}, {1.0}}
                                             : box_rule(flo, fhi, order));
                             return pin_coordinate(base, axis, c);
                           }});
    }
  }
  return d;
}

inline Domain ellipsoid(int n, const Vec& semiaxes) {
  check_dimension(n);
  Domain d;
  d.name = "ellipsoid";
  d.n = n;
  double amax = 0;
  for (double a : semiaxes) amax = std::max(amax, a);
  d.diameter = 2.0 * amax;
  LevelSet ls;
  ls.phi = [semiaxes](const Vec& x) {
    double s = -1.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * x[i] / (semiaxes[i] * semiaxes[i]);
    return s;
  };
  ls.grad = [semiaxes](const Vec& x) {
    Vec g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) g[i] = 2.0 * x[i] / (semiaxes[i] * semiaxes[i]);
    return g;
  };
  ls.hess = [n, semiaxes](const Vec&) {
    Mat h(n, n);
    for (int i = 0; i < n; ++i)
      h(i, i) = 2.0 / (semiaxes[static_cast<std::size_t>(i)] * semiaxes[static_cast<std::size_t>(i)]);
    return h;
  };
  d.volume = [n, semiaxes](int order) {
    QuadratureRule unit = radial_shell_rule(n, 0.0, 1.0, order, order);
    double det = 1.0;
    for (double a : semiaxes) det *= a;
    QuadratureRule out;
    for (std::size_t i = 0; i < unit.size(); ++i) {
      Vec x = unit.nodes[i];
      for (int j = 0; j < n; ++j) x[static_cast<std::size_t>(j)] *= semiaxes[static_cast<std::size_t>(j)];
      out.push(std::move(x), det * unit.weights[i]);
    }
    return out;
  };
  d.patches.push_back({"surface", ls, [n, semiaxes](int order) {
                         // x = diag(a) u over the unit sphere; surface element
                         // det(a) |diag(1/a) u| dS(u)
                         QuadratureRule sphere = unit_sphere_rule(n, order);
                         double det = 1.0;
                         for (double a : semiaxes) det *= a;
                         QuadratureRule out;
                         for (std::size_t i = 0; i < sphere.size(); ++i) {
                           const Vec& u = sphere.nodes[i];
                           Vec x(u.size());
                           double q = 0;
                           for (std::size_t j = 0; j < u.size(); ++j) {
                             x[j] = semiaxes[j] * u[j];
                             q += u[j] * u[j] / (semiaxes[j] * semiaxes[j]);
                           }
                           out.push(std::move(x), det * std::sqrt(q) * sphere.weights[i]);
                         }
                         return out;
                       }});
  return d;
}

// Solid torus in R^3 around the x3-axis: tube radius a, center-circle radius
// b.  For b > 2a every boundary point has gamma_1 + gamma_2 > 0 (positive
// mean curvature) while gamma_1 < 0 on the inner half: mean-curvature-convex
// but not convex.
inline Domain solid_torus(double a, double b) {
  if (!(0.0 < a && a < b)) throw std::domain_error("solid_torus: need 0 < a < b");
  Domain d;
  d.name = "torus";
  d.n = 3;
  d.diameter = 2.0 * (a + b);
  LevelSet ls;
  ls.phi = [a, b](const Vec& x) {
    const double rho = std::sqrt(x[0] * x[0] + x[1] * x[1]);
    return (rho - b) * (rho - b) + x[2] * x[2] - a * a;
  };
  ls.grad = [b](const Vec& x) {
    const double rho = std::sqrt(x[0] * x[0] + x[1] * x[1]);
    Vec g(3);
    g[0] = 2.0 * (rho - b) * x[0] / rho;
    g[1] = 2.0 * (rho - b) * x[1] / rho;
    g[2] = 2.0 * x[2];
    return g;
  };
  ls.hess = [b](const Vec& x) {
    const double rho = std::sqrt(x[0] * x[0] + x[1] * x[1]);
    Mat h(3, 3);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const double xi = x[static_cast<std::size_t>(i)], xj = x[static_cast<std::size_t>(j)];
        h(i, j) = 2.0 * (xi * xj / (rho * rho) +
                         (rho - b) * (((i == j) ? 1.0 : 0.0) * rho * rho - xi * xj) /
                             (rho * rho * rho));
      }
    h(2, 2) = 2.0;
    return h;
  };
  d.volume = [a, b](int order) {
    // torus coordinates: x = ((b + s cos psi) cos th, (b + s cos psi) sin th,
    // s sin psi), Jacobian s (b + s cos psi)
    const Segment1D srad = gauss_legendre_on(0.0, a, order);
    const Segment1D spsi = gauss_legendre_on(0.0, 2.0 * std::numbers::pi, order);
    const Segment1D sth = gauss_legendre_on(0.0, 2.0 * std::numbers::pi, order);
    QuadratureRule rule;
    for (std::size_t i = 0; i < srad.x.size(); ++i)
      for (std::size_t j = 0; j < spsi.x.size(); ++j)
        for (std::size_t l = 0; l < sth.x.size(); ++l) {
          const double s = srad.x[i], psi = spsi.x[j], th = sth.x[l];
          const double ring = b + s * std::cos(psi);
          rule.push(Vec{ring * std::cos(th), ring * std::sin(th), s * std::sin(psi)},
                    srad.w[i] * spsi.w[j] * sth.w[l] * s * ring);
        }
    return rule;
  };
  d.patches.push_back({"surface", ls, [a, b](int order) {
                         const Segment1D spsi = gauss_legendre_on(0.0, 2.0 * std::numbers::pi, order);
                         const Segment1D sth = gauss_legendre_on(0.0, 2.0 * std::numbers::pi, order);
                         QuadratureRule rule;
                         for (std::size_t j = 0; j < spsi.x.size(); ++j)
                           for (std::size_t l = 0; l < sth.x.size(); ++l) {
                             const double psi = spsi.x[j], th = sth.x[l];
                             const double ring = b + a * std::cos(psi);
                             rule.push(Vec{ring * std::cos(th), ring * std::sin(th),
                                           a * std::sin(psi)},
                                       spsi.w[j] * sth.w[l] * a * ring);
                           }
                         return rule;
                       }});
  return d;
}

// ---------------------------------------------------------------------------
// Closed-form frame fields (needed as differentiable fields, so only provided
// where a global analytic formula exists)

struct FrameFieldSet {
  FormField nu;                 // unit normal extension
  std::vector<FormField> E;     // tangent frame fields
  std::vector<double> gamma;    // curvatures paired with E at the base surface
};

// Sphere of radius R in R^3: E_1 azimuthal, E_2 = nu x E_1; valid away from
// the x3-axis.
inline FrameFieldSet sphere3_frame_fields(double radius) {
  FrameFieldSet set;
  set.nu = normal_field(3, sphere_level_set(3, radius, true));
  FormField e1;
  e1.n = 3;
  e1.k = 1;
  e1.value = [](const Vec& x) {
    const double rho = std::sqrt(x[0] * x[0] + x[1] * x[1]);
    return covector(3, Vec{-x[1] / rho, x[0] / rho, 0.0});
  };
  e1.partial = [](const Vec& x, int j) {
    const double rho2 = x[0] * x[0] + x[1] * x[1];
    const double rho = std::sqrt(rho2);
    // d/dx_j of (-x2/rho, x1/rho, 0)
    Vec g(3, 0.0);
    if (j == 1) {
      g[0] = x[1] * x[0] / (rho * rho2);
      g[1] = 1.0 / rho - x[0] * x[0] / (rho * rho2);
    } else if (j == 2) {
      g[0] = -1.0 / rho + x[1] * x[1] / (rho * rho2);
      g[1] = -x[0] * x[1] / (rho * rho2);
    }
    return covector(3, g);
  };
  FormField e2 = [&] {
    // nu x e1 with nu = x/|x|, written out componentwise
    FormField f;
    f.n = 3;
    f.k = 1;
    auto val = [](const Vec& x) {
      const double r = norm(x);
      const double rho = std::sqrt(x[0] * x[0] + x[1] * x[1]);
      // (x/r) x (-x2/rho, x1/rho, 0)
      return Vec{-x[2] * x[0] / (r * rho), -x[2] * x[1] / (r * rho), rho / r};
    };
    f.value = [val](const Vec& x) { return covector(3, val(x)); };
    f.partial = [val](const Vec& x, int j) {
      // analytic but lengthy; central differences at 1e-6 would break the
      // 1e-8 checks, so differentiate each closed-form component directly
      const double r2 = dot(x, x), r = std::sqrt(r2);
      const double rho2 = x[0] * x[0] + x[1] * x[1], rho = std::sqrt(rho2);
      const double xj = x[static_cast<std::size_t>(j - 1)];
      const double dr = xj / r;
      const double drho = (j <= 2) ? xj / rho : 0.0;
      Vec g(3);
      // component a: -x3 x_a / (r rho) for a = 1,2;  component 3: rho / r
      for (int a = 0; a < 2; ++a) {
        const double xa = x[static_cast<std::size_t>(a)];
        double dnum = 0.0;
        if (j == 3) dnum += xa;           // d(x3 x_a)/dx3 when a != 2
        if (j - 1 == a) dnum += x[2];     // d(x3 x_a)/dx_a
        const double num = x[2] * xa;
        g[static_cast<std::size_t>(a)] =
            -(dnum * r * rho - num * (dr * rho + r * drho)) / (r2 * rho2);
      }
      g[2] = (drho * r - rho * dr) / r2;
      return covector(3, g);
    };
    return f;
  }();
  set.E = {e1, e2};
  set.gamma = {1.0 / radius, 1.0 / radius};
  return set;
}

// Lateral cylinder |(x1,x2)| = r of the shell domain in R^3 (n = 3, k = 2):
// outward normal points toward the axis; angular direction has curvature
// -1/r, the axis direction is flat.
inline FrameFieldSet cylinder3_frame_fields(double radius) {
  FrameFieldSet set;
  set.nu = normal_field(3, cylinder_level_set(3, 2, radius, false));
  FormField e1;
  e1.n = 3;
  e1.k = 1;
  e1.value = [](const Vec& x) {
    const double rho = std::sqrt(x[0] * x[0] + x[1] * x[1]);
    return covector(3, Vec{-x[1] / rho, x[0] / rho, 0.0});
  };
  e1.partial = [](const Vec& x, int j) {
    const double rho2 = x[0] * x[0] + x[1] * x[1];
    const double rho = std::sqrt(rho2);
    Vec g(3, 0.0);
    if (j == 1) {
      g[0] = x[1] * x[0] / (rho * rho2);
      g[1] = 1.0 / rho - x[0] * x[0] / (rho * rho2);
    } else if (j == 2) {
      g[0] = -1.0 / rho + x[1] * x[1] / (rho * rho2);
      g[1] = -x[0] * x[1] / (rho * rho2);
    }
    return covector(3, g);
  };
  set.E.push_back(e1);
  set.E.push_back(constant_field(basis_one_form(3, 3)));
  set.gamma = {-1.0 / radius, 0.0};
  return set;
}

}  // namespace gaffney
