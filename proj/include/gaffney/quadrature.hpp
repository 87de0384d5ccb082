#pragma once

// Deterministic fixed-order product quadrature: Gauss-Legendre segments,
// tensor rules on boxes, and iterated spherical rules for spheres, balls and
// annuli in general dimension.  Accumulation is compensated so results do not
// depend on evaluation order.

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "gaffney/linalg.hpp"

namespace gaffney {

struct QuadratureRule {
  std::vector<Vec> nodes;
  std::vector<double> weights;

  void push(Vec x, double w) {
    nodes.push_back(std::move(x));
    weights.push_back(w);
  }
  std::size_t size() const { return nodes.size(); }
};

// Kahan compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) {
    const double y = x - c_;
    const double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0, c_ = 0;
};

inline double integrate(const QuadratureRule& rule,
                        const std::function<double(const Vec&)>& f) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < rule.size(); ++i)
    acc.add(rule.weights[i] * f(rule.nodes[i]));
  return acc.value();
}

struct Segment1D {
  std::vector<double> x, w;
};

// Gauss-Legendre nodes/weights on [-1,1], Newton iteration on P_m.
inline Segment1D gauss_legendre(int m) {
  if (m < 1) throw std::domain_error("gauss_legendre: need at least one node");
  Segment1D seg;
  seg.x.resize(static_cast<std::size_t>(m));
  seg.w.resize(static_cast<std::size_t>(m));
  const int half = (m + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double pp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < m; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = m * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    seg.x[static_cast<std::size_t>(i)] = -z;
    seg.x[static_cast<std::size_t>(m - 1 - i)] = z;
    const double w = 2.0 / ((1.0 - z * z) * pp * pp);
    seg.w[static_cast<std::size_t>(i)] = w;
    seg.w[static_cast<std::size_t>(m - 1 - i)] = w;
  }
  return seg;
}

inline Segment1D gauss_legendre_on(double a, double b, int m) {
  Segment1D seg = gauss_legendre(m);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (std::size_t i = 0; i < seg.x.size(); ++i) {
    seg.x[i] = mid + half * seg.x[i];
    seg.w[i] *= half;
  }
  return seg;
}

// Tensor Gauss-Legendre on the box [lo, hi].
inline QuadratureRule box_rule(const Vec& lo, const Vec& hi, int per_axis) {
  const int n = static_cast<int>(lo.size());
  std::vector<Segment1D> segs;
  segs.reserve(static_cast<std::size_t>(n));
  for (int d = 0; d < n; ++d)
    segs.push_back(gauss_legendre_on(lo[static_cast<std::size_t>(d)],
                                     hi[static_cast<std::size_t>(d)], per_axis));
  QuadratureRule rule;
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  while (true) {
    Vec x(static_cast<std::size_t>(n));
    double w = 1.0;
    for (int d = 0; d < n; ++d) {
      x[static_cast<std::size_t>(d)] = segs[static_cast<std::size_t>(d)].x[static_cast<std::size_t>(idx[static_cast<std::size_t>(d)])];
      w *= segs[static_cast<std::size_t>(d)].w[static_cast<std::size_t>(idx[static_cast<std::size_t>(d)])];
    }
    rule.push(std::move(x), w);
    int d = n - 1;
    while (d >= 0 && ++idx[static_cast<std::size_t>(d)] == per_axis) {
      idx[static_cast<std::size_t>(d)] = 0;
      --d;
    }
    if (d < 0) break;
  }
  return rule;
}

// Rule on the unit sphere S^{n-1} via iterated spherical coordinates:
// angles t_1..t_{n-2} in [0,pi] with Jacobians sin^{n-1-i}(t_i), t_{n-1} in
// [0,2pi].  For n = 1 the "sphere" is the two points {-1, +1}.
inline QuadratureRule unit_sphere_rule(int n, int angular_order) {
  QuadratureRule rule;
  if (n == 1) {
    rule.push(Vec{-1.0}, 1.0);
    rule.push(Vec{1.0}, 1.0);
    return rule;
  }
  const Segment1D polar = gauss_legendre_on(0.0, std::numbers::pi, angular_order);
  const Segment1D azim = gauss_legendre_on(0.0, 2.0 * std::numbers::pi, angular_order);
  std::vector<int> idx(static_cast<std::size_t>(n - 1), 0);
  while (true) {
    Vec angles(static_cast<std::size_t>(n - 1));
    double w = 1.0;
    for (int d = 0; d < n - 1; ++d) {
      const bool last = (d == n - 2);
      const Segment1D& seg = last ? azim : polar;
      const double t = seg.x[static_cast<std::size_t>(idx[static_cast<std::size_t>(d)])];
      angles[static_cast<std::size_t>(d)] = t;
      w *= seg.w[static_cast<std::size_t>(idx[static_cast<std::size_t>(d)])];
      if (!last) w *= std::pow(std::sin(t), n - 2 - d);
    }
    Vec u(static_cast<std::size_t>(n));
    double s = 1.0;
    for (int d = 0; d < n - 1; ++d) {
      u[static_cast<std::size_t>(d)] = s * std::cos(angles[static_cast<std::size_t>(d)]);
      s *= std::sin(angles[static_cast<std::size_t>(d)]);
    }
    u[static_cast<std::size_t>(n - 1)] = s;
    rule.push(std::move(u), w);
    int d = n - 2;
    while (d >= 0 && ++idx[static_cast<std::size_t>(d)] == angular_order) {
      idx[static_cast<std::size_t>(d)] = 0;
      --d;
    }
    if (d < 0) break;
  }
  return rule;
}

// Surface measure of the unit sphere S^{n-1} in R^n.
inline double unit_sphere_measure(int n) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

// Radial x angular product rule for { r_lo <= |x - center| <= r_hi }.  The
// radial segment may be split at interior breakpoints (piecewise-smooth
// integrands such as cutoff profiles).
inline QuadratureRule radial_shell_rule(int n, double r_lo, double r_hi,
                                        int radial_order, int angular_order,
                                        const std::vector<double>& breaks = {},
                                        const Vec& center = {}) {
  QuadratureRule sphere = unit_sphere_rule(n, angular_order);
  std::vector<double> edges{r_lo};
  for (double b : breaks)
    if (b > r_lo && b < r_hi) edges.push_back(b);
  edges.push_back(r_hi);
  QuadratureRule rule;
  for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
    const Segment1D radial = gauss_legendre_on(edges[e], edges[e + 1], radial_order);
    for (std::size_t ri = 0; ri < radial.x.size(); ++ri) {
      const double r = radial.x[ri];
      const double wr = radial.w[ri] * std::pow(r, n - 1);
      for (std::size_t si = 0; si < sphere.size(); ++si) {
        Vec x = scaled(sphere.nodes[si], r);
        if (!center.empty())
          for (int d = 0; d < n; ++d) x[static_cast<std::size_t>(d)] += center[static_cast<std::size_t>(d)];
        rule.push(std::move(x), wr * sphere.weights[si]);
      }
    }
  }
  return rule;
}

// Tensor product of two rules living on complementary coordinate blocks.
inline QuadratureRule product_rule(const QuadratureRule& a, const QuadratureRule& b) {
  QuadratureRule rule;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      Vec x = a.nodes[i];
      x.insert(x.end(), b.nodes[j].begin(), b.nodes[j].end());
      rule.push(std::move(x), a.weights[i] * b.weights[j]);
    }
  return rule;
}

}  // namespace gaffney
