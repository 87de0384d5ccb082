#pragma once

// Small dense vectors/matrices (dimension <= 12) and a cyclic Jacobi
// eigensolver for the tangential shape operator.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace gaffney {

using Vec = std::vector<double>;

struct Mat {
  int rows = 0, cols = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

  double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  double frobenius_sq() const {
    double s = 0;
    for (double x : a) s += x * x;
    return s;
  }
};

inline double dot(const Vec& x, const Vec& y) {
  double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

inline double norm(const Vec& x) { return std::sqrt(dot(x, x)); }

inline Vec axpy(double a, const Vec& x, const Vec& y) {
  Vec z(y);
  for (std::size_t i = 0; i < x.size(); ++i) z[i] += a * x[i];
  return z;
}

inline Vec scaled(const Vec& x, double a) {
  Vec z(x);
  for (double& v : z) v *= a;
  return z;
}

struct SymEigen {
  std::vector<double> values;       // ascending
  std::vector<Vec> vectors;         // vectors[i] pairs with values[i]
};

// Cyclic Jacobi iteration; m must be symmetric.  Off-diagonal threshold 1e-13
// times the matrix scale.
inline SymEigen jacobi_eigen(Mat m) {
  const int d = m.rows;
  if (d != m.cols) throw std::domain_error("jacobi_eigen: matrix must be square");
  Mat v(d, d);
  for (int i = 0; i < d; ++i) v(i, i) = 1.0;
  double scale = 0;
  for (double x : m.a) scale = std::max(scale, std::abs(x));
  const double tol = 1e-13 * std::max(scale, 1.0);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (int p = 0; p < d; ++p)
      for (int q = p + 1; q < d; ++q) off += m(p, q) * m(p, q);
    if (std::sqrt(off) <= tol) break;
    for (int p = 0; p < d; ++p)
      for (int q = p + 1; q < d; ++q) {
        if (std::abs(m(p, q)) <= tol * 1e-3) continue;
        const double theta = (m(q, q) - m(p, p)) / (2.0 * m(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int i = 0; i < d; ++i) {
          const double mip = m(i, p), miq = m(i, q);
          m(i, p) = c * mip - s * miq;
          m(i, q) = s * mip + c * miq;
        }
        for (int i = 0; i < d; ++i) {
          const double mpi = m(p, i), mqi = m(q, i);
          m(p, i) = c * mpi - s * mqi;
          m(q, i) = s * mpi + c * mqi;
        }
        for (int i = 0; i < d; ++i) {
          const double vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip - s * viq;
          v(i, q) = s * vip + c * viq;
        }
      }
  }
  std::vector<int> order(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return m(a, a) < m(b, b); });
  SymEigen out;
  out.values.reserve(static_cast<std::size_t>(d));
  out.vectors.reserve(static_cast<std::size_t>(d));
  for (int idx : order) {
    out.values.push_back(m(idx, idx));
    Vec col(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) col[static_cast<std::size_t>(i)] = v(i, idx);
    out.vectors.push_back(std::move(col));
  }
  return out;
}

}  // namespace gaffney
