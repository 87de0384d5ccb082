#include <doctest.h>

#include <cmath>
#include <numbers>

#include <gaffney/quadrature.hpp>

using namespace gaffney;

namespace {
constexpr double pi = std::numbers::pi;
double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1.0); }
}  // namespace

TEST_CASE("segment rule integrates polynomials exactly") {
  const Segment1D seg = gauss_legendre_on(0.0, 1.0, 8);
  // exact up to degree 15
  for (int p = 0; p <= 15; ++p) {
    double s = 0;
    for (std::size_t i = 0; i < seg.x.size(); ++i) s += seg.w[i] * std::pow(seg.x[i], p);
    CHECK(rel(s, 1.0 / (p + 1)) < 1e-14);
  }
}

TEST_CASE("box rule: measure and oscillatory integrand") {
  const QuadratureRule r = box_rule({0, 0, 0}, {1, 2, 3}, 12);
  CHECK(rel(integrate(r, [](const Vec&) { return 1.0; }), 6.0) < 1e-12);
  const double got = integrate(r, [](const Vec& x) { return std::sin(x[0]) * x[1] * x[2]; });
  CHECK(rel(got, (1.0 - std::cos(1.0)) * 2.0 * 4.5) < 1e-12);
}

TEST_CASE("sphere rules reproduce surface measures for n <= 6") {
  for (int n = 1; n <= 6; ++n) {
    const QuadratureRule r = unit_sphere_rule(n, 24);
    const double got = integrate(r, [](const Vec&) { return 1.0; });
    CHECK(rel(got, unit_sphere_measure(n)) < 1e-10);
  }
  CHECK(rel(unit_sphere_measure(3), 4.0 * pi) < 1e-14);
  CHECK(rel(unit_sphere_measure(2), 2.0 * pi) < 1e-14);
}

TEST_CASE("sphere rule integrates quadratic moments") {
  // integral of x_i^2 over S^{n-1} = sigma_n / n
  for (int n = 2; n <= 5; ++n) {
    const QuadratureRule r = unit_sphere_rule(n, 24);
    for (int i = 0; i < n; ++i) {
      const double got = integrate(r, [i](const Vec& u) { return u[i] * u[i]; });
      CHECK(rel(got, unit_sphere_measure(n) / n) < 1e-10);
    }
  }
}

TEST_CASE("ball and annulus volumes") {
  for (int n = 2; n <= 5; ++n) {
    const double ball_vol = unit_sphere_measure(n) / n;
    CHECK(rel(integrate(radial_shell_rule(n, 0.0, 1.0, 16, 16),
                        [](const Vec&) { return 1.0; }),
              ball_vol) < 1e-10);
    const double r = 0.3;
    CHECK(rel(integrate(radial_shell_rule(n, r, 1.0, 16, 16),
                        [](const Vec&) { return 1.0; }),
              ball_vol * (1.0 - std::pow(r, n))) < 1e-10);
  }
}

TEST_CASE("radial breakpoints recover piecewise-smooth integrands") {
  // f(r) = 1 for r < 1/2, (1.5 - r)^3 beyond: kink at 1/2
  auto f = [](const Vec& x) {
    const double r = norm(x);
    return r < 0.5 ? 1.0 : std::pow(1.5 - r, 3);
  };
  const int n = 3;
  // exact: 4pi [ int_0^.5 r^2 dr + int_.5^1 (1.5-r)^3 r^2 dr ]
  const Segment1D fine = gauss_legendre_on(0.5, 1.0, 64);
  double tail = 0;
  for (std::size_t i = 0; i < fine.x.size(); ++i)
    tail += fine.w[i] * std::pow(1.5 - fine.x[i], 3) * fine.x[i] * fine.x[i];
  const double exact = 4.0 * pi * (std::pow(0.5, 3) / 3.0 + tail);
  const double got = integrate(radial_shell_rule(n, 0.0, 1.0, 24, 16, {0.5}), f);
  CHECK(rel(got, exact) < 1e-12);
}

TEST_CASE("order doubling changes smooth results below 1e-8") {
  auto f = [](const Vec& x) { return std::exp(x[0] - 0.3 * x[1]) * std::cos(x[2]); };
  const double a = integrate(radial_shell_rule(3, 0.2, 1.0, 16, 16), f);
  const double b = integrate(radial_shell_rule(3, 0.2, 1.0, 32, 32), f);
  CHECK(rel(a, b) < 1e-8);
}

TEST_CASE("product rule splits coordinate blocks") {
  const QuadratureRule r =
      product_rule(radial_shell_rule(2, 0.5, 1.0, 12, 12), box_rule({0.0}, {1.0}, 12));
  const double got = integrate(r, [](const Vec& x) { return x[2] * x[2]; });
  const double annulus_area = pi * (1.0 - 0.25);
  CHECK(rel(got, annulus_area / 3.0) < 1e-12);
}

TEST_CASE("compensated accumulation is order independent") {
  QuadratureRule r = box_rule({0, 0}, {1, 1}, 20);
  auto f = [](const Vec& x) { return std::sin(37.0 * x[0]) * std::cos(29.0 * x[1]); };
  const double fwd = integrate(r, f);
  QuadratureRule rev;
  for (std::size_t i = r.size(); i-- > 0;) rev.push(r.nodes[i], r.weights[i]);
  const double bwd = integrate(rev, f);
  CHECK(std::abs(fwd - bwd) < 1e-14);
}

TEST_CASE("weights are positive") {
  for (const auto& rule : {unit_sphere_rule(4, 12), radial_shell_rule(3, 0.1, 1.0, 8, 8),
                           box_rule({0, 0}, {1, 1}, 8)})
    for (double w : rule.weights) CHECK(w > 0.0);
}
