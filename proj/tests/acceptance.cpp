// Acceptance gate: one pass/fail line per criterion, exit 0 iff all pass.
//
// Each criterion exercises the library end to end with pinned tolerances;
// failures print the offending numbers so a regression is diagnosable from
// the log alone.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "gaffney/verify.hpp"

namespace {

using namespace gaffney;

int g_failures = 0;
int g_index = 0;

// Runs one criterion, prints "criterion NN: PASS/FAIL  <name>  (<detail>, <t> s)".
void criterion(const std::string& name,
               const std::function<bool(std::string&)>& body) {
  ++g_index;
  std::string detail;
  bool ok = false;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
    ok = false;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("criterion %2d: %s  %s  (%s, %.2f s)\n", g_index,
              ok ? "PASS" : "FAIL", name.c_str(), detail.c_str(), secs);
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

bool all_records_pass(const std::vector<IdentityResidual>& recs, std::string& detail) {
  double worst = 0;
  std::string worst_anchor;
  bool ok = true;
  for (const auto& r : recs) {
    if (!r.pass) {
      ok = false;
      detail = "failed: " + r.anchor + ", rel=" + fmt(r.rel);
    }
    if (r.rel > worst) {
      worst = r.rel;
      worst_anchor = r.anchor;
    }
  }
  if (ok)
    detail = std::to_string(recs.size()) + " records, worst rel=" + fmt(worst);
  return ok;
}

// ---------------------------------------------------------------------------

// Both insertion-sign identities, exhaustively over all index pairs, n <= 6.
bool check_sign_identities(std::string& detail) {
  long cases = 0;
  for (int n = 2; n <= 6; ++n) {
    // First identity: I of rank >= 2, distinct i, j in I.
    for (int rank = 2; rank <= n; ++rank)
      for (const MultiIndex& I : enumerate(n, rank))
        for (int i : I.indices())
          for (int j : I.indices()) {
            if (i == j) continue;
            auto [si, I_i] = remove(I, i);
            auto [sj, I_j] = remove(I, j);
            auto [sjj, I_ij] = remove(I_i, j);
            (void)sjj;
            const int lhs = sign_insert(i, I_ij).first * sign_insert(j, I_ij).first;
            const int rhs = -si * sj;
            if (lhs != rhs) {
              detail = "first identity broken at n=" + std::to_string(n);
              return false;
            }
            ++cases;
          }
    // Second identity: I of rank <= n-2, distinct i, j outside I.
    for (int rank = 0; rank <= n - 2; ++rank)
      for (const MultiIndex& I : enumerate(n, rank))
        for (int i = 1; i <= n; ++i) {
          if (I.contains(i)) continue;
          for (int j = 1; j <= n; ++j) {
            if (j == i || I.contains(j)) continue;
            auto [sjI, jI] = sign_insert(j, I);
            auto [siI, iI] = sign_insert(i, I);
            const int lhs = sign_insert(i, jI).first * sign_insert(j, iI).first;
            const int rhs = -siI * sjI;
            if (lhs != rhs) {
              detail = "second identity broken at n=" + std::to_string(n);
              return false;
            }
            ++cases;
          }
        }
  }
  detail = std::to_string(cases) + " exact cases";
  return cases > 1000;
}

bool check_curvature_oracles(std::string& detail) {
  double worst_sphere = 0;
  for (int n = 3; n <= 5; ++n) {
    const LevelSet ls = sphere_level_set(n, 1.0, true);
    for (const Vec& x : sphere_patch_rule(n, 1.0, 4).nodes) {
      const BoundaryFrame fr = frame(ls, x);
      for (double g : fr.gamma) worst_sphere = std::max(worst_sphere, std::abs(g - 1.0));
    }
  }
  // Cylinder about the last k-1 axes: spectrum {-1/r x (n-k), 0 x (k-1)}
  // with the interior orientation.
  double worst_cyl = 0;
  Rng rng(31);
  for (const auto& [n, k, r] : std::vector<std::tuple<int, int, double>>{
           {4, 2, 0.7}, {5, 3, 0.5}}) {
    const int block = n - k + 1;
    const LevelSet ls = cylinder_level_set(n, block, r, false);
    std::vector<double> want(static_cast<std::size_t>(n - k), -1.0 / r);
    want.resize(static_cast<std::size_t>(n - 1), 0.0);
    std::sort(want.begin(), want.end());
    for (int t = 0; t < 40; ++t) {
      Vec x(static_cast<std::size_t>(n), 0.0);
      double s = 0;
      for (int i = 0; i < block; ++i) {
        x[static_cast<std::size_t>(i)] = rng.symmetric();
        s += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
      }
      s = std::sqrt(s);
      if (s < 0.1) continue;
      for (int i = 0; i < block; ++i) x[static_cast<std::size_t>(i)] *= r / s;
      for (int i = block; i < n; ++i) x[static_cast<std::size_t>(i)] = rng.symmetric();
      const BoundaryFrame fr = frame(ls, x);
      for (std::size_t i = 0; i < fr.gamma.size(); ++i)
        worst_cyl = std::max(worst_cyl, std::abs(fr.gamma[i] - want[i]));
    }
  }
  detail = "sphere dev=" + fmt(worst_sphere) + ", cylinder dev=" + fmt(worst_cyl);
  return worst_sphere < 1e-8 && worst_cyl < 1e-8;
}

// Curvature quadratic forms vs direct evaluation of the boundary operators.
bool check_curvature_cross_validation(std::string& detail) {
  struct Case {
    std::string name;
    LevelSet ls;
    int n;
    std::function<Vec(Rng&)> draw;
  };
  std::vector<Case> cases;
  cases.push_back({"sphere", sphere_level_set(4, 1.3, true), 4, [](Rng& rng) {
                     Vec x(4);
                     double s = 0;
                     do {
                       s = 0;
                       for (auto& v : x) { v = rng.symmetric(); s += v * v; }
                     } while (s < 1e-2);
                     s = std::sqrt(s);
                     for (auto& v : x) v *= 1.3 / s;
                     return x;
                   }});
  {
    const Vec a{1.0, 1.5, 2.0};
    cases.push_back({"ellipsoid", ellipsoid(3, a).patches[0].surface, 3,
                     [a](Rng& rng) {
                       Vec u(3);
                       double s = 0;
                       do {
                         s = 0;
                         for (auto& v : u) { v = rng.symmetric(); s += v * v; }
                       } while (s < 1e-2);
                       s = std::sqrt(s);
                       Vec x(3);
                       for (int i = 0; i < 3; ++i)
                         x[static_cast<std::size_t>(i)] =
                             a[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(i)] / s;
                       return x;
                     }});
  }
  cases.push_back({"cylinder", cylinder_level_set(4, 3, 0.8, true), 4, [](Rng& rng) {
                     Vec x(4);
                     double s = 0;
                     do {
                       s = 0;
                       for (int i = 0; i < 3; ++i) {
                         x[static_cast<std::size_t>(i)] = rng.symmetric();
                         s += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
                       }
                     } while (s < 1e-2);
                     s = std::sqrt(s);
                     for (int i = 0; i < 3; ++i) x[static_cast<std::size_t>(i)] *= 0.8 / s;
                     x[3] = rng.symmetric();
                     return x;
                   }});
  double worst = 0;
  for (const auto& c : cases) {
    Rng rng(97 + static_cast<std::uint64_t>(c.n));
    const FormField nu = normal_field(c.n, c.ls);
    for (int t = 0; t < 50; ++t) {
      const Vec x = c.draw(rng);
      const BoundaryFrame fr = frame(c.ls, x);
      const KForm nu1 = covector(c.n, fr.nu);
      for (int k = 1; k <= c.n - 1; ++k) {
        const KForm a = detail::random_form(c.n, k, rng);
        const KForm b = detail::random_form(c.n, k, rng);
        const double lq = inner(L_nu(nu, wedge(nu1, a), x), wedge(nu1, b));
        const double kq = inner(K_nu(nu, interior(nu1, a), x), interior(nu1, b));
        worst = std::max(worst, std::abs(lq - L_nu_quadratic(fr, a, b)));
        worst = std::max(worst, std::abs(kq - K_nu_quadratic(fr, a, b)));
      }
    }
  }
  detail = "3 surfaces x 50 pairs x all ranks, worst dev=" + fmt(worst);
  return worst < 1e-8;
}

bool check_integral_identity(std::string& detail) {
  double worst = 0;
  int pairs = 0;
  for (const int which : {0, 1}) {
    const Domain dom = which == 0 ? ball(3) : annulus(3, 0.4);
    for (int k = 1; k <= 2; ++k) {
      Rng rng(2200 + static_cast<std::uint64_t>(10 * which + k));
      for (int t = 0; t < 10; ++t) {
        const FormField a = random_polynomial_field(3, k, 2, rng);
        const FormField b = random_polynomial_field(3, k, 2, rng);
        worst = std::max(worst, integral_identity_residual(dom, a, b).rel);
        ++pairs;
      }
    }
  }
  detail = std::to_string(pairs) + " pairs, worst rel=" + fmt(worst);
  return worst < 1e-6;
}

bool check_polytope_equality(std::string& detail) {
  double worst = 0;
  for (const int hole : {0, 1}) {
    const Domain dom = hole ? cube_with_hole(3) : unit_cube(3);
    const std::vector<double> planes =
        hole ? std::vector<double>{0.0, 0.3, 0.7, 1.0}
             : std::vector<double>{0.0, 1.0};
    for (const auto bc :
         {BoundaryCondition::tangential, BoundaryCondition::normal}) {
      Rng rng(3300 + static_cast<std::uint64_t>(
                         2 * hole + (bc == BoundaryCondition::normal)));
      for (int k = 1; k <= 2; ++k) {
        const FormField f = box_trial_field(3, k, planes, bc, 2, rng);
        const QuotientTerms t = quotient_terms(dom.volume(12), f);
        const double gap = std::abs(t.grad - t.dsq - t.delsq) / t.grad;
        worst = std::max(worst, gap);
      }
    }
  }
  detail = "cube and cube-with-hole, both conditions, worst rel=" + fmt(worst);
  return worst < 1e-6;
}

bool check_blowup(std::string& detail) {
  // Quadrature quotient vs the closed form on thin shells.
  double worst = 0;
  for (const auto& [n, k] : std::vector<std::pair<int, int>>{{3, 1}, {4, 2}, {3, 2}}) {
    const GaffneyReport rep = gaffney_quotient(
        shell(n, k, 0.1), blowup_field(n, k), BoundaryCondition::tangential, 16, 1e-6);
    const double cf = annulus_quotient_closed_form(n, k, 0.1);
    worst = std::max(worst, std::abs(rep.quotient - cf) / cf);
  }
  if (worst >= 1e-6) {
    detail = "quadrature vs closed form rel=" + fmt(worst);
    return false;
  }
  const double q31 = annulus_quotient_closed_form(3, 1, 0.1);
  if (std::abs(q31 - 222.0) > 1e-6 * 222.0) {
    detail = "expected 222 at (3,1,0.1), got " + fmt(q31);
    return false;
  }
  // Asymptotics of the closed form at r = 1e-3.
  const double r = 1e-3;
  double worst_asym = 0;
  for (const auto& [n, k] : std::vector<std::pair<int, int>>{{3, 1}, {4, 2}}) {
    const double q = annulus_quotient_closed_form(n, k, r);
    const double want = static_cast<double>((n - k - 1) * (n - k)) / (r * r);
    worst_asym = std::max(worst_asym, std::abs(q / want - 1.0));
  }
  if (worst_asym >= 0.05) {
    detail = "1/r^2 law off by " + fmt(worst_asym);
    return false;
  }
  const double q_log = annulus_quotient_closed_form(3, 2, r);
  const double want_log = -1.0 / (r * r * std::log(r));
  const double log_dev = std::abs(q_log / want_log - 1.0);
  if (log_dev >= 0.10) {
    detail = "-1/(r^2 log r) law off by " + fmt(log_dev);
    return false;
  }
  detail = "quadrature rel=" + fmt(worst) + ", 1/r^2 dev=" + fmt(worst_asym) +
           ", log-law dev=" + fmt(log_dev);
  return true;
}

bool check_maximizing_sequence(std::string& detail) {
  double worst_eq = 0;
  std::vector<double> quotients;
  for (const double m : {5.0, 10.0, 20.0, 40.0}) {
    const GaffneyReport rep = oscillating_bump_report(3, 1, m, 20);
    const double sum = rep.d_sq + rep.delta_sq;
    worst_eq = std::max(worst_eq, std::abs(rep.grad_sq - sum) /
                                      std::max(rep.grad_sq, sum));
    quotients.push_back(rep.quotient);
  }
  bool increasing = true;
  for (std::size_t i = 1; i < quotients.size(); ++i)
    if (quotients[i] <= quotients[i - 1]) increasing = false;
  std::ostringstream os;
  os << "equality rel=" << fmt(worst_eq) << ", quotients";
  for (double q : quotients) os << ' ' << q;
  detail = os.str();
  return worst_eq < 1e-6 && increasing && quotients.back() > 0.9;
}

bool check_falsification(std::string& detail) {
  // 500 seeded admissible fields on the ball (both ranks, tangential) and on
  // a mean-curvature-convex but non-convex torus-like domain (rank n-1,
  // tangential); none may beat the sharp constant.
  const Domain b = ball(3);
  const FormField mb = position_one_form(3);
  const HarnessResult h1 =
      falsification_harness(b, mb, 1, BoundaryCondition::tangential, 125, 41000);
  const HarnessResult h2 =
      falsification_harness(b, mb, 2, BoundaryCondition::tangential, 125, 42000);
  const Domain t = solid_torus(1.0, 2.5);
  const FormField mt = level_gradient_field(3, t.patches[0].surface);
  const HarnessResult h3 =
      falsification_harness(t, mt, 2, BoundaryCondition::tangential, 250, 43000);
  const int violations = h1.violations + h2.violations + h3.violations;
  const double maxq =
      std::max({h1.max_quotient, h2.max_quotient, h3.max_quotient});

  // The radial field on the annulus must break the sharper (no zeroth-order
  // term) inequality.
  const Domain a = annulus(3, 0.1);
  const FormField w = blowup_field(3, 1);
  const double bc_defect = bc_residual(a, w, BoundaryCondition::tangential);
  const QuotientTerms qt = quotient_terms(a.volume(16), w);
  const bool violates = qt.grad > 10.0 * (qt.dsq + qt.delsq) && qt.grad > 1.0;

  std::ostringstream os;
  os << "500 trials, " << violations << " violations, max quotient " << maxq
     << "; annulus radial field grad^2=" << fmt(qt.grad)
     << " vs d,delta=" << fmt(qt.dsq + qt.delsq) << ", bc defect "
     << fmt(bc_defect);
  detail = os.str();
  return violations == 0 && maxq < 1.0 + 1e-6 && violates && bc_defect < 1e-8;
}

bool check_korn(std::string& detail) {
  // Pointwise: |grad u|^2 = |sym grad u|^2 + (1/2)|curl u|^2.
  Rng rng(5100);
  double worst_pw = 0;
  for (int t = 0; t < 100; ++t) {
    const FormField u = random_polynomial_field(3, 1, 3, rng);
    const Vec x = detail::random_point(3, rng);
    double grad2 = 0, sym2 = 0, curl2 = 0;
    std::vector<KForm> p;
    for (int i = 1; i <= 3; ++i) p.push_back(u.partial(x, i));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const double aij = p[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        const double aji = p[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        grad2 += aij * aij;
        sym2 += 0.25 * (aij + aji) * (aij + aji);
        if (i < j) curl2 += (aij - aji) * (aij - aji);
      }
    worst_pw = std::max(worst_pw, std::abs(grad2 - sym2 - 0.5 * curl2) /
                                      std::max(1.0, grad2));
  }
  // Integral margin on the cube for an admissible field.
  Rng rng2(5200);
  const FormField u = box_trial_field(3, 1, {0.0, 1.0},
                                      BoundaryCondition::tangential, 2, rng2);
  const KornReport rep = korn_check(unit_cube(3), u, BoundaryCondition::tangential);
  detail = "pointwise dev=" + fmt(worst_pw) + ", margin rel=" + fmt(rep.margin.rel) +
           ", half-div^2=" + fmt(rep.half_div_sq);
  return worst_pw < 1e-12 && rep.pointwise.pass && rep.margin.pass &&
         rep.margin.rel < 1e-6;
}

std::string serialize(const std::vector<IdentityResidual>& recs) {
  std::ostringstream os;
  for (const auto& r : recs) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "|%a|%a|%a|%a|%a|%d\n", r.lhs, r.rhs, r.abs,
                  r.rel, r.tol, r.pass ? 1 : 0);
    os << r.anchor << '@' << r.location << buf;
  }
  return os.str();
}

bool check_determinism(std::string& detail) {
  const std::string a = serialize(run_suite("all", 1));
  const std::string b = serialize(run_suite("all", 1));
  detail = std::to_string(a.size()) + " bytes per report";
  return !a.empty() && a == b;
}

}  // namespace

int main() {
  criterion("insertion-sign identities, exhaustive for n <= 6", [](std::string& d) {
    const auto t0 = std::chrono::steady_clock::now();
    const bool ok = check_sign_identities(d);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return ok && secs < 1.0;
  });

  criterion("coefficient algebra suite at 1e-10", [](std::string& d) {
    const auto t0 = std::chrono::steady_clock::now();
    const bool ok = all_records_pass(algebra_suite(1), d);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return ok && secs < 10.0;
  });

  criterion("pointwise gap triple agreement at 1e-10", [](std::string& d) {
    const auto t0 = std::chrono::steady_clock::now();
    const bool ok = all_records_pass(pointwise_suite(1), d);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return ok && secs < 30.0;
  });

  criterion("sphere and cylinder curvature oracles at 1e-8", check_curvature_oracles);

  criterion("curvature quadratic forms vs direct boundary operators at 1e-8",
            check_curvature_cross_validation);

  criterion("integration-by-parts identity with curvature terms at 1e-6",
            [](std::string& d) {
              const auto t0 = std::chrono::steady_clock::now();
              const bool ok = check_integral_identity(d);
              const double secs = std::chrono::duration<double>(
                                      std::chrono::steady_clock::now() - t0)
                                      .count();
              return ok && secs < 120.0;
            });

  criterion("flat-boundary equality on cube and cube-with-hole at 1e-6",
            check_polytope_equality);

  criterion("thin-shell blow-up matches the closed form and its asymptotics",
            check_blowup);

  criterion("oscillating bump sequence drives the quotient to one",
            check_maximizing_sequence);

  criterion("falsification harness: 500 trials stay below the sharp constant",
            check_falsification);

  criterion("symmetric-gradient identities (pointwise 1e-12, cube margin 1e-6)",
            check_korn);

  criterion("full suite is byte-identical across runs with one seed",
            check_determinism);

  if (g_failures == 0) {
    std::printf("all %d criteria passed\n", g_index);
    return 0;
  }
  std::printf("%d of %d criteria FAILED\n", g_failures, g_index);
  return 1;
}
