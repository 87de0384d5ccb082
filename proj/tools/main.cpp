// gaffney-lab: batch driver for the verification suites, quotient
// evaluations, and boundary-curvature reports.  Emits JSON (one record per
// check) or CSV (parameter sweeps) to stdout or --out.
//
// Exit codes: 0 all checks pass, 1 at least one residual failure,
// 2 usage / configuration error.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gaffney/verify.hpp"

namespace {

using nlohmann::json;
using namespace gaffney;

constexpr int kUsageError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw UsageError("cannot open output file: " + out_path);
  f << text;
}

json record_to_json(const IdentityResidual& r) {
  return json{{"anchor", r.anchor}, {"lhs", r.lhs},   {"rhs", r.rhs},
              {"abs", r.abs},       {"rel", r.rel},   {"tol", r.tol},
              {"location", r.location}, {"pass", r.pass}};
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

// Domains addressable from the command line.  `r` is the inner radius for
// the annulus family and ignored elsewhere.
Domain make_domain(const std::string& name, int n, double r) {
  if (name == "ball") return ball(n);
  if (name == "annulus") return annulus(n, r);
  if (name == "box" || name == "cube") return unit_cube(n);
  if (name == "cube-with-hole") return cube_with_hole(n);
  if (name == "torus") {
    if (n != 3) throw UsageError("torus domain requires --n 3");
    return solid_torus(1.0, 2.5);
  }
  if (name == "ellipsoid") {
    Vec semi(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) semi[static_cast<std::size_t>(i)] = 1.0 + 0.5 * i;
    return ellipsoid(n, semi);
  }
  throw UsageError("unknown domain: " + name);
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(const std::string& suite, int n, int k, const std::string& domain,
               std::uint64_t seed, int order, const std::string& out_path) {
  if (suite != "algebra" && suite != "pointwise" && suite != "boundary" &&
      suite != "integral" && suite != "all")
    throw UsageError("unknown suite: " + suite);
  const bool have_n = n > 0;
  const bool have_k = k > 0;
  if (have_n && n < 2) throw UsageError("--n must be at least 2");
  if (have_k && !have_n) throw UsageError("--k requires --n");
  if (have_n && have_k && k > n - 1)
    throw UsageError("need 1 <= k <= n-1 for the gap and integral identities");

  json config{{"command", "verify"}, {"suite", suite}, {"seed", seed},
              {"order", order}};
  if (have_n) config["n"] = n;
  if (have_k) config["k"] = k;
  if (!domain.empty()) config["domain"] = domain;

  std::vector<IdentityResidual> records;
  if (suite == "pointwise" && have_n && have_k) {
    // Targeted run: 100 random cubic fields at one (n, k).
    Rng rng(seed);
    double worst = 0;
    for (int t = 0; t < 100; ++t) {
      const FormField f = random_polynomial_field(n, k, 3, rng);
      const Vec x = detail::random_point(n, rng);
      const PointwiseGap g = pointwise_gap(f, x);
      worst = std::max({worst, std::abs(g.gap - g.rhs_upper),
                        std::abs(g.gap - g.rhs_lower)});
    }
    std::ostringstream anchor;
    anchor << "pointwise gap expansion agreement (n=" << n << ", k=" << k << ")";
    records.push_back(make_residual(anchor.str(), worst, 0.0, 1e-10, "point", 1.0));
  } else if (suite == "integral" && have_n && have_k) {
    // Targeted run: the boundary-term identity on one domain at one (n, k).
    const Domain dom = make_domain(domain.empty() ? "ball" : domain, n, 0.5);
    Rng rng(seed);
    for (int pair = 0; pair < 2; ++pair) {
      const FormField alpha = random_polynomial_field(n, k, 3, rng);
      const FormField beta = random_polynomial_field(n, k, 3, rng);
      IdentityResidual r = integral_identity_residual(dom, alpha, beta, order);
      std::ostringstream anchor;
      anchor << "volume gap equals curvature boundary terms (" << dom.name
             << ", k=" << k << ", pair " << pair + 1 << ")";
      records.push_back(make_residual(anchor.str(), r.lhs, r.rhs, r.tol));
    }
  } else {
    records = run_suite(suite, seed, order);
  }

  int failed = 0;
  json recs = json::array();
  for (const auto& r : records) {
    recs.push_back(record_to_json(r));
    if (!r.pass) ++failed;
  }
  json report{{"config", config},
              {"records", recs},
              {"passed", static_cast<int>(records.size()) - failed},
              {"failed", failed}};
  emit(report.dump(2) + "\n", out_path);
  return failed == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// quotient

// Parse "r=START:STOP:SCALE" (SCALE is "log" or "lin").
struct SweepSpec {
  double start = 0, stop = 0;
  bool log_scale = true;
};

SweepSpec parse_sweep(const std::string& s) {
  if (s.rfind("r=", 0) != 0) throw UsageError("--sweep must look like r=0.5:0.01:log");
  std::istringstream in(s.substr(2));
  SweepSpec spec;
  char c1 = 0, c2 = 0;
  std::string scale;
  if (!(in >> spec.start >> c1) || c1 != ':' || !(in >> spec.stop >> c2) ||
      c2 != ':' || !(in >> scale) || (scale != "log" && scale != "lin"))
    throw UsageError("--sweep must look like r=0.5:0.01:log");
  if (!(spec.start > 0 && spec.stop > 0 && spec.start < 1 && spec.stop < 1))
    throw UsageError("--sweep radii must lie in (0, 1)");
  spec.log_scale = (scale == "log");
  return spec;
}

int cmd_quotient(const std::string& example, int n, int k, double r, double m,
                 int order, const std::string& sweep,
                 const std::string& out_path) {
  json config{{"command", "quotient"}, {"example", example}, {"n", n}, {"k", k},
              {"order", order}};

  if (!sweep.empty()) {
    if (example != "annulus")
      throw UsageError("--sweep is only available for the annulus example");
    const SweepSpec spec = parse_sweep(sweep);
    const int points = 25;
    std::ostringstream csv;
    csv << "r,quotient,asymptote\n";
    for (int i = 0; i < points; ++i) {
      const double t = static_cast<double>(i) / (points - 1);
      const double ri = spec.log_scale
                            ? spec.start * std::pow(spec.stop / spec.start, t)
                            : spec.start + t * (spec.stop - spec.start);
      const double q = annulus_quotient_closed_form(n, k, ri);
      const double asym =
          static_cast<double>((n - k - 1) * (n - k)) / (ri * ri);
      csv << format_double(ri) << ',' << format_double(q) << ','
          << format_double(asym) << '\n';
    }
    emit(csv.str(), out_path);
    return 0;
  }

  json report{{"config", config}};
  if (example == "annulus") {
    if (!(r > 0 && r < 1)) throw UsageError("--r must lie in (0, 1)");
    config["r"] = r;
    report["config"] = config;
    report["quotient"] = annulus_quotient_closed_form(n, k, r);
    report["asymptote"] = static_cast<double>((n - k - 1) * (n - k)) / (r * r);
  } else if (example == "sinbump") {
    if (!(k >= 1 && k <= n - 1)) throw UsageError("need 1 <= k <= n-1");
    config["m"] = m;
    report["config"] = config;
    const GaffneyReport rep = oscillating_bump_report(n, k, m, order);
    report["quotient"] = rep.quotient;
    report["grad_sq"] = rep.grad_sq;
    report["d_sq"] = rep.d_sq;
    report["delta_sq"] = rep.delta_sq;
    report["form_sq"] = rep.form_sq;
    report["quad_error"] = rep.quad_error;
  } else {
    throw UsageError("unknown example: " + example);
  }
  emit(report.dump(2) + "\n", out_path);
  return 0;
}

// ---------------------------------------------------------------------------
// curvature

int cmd_curvature(const std::string& domain, int n, double r, int order,
                  const std::string& out_path) {
  const Domain dom = make_domain(domain, n, r);
  json config{{"command", "curvature"}, {"domain", domain}, {"n", n},
              {"order", order}};
  if (domain == "annulus") config["r"] = r;

  // Per-point principal-curvature spectra on each boundary patch.
  json samples = json::array();
  for (const auto& patch : dom.patches) {
    const QuadratureRule rule = patch.rule(order);
    for (const Vec& x : rule.nodes) {
      const BoundaryFrame fr = frame(patch.surface, x);
      samples.push_back(json{{"patch", patch.label}, {"x", fr.x},
                             {"gamma", fr.gamma}});
    }
  }

  // Minimum k-sum of principal curvatures over the sampled boundary, and the
  // resulting convexity verdict for each k.
  json verdicts = json::array();
  constexpr double kVerdictSlack = 1e-9;
  for (int k = 1; k <= dom.n - 1; ++k) {
    const ConvexityResult res = k_convexity(dom, k, order);
    verdicts.push_back(json{{"k", k},
                            {"min_k_sum", res.min_sum},
                            {"witness", res.witness},
                            {"patch", res.patch},
                            {"k_convex", res.min_sum >= -kVerdictSlack}});
  }

  json report{{"config", config}, {"samples", samples},
              {"convexity", verdicts}};
  emit(report.dump(2) + "\n", out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gaffney-lab: numerical checks for exterior-calculus "
               "integral identities, boundary curvature, and Rayleigh "
               "quotients on model domains"};
  app.require_subcommand(1);

  std::string out_path;

  // verify
  auto* verify = app.add_subcommand(
      "verify", "run an identity suite and report residual records");
  std::string suite;
  int vn = 0, vk = 0;
  std::string vdomain;
  std::uint64_t seed = 1;
  int vorder = 10;
  verify->add_option("--suite", suite,
                     "algebra | pointwise | boundary | integral | all")
      ->required();
  verify->add_option("--n", vn, "ambient dimension for a targeted run");
  verify->add_option("--k", vk, "form rank for a targeted run");
  verify->add_option("--domain", vdomain, "domain for a targeted integral run");
  verify->add_option("--seed", seed, "random seed")->capture_default_str();
  verify->add_option("--order", vorder, "quadrature order")->capture_default_str();
  verify->add_option("--out", out_path, "write the report to a file instead of stdout");

  // quotient
  auto* quotient = app.add_subcommand(
      "quotient", "evaluate a Rayleigh quotient for a named example field");
  std::string example;
  int qn = 3, qk = 1;
  double qr = 0.1, qm = 40.0;
  int qorder = 20;
  std::string sweep;
  quotient->add_option("--example", example, "annulus | sinbump")->required();
  quotient->add_option("--n", qn, "ambient dimension")->capture_default_str();
  quotient->add_option("--k", qk, "form rank")->capture_default_str();
  quotient->add_option("--r", qr, "annulus inner radius")->capture_default_str();
  quotient->add_option("--m", qm, "oscillation frequency")->capture_default_str();
  quotient->add_option("--order", qorder, "quadrature order")->capture_default_str();
  quotient->add_option("--sweep", sweep,
                       "emit CSV over a radius range, e.g. r=0.5:0.01:log");
  quotient->add_option("--out", out_path, "write the report to a file instead of stdout");

  // curvature
  auto* curvature = app.add_subcommand(
      "curvature", "sample boundary curvature spectra and convexity verdicts");
  std::string cdomain;
  int cn = 3;
  double cr = 0.5;
  int corder = 6;
  curvature->add_option("--domain", cdomain,
                        "ball | annulus | box | cube-with-hole | torus | ellipsoid")
      ->required();
  curvature->add_option("--n", cn, "ambient dimension")->capture_default_str();
  curvature->add_option("--r", cr, "annulus inner radius")->capture_default_str();
  curvature->add_option("--order", corder, "boundary sample order")
      ->capture_default_str();
  curvature->add_option("--out", out_path, "write the report to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
                   e.get_name() == "CallForVersion"
               ? 0
               : kUsageError;
  }

  try {
    if (verify->parsed())
      return cmd_verify(suite, vn, vk, vdomain, seed, vorder, out_path);
    if (quotient->parsed())
      return cmd_quotient(example, qn, qk, qr, qm, qorder, sweep, out_path);
    if (curvature->parsed())
      return cmd_curvature(cdomain, cn, cr, corder, out_path);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return kUsageError;
}
