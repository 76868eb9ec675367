#include "quermass/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "quermass/body.hpp"
#include "quermass/fields.hpp"
#include "quermass/functionals.hpp"
#include "quermass/inequality.hpp"
#include "quermass/report.hpp"
#include "quermass/rng.hpp"
#include "quermass/specio.hpp"
#include "quermass/sphere.hpp"
#include "quermass/symmfunc.hpp"
#include "quermass/types.hpp"

namespace quermass {

namespace {

struct RunConfig {
  int n = 0;  // 0: body spec decides, else 3
  int resolution = 0;
  double tol = 0.0;
  std::uint64_t seed = 1234;
  std::string body_file;
  std::string out_dir;
};

struct certification_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int resolve_n(const RunConfig& cfg) {
  if (cfg.n > 0) return cfg.n;
  if (!cfg.body_file.empty()) return body_from_file(cfg.body_file, 0).dim();
  return 3;
}

QuadratureRule make_rule(const RunConfig& cfg, int n) {
  return build_rule(n, cfg.resolution > 0 ? cfg.resolution : default_resolution(n), cfg.seed);
}

double resolve_tol(const RunConfig& cfg, const QuadratureRule& rule) {
  return cfg.tol > 0.0 ? cfg.tol : default_tolerance(rule);
}

SphereField resolve_body(const RunConfig& cfg, int n) {
  if (!cfg.body_file.empty()) return body_from_file(cfg.body_file, n);
  return ball(n, 1.0);
}

SphereField default_ellipsoid(int n) {
  Vec a(n);
  for (int i = 0; i < n; ++i) a(i) = 1.5 / (1.0 + 0.25 * i);
  return ellipsoid(a);
}

void certify(const SphereField& h, const QuadratureRule& rule) {
  const BodyCertificate cert = validate_c2plus(h, rule);
  if (!cert.ok)
    throw certification_error("body '" + h.name() + "' failed certification: " + cert.message);
}

/// Random combination of even-degree harmonics (degrees 2 and 4); an even
/// support perturbation keeps the body origin-symmetric, so the radial
/// barycenter vanishes.
SphereField even_harmonic(int n, Rng& rng) {
  std::vector<double> coefs;
  int active = 0;
  for (int d = 0; d <= 4; ++d) {
    const std::size_t m = harmonic_basis_degree(n, d).size();
    for (std::size_t k = 0; k < m; ++k) {
      const bool use = d > 0 && d % 2 == 0;
      coefs.push_back(use ? rng.normal() : 0.0);
      active += use ? 1 : 0;
    }
  }
  for (double& c : coefs) c /= std::sqrt(static_cast<double>(active));
  return harmonic_combination(n, 4, coefs, "geven");
}

std::vector<SphereField> suite_bodies(const RunConfig& cfg, const QuadratureRule& rule, Rng& rng,
                                      bool centered) {
  std::vector<SphereField> bodies;
  const int n = rule.dim;
  if (!cfg.body_file.empty()) {
    bodies.push_back(body_from_file(cfg.body_file, n));
  } else {
    bodies.push_back(ball(n, 1.0));
    bodies.push_back(default_ellipsoid(n));
    const SphereField g =
        centered ? even_harmonic(n, rng) : random_harmonic_field(n, 4, rng, "g");
    bodies.push_back(perturbed_ball(n, 0.08, g));
  }
  for (const auto& b : bodies) certify(b, rule);
  return bodies;
}

/// Report for a scalar residual check: lhs = residual, rhs = 0, pass iff
/// residual <= tol.
InequalityReport residual_report(std::string name, double residual, double tol,
                                 std::string metadata) {
  InequalityReport r;
  r.name = std::move(name);
  r.lhs = residual;
  r.rhs = 0.0;
  r.gap = -residual;
  r.relative_gap = r.gap / std::max(std::abs(residual), 1e-300);
  r.tolerance_used = tol;
  r.pass = residual <= tol;
  r.metadata = std::move(metadata);
  return r;
}

std::vector<InequalityReport> suite_bm(const RunConfig& cfg, const QuadratureRule& rule,
                                       Rng& rng) {
  const int n = rule.dim;
  const double tol = resolve_tol(cfg, rule);
  std::vector<std::pair<SphereField, SphereField>> pairs;
  Vec y0 = Vec::Zero(n);
  y0(0) = 0.15;
  if (!cfg.body_file.empty()) {
    SphereField k = body_from_file(cfg.body_file, n);
    certify(k, rule);
    pairs.emplace_back(k, ball(n, 1.0));
    pairs.emplace_back(k, translate(0.6 * k, y0));
  } else {
    const std::vector<SphereField> bodies = suite_bodies(cfg, rule, rng, false);
    pairs.emplace_back(bodies[0], bodies[1]);
    pairs.emplace_back(bodies[0], bodies[2]);
    pairs.emplace_back(bodies[1], bodies[2]);
    pairs.emplace_back(bodies[1], translate(0.6 * bodies[1], y0));  // homothetic pair
  }
  std::vector<InequalityReport> reports;
  for (const auto& pr : pairs)
    for (int j = 0; j <= 10; ++j)
      for (auto& rep : bm_gap_all(pr.first, pr.second, j / 10.0, rule, tol))
        reports.push_back(std::move(rep));
  return reports;
}

std::vector<InequalityReport> suite_poincare_sphere(const RunConfig& cfg,
                                                    const QuadratureRule& rule, Rng& rng) {
  const int n = rule.dim;
  const double tol = resolve_tol(cfg, rule);
  std::vector<InequalityReport> reports;
  for (const auto& h : suite_bodies(cfg, rule, rng, false))
    for (int J = 1; J <= n - 1; ++J) {
      const Vec w = curvature_weight(h, J, rule);
      for (int rep = 0; rep < 3; ++rep) {
        const SphereField phi = project_side_condition(
            random_harmonic_field(n, 4, rng, "phi"), w, rule);
        reports.push_back(poincare_sphere(J, h, phi, rule, tol));
      }
    }
  return reports;
}

std::vector<InequalityReport> suite_poincare_boundary(const RunConfig& cfg,
                                                      const QuadratureRule& rule, Rng& rng) {
  const int n = rule.dim;
  const double tol = resolve_tol(cfg, rule);
  std::vector<InequalityReport> reports;
  for (const auto& h : suite_bodies(cfg, rule, rng, false))
    for (int I = 1; I <= n - 1; ++I) {
      const Vec w = boundary_condition_weight(I, h, rule);
      for (int rep = 0; rep < 3; ++rep) {
        const SphereField phi = project_side_condition(
            random_harmonic_field(n, 4, rng, "phi"), w, rule);
        reports.push_back(poincare_boundary(I, h, phi, rule, tol));
      }
    }
  return reports;
}

std::vector<InequalityReport> suite_area_measure(const RunConfig& cfg,
                                                 const QuadratureRule& rule, Rng& rng) {
  const int n = rule.dim;
  const double tol = resolve_tol(cfg, rule);
  std::vector<InequalityReport> reports;
  for (const auto& h : suite_bodies(cfg, rule, rng, false)) {
    Vec dens(rule.count());
    for (int i = 0; i < rule.count(); ++i) dens(i) = area_measure_one_density(h, rule, i);
    for (int rep = 0; rep < 3; ++rep) {
      const SphereField phi =
          project_side_condition(random_harmonic_field(n, 4, rng, "phi"), dens, rule);
      reports.push_back(poincare_area_measure(h, phi, rule, tol));
    }
  }
  return reports;
}

std::vector<InequalityReport> suite_radial(const RunConfig& cfg, const QuadratureRule& rule,
                                           Rng& rng) {
  const int n = rule.dim;
  const double tol = resolve_tol(cfg, rule);
  std::vector<InequalityReport> reports;
  for (const auto& h : suite_bodies(cfg, rule, rng, true)) {
    const Vec rho = radial_profile(h, rule);
    for (int rep = 0; rep < 3; ++rep) {
      const SphereField phi =
          project_side_condition(random_harmonic_field(n, 4, rng, "phi"), rho, rule);
      reports.push_back(poincare_radial(h, phi, rule, &rho, tol));
    }
  }
  return reports;
}

std::vector<InequalityReport> suite_wirtinger(const RunConfig& cfg, Rng& rng) {
  const double tol = cfg.tol > 0.0 ? cfg.tol : 1e-9;
  const int grid = 512;

  std::vector<std::pair<std::string, CircleMeasure>> measures;
  CircleMeasure lebesgue;
  lebesgue.density = Vec::Ones(256);
  measures.emplace_back("lebesgue", lebesgue);

  CircleMeasure atoms3;
  for (int k = 0; k < 3; ++k) atoms3.atoms.emplace_back(2.0 * M_PI * k / 3.0, 1.0);
  measures.emplace_back("three-atoms", atoms3);

  CircleMeasure pairs4;
  for (int k = 0; k < 2; ++k) {
    const double ang = rng.uniform(0.0, M_PI);
    const double mass = 0.5 + rng.uniform();
    pairs4.atoms.emplace_back(ang, mass);
    pairs4.atoms.emplace_back(ang + M_PI, mass);
  }
  measures.emplace_back("antipodal-pairs", pairs4);

  CircleMeasure mixed;
  mixed.density = 0.5 * Vec::Ones(128);
  mixed.atoms.emplace_back(1.0, 0.7);
  mixed.atoms.emplace_back(1.0 + M_PI, 0.7);
  measures.emplace_back("density-plus-pair", mixed);

  std::vector<std::pair<std::string, PeriodicField>> fields;
  fields.emplace_back("sin", PeriodicField{[](double t) { return std::sin(t); },
                                           [](double t) { return std::cos(t); }});
  fields.emplace_back("cos", PeriodicField{[](double t) { return std::cos(t); },
                                           [](double t) { return -std::sin(t); }});
  fields.emplace_back(
      "mix", PeriodicField{
                 [](double t) { return std::sin(t) + 0.3 * std::cos(3.0 * t); },
                 [](double t) { return std::cos(t) - 0.9 * std::sin(3.0 * t); }});
  fields.emplace_back("exp-sin",
                      PeriodicField{[](double t) { return std::exp(std::sin(t)); }, {}});

  std::vector<InequalityReport> reports;
  for (const auto& m : measures)
    for (const auto& f : fields) {
      InequalityReport rep = wirtinger(m.second, f.second, grid, tol);
      rep.name += "[" + m.first + "," + f.first + "]";
      reports.push_back(std::move(rep));
    }
  return reports;
}

std::vector<InequalityReport> suite_sharpness(const RunConfig& cfg, const QuadratureRule& rule,
                                              Rng& rng) {
  const int n = rule.dim;
  const double tol = resolve_tol(cfg, rule);
  std::vector<InequalityReport> reports;
  for (const auto& h : suite_bodies(cfg, rule, rng, false))
    for (int J = 1; J <= n - 1; ++J) {
      char name[48];
      std::snprintf(name, sizeof(name), "sharpness[J=%d]", J);
      reports.push_back(residual_report(
          name, sharpness_scan(J, h, rule, rng, tol), tol,
          "worst |relative gap| over 13 linear directions, h=" + h.name()));
    }
  return reports;
}

std::vector<InequalityReport> suite_lemma_rhs(const RunConfig& cfg, const QuadratureRule& rule,
                                              Rng& rng) {
  const int n = rule.dim;
  const double tol = cfg.tol > 0.0 ? cfg.tol : 1e-9;  // pointwise algebraic identity
  std::vector<InequalityReport> reports;
  for (const auto& h : suite_bodies(cfg, rule, rng, false))
    for (int r = 1; r <= n - 1; ++r)
      for (int rep = 0; rep < 2; ++rep) {
        const SphereField phi = random_harmonic_field(n, 4, rng, "phi");
        char name[48];
        std::snprintf(name, sizeof(name), "lemma_rhs[r=%d]", r);
        reports.push_back(residual_report(
            name, gauss_change_of_variables_check(r, h, phi, rule), tol,
            "worst pointwise residual, h=" + h.name() + " phi=" + phi.name()));
      }
  return reports;
}

std::vector<InequalityReport> suite_divergence(const RunConfig& cfg, const QuadratureRule& rule,
                                               Rng& rng) {
  const int n = rule.dim;
  const double tol = resolve_tol(cfg, rule);
  std::vector<InequalityReport> reports;
  for (const auto& h : suite_bodies(cfg, rule, rng, false))
    for (int k = 1; k <= n - 1; ++k)
      for (int rep = 0; rep < 2; ++rep) {
        const SphereField phi = random_harmonic_field(n, 4, rng, "phi");
        char name[48];
        std::snprintf(name, sizeof(name), "divergence[k=%d]", k);
        reports.push_back(residual_report(
            name, divergence_identity_residual(k, h, phi, rule), tol,
            "integration-by-parts residual, h=" + h.name() + " phi=" + phi.name()));
      }
  return reports;
}

int cmd_body(const RunConfig& cfg, std::ostream& out) {
  const int n = resolve_n(cfg);
  const QuadratureRule rule = make_rule(cfg, n);
  const SphereField h = resolve_body(cfg, n);
  const BodyCertificate cert = validate_c2plus(h, rule);
  out << "body=" << h.name() << " n=" << n << " nodes=" << rule.count()
      << " min_eigenvalue=" << format_double(cert.min_eigenvalue)
      << " mean_eigenvalue=" << format_double(cert.mean_eigenvalue)
      << " ok=" << (cert.ok ? "yes" : "no") << "\n"
      << cert.message << "\n";
  return cert.ok ? 0 : 2;
}

int cmd_quermass(const RunConfig& cfg, std::ostream& out) {
  const int n = resolve_n(cfg);
  const QuadratureRule rule = make_rule(cfg, n);
  const SphereField h = resolve_body(cfg, n);
  certify(h, rule);
  const std::vector<double> w = quermassintegral_all(h, rule);
  const double steiner = steiner_check(h, rule, {0.1, 0.5, 1.0});
  std::string csv = "i,W_i,steiner_residual\n";
  for (int i = 0; i < n; ++i)
    csv += std::to_string(i) + ',' + format_double(w[i]) + ',' + format_double(steiner) + '\n';
  out << "body=" << h.name() << " " << rule.describe() << "\n" << csv;
  if (!cfg.out_dir.empty()) {
    std::filesystem::create_directories(cfg.out_dir);
    write_text_file(cfg.out_dir + "/quermass.csv", csv);
  }
  return 0;
}

int cmd_verify(const std::string& suite, const RunConfig& cfg, std::ostream& out) {
  const int n = resolve_n(cfg);
  const QuadratureRule rule = make_rule(cfg, n);
  Rng rng(cfg.seed);
  std::vector<InequalityReport> reports;
  if (suite == "bm") {
    reports = suite_bm(cfg, rule, rng);
  } else if (suite == "poincare-sphere") {
    reports = suite_poincare_sphere(cfg, rule, rng);
  } else if (suite == "poincare-boundary") {
    reports = suite_poincare_boundary(cfg, rule, rng);
  } else if (suite == "area-measure") {
    reports = suite_area_measure(cfg, rule, rng);
  } else if (suite == "radial") {
    reports = suite_radial(cfg, rule, rng);
  } else if (suite == "wirtinger") {
    reports = suite_wirtinger(cfg, rng);
  } else if (suite == "sharpness") {
    reports = suite_sharpness(cfg, rule, rng);
  } else if (suite == "lemma-rhs") {
    reports = suite_lemma_rhs(cfg, rule, rng);
  } else if (suite == "divergence") {
    reports = suite_divergence(cfg, rule, rng);
  } else {
    throw std::invalid_argument("unknown suite: " + suite);
  }

  const std::string dir = cfg.out_dir.empty() ? "reports" : cfg.out_dir;
  std::filesystem::create_directories(dir);
  write_text_file(dir + "/" + suite + ".csv", reports_to_csv(reports));
  write_text_file(dir + "/" + suite + ".json", reports_to_json(reports));

  int failures = 0;
  double worst_score = -1.0;
  std::string worst_name;
  for (const auto& r : reports) {
    if (r.pass) continue;
    ++failures;
    double score = -r.gap;
    for (const auto& p : r.side_condition_residuals) score = std::max(score, p.second);
    if (score > worst_score) {
      worst_score = score;
      worst_name = r.name;
    }
    out << "FAIL " << r.name << " gap=" << format_double(r.gap)
        << " tol=" << format_double(r.tolerance_used) << "\n";
  }
  out << "verify " << suite << ": " << reports.size() << " checks, " << failures
      << " failures, reports in " << dir << "\n";
  if (failures > 0) {
    out << "worst offender: " << worst_name << "\n";
    return 3;
  }
  return 0;
}

int cmd_selfcheck(const RunConfig& cfg, std::ostream& out) {
  Rng rng(cfg.seed);
  double worst_euler = 0.0, worst_trace = 0.0, worst_inverse = 0.0, worst_binom = 0.0;
  for (int N = 2; N <= 6; ++N) {
    for (int rep = 0; rep < 20; ++rep) {
      Mat m(N, N);
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) m(i, j) = rng.normal();
      const SymMatrix a = SymMatrix::from(m * m.transpose() / N + 0.5 * Mat::Identity(N, N));
      const SymMatrix inv = SymMatrix::from(a.mat().inverse());
      const double det = elem_sym(a, N);
      for (int k = 1; k <= N; ++k) {
        const double sk = elem_sym(a, k);
        const SymMatrix cof = cofactor_matrix(a, k);
        worst_euler = std::max(worst_euler,
                               std::abs(cof.mat().cwiseProduct(a.mat()).sum() - k * sk) /
                                   std::max(std::abs(k * sk), 1e-30));
        const double want_trace = (N - k + 1) * elem_sym(a, k - 1);
        worst_trace = std::max(worst_trace, std::abs(cof.mat().trace() - want_trace) /
                                                 std::max(std::abs(want_trace), 1e-30));
        const double want_inv = sk / det;
        worst_inverse = std::max(worst_inverse, std::abs(elem_sym(inv, N - k) - want_inv) /
                                                     std::max(std::abs(want_inv), 1e-30));
      }
    }
    for (int k = 0; k <= N; ++k) {
      const double want = binomial_coefficient(N, k);
      worst_binom = std::max(worst_binom,
                             std::abs(elem_sym(SymMatrix::identity(N), k) - want) / want);
    }
  }
  out << "symmfunc euler_identity worst=" << format_double(worst_euler) << "\n";
  out << "symmfunc trace_identity worst=" << format_double(worst_trace) << "\n";
  out << "symmfunc inverse_identity worst=" << format_double(worst_inverse) << "\n";
  out << "symmfunc binomial_identity worst=" << format_double(worst_binom) << "\n";
  const bool identities_ok = worst_euler <= 1e-10 && worst_trace <= 1e-10 &&
                             worst_inverse <= 1e-10 && worst_binom <= 1e-12;

  double worst_quad = 0.0;
  for (int n = 2; n <= 3; ++n) {
    const QuadratureRule rule = build_rule(n, n == 2 ? 64 : 16, cfg.seed);
    const double area = sphere_area(n);
    worst_quad = std::max(worst_quad, std::abs(rule.weights.sum() - area) / area);
    const double second_moment =
        integrate(rule, [&](int i) { return rule.node(i)(n - 1) * rule.node(i)(n - 1); });
    worst_quad = std::max(worst_quad, std::abs(second_moment - area / n) / (area / n));
  }
  out << "quadrature exactness worst=" << format_double(worst_quad) << "\n";
  const bool quad_ok = worst_quad <= 1e-12;

  for (int n = 2; n <= 3; ++n) {
    const SphereField h = default_ellipsoid(n);
    double axes_product = 1.0;
    for (int i = 0; i < n; ++i) axes_product *= 1.5 / (1.0 + 0.25 * i);
    const double exact = sphere_area(n) / n * axes_product;
    out << "convergence n=" << n << " W_0 exact=" << format_double(exact) << "\n";
    double prev_err = 0.0;
    int res = n == 2 ? 16 : 8;
    for (int step = 0; step < 4; ++step, res *= 2) {
      const QuadratureRule rule = build_rule(n, res, cfg.seed);
      const double err = std::abs(quermassintegral(0, h, rule) - exact) / exact;
      out << "  res=" << res << " rel_error=" << format_double(err);
      if (step > 0) {
        if (err < 1e-14) {
          out << " order=machine-precision";
        } else {
          out << " order=" << format_double(std::log2(prev_err / err));
        }
      }
      out << "\n";
      prev_err = err;
    }
  }
  out << "selfcheck " << (identities_ok && quad_ok ? "pass" : "FAIL") << "\n";
  return identities_ok && quad_ok ? 0 : 3;
}

int run_core(int argc, const char* const* argv, std::ostream& out) {
  CLI::App app{"support-function toolkit: quermassintegrals and inequality verification"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string suite;

  auto add_common = [&cfg](CLI::App* c) {
    c->add_option("--n", cfg.n, "ambient dimension (default: body spec's, else 3)")
        ->check(CLI::Range(2, 8));
    c->add_option("--resolution", cfg.resolution, "quadrature resolution")
        ->check(CLI::Range(4, 4096));
    c->add_option("--tol", cfg.tol, "verdict tolerance override")
        ->check(CLI::NonNegativeNumber);
    c->add_option("--seed", cfg.seed, "random seed");
    c->add_option("--body", cfg.body_file, "body spec file (JSON)");
    c->add_option("--out", cfg.out_dir, "output directory for report files");
  };

  CLI::App* cbody = app.add_subcommand("body", "parse and certify a body spec");
  CLI::App* cquer = app.add_subcommand("quermass", "quermassintegral table with Steiner residual");
  CLI::App* cver = app.add_subcommand("verify", "run a verification suite");
  CLI::App* cself = app.add_subcommand("selfcheck", "identity suite and convergence study");
  for (CLI::App* c : {cbody, cquer, cver, cself}) add_common(c);
  cver->add_option("suite", suite, "suite name")
      ->required()
      ->check(CLI::IsMember({"bm", "poincare-sphere", "poincare-boundary", "area-measure",
                             "radial", "wirtinger", "sharpness", "lemma-rhs", "divergence"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, out);
    return code == 0 ? 0 : 1;
  }

  try {
    if (cbody->parsed()) return cmd_body(cfg, out);
    if (cquer->parsed()) return cmd_quermass(cfg, out);
    if (cver->parsed()) return cmd_verify(suite, cfg, out);
    return cmd_selfcheck(cfg, out);
  } catch (const certification_error& e) {
    out << "certification failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    out << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv) { return run_core(argc, argv, std::cout); }

int run_cli(const std::vector<std::string>& args, std::string* captured) {
  std::vector<std::string> full;
  full.reserve(args.size() + 1);
  full.emplace_back("qmtool");
  full.insert(full.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(full.size());
  for (const auto& s : full) argv.push_back(s.c_str());
  if (!captured) return run_core(static_cast<int>(argv.size()), argv.data(), std::cout);
  std::ostringstream oss;
  const int code = run_core(static_cast<int>(argv.size()), argv.data(), oss);
  *captured += oss.str();
  return code;
}

}  // namespace quermass
