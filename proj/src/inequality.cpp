#include "quermass/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <stdexcept>

#include "quermass/fields.hpp"
#include "quermass/functionals.hpp"
#include "quermass/symmfunc.hpp"

namespace quermass {

namespace {

double resolve_tol(double tol, const QuadratureRule& rule) {
  if (tol < 0.0) throw std::invalid_argument("tolerance must be nonnegative");
  return tol > 0.0 ? tol : default_tolerance(rule);
}

InequalityReport finish(std::string name, double lhs, double rhs,
                        std::vector<std::pair<std::string, double>> residuals, double tol,
                        std::string metadata) {
  InequalityReport rep;
  rep.name = std::move(name);
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.gap = rhs - lhs;
  rep.relative_gap = rep.gap / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
  rep.side_condition_residuals = std::move(residuals);
  rep.tolerance_used = tol;
  rep.pass = rep.gap >= -tol;
  for (const auto& r : rep.side_condition_residuals)
    if (!(r.second <= tol)) rep.pass = false;
  rep.metadata = std::move(metadata);
  return rep;
}

std::string describe(const SphereField& h, const SphereField& phi, const QuadratureRule& rule) {
  return "h=" + h.name() + " phi=" + phi.name() + " " + rule.describe();
}

/// |<phi, w>| / (|phi| |w|) in L2(dH); 0 when either factor vanishes.
double cauchy_schwarz_residual(double inner, double norm2_f, double norm2_w) {
  const double denom = std::sqrt(std::max(norm2_f, 0.0) * std::max(norm2_w, 0.0));
  return denom > 1e-300 ? std::abs(inner) / denom : 0.0;
}

void check_cofactor_order(int j, int n, const char* what) {
  if (j < 1 || j > n - 1) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%s must lie in 1..n-1", what);
    throw std::domain_error(buf);
  }
}

}  // namespace

double CircleMeasure::total_mass() const {
  double m = 0.0;
  for (const auto& a : atoms) m += a.second;
  if (density && density->size() > 0) m += 2.0 * M_PI * density->mean();
  return m;
}

double CircleMeasure::integrate(const std::function<double(double)>& f) const {
  double s = 0.0;
  for (const auto& a : atoms) s += a.second * f(a.first);
  if (density && density->size() > 0) {
    const int m = static_cast<int>(density->size());
    for (int j = 0; j < m; ++j) s += (2.0 * M_PI / m) * (*density)(j)*f(2.0 * M_PI * j / m);
  }
  return s;
}

bool CircleMeasure::admissible() const {
  const bool has_density = density && density->size() > 0 && density->maxCoeff() > 0.0;
  return has_density || atoms.size() != 2;
}

InequalityReport bm_gap(int i, const SphereField& hk, const SphereField& hl, double t,
                        const QuadratureRule& rule, double tol) {
  const int n = rule.dim;
  tol = resolve_tol(tol, rule);
  const double wk = quermassintegral(i, hk, rule);
  const double wl = quermassintegral(i, hl, rule);
  const double wc = quermassintegral(i, minkowski_combination(t, hk, hl), rule);
  if (wk <= 0.0 || wl <= 0.0 || wc <= 0.0)
    throw std::domain_error("nonpositive quermassintegral; bodies must be certified convex");
  const double p = 1.0 / (n - i);
  char name[64];
  std::snprintf(name, sizeof(name), "bm[i=%d,t=%.17g]", i, t);
  return finish(name, (1.0 - t) * std::pow(wk, p) + t * std::pow(wl, p), std::pow(wc, p), {},
                tol, "K=" + hk.name() + " L=" + hl.name() + " " + rule.describe());
}

std::vector<InequalityReport> bm_gap_all(const SphereField& hk, const SphereField& hl, double t,
                                         const QuadratureRule& rule, double tol) {
  const int n = rule.dim;
  tol = resolve_tol(tol, rule);
  const std::vector<double> wk = quermassintegral_all(hk, rule);
  const std::vector<double> wl = quermassintegral_all(hl, rule);
  const std::vector<double> wc = quermassintegral_all(minkowski_combination(t, hk, hl), rule);
  std::vector<InequalityReport> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    if (wk[i] <= 0.0 || wl[i] <= 0.0 || wc[i] <= 0.0)
      throw std::domain_error("nonpositive quermassintegral; bodies must be certified convex");
    const double p = 1.0 / (n - i);
    char name[64];
    std::snprintf(name, sizeof(name), "bm[i=%d,t=%.17g]", i, t);
    out.push_back(finish(name, (1.0 - t) * std::pow(wk[i], p) + t * std::pow(wl[i], p),
                         std::pow(wc[i], p), {}, tol,
                         "K=" + hk.name() + " L=" + hl.name() + " " + rule.describe()));
  }
  return out;
}

SphereField project_side_condition(const SphereField& phi, const Vec& weight,
                                   const QuadratureRule& rule) {
  if (weight.size() != rule.count())
    throw std::invalid_argument("weight must hold one value per rule node");
  double num = 0.0;
  double den = 0.0;
  for (int i = 0; i < rule.count(); ++i) {
    num += rule.weights(i) * weight(i) * phi.value(rule.node(i));
    den += rule.weights(i) * weight(i);
  }
  if (den <= 0.0) throw std::invalid_argument("side-condition weight must have positive total");
  return phi - num / den;
}

Vec curvature_weight(const SphereField& h, int j, const QuadratureRule& rule) {
  const int n = rule.dim;
  if (j < 0 || j > n - 1) throw std::domain_error("curvature order must lie in 0..n-1");
  Vec w(rule.count());
  for (int i = 0; i < rule.count(); ++i) w(i) = elem_sym(tangent_hessian_1hom(h, rule, i), j);
  return w;
}

Vec boundary_condition_weight(int i_index, const SphereField& h, const QuadratureRule& rule) {
  const int n = rule.dim;
  check_cofactor_order(i_index, n, "boundary index");
  Vec w(rule.count());
  for (int i = 0; i < rule.count(); ++i) {
    const SymMatrix a = tangent_hessian_1hom(h, rule, i);
    const double det = elem_sym(a, n - 1);
    if (det <= 0.0) throw std::domain_error("curvature matrix is singular; body not certified");
    const Mat dnu = a.mat().inverse();
    w(i) = elem_sym(SymMatrix::from(0.5 * (dnu + dnu.transpose())), i_index - 1) * det;
  }
  return w;
}

InequalityReport poincare_sphere(int J, const SphereField& h, const SphereField& phi,
                                 const QuadratureRule& rule, double tol) {
  const int n = rule.dim;
  check_cofactor_order(J, n, "J");
  tol = resolve_tol(tol, rule);
  double lhs = 0.0, rhs = 0.0, inner = 0.0, nf = 0.0, nw = 0.0;
  for (int i = 0; i < rule.count(); ++i) {
    const double wt = rule.weights(i);
    const SymMatrix a = tangent_hessian_1hom(h, rule, i);
    const Vec grad = spherical_gradient(phi, rule, i);
    const double pv = phi.value(rule.node(i));
    const double sj = elem_sym(a, J);
    lhs += wt * (n - J) * pv * pv * elem_sym(a, J - 1);
    rhs += wt * grad.dot(cofactor_matrix(a, J).mat() * grad);
    inner += wt * pv * sj;
    nf += wt * pv * pv;
    nw += wt * sj * sj;
  }
  char name[32];
  std::snprintf(name, sizeof(name), "poincare_sphere[J=%d]", J);
  return finish(name, lhs, rhs,
                {{"side_condition", cauchy_schwarz_residual(inner, nf, nw)}}, tol,
                describe(h, phi, rule));
}

InequalityReport poincare_boundary(int i_index, const SphereField& h, const SphereField& phi,
                                   const QuadratureRule& rule, double tol) {
  const int n = rule.dim;
  check_cofactor_order(i_index, n, "I");
  tol = resolve_tol(tol, rule);
  double lhs = 0.0, rhs = 0.0, inner = 0.0, nf = 0.0, nw = 0.0;
  for (int i = 0; i < rule.count(); ++i) {
    const double wt = rule.weights(i);
    const SymMatrix a = tangent_hessian_1hom(h, rule, i);
    const double det = elem_sym(a, n - 1);
    if (det <= 0.0) throw std::domain_error("curvature matrix is singular; body not certified");
    const Mat dnu_raw = a.mat().inverse();
    const SymMatrix dnu = SymMatrix::from(0.5 * (dnu_raw + dnu_raw.transpose()));
    const double psi = phi.value(rule.node(i));
    const Vec gpsi = dnu.mat() * spherical_gradient(phi, rule, i);
    const Vec back = dnu.mat().partialPivLu().solve(gpsi);  // (D nu)^{-1} grad psi
    const double si = elem_sym(dnu, i_index);
    const double sim1 = elem_sym(dnu, i_index - 1);
    lhs += wt * det * i_index * psi * psi * si;
    rhs += wt * det * back.dot(cofactor_matrix(dnu, i_index).mat() * gpsi);
    inner += wt * det * psi * sim1;
    nf += wt * det * psi * psi;
    nw += wt * det * sim1 * sim1;
  }
  char name[32];
  std::snprintf(name, sizeof(name), "poincare_boundary[I=%d]", i_index);
  return finish(name, lhs, rhs,
                {{"side_condition", cauchy_schwarz_residual(inner, nf, nw)}}, tol,
                describe(h, phi, rule));
}

double gauss_change_of_variables_check(int r, const SphereField& h, const SphereField& phi,
                                       const QuadratureRule& rule) {
  const int n = rule.dim;
  check_cofactor_order(r, n, "r");
  check_cofactor_order(n - r, n, "n-r");
  double scale = 0.0, worst = 0.0;
  for (int i = 0; i < rule.count(); ++i) {
    const SymMatrix a = tangent_hessian_1hom(h, rule, i);
    const double det = elem_sym(a, n - 1);
    if (det <= 0.0) throw std::domain_error("curvature matrix is singular; body not certified");
    const Vec grad = spherical_gradient(phi, rule, i);
    const double lhs = grad.dot(cofactor_matrix(a, r).mat() * grad) / det;
    const Mat dnu_raw = a.mat().inverse();
    const SymMatrix dnu = SymMatrix::from(0.5 * (dnu_raw + dnu_raw.transpose()));
    const Vec gpsi = dnu.mat() * grad;
    const Vec back = dnu.mat().partialPivLu().solve(gpsi);
    const double rhs = back.dot(cofactor_matrix(dnu, n - r).mat() * gpsi);
    scale = std::max({scale, std::abs(lhs), std::abs(rhs)});
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return scale > 1e-300 ? worst / scale : 0.0;
}

double divergence_identity_residual(int k, const SphereField& u_field, const SphereField& phi,
                                    const QuadratureRule& rule) {
  const int n = rule.dim;
  check_cofactor_order(k, n, "k");
  double by_parts = 0.0, direct = 0.0;
  for (int i = 0; i < rule.count(); ++i) {
    const double wt = rule.weights(i);
    const SymMatrix cof = cofactor_matrix(tangent_hessian_1hom(u_field, rule, i), k);
    const SymMatrix hess = covariant_hessian(phi, rule, i);
    const Vec grad = spherical_gradient(phi, rule, i);
    by_parts += wt * phi.value(rule.node(i)) * cof.mat().cwiseProduct(hess.mat()).sum();
    direct += wt * grad.dot(cof.mat() * grad);
  }
  const double scale = std::max({std::abs(by_parts), std::abs(direct), 1e-300});
  return std::abs(by_parts + direct) / scale;
}

InequalityReport poincare_area_measure(const SphereField& h, const SphereField& phi,
                                       const QuadratureRule& rule, double tol) {
  const int n = rule.dim;
  tol = resolve_tol(tol, rule);
  double lhs = 0.0, rhs = 0.0, inner = 0.0, nf = 0.0, nw = 0.0;
  for (int i = 0; i < rule.count(); ++i) {
    const double wt = rule.weights(i);
    const double pv = phi.value(rule.node(i));
    const Vec grad = spherical_gradient(phi, rule, i);
    const double dens = area_measure_one_density(h, rule, i);
    lhs += wt * pv * pv;
    rhs += wt * grad.squaredNorm() / (n - 1);
    inner += wt * pv * dens;
    nf += wt * pv * pv;
    nw += wt * dens * dens;
  }
  return finish("poincare_area_measure", lhs, rhs,
                {{"side_condition", cauchy_schwarz_residual(inner, nf, nw)}}, tol,
                describe(h, phi, rule));
}

namespace {

/// Derivative samples of a periodic function from its grid values by an
/// O(N^2) discrete Fourier transform (the Nyquist mode is dropped).
std::vector<double> spectral_derivative(const std::vector<double>& f) {
  const int n = static_cast<int>(f.size());
  std::vector<std::complex<double>> roots(n);
  for (int m = 0; m < n; ++m) {
    const double ang = 2.0 * M_PI * m / n;
    roots[m] = {std::cos(ang), std::sin(ang)};
  }
  std::vector<std::complex<double>> coef(n);
  for (int k = 0; k < n; ++k) {
    std::complex<double> s = 0.0;
    for (int j = 0; j < n; ++j) s += f[j] * std::conj(roots[(j * k) % n]);
    coef[k] = s / static_cast<double>(n);
  }
  std::vector<double> d(n, 0.0);
  for (int j = 0; j < n; ++j) {
    std::complex<double> s = 0.0;
    for (int k = 0; k < n; ++k) {
      int freq = 2 * k <= n ? k : k - n;
      if (2 * k == n) freq = 0;
      s += std::complex<double>(0.0, freq) * coef[k] * roots[(j * k) % n];
    }
    d[j] = s.real();
  }
  return d;
}

}  // namespace

InequalityReport wirtinger(const CircleMeasure& nu, const PeriodicField& phi, int grid_size,
                           double tol) {
  if (grid_size < 8) throw std::invalid_argument("wirtinger grid must have at least 8 points");
  if (!phi.value) throw std::invalid_argument("field must carry an evaluator");
  tol = tol > 0.0 ? tol : 1e-9;
  for (const auto& a : nu.atoms)
    if (!(a.second > 0.0)) throw std::invalid_argument("atom masses must be positive");
  if (nu.density && nu.density->size() > 0 && nu.density->minCoeff() < 0.0)
    throw std::invalid_argument("measure density must be nonnegative");
  const double mass = nu.total_mass();
  if (!(mass > 0.0)) throw std::invalid_argument("measure must have positive total mass");
  if (!nu.admissible())
    throw std::invalid_argument("measure is a sum of two point masses; excluded case");

  const double mx = nu.integrate([](double t) { return std::cos(t); });
  const double my = nu.integrate([](double t) { return std::sin(t); });
  if (std::abs(mx) > tol * mass || std::abs(my) > tol * mass) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "measure moments do not vanish: cos %.3e, sin %.3e (mass %.3e)", mx, my, mass);
    throw std::invalid_argument(buf);
  }

  const double p0 = phi.value(0.0);
  const double p1 = phi.value(2.0 * M_PI);
  if (std::abs(p0 - p1) > 1e-8 * std::max(1.0, std::abs(p0)))
    throw std::invalid_argument("field is not 2*pi periodic");

  const double shift = nu.integrate(phi.value) / mass;
  const int m = grid_size;
  std::vector<double> f(m), d(m);
  for (int j = 0; j < m; ++j) f[j] = phi.value(2.0 * M_PI * j / m) - shift;
  if (phi.has_deriv()) {
    for (int j = 0; j < m; ++j) d[j] = phi.deriv(2.0 * M_PI * j / m);
  } else {
    d = spectral_derivative(f);
  }
  double lhs = 0.0, rhs = 0.0;
  for (int j = 0; j < m; ++j) {
    lhs += f[j] * f[j];
    rhs += d[j] * d[j];
  }
  lhs *= 2.0 * M_PI / m;
  rhs *= 2.0 * M_PI / m;

  const double side = nu.integrate([&](double t) { return phi.value(t) - shift; });
  const double rms = std::sqrt(lhs / (2.0 * M_PI)) + 1e-300;
  char name[48], meta[96];
  std::snprintf(name, sizeof(name), "wirtinger[grid=%d]", m);
  std::snprintf(meta, sizeof(meta), "atoms=%zu density=%s mass=%.17g", nu.atoms.size(),
                nu.density && nu.density->size() > 0 ? "yes" : "no", mass);
  return finish(name, lhs, rhs,
                {{"cos_moment", std::abs(mx) / mass},
                 {"sin_moment", std::abs(my) / mass},
                 {"side_condition", std::abs(side) / (mass * rms)}},
                tol, meta);
}

double radial_barycenter_residual(const QuadratureRule& rule, const Vec& rho) {
  if (rho.size() != rule.count())
    throw std::invalid_argument("profile must hold one value per rule node");
  Vec b = Vec::Zero(rule.dim);
  double mass = 0.0;
  for (int i = 0; i < rule.count(); ++i) {
    b += rule.weights(i) * rho(i) * rule.node(i);
    mass += rule.weights(i) * rho(i);
  }
  if (!(mass > 0.0)) throw std::invalid_argument("radial profile must have positive mass");
  return b.norm() / mass;
}

InequalityReport poincare_radial(const SphereField& h, const SphereField& phi,
                                 const QuadratureRule& rule, const Vec* rho, double tol) {
  const int n = rule.dim;
  tol = resolve_tol(tol, rule);
  const Vec prof = rho ? *rho : radial_profile(h, rule);
  const double bres = radial_barycenter_residual(rule, prof);
  if (bres > tol) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "radial barycenter residual %.6e exceeds tolerance %.3e; recenter the body",
                  bres, tol);
    throw std::domain_error(buf);
  }
  double lhs = 0.0, rhs = 0.0, inner = 0.0, nf = 0.0, nw = 0.0;
  for (int i = 0; i < rule.count(); ++i) {
    const double wt = rule.weights(i);
    const double pv = phi.value(rule.node(i));
    lhs += wt * pv * pv;
    rhs += wt * spherical_gradient(phi, rule, i).squaredNorm() / (n - 1);
    inner += wt * pv * prof(i);
    nf += wt * pv * pv;
    nw += wt * prof(i) * prof(i);
  }
  return finish("poincare_radial", lhs, rhs,
                {{"side_condition", cauchy_schwarz_residual(inner, nf, nw)},
                 {"barycenter", bres}},
                tol, describe(h, phi, rule));
}

double sharpness_scan(int J, const SphereField& h, const QuadratureRule& rule, Rng& rng,
                      double tol) {
  const int n = rule.dim;
  check_cofactor_order(J, n, "J");
  double worst = 0.0;
  std::vector<Vec> dirs;
  for (int a = 0; a < n; ++a) dirs.push_back(Vec::Unit(n, a));
  for (int k = 0; k < 10; ++k) dirs.push_back(rng.unit_vector(n));
  for (const Vec& y0 : dirs) {
    const InequalityReport rep = poincare_sphere(J, h, linear_field(y0), rule, tol);
    worst = std::max(worst, std::abs(rep.relative_gap));
  }
  return worst;
}

}  // namespace quermass
