#include "quermass/body.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "quermass/fields.hpp"

namespace quermass {

SphereField ball(int n, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("ball radius must be positive");
  char buf[64];
  std::snprintf(buf, sizeof(buf), "ball(r=%g)", radius);
  SphereField c = constant_field(n, radius);
  return SphereField(n, buf, [radius](const Vec&) { return radius; },
                     [c](const Vec& x) { return c.ext_gradient(x); },
                     [c](const Vec& x) { return c.ext_hessian(x); });
}

SphereField ellipsoid(const SymMatrix& q) {
  const int n = q.size();
  Vec eig = q.eigenvalues();
  if (!(eig[0] > 0.0)) throw std::invalid_argument("ellipsoid matrix must be positive definite");
  Mat qm = q.mat();
  char buf[64];
  std::snprintf(buf, sizeof(buf), "ellipsoid(n=%d)", n);
  // H(x) = sqrt(x^T Q x) is already 1-homogeneous.
  auto value = [qm](const Vec& u) { return std::sqrt(u.dot(qm * u)); };
  auto grad = [qm](const Vec& x) -> Vec {
    Vec qx = qm * x;
    return qx / std::sqrt(x.dot(qx));
  };
  auto hess = [qm](const Vec& x) -> Mat {
    Vec qx = qm * x;
    double hval = std::sqrt(x.dot(qx));
    return qm / hval - (qx * qx.transpose()) / (hval * hval * hval);
  };
  return SphereField(n, buf, value, grad, hess);
}

SphereField ellipsoid(const Vec& semiaxes) {
  const int n = static_cast<int>(semiaxes.size());
  SymMatrix q(n);
  for (int i = 0; i < n; ++i) {
    if (!(semiaxes[i] > 0.0)) throw std::invalid_argument("semiaxes must be positive");
    q.set(i, i, semiaxes[i] * semiaxes[i]);
  }
  return ellipsoid(q);
}

SphereField translate(const SphereField& h, const Vec& y0) {
  if (static_cast<int>(y0.size()) != h.dim())
    throw std::invalid_argument("translation vector has wrong dimension");
  SphereField sum = h + linear_field(y0);
  char buf[96];
  std::snprintf(buf, sizeof(buf), "translate(%s)", h.name().c_str());
  return SphereField(h.dim(), buf, [sum](const Vec& u) { return sum.value(u); },
                     sum.analytic() ? SphereField::GradFn([sum](const Vec& x) { return sum.ext_gradient(x); })
                                    : SphereField::GradFn(),
                     sum.analytic() ? SphereField::HessFn([sum](const Vec& x) { return sum.ext_hessian(x); })
                                    : SphereField::HessFn());
}

SphereField minkowski_combination(double t, const SphereField& hk, const SphereField& hl) {
  if (!(t >= 0.0 && t <= 1.0))
    throw std::invalid_argument("minkowski parameter must lie in [0, 1]");
  if (hk.dim() != hl.dim()) throw std::invalid_argument("dimension mismatch");
  SphereField sum = (1.0 - t) * hk + t * hl;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%g*%s + %g*%s", 1.0 - t, hk.name().c_str(), t,
                hl.name().c_str());
  return SphereField(hk.dim(), buf, [sum](const Vec& u) { return sum.value(u); },
                     sum.analytic() ? SphereField::GradFn([sum](const Vec& x) { return sum.ext_gradient(x); })
                                    : SphereField::GradFn(),
                     sum.analytic() ? SphereField::HessFn([sum](const Vec& x) { return sum.ext_hessian(x); })
                                    : SphereField::HessFn());
}

SphereField perturbed_ball(int n, double eps, const SphereField& g) {
  if (g.dim() != n) throw std::invalid_argument("dimension mismatch");
  SphereField sum = constant_field(n, 1.0) + eps * g;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "perturbed_ball(eps=%g, g=%s)", eps, g.name().c_str());
  return SphereField(n, buf, [sum](const Vec& u) { return sum.value(u); },
                     sum.analytic() ? SphereField::GradFn([sum](const Vec& x) { return sum.ext_gradient(x); })
                                    : SphereField::GradFn(),
                     sum.analytic() ? SphereField::HessFn([sum](const Vec& x) { return sum.ext_hessian(x); })
                                    : SphereField::HessFn());
}

BodyCertificate validate_c2plus(const SphereField& h, const QuadratureRule& rule, double eps_pd) {
  if (h.dim() != rule.dim) throw std::invalid_argument("dimension mismatch");
  BodyCertificate cert;
  cert.min_eigenvalue = std::numeric_limits<double>::infinity();
  double trace_sum = 0.0;
  const int m = rule.count();
  for (int i = 0; i < m; ++i) {
    SymMatrix a = tangent_hessian_1hom(h, rule, i);
    Vec eig = a.eigenvalues();
    if (eig[0] < cert.min_eigenvalue) {
      cert.min_eigenvalue = eig[0];
      cert.worst_node = i;
    }
    trace_sum += eig.sum();
  }
  cert.mean_eigenvalue = trace_sum / (static_cast<double>(m) * (rule.dim - 1));
  cert.ok = cert.mean_eigenvalue > 0.0 &&
            cert.min_eigenvalue > eps_pd * cert.mean_eigenvalue;
  char buf[192];
  std::snprintf(buf, sizeof(buf),
                "%s: min eigenvalue %.6g (mean %.6g) of h_ij + h delta_ij over %d nodes%s",
                cert.ok ? "certified C2+" : "NOT C2+", cert.min_eigenvalue, cert.mean_eigenvalue,
                m, cert.ok ? "" : " fails the positivity margin");
  cert.message = buf;
  return cert;
}

Vec inverse_gauss(const SphereField& h, const Vec& u) {
  return h.ext_gradient(u.normalized());
}

namespace {

// Maximize g(w) = <v, w> / h(w) over w near w0 on the sphere. g is the
// linear functional <v, .> over the boundary of the polar body via the
// radial map w -> w / h(w), so its only critical points with positive value
// are the global maximum; safeguarded Newton in tangent coordinates with
// finite-difference derivatives converges from the coarse argmax.
double refine_polar_max(const SphereField& h, const Vec& v, const Vec& w0, double delta0) {
  const int n = h.dim();
  const int k = n - 1;
  Vec center = w0;
  auto eval_at = [&](const Vec& w) { return v.dot(w) / h.value(w); };
  double best = eval_at(center);
  const double hg = 1e-6;  // gradient step
  const double hh = 1e-4;  // curvature step
  for (int iter = 0; iter < 60; ++iter) {
    Mat frame = frame_at(center);
    auto phi = [&](const Vec& s) { return eval_at((center + frame * s).normalized()); };
    Vec grad(k);
    for (int j = 0; j < k; ++j) {
      Vec s = Vec::Zero(k);
      s[j] = hg;
      double fp = phi(s);
      s[j] = -hg;
      double fm = phi(s);
      grad[j] = (fp - fm) / (2.0 * hg);
    }
    Mat hess(k, k);
    for (int j = 0; j < k; ++j) {
      Vec s = Vec::Zero(k);
      s[j] = hh;
      double fp = phi(s);
      s[j] = -hh;
      double fm = phi(s);
      hess(j, j) = (fp - 2.0 * best + fm) / (hh * hh);
      for (int l = j + 1; l < k; ++l) {
        Vec t = Vec::Zero(k);
        t[j] = hh;
        t[l] = hh;
        double fpp = phi(t);
        t[l] = -hh;
        double fpm = phi(t);
        t[j] = -hh;
        double fmm = phi(t);
        t[l] = hh;
        double fmp = phi(t);
        hess(j, l) = hess(l, j) = (fpp - fpm - fmp + fmm) / (4.0 * hh * hh);
      }
    }
    Vec step;
    Eigen::SelfAdjointEigenSolver<Mat> es(hess);
    if (es.eigenvalues().maxCoeff() < -1e-12) {
      step = -hess.ldlt().solve(grad);
    } else {
      step = grad;  // uphill fallback away from flat or indefinite curvature
    }
    double norm = step.norm();
    if (norm > delta0) step *= delta0 / norm;
    // Backtrack until the step improves the value.
    double improved = -1.0;
    for (int back = 0; back < 50; ++back) {
      double val = phi(step);
      if (val > best) {
        improved = val;
        break;
      }
      step *= 0.5;
      if (step.norm() < 1e-12) break;
    }
    if (improved < best) break;  // no uphill move left at resolvable scale
    center = (center + frame * step).normalized();
    double gain = improved - best;
    best = improved;
    if (gain < 1e-15 * std::max(1.0, std::abs(best)) && step.norm() < 1e-8) break;
  }
  return best;
}

}  // namespace

double radial_function(const SphereField& h, const QuadratureRule& rule, const Vec& direction) {
  if (h.dim() != rule.dim || static_cast<int>(direction.size()) != rule.dim)
    throw std::invalid_argument("dimension mismatch");
  if (!(direction.norm() > 0.0)) throw std::invalid_argument("direction must be nonzero");
  Vec v = direction.normalized();
  int best = 0;
  double best_val = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < rule.count(); ++i) {
    Vec w = rule.node(i);
    double hv = h.value(w);
    if (!(hv > 0.0)) throw std::domain_error("radial function: origin is not interior");
    double val = v.dot(w) / hv;
    if (val > best_val) {
      best_val = val;
      best = i;
    }
  }
  const double spacing =
      2.0 * std::pow(sphere_area(rule.dim) / rule.count(), 1.0 / (rule.dim - 1));
  double gmax = refine_polar_max(h, v, rule.node(best), spacing);
  if (!(gmax > 0.0)) throw std::runtime_error("radial function: polar maximum not positive");
  return 1.0 / gmax;
}

Vec radial_profile(const SphereField& h, const QuadratureRule& rule) {
  if (h.dim() != rule.dim) throw std::invalid_argument("dimension mismatch");
  const int m = rule.count();
  Vec hvals(m);
  for (int i = 0; i < m; ++i) {
    hvals[i] = h.value(rule.node(i));
    if (!(hvals[i] > 0.0)) throw std::domain_error("radial function: origin is not interior");
  }
  const double spacing = 2.0 * std::pow(sphere_area(rule.dim) / m, 1.0 / (rule.dim - 1));
  Vec rho(m);
  for (int i = 0; i < m; ++i) {
    Vec v = rule.node(i);
    // Coarse scan against the shared table, then local refinement.
    Vec scores = (rule.nodes * v).cwiseQuotient(hvals);
    int best = 0;
    double best_val = scores[0];
    for (int j = 1; j < m; ++j)
      if (scores[j] > best_val) {
        best_val = scores[j];
        best = j;
      }
    double gmax = refine_polar_max(h, v, rule.node(best), spacing);
    rho[i] = 1.0 / gmax;
  }
  return rho;
}

}  // namespace quermass
