#include "quermass/functionals.hpp"

#include <cmath>
#include <stdexcept>

#include "quermass/symmfunc.hpp"

namespace quermass {

namespace {

void check_index(int k, int n) {
  if (k < 0 || k > n - 1) throw std::domain_error("index must lie in 0..n-1");
}

}  // namespace

double binomial_coefficient(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

double functional_F(int k, const SphereField& h, const QuadratureRule& rule) {
  const int n = rule.dim;
  check_index(k, n);
  if (h.dim() != n) throw std::invalid_argument("dimension mismatch");
  return integrate(rule, [&](int i) {
    SymMatrix a = tangent_hessian_1hom(h, rule, i);
    return h.value(rule.node(i)) * elem_sym(a, n - k - 1);
  });
}

double quermassintegral(int i, const SphereField& h, const QuadratureRule& rule) {
  const int n = rule.dim;
  check_index(i, n);
  return functional_F(i, h, rule) / (n * binomial_coefficient(n - 1, n - i - 1));
}

std::vector<double> quermassintegral_all(const SphereField& h, const QuadratureRule& rule) {
  const int n = rule.dim;
  if (h.dim() != n) throw std::invalid_argument("dimension mismatch");
  std::vector<double> f(n, 0.0);
  for (int i = 0; i < rule.count(); ++i) {
    SymMatrix a = tangent_hessian_1hom(h, rule, i);
    const double hw = rule.weights(i) * h.value(rule.node(i));
    for (int k = 0; k < n; ++k) f[k] += hw * elem_sym(a, n - k - 1);
  }
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = f[i] / (n * binomial_coefficient(n - 1, n - i - 1));
  return w;
}

double steiner_check(const SphereField& h, const QuadratureRule& rule,
                     const std::vector<double>& t_values) {
  const int n = rule.dim;
  std::vector<double> w(n + 1);
  for (int i = 0; i < n; ++i) w[i] = quermassintegral(i, h, rule);
  w[n] = sphere_area(n) / n;  // volume of the unit ball
  double worst = 0.0;
  for (double t : t_values) {
    if (t < 0.0) throw std::invalid_argument("steiner offsets must be nonnegative");
    double direct = quermassintegral(0, h + t, rule);
    double poly = 0.0;
    for (int i = 0; i <= n; ++i) poly += binomial_coefficient(n, i) * w[i] * std::pow(t, i);
    worst = std::max(worst, std::abs(direct - poly) / std::abs(poly));
  }
  return worst;
}

double first_variation(int k, const SphereField& h, const SphereField& phi, double s,
                       const QuadratureRule& rule) {
  const int n = rule.dim;
  check_index(k, n);
  const SphereField hs = h + s * phi;
  return (n - k) * integrate(rule, [&](int i) {
           SymMatrix a = tangent_hessian_1hom(hs, rule, i);
           return phi.value(rule.node(i)) * elem_sym(a, n - k - 1);
         });
}

double second_variation(int k, const SphereField& h, const SphereField& phi,
                        const QuadratureRule& rule) {
  const int n = rule.dim;
  check_index(k, n);
  if (k == n - 1) return 0.0;  // S_0 is constant, its cofactor vanishes
  return (n - k) * integrate(rule, [&](int i) {
           SymMatrix a = tangent_hessian_1hom(h, rule, i);
           SymMatrix b = tangent_hessian_1hom(phi, rule, i);
           SymMatrix c = cofactor_matrix(a, n - k - 1);
           return phi.value(rule.node(i)) * c.mat().cwiseProduct(b.mat()).sum();
         });
}

VariationReport variation_report(int k, const SphereField& h, const SphereField& phi,
                                 const QuadratureRule& rule) {
  VariationReport rep;
  rep.k = k;
  rep.f_value = functional_F(k, h, rule);
  rep.f_prime = first_variation(k, h, phi, 0.0, rule);
  rep.f_second = second_variation(k, h, phi, rule);

  auto f = [&](double s) { return functional_F(k, h + s * phi, rule); };
  const double s1 = 1e-3;
  rep.fd_prime = (f(s1) - f(-s1)) / (2.0 * s1);
  const double s2 = 1e-2;
  auto second = [&](double s) { return (f(s) - 2.0 * rep.f_value + f(-s)) / (s * s); };
  double d1 = second(s2);
  double d2 = second(s2 / 2.0);
  rep.fd_second = (4.0 * d2 - d1) / 3.0;

  rep.prime_discrepancy = std::abs(rep.f_prime - rep.fd_prime);
  rep.second_discrepancy = std::abs(rep.f_second - rep.fd_second);
  return rep;
}

double area_measure_one_density(const SphereField& h, const Vec& u) {
  SymMatrix a = tangent_hessian_1hom(h, u, frame_at(u));
  return a.mat().trace() / (h.dim() - 1);
}

double area_measure_one_density(const SphereField& h, const QuadratureRule& rule, int node) {
  SymMatrix a = tangent_hessian_1hom(h, rule, node);
  return a.mat().trace() / (rule.dim - 1);
}

}  // namespace quermass
