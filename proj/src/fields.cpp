#include "quermass/fields.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <stdexcept>

#include <Eigen/Dense>

namespace quermass {

namespace {

double ipow(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

}  // namespace

void HomogeneousPolynomial::add_term(std::vector<int> exponents, double coef) {
  if (static_cast<int>(exponents.size()) != dim_)
    throw std::invalid_argument("exponent vector has wrong length");
  int total = 0;
  for (int e : exponents) {
    if (e < 0) throw std::invalid_argument("negative exponent");
    total += e;
  }
  if (total != degree_) throw std::invalid_argument("term degree mismatch");
  terms_.emplace_back(std::move(exponents), coef);
}

double HomogeneousPolynomial::eval(const Vec& x) const {
  double s = 0.0;
  for (const auto& [a, c] : terms_) {
    double m = c;
    for (int i = 0; i < dim_; ++i) m *= ipow(x[i], a[i]);
    s += m;
  }
  return s;
}

Vec HomogeneousPolynomial::gradient(const Vec& x) const {
  Vec g = Vec::Zero(dim_);
  for (const auto& [a, c] : terms_) {
    for (int i = 0; i < dim_; ++i) {
      if (a[i] == 0) continue;
      double m = c * a[i] * ipow(x[i], a[i] - 1);
      for (int j = 0; j < dim_; ++j)
        if (j != i) m *= ipow(x[j], a[j]);
      g[i] += m;
    }
  }
  return g;
}

Mat HomogeneousPolynomial::hessian(const Vec& x) const {
  Mat h = Mat::Zero(dim_, dim_);
  for (const auto& [a, c] : terms_) {
    for (int i = 0; i < dim_; ++i) {
      if (a[i] >= 2) {
        double m = c * a[i] * (a[i] - 1) * ipow(x[i], a[i] - 2);
        for (int j = 0; j < dim_; ++j)
          if (j != i) m *= ipow(x[j], a[j]);
        h(i, i) += m;
      }
      for (int j = i + 1; j < dim_; ++j) {
        if (a[i] == 0 || a[j] == 0) continue;
        double m = c * a[i] * a[j] * ipow(x[i], a[i] - 1) * ipow(x[j], a[j] - 1);
        for (int l = 0; l < dim_; ++l)
          if (l != i && l != j) m *= ipow(x[l], a[l]);
        h(i, j) += m;
        h(j, i) += m;
      }
    }
  }
  return h;
}

SphereField polynomial_field(const HomogeneousPolynomial& p, const std::string& name) {
  const int n = p.dim();
  const int d = p.degree();
  const double s = 1.0 - d;
  auto value = [p](const Vec& u) { return p.eval(u); };
  // Extension P(x) |x|^s, s = 1 - deg, so the field extends 1-homogeneously.
  auto grad = [p, s](const Vec& x) -> Vec {
    const double r2 = x.squaredNorm();
    const double r = std::sqrt(r2);
    const double rs = std::pow(r, s);
    Vec g = rs * p.gradient(x);
    g += (s * p.eval(x) * rs / r2) * x;
    return g;
  };
  auto hess = [p, s, n](const Vec& x) -> Mat {
    const double r2 = x.squaredNorm();
    const double r = std::sqrt(r2);
    const double rs = std::pow(r, s);
    const double pv = p.eval(x);
    const Vec pg = p.gradient(x);
    Mat h = rs * p.hessian(x);
    h += (s * rs / r2) * (pg * x.transpose() + x * pg.transpose());
    h += (s * pv * rs / r2) * Mat::Identity(n, n);
    h += (s * (s - 2.0) * pv * rs / (r2 * r2)) * (x * x.transpose());
    return h;
  };
  return SphereField(n, name, value, grad, hess);
}

SphereField linear_field(const Vec& y0) {
  HomogeneousPolynomial p(static_cast<int>(y0.size()), 1);
  for (int i = 0; i < y0.size(); ++i) {
    if (y0[i] == 0.0) continue;
    std::vector<int> a(y0.size(), 0);
    a[i] = 1;
    p.add_term(a, y0[i]);
  }
  if (p.terms().empty()) {
    std::vector<int> a(y0.size(), 0);
    a[0] = 1;
    p.add_term(a, 0.0);
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "linear[%d]", static_cast<int>(y0.size()));
  return polynomial_field(p, buf);
}

double monomial_sphere_integral(const std::vector<int>& powers) {
  double num = 2.0;
  double half_sum = 0.0;
  for (int a : powers) {
    if (a % 2 != 0) return 0.0;
    num *= std::tgamma((a + 1) / 2.0);
    half_sum += (a + 1) / 2.0;
  }
  return num / std::tgamma(half_sum);
}

std::vector<std::vector<int>> monomial_exponents(int n, int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n, 0);
  // Lexicographic from the first variable down.
  std::function<void(int, int)> rec = [&](int i, int rem) {
    if (i == n - 1) {
      cur[i] = rem;
      out.push_back(cur);
      return;
    }
    for (int e = rem; e >= 0; --e) {
      cur[i] = e;
      rec(i + 1, rem - e);
    }
  };
  if (d >= 0) rec(0, d);
  return out;
}

namespace {

// Orthonormal (in L2(S^{n-1})) coefficient vectors spanning the harmonics of
// exact degree d, as columns; rows indexed by monomial_exponents(n, d).
Mat harmonic_coefficients(int n, int d) {
  const auto monos = monomial_exponents(n, d);
  const int m = static_cast<int>(monos.size());

  Mat kernel;
  if (d < 2) {
    kernel = Mat::Identity(m, m);
  } else {
    const auto lower = monomial_exponents(n, d - 2);
    std::map<std::vector<int>, int> row;
    for (int i = 0; i < static_cast<int>(lower.size()); ++i) row[lower[i]] = i;
    Mat lap = Mat::Zero(lower.size(), m);
    for (int j = 0; j < m; ++j) {
      for (int i = 0; i < n; ++i) {
        if (monos[j][i] < 2) continue;
        std::vector<int> a = monos[j];
        a[i] -= 2;
        lap(row.at(a), j) += monos[j][i] * (monos[j][i] - 1);
      }
    }
    Eigen::FullPivLU<Mat> lu(lap);
    kernel = lu.kernel();
  }

  Mat gram(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      std::vector<int> a = monos[i];
      for (int l = 0; l < n; ++l) a[l] += monos[j][l];
      gram(i, j) = gram(j, i) = monomial_sphere_integral(a);
    }
  }

  Mat q(m, kernel.cols());
  for (int j = 0; j < kernel.cols(); ++j) {
    Vec v = kernel.col(j);
    for (int i = 0; i < j; ++i) v -= (q.col(i).dot(gram * v)) * q.col(i);
    const double norm = std::sqrt(v.dot(gram * v));
    if (!(norm > 1e-12)) throw std::runtime_error("degenerate harmonic basis vector");
    q.col(j) = v / norm;
  }
  return q;
}

HomogeneousPolynomial coef_to_poly(int n, int d, const std::vector<std::vector<int>>& monos,
                                   const Vec& coef) {
  HomogeneousPolynomial p(n, d);
  for (int i = 0; i < coef.size(); ++i) p.add_term(monos[i], coef[i]);
  return p;
}

std::vector<HomogeneousPolynomial> harmonic_polys_degree(int n, int d) {
  const auto monos = monomial_exponents(n, d);
  const Mat q = harmonic_coefficients(n, d);
  std::vector<HomogeneousPolynomial> polys;
  polys.reserve(q.cols());
  for (int k = 0; k < q.cols(); ++k) polys.push_back(coef_to_poly(n, d, monos, q.col(k)));
  return polys;
}

// One-homogeneous extension data of sum_j c_j P_j for polynomials of mixed
// degrees, evaluated term by term from the closed form for P |x|^(1-deg).
struct PolySum {
  int dim;
  std::vector<HomogeneousPolynomial> polys;  // coefficient folded into the terms

  double value(const Vec& u) const {
    double s = 0.0;
    for (const auto& p : polys) s += p.eval(u);
    return s;
  }
  Vec grad(const Vec& x) const {
    const double r2 = x.squaredNorm();
    const double r = std::sqrt(r2);
    Vec g = Vec::Zero(dim);
    for (const auto& p : polys) {
      const double s = 1.0 - p.degree();
      const double rs = std::pow(r, s);
      g += rs * p.gradient(x) + (s * p.eval(x) * rs / r2) * x;
    }
    return g;
  }
  Mat hess(const Vec& x) const {
    const double r2 = x.squaredNorm();
    const double r = std::sqrt(r2);
    Mat h = Mat::Zero(dim, dim);
    for (const auto& p : polys) {
      const double s = 1.0 - p.degree();
      const double rs = std::pow(r, s);
      const double pv = p.eval(x);
      const Vec pg = p.gradient(x);
      h += rs * p.hessian(x);
      h += (s * rs / r2) * (pg * x.transpose() + x * pg.transpose());
      h += (s * pv * rs / r2) * Mat::Identity(dim, dim);
      h += (s * (s - 2.0) * pv * rs / (r2 * r2)) * (x * x.transpose());
    }
    return h;
  }
};

}  // namespace

std::vector<SphereField> harmonic_basis_degree(int n, int d) {
  auto polys = harmonic_polys_degree(n, d);
  std::vector<SphereField> basis;
  basis.reserve(polys.size());
  for (size_t k = 0; k < polys.size(); ++k) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "Y[%d][%zu]", d, k);
    basis.push_back(polynomial_field(polys[k], buf));
  }
  return basis;
}

std::vector<SphereField> harmonic_basis(int n, int max_degree) {
  if (max_degree > 6) throw std::domain_error("harmonic basis capped at degree 6");
  std::vector<SphereField> basis;
  for (int d = 0; d <= max_degree; ++d) {
    auto part = harmonic_basis_degree(n, d);
    for (auto& f : part) basis.push_back(std::move(f));
  }
  return basis;
}

SphereField harmonic_combination(int n, int max_degree, const std::vector<double>& coefs,
                                 const std::string& name) {
  if (max_degree > 6) throw std::domain_error("harmonic basis capped at degree 6");
  PolySum sum{n, {}};
  size_t idx = 0;
  for (int d = 0; d <= max_degree; ++d) {
    for (auto& p : harmonic_polys_degree(n, d)) {
      if (idx >= coefs.size()) throw std::invalid_argument("too few combination coefficients");
      const double c = coefs[idx++];
      if (c != 0.0) {
        HomogeneousPolynomial scaled(n, d);
        for (const auto& [a, v] : p.terms()) scaled.add_term(a, c * v);
        sum.polys.push_back(std::move(scaled));
      }
    }
  }
  if (idx != coefs.size()) throw std::invalid_argument("too many combination coefficients");
  return SphereField(n, name, [sum](const Vec& u) { return sum.value(u); },
                     [sum](const Vec& x) { return sum.grad(x); },
                     [sum](const Vec& x) { return sum.hess(x); });
}

SphereField random_harmonic_field(int n, int max_degree, Rng& rng, const std::string& name) {
  std::vector<size_t> sizes;
  size_t total = 0;
  for (int d = 0; d <= max_degree; ++d) {
    sizes.push_back(harmonic_polys_degree(n, d).size());
    total += sizes.back();
  }
  std::vector<double> coefs(total, 0.0);
  const size_t first = sizes[0];  // skip constants
  const double scale = 1.0 / std::sqrt(static_cast<double>(total - first));
  for (size_t i = first; i < total; ++i) coefs[i] = scale * rng.normal();
  return harmonic_combination(n, max_degree, coefs, name);
}

}  // namespace quermass
