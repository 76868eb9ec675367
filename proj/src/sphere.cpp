#include "quermass/sphere.hpp"

#include <cmath>
#include <limits>

#include "quermass/rng.hpp"

namespace quermass {

double sphere_area(int n) {
  return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

std::string QuadratureRule::describe() const {
  char buf[96];
  if (dim == 2)
    std::snprintf(buf, sizeof(buf), "n=2 trapezoid m=%d", resolution);
  else if (dim == 3)
    std::snprintf(buf, sizeof(buf), "n=3 gauss %dx%d", resolution, 2 * resolution);
  else
    std::snprintf(buf, sizeof(buf), "n=%d monte-carlo M=%d seed=%llu", dim, count(),
                  static_cast<unsigned long long>(seed));
  return buf;
}

void gauss_legendre(int m, Vec& nodes, Vec& weights) {
  nodes.resize(m);
  weights.resize(m);
  // Newton on P_m with the Chebyshev-like initial guess; symmetric pairs.
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (m + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    nodes(i) = -x;
    nodes(m - 1 - i) = x;
    weights(i) = w;
    weights(m - 1 - i) = w;
  }
}

Mat frame_at(const Vec& u) {
  const int n = static_cast<int>(u.size());
  Mat frame(n, n - 1);
  if (n == 2) {
    frame(0, 0) = -u(1);
    frame(1, 0) = u(0);
    return frame;
  }
  if (n == 3) {
    Vec axis = Vec::Zero(3);
    if (std::abs(u(2)) > 0.9)
      axis(0) = 1.0;  // near the poles the z axis degenerates
    else
      axis(2) = 1.0;
    Vec e1 = axis - axis.dot(u) * u;
    e1 /= e1.norm();
    Eigen::Vector3d u3(u(0), u(1), u(2)), v3(e1(0), e1(1), e1(2));
    Eigen::Vector3d e2 = u3.cross(v3);
    frame.col(0) = e1;
    frame.col(1) = e2;
    return frame;
  }
  // Householder reflection mapping e_k to +-u; remaining columns span u's
  // orthogonal complement.
  int k = 0;
  for (int i = 1; i < n; ++i)
    if (std::abs(u(i)) > std::abs(u(k))) k = i;
  const double s = (u(k) >= 0.0) ? 1.0 : -1.0;
  Vec w = u;
  w(k) -= s;
  const double wn2 = w.squaredNorm();
  int col = 0;
  for (int j = 0; j < n; ++j) {
    if (j == k) continue;
    Vec ej = Vec::Zero(n);
    ej(j) = 1.0;
    frame.col(col++) = ej - (2.0 * w(j) / wn2) * w;
  }
  return frame;
}

QuadratureRule build_rule(int n, int resolution, std::uint64_t seed) {
  if (n < 2) throw std::domain_error("build_rule: need n >= 2");
  if (resolution < 4) throw std::domain_error("build_rule: resolution < 4");

  QuadratureRule rule;
  rule.dim = n;
  rule.resolution = resolution;
  rule.seed = seed;

  if (n == 2) {
    const int m = resolution;
    rule.nodes.resize(m, 2);
    rule.weights.resize(m);
    for (int i = 0; i < m; ++i) {
      const double th = 2.0 * M_PI * i / m;
      rule.nodes(i, 0) = std::cos(th);
      rule.nodes(i, 1) = std::sin(th);
      rule.weights(i) = 2.0 * M_PI / m;
    }
  } else if (n == 3) {
    const int mz = resolution, mp = 2 * resolution;
    Vec z, wz;
    gauss_legendre(mz, z, wz);
    rule.nodes.resize(mz * mp, 3);
    rule.weights.resize(mz * mp);
    int idx = 0;
    for (int i = 0; i < mz; ++i) {
      const double st = std::sqrt(std::max(0.0, 1.0 - z(i) * z(i)));
      for (int j = 0; j < mp; ++j, ++idx) {
        const double ph = 2.0 * M_PI * j / mp;
        rule.nodes(idx, 0) = st * std::cos(ph);
        rule.nodes(idx, 1) = st * std::sin(ph);
        rule.nodes(idx, 2) = z(i);
        rule.weights(idx) = wz(i) * (2.0 * M_PI / mp);
      }
    }
  } else {
    rule.monte_carlo = true;
    const int m = 2 * resolution * resolution;
    const double area = sphere_area(n);
    Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
    rule.nodes.resize(m, n);
    rule.weights = Vec::Constant(m, area / m);
    for (int i = 0; i < m; ++i) rule.nodes.row(i) = rng.unit_vector(n).transpose();
  }

  rule.frames.reserve(rule.count());
  for (int i = 0; i < rule.count(); ++i) rule.frames.push_back(frame_at(rule.node(i)));
  return rule;
}

SphereField::SphereField(int dim, std::string name, ValueFn value)
    : dim_(dim), name_(std::move(name)), analytic_(false), value_(std::move(value)) {}

SphereField::SphereField(int dim, std::string name, ValueFn value, GradFn ext_grad,
                         HessFn ext_hess)
    : dim_(dim),
      name_(std::move(name)),
      analytic_(true),
      value_(std::move(value)),
      grad_(std::move(ext_grad)),
      hess_(std::move(ext_hess)) {}

namespace {

double ext_value(const SphereField& f, const Vec& x) {
  const double r = x.norm();
  return r * f.value(x / r);
}

double fd_step(const Vec& x) {
  static const double cbrt_eps = std::cbrt(std::numeric_limits<double>::epsilon());
  return cbrt_eps * std::max(1.0, x.norm());
}

// Second derivatives balance truncation against cancellation at eps^(1/4).
double fd_step2(const Vec& x) {
  static const double quart_eps = std::sqrt(std::sqrt(std::numeric_limits<double>::epsilon()));
  return quart_eps * std::max(1.0, x.norm());
}

}  // namespace

Vec SphereField::ext_gradient(const Vec& x) const {
  if (analytic_) return grad_(x);
  const double h = fd_step(x);
  Vec g(dim_);
  for (int i = 0; i < dim_; ++i) {
    Vec xp = x, xm = x;
    xp(i) += h;
    xm(i) -= h;
    g(i) = (ext_value(*this, xp) - ext_value(*this, xm)) / (2.0 * h);
  }
  return g;
}

Mat SphereField::ext_hessian(const Vec& x) const {
  if (analytic_) return hess_(x);
  const double h = fd_step2(x);
  Mat hess(dim_, dim_);
  const double f0 = ext_value(*this, x);
  for (int i = 0; i < dim_; ++i) {
    Vec xp = x, xm = x;
    xp(i) += h;
    xm(i) -= h;
    hess(i, i) = (ext_value(*this, xp) - 2.0 * f0 + ext_value(*this, xm)) / (h * h);
    for (int j = i + 1; j < dim_; ++j) {
      Vec xpp = x, xpm = x, xmp = x, xmm = x;
      xpp(i) += h;
      xpp(j) += h;
      xpm(i) += h;
      xpm(j) -= h;
      xmp(i) -= h;
      xmp(j) += h;
      xmm(i) -= h;
      xmm(j) -= h;
      const double v = (ext_value(*this, xpp) - ext_value(*this, xpm) - ext_value(*this, xmp) +
                        ext_value(*this, xmm)) /
                       (4.0 * h * h);
      hess(i, j) = v;
      hess(j, i) = v;
    }
  }
  return hess;
}

namespace {

std::string short_number(double c) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", c);
  return buf;
}

}  // namespace

SphereField operator*(double c, const SphereField& f) {
  const std::string name = short_number(c) + "*" + f.name();
  if (!f.analytic())
    return SphereField(f.dim(), name, [c, f](const Vec& u) { return c * f.value(u); });
  return SphereField(
      f.dim(), name, [c, f](const Vec& u) { return c * f.value(u); },
      [c, f](const Vec& x) -> Vec { return c * f.ext_gradient(x); },
      [c, f](const Vec& x) -> Mat { return c * f.ext_hessian(x); });
}

SphereField operator+(const SphereField& f, const SphereField& g) {
  if (f.dim() != g.dim()) throw std::domain_error("field sum: dimension mismatch");
  const std::string name = f.name() + "+" + g.name();
  if (!(f.analytic() && g.analytic()))
    return SphereField(f.dim(), name, [f, g](const Vec& u) { return f.value(u) + g.value(u); });
  return SphereField(
      f.dim(), name, [f, g](const Vec& u) { return f.value(u) + g.value(u); },
      [f, g](const Vec& x) -> Vec { return f.ext_gradient(x) + g.ext_gradient(x); },
      [f, g](const Vec& x) -> Mat { return f.ext_hessian(x) + g.ext_hessian(x); });
}

SphereField operator-(const SphereField& f, const SphereField& g) { return f + (-1.0) * g; }

SphereField constant_field(int dim, double c) {
  return SphereField(
      dim, short_number(c), [c](const Vec&) { return c; },
      [c, dim](const Vec& x) -> Vec { return (c / x.norm()) * x; },
      [c, dim](const Vec& x) -> Mat {
        const double r = x.norm();
        return (c / r) * (Mat::Identity(dim, dim) - (x * x.transpose()) / (r * r));
      });
}

SphereField operator+(const SphereField& f, double c) { return f + constant_field(f.dim(), c); }
SphereField operator-(const SphereField& f, double c) { return f + constant_field(f.dim(), -c); }

SymMatrix tangent_hessian_1hom(const SphereField& f, const Vec& u, const Mat& frame) {
  const Mat h = f.ext_hessian(u);
  return SymMatrix::from(frame.transpose() * h * frame);
}

SymMatrix tangent_hessian_1hom(const SphereField& f, const QuadratureRule& rule, int node) {
  return tangent_hessian_1hom(f, rule.node(node), rule.frames[node]);
}

Vec spherical_gradient(const SphereField& f, const Vec& u, const Mat& frame) {
  return frame.transpose() * f.ext_gradient(u);
}

Vec spherical_gradient(const SphereField& f, const QuadratureRule& rule, int node) {
  return spherical_gradient(f, rule.node(node), rule.frames[node]);
}

SymMatrix covariant_hessian(const SphereField& f, const Vec& u, const Mat& frame) {
  const SymMatrix t = tangent_hessian_1hom(f, u, frame);
  const double fv = f.value(u);
  Mat m = t.mat();
  m.diagonal().array() -= fv;
  return SymMatrix::from(m);
}

SymMatrix covariant_hessian(const SphereField& f, const QuadratureRule& rule, int node) {
  return covariant_hessian(f, rule.node(node), rule.frames[node]);
}

double integrate(const QuadratureRule& rule, const std::function<double(int)>& node_value) {
  double sum = 0.0;
  for (int i = 0; i < rule.count(); ++i) sum += rule.weights(i) * node_value(i);
  return sum;
}

double integrate(const QuadratureRule& rule, const SphereField& f) {
  return integrate(rule, [&](int i) { return f.value(rule.node(i)); });
}

int default_resolution(int n) { return n == 2 ? 512 : 64; }

double default_tolerance(const QuadratureRule& rule) {
  if (rule.monte_carlo) return 10.0 / std::sqrt(static_cast<double>(rule.count()));
  const double base = rule.dim == 2 ? 1e-7 : 1e-6;
  const double ref = default_resolution(rule.dim);
  const double ratio = ref / rule.resolution;
  return ratio > 1.0 ? base * ratio * ratio : base;
}

}  // namespace quermass
