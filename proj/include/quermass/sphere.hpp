#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "quermass/types.hpp"

namespace quermass {

/// Quadrature on S^{n-1}: unit nodes, positive weights summing to the sphere
/// area, and one orthonormal tangent frame per node (columns of an
/// n x (n-1) matrix).
struct QuadratureRule {
  int dim = 0;                      // ambient n
  Mat nodes;                        // M x n, rows are unit vectors
  Vec weights;                      // M
  std::vector<Mat> frames;          // per node, n x (n-1)
  bool monte_carlo = false;         // true for the n >= 4 fallback
  int resolution = 0;
  std::uint64_t seed = 0;

  int count() const { return static_cast<int>(weights.size()); }
  Vec node(int i) const { return nodes.row(i).transpose(); }
  std::string describe() const;
};

/// Deterministic rules for n = 2 (equispaced angles, weights 2*pi/m) and
/// n = 3 (Gauss-Legendre in the polar cosine x equispaced longitude,
/// `resolution` x 2*`resolution` nodes). n >= 4 falls back to Monte Carlo
/// with equal weights |S^{n-1}|/count and sets the monte_carlo flag.
/// Throws std::domain_error for resolution < 4 or n < 2.
QuadratureRule build_rule(int n, int resolution, std::uint64_t seed = 0);

/// Surface measure of S^{n-1}: 2 pi^{n/2} / Gamma(n/2).
double sphere_area(int n);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int m, Vec& nodes, Vec& weights);

/// Orthonormal tangent frame at a unit vector, as columns of an n x (n-1)
/// matrix. n = 2: the rotated tangent. n = 3: Gram-Schmidt of a fixed axis
/// against the node (alternate axis when |u_z| > 0.9). n >= 4: Householder.
/// Deterministic in u.
Mat frame_at(const Vec& u);

/// Scalar field on S^{n-1}. Carries the evaluator and, optionally, analytic
/// gradient/Hessian of the 1-homogeneous extension F(x) = |x| f(x/|x|).
/// Without analytic derivatives, central differences on F are used with
/// step eps^(1/3) * max(1, |x|) for the gradient and eps^(1/4) * max(1, |x|)
/// for the Hessian.
class SphereField {
 public:
  using ValueFn = std::function<double(const Vec&)>;
  using GradFn = std::function<Vec(const Vec&)>;
  using HessFn = std::function<Mat(const Vec&)>;

  SphereField(int dim, std::string name, ValueFn value);
  SphereField(int dim, std::string name, ValueFn value, GradFn ext_grad, HessFn ext_hess);

  int dim() const { return dim_; }
  const std::string& name() const { return name_; }
  bool analytic() const { return analytic_; }

  double value(const Vec& u) const { return value_(u); }
  double operator()(const Vec& u) const { return value_(u); }

  /// Gradient/Hessian of the 1-homogeneous extension at x (any x != 0).
  Vec ext_gradient(const Vec& x) const;
  Mat ext_hessian(const Vec& x) const;

 private:
  int dim_;
  std::string name_;
  bool analytic_;
  ValueFn value_;
  GradFn grad_;
  HessFn hess_;
};

SphereField operator*(double c, const SphereField& f);
SphereField operator+(const SphereField& f, const SphereField& g);
SphereField operator-(const SphereField& f, const SphereField& g);
SphereField operator+(const SphereField& f, double c);
SphereField operator-(const SphereField& f, double c);

/// Field identically equal to c (1-homogeneous extension c|x|).
SphereField constant_field(int dim, double c);

/// Matrix of the Euclidean Hessian of the 1-homogeneous extension restricted
/// to the tangent frame: equals (f_ij + f delta_ij) in that frame.
SymMatrix tangent_hessian_1hom(const SphereField& f, const Vec& u, const Mat& frame);
SymMatrix tangent_hessian_1hom(const SphereField& f, const QuadratureRule& rule, int node);

/// Spherical gradient in frame coordinates (length n-1).
Vec spherical_gradient(const SphereField& f, const Vec& u, const Mat& frame);
Vec spherical_gradient(const SphereField& f, const QuadratureRule& rule, int node);

/// Covariant Hessian (f_ij) alone: tangent_hessian_1hom minus f(u) * I.
SymMatrix covariant_hessian(const SphereField& f, const Vec& u, const Mat& frame);
SymMatrix covariant_hessian(const SphereField& f, const QuadratureRule& rule, int node);

/// Quadrature of a per-node integrand.
double integrate(const QuadratureRule& rule, const std::function<double(int)>& node_value);
double integrate(const QuadratureRule& rule, const SphereField& f);

/// Default relative verdict tolerance for inequality checks on this rule:
/// 1e-7 for the n = 2 trapezoid at resolution 512, 1e-6 for the n = 3
/// product rule at resolution 64, scaled by (default/resolution)^2 on
/// coarser rules and widened to O(1/sqrt(M)) for Monte Carlo rules.
double default_tolerance(const QuadratureRule& rule);

/// Default resolution per dimension (512 for n = 2, 64 for n = 3 and up).
int default_resolution(int n);

}  // namespace quermass
