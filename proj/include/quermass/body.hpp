#pragma once

#include <string>

#include "quermass/sphere.hpp"
#include "quermass/types.hpp"

namespace quermass {

/// Outcome of the C^2_+ check of a support function on a quadrature rule:
/// the restricted Hessian h_ij + h delta_ij must be positive definite at
/// every node, with margin eps_pd relative to the mean eigenvalue.
struct BodyCertificate {
  bool ok = false;
  double min_eigenvalue = 0.0;
  double mean_eigenvalue = 0.0;
  int worst_node = -1;
  std::string message;
};

/// h(u) = radius.
SphereField ball(int n, double radius);

/// h(u) = sqrt(u^T Q u) for symmetric positive definite Q; the body
/// { x : x^T Q^{-1} x <= 1 }. Analytic derivatives.
SphereField ellipsoid(const SymMatrix& q);

/// Axis-aligned ellipsoid with the given semiaxes (Q = diag(a_i^2)).
SphereField ellipsoid(const Vec& semiaxes);

/// Support function of K + y0: h + <y0, u>.
SphereField translate(const SphereField& h, const Vec& y0);

/// Support function of (1-t) K + t L (Minkowski combination), t in [0, 1].
SphereField minkowski_combination(double t, const SphereField& hk, const SphereField& hl);

/// h(u) = 1 + eps g(u); a convex body for eps small against the C^2 size
/// of g (certified separately by validate_c2plus).
SphereField perturbed_ball(int n, double eps, const SphereField& g);

/// Evaluate positive definiteness of h_ij + h delta_ij at every node.
BodyCertificate validate_c2plus(const SphereField& h, const QuadratureRule& rule,
                                double eps_pd = 1e-8);

/// Boundary point with outer unit normal u: the gradient of the
/// 1-homogeneous extension of h at u.
Vec inverse_gauss(const SphereField& h, const Vec& u);

/// Radial function rho(direction) = max { t : t direction in K }, computed
/// as the reciprocal of the polar support max over v of <dir, v> / h(v)
/// (coarse scan over the rule nodes, then local grid refinement).
double radial_function(const SphereField& h, const QuadratureRule& rule, const Vec& direction);

/// rho at every node of the rule; shares one table of h values for the
/// coarse scans.
Vec radial_profile(const SphereField& h, const QuadratureRule& rule);

}  // namespace quermass
