#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quermass/body.hpp"
#include "quermass/rng.hpp"
#include "quermass/sphere.hpp"
#include "quermass/types.hpp"

namespace quermass {

/// Two sides of one inequality plus its side-condition residuals. The
/// verdict is exactly: gap >= -tolerance and every residual <= tolerance.
struct InequalityReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;           // rhs - lhs
  double relative_gap = 0.0;  // gap / max(|lhs|, |rhs|, tiny)
  std::vector<std::pair<std::string, double>> side_condition_residuals;
  double tolerance_used = 0.0;
  bool pass = false;
  std::string metadata;
};

/// Nonnegative measure on [0, 2pi): point masses plus an optional periodic
/// density sampled on its own uniform grid (value j at angle 2 pi j / size).
struct CircleMeasure {
  std::vector<std::pair<double, double>> atoms;  // (angle, mass > 0)
  std::optional<Vec> density;

  double total_mass() const;
  double integrate(const std::function<double(double)>& f) const;
  /// False for the excluded case: exactly two point masses and no density.
  bool admissible() const;
};

/// Periodic function on [0, 2pi]. Without an analytic derivative, the
/// derivative is taken spectrally from samples on the verifier grid.
struct PeriodicField {
  std::function<double(double)> value;
  std::function<double(double)> deriv;  // optional; empty -> spectral

  bool has_deriv() const { return static_cast<bool>(deriv); }
};

/// Brunn-Minkowski gap for W_i: lhs = (1-t) W_i(K)^{1/(n-i)} + t W_i(L)^{1/(n-i)},
/// rhs = W_i((1-t)K + tL)^{1/(n-i)}. tol = 0 picks default_tolerance(rule).
InequalityReport bm_gap(int i, const SphereField& hk, const SphereField& hl, double t,
                        const QuadratureRule& rule, double tol = 0.0);

/// All indices i = 0..n-1 from three shared node sweeps.
std::vector<InequalityReport> bm_gap_all(const SphereField& hk, const SphereField& hl, double t,
                                         const QuadratureRule& rule, double tol = 0.0);

/// phi minus its weighted mean: the returned field satisfies
/// integral(phi_proj * weight) = 0. weight holds node values; total must be
/// positive.
SphereField project_side_condition(const SphereField& phi, const Vec& weight,
                                   const QuadratureRule& rule);

/// Node values of S_j(Xi^{-1}) for h (j = 0..n-1); the side-condition weight
/// of the sphere formulation.
Vec curvature_weight(const SphereField& h, int j, const QuadratureRule& rule);

/// Node values of S_{I-1}(D nu) det(Xi^{-1}): the boundary-formulation
/// side-condition weight, as a sphere density.
Vec boundary_condition_weight(int i_index, const SphereField& h, const QuadratureRule& rule);

/// (n-J) int phi^2 S_{J-1}(Xi^{-1}) <= int <S_J^{ij}(Xi^{-1}) grad phi, grad phi>
/// under int phi S_J(Xi^{-1}) = 0.
InequalityReport poincare_sphere(int J, const SphereField& h, const SphereField& phi,
                                 const QuadratureRule& rule, double tol = 0.0);

/// I int_{dK} psi^2 S_I(D nu) <= int_{dK} <S_I^{ij}(D nu) grad psi, (D nu)^{-1} grad psi>
/// under int_{dK} psi S_{I-1}(D nu) = 0, with psi = phi o nu. All boundary
/// integrals are pulled back to the sphere with Jacobian det(Xi^{-1}); the
/// Weingarten matrix D nu is inverted numerically at each node.
InequalityReport poincare_boundary(int i_index, const SphereField& h, const SphereField& phi,
                                   const QuadratureRule& rule, double tol = 0.0);

/// Worst relative residual over nodes of the pointwise identity
/// det(Xi^{-1})^{-1} <S_r^{ij}(Xi^{-1}) grad phi, grad phi>
///   = <(D nu)^{-1} grad psi, S_{n-r}^{ij}(D nu) grad psi>, grad psi = D nu grad phi.
double gauss_change_of_variables_check(int r, const SphereField& h, const SphereField& phi,
                                       const QuadratureRule& rule);

/// |int phi sum S_k^{ij} phi_ij + int sum S_k^{ij} phi_i phi_j| / scale for
/// the cofactor built from u_field; the integration-by-parts consequence of
/// the null-divergence of cofactor rows.
double divergence_identity_residual(int k, const SphereField& u_field, const SphereField& phi,
                                    const QuadratureRule& rule);

/// int phi^2 dH <= (1/(n-1)) int |grad phi|^2 dH under int phi dA_1 = 0,
/// with dA_1 = S_1(Xi^{-1})/(n-1) dH for a certified body.
InequalityReport poincare_area_measure(const SphereField& h, const SphereField& phi,
                                       const QuadratureRule& rule, double tol = 0.0);

/// n = 2 measure path: int phi^2 dtheta <= int (phi')^2 dtheta for measures
/// with vanishing sin/cos moments that are not two point masses; the side
/// condition int phi dnu = 0 is enforced by a constant shift. Throws
/// std::invalid_argument for inadmissible measures or nonzero moments.
InequalityReport wirtinger(const CircleMeasure& nu, const PeriodicField& phi, int grid_size,
                           double tol = 0.0);

/// |int u rho(u) dH| / int rho dH for a precomputed radial profile.
double radial_barycenter_residual(const QuadratureRule& rule, const Vec& rho);

/// int phi^2 dH <= (1/(n-1)) int |grad phi|^2 dH under int phi rho dH = 0,
/// for bodies with the origin interior and radial barycenter zero. Throws
/// std::domain_error (with the residual in the message) when the barycenter
/// condition fails. rho: optional precomputed radial_profile.
InequalityReport poincare_radial(const SphereField& h, const SphereField& phi,
                                 const QuadratureRule& rule, const Vec* rho = nullptr,
                                 double tol = 0.0);

/// Worst |relative gap| of poincare_sphere with phi = <y0, u> over the n
/// coordinate axes and 10 seeded random directions.
double sharpness_scan(int J, const SphereField& h, const QuadratureRule& rule, Rng& rng,
                      double tol = 0.0);

}  // namespace quermass
