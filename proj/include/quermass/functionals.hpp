#pragma once

#include <vector>

#include "quermass/sphere.hpp"
#include "quermass/types.hpp"

namespace quermass {

/// f(s) = F_k(h + s phi) at s = 0 with analytic first/second variations and
/// their finite-difference cross-checks; discrepancies are always recorded.
struct VariationReport {
  int k = 0;
  double f_value = 0.0;
  double f_prime = 0.0;
  double f_second = 0.0;
  double fd_prime = 0.0;
  double fd_second = 0.0;
  double prime_discrepancy = 0.0;
  double second_discrepancy = 0.0;
};

/// Binomial coefficient as a double (0 outside 0 <= k <= n).
double binomial_coefficient(int n, int k);

/// F_k(h) = integral of h S_{n-k-1}(Xi^{-1}) over the sphere, k in 0..n-1.
/// Callers certify h beforehand (validate_c2plus); the quadrature itself has
/// no positivity requirement.
double functional_F(int k, const SphereField& h, const QuadratureRule& rule);

/// W_i = (1/n) binomial(n-1, n-i-1)^{-1} F_i(h), i in 0..n-1. W_0 is the
/// volume, n W_1 the surface area.
double quermassintegral(int i, const SphereField& h, const QuadratureRule& rule);

/// W_0..W_{n-1} from a single node sweep (every S_j shares one Hessian per
/// node).
std::vector<double> quermassintegral_all(const SphereField& h, const QuadratureRule& rule);

/// Worst relative residual of the Steiner polynomial over the given offsets:
/// vol(K + tB) computed directly versus sum_i binomial(n,i) W_i t^i with
/// W_n the unit-ball volume.
double steiner_check(const SphereField& h, const QuadratureRule& rule,
                     const std::vector<double>& t_values);

/// f'(s) = (n-k) integral of phi S_{n-k-1}(Xi^{-1} of h + s phi).
double first_variation(int k, const SphereField& h, const SphereField& phi, double s,
                       const QuadratureRule& rule);

/// f''(0) = (n-k) integral of phi sum_ij S_{n-k-1}^{ij}(Xi^{-1})
/// (phi_ij + phi delta_ij).
double second_variation(int k, const SphereField& h, const SphereField& phi,
                        const QuadratureRule& rule);

/// Analytic variations plus centered finite differences of F_k along
/// h + s phi (step 1e-3 for f', 1e-2 with one Richardson pass for f'').
VariationReport variation_report(int k, const SphereField& h, const SphereField& phi,
                                 const QuadratureRule& rule);

/// Density of the area measure of order one against surface measure:
/// S_1(h_ij + h delta_ij) / (n-1).
double area_measure_one_density(const SphereField& h, const Vec& u);
double area_measure_one_density(const SphereField& h, const QuadratureRule& rule, int node);

}  // namespace quermass
