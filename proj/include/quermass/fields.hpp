#pragma once

#include <string>
#include <vector>

#include "quermass/rng.hpp"
#include "quermass/sphere.hpp"
#include "quermass/types.hpp"

namespace quermass {

/// Homogeneous polynomial in n variables as monomial terms
/// (exponent vector, coefficient). Supplies value/gradient/Hessian at any x.
class HomogeneousPolynomial {
 public:
  HomogeneousPolynomial(int dim, int degree) : dim_(dim), degree_(degree) {}

  void add_term(std::vector<int> exponents, double coef);
  int dim() const { return dim_; }
  int degree() const { return degree_; }
  const std::vector<std::pair<std::vector<int>, double>>& terms() const { return terms_; }

  double eval(const Vec& x) const;
  Vec gradient(const Vec& x) const;
  Mat hessian(const Vec& x) const;

 private:
  int dim_;
  int degree_;
  std::vector<std::pair<std::vector<int>, double>> terms_;
};

/// Restriction of a homogeneous polynomial P of degree d to the sphere, with
/// the analytic derivatives of its 1-homogeneous extension P(x) |x|^(1-d).
SphereField polynomial_field(const HomogeneousPolynomial& p, const std::string& name);

/// phi(u) = <y0, u>.
SphereField linear_field(const Vec& y0);

/// Exact integral of a monomial over S^{n-1} (zero for odd exponents,
/// Gamma-function product otherwise).
double monomial_sphere_integral(const std::vector<int>& powers);

/// Monomial exponent vectors of total degree d in n variables, in a fixed
/// deterministic (lexicographic) order.
std::vector<std::vector<int>> monomial_exponents(int n, int d);

/// L2(S^{n-1})-orthonormal basis of spherical harmonics of exact degree d:
/// the kernel of the Laplacian on homogeneous degree-d polynomials,
/// orthonormalized by modified Gram-Schmidt. Deterministic order; fields are
/// named Y[d][k].
std::vector<SphereField> harmonic_basis_degree(int n, int d);

/// Concatenation of harmonic_basis_degree for d = 0..max_degree. Field k of
/// degree d sits at index (sum of dimensions below d) + k.
std::vector<SphereField> harmonic_basis(int n, int max_degree);

/// Random combination of harmonics of degrees 1..max_degree with standard
/// normal coefficients; analytic derivatives.
SphereField random_harmonic_field(int n, int max_degree, Rng& rng, const std::string& name);

/// Combination sum_j coefs[j] * basis[j] over harmonic_basis(n, max_degree).
SphereField harmonic_combination(int n, int max_degree, const std::vector<double>& coefs,
                                 const std::string& name);

}  // namespace quermass
