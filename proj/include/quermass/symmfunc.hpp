#pragma once

#include "quermass/types.hpp"

namespace quermass {

/// k-th elementary symmetric function of the eigenvalues of A, computed as
/// the sum of all k x k principal minors (no eigensolve). S_0 = 1,
/// S_1 = trace, S_N = determinant. Throws std::domain_error if k is outside
/// 0..N. Intended for small matrices (N <= 8).
double elem_sym(const SymMatrix& a, int k);

/// Elementary symmetric function of a list of eigenvalues; used for the
/// Lambda_s spectra of cofactor matrices.
double elem_sym(const Vec& eigenvalues, int k);

/// k-th cofactor matrix (S_k^{ij}(A)) = (dS_k/da_{ij}), entries treated as
/// independent. Computed by the Newton-tensor recursion
///   T_0 = I,  T_m = S_m(A) I - T_{m-1} A,
/// whose step m = k-1 is exactly (S_k^{ij}). k = 1 gives the identity,
/// k = N the classical adjugate. Throws std::domain_error if k outside 1..N.
SymMatrix cofactor_matrix(const SymMatrix& a, int k);

}  // namespace quermass
