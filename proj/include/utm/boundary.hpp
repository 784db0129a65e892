#pragma once

#include "utm/common.hpp"

namespace utm {

/// C with [phi psi](0) = u(phi)^T C conj(u(psi)), u(.) the vector of boundary
/// values (f(0), ..., f^(n-1)(0)).
CMatrix concomitant_matrix(int n);

/// u^T C conj(v).
cplx concomitant(const CVector& u, const CVector& v);

/// Orthonormal columns spanning ker(B). Throws Error{KernelComputationFailed}
/// when the numerical rank of B is not its row count.
CMatrix kernel_basis(const CMatrix& B);

/// Row-reduce on the highest-order coefficients: every row's highest nonzero
/// coefficient is 1, that column is zero in the other rows, and rows are
/// ordered by that column.
CMatrix canonical_rows(const CMatrix& rows);

/// Adjoint boundary forms: n - N rows annihilating exactly the vectors v with
/// u^T C conj(v) = 0 for all u in ker(B). Canonical form.
CMatrix adjoint_forms(const CMatrix& B);

/// True when the two row sets span the same space.
bool same_row_space(const CMatrix& A, const CMatrix& B, double tol = 1e-10);

struct ComplementaryForms {
  CMatrix Bc;       ///< n - N rows completing B
  CMatrix Bc_star;  ///< N rows completing B*
  double residual = 0.0;
};

/// Forms with -u^T C conj(v) = (B u) . (Bc* v) + (Bc u) . (B* v) for all u, v,
/// where a . b = sum a_j conj(b_j). Throws Error{CompletionFailed}.
ComplementaryForms complementary_forms(const CMatrix& B, const CMatrix& Bstar);

}  // namespace utm
