#pragma once

#include <vector>

#include "utm/common.hpp"
#include "utm/problem.hpp"

namespace utm {

struct DeltaRoot {
  cplx value;
  int multiplicity = 1;
};

/// Adjoint characteristic matrix M(lambda) of a validated problem, its
/// determinant and the cyclic cofactor minors. Immutable after construction.
///
/// Entry (k, j) is sum_r (-i alpha^(k-1) lambda)^r conj(b*_{j,r}) with
/// alpha = exp(2 pi i / n); for real adjoint rows the conjugate is a no-op.
class CharMatrix {
 public:
  explicit CharMatrix(const ValidatedProblem& problem);

  int order() const { return n_; }
  int conditions() const { return N_; }
  int size() const { return n_ - N_; }
  cplx alpha() const { return alpha_; }
  /// alpha^p for any integer p.
  cplx alpha_pow(int p) const;
  const CMatrix& adjoint_rows() const { return bstar_; }

  CMatrix eval(cplx lambda) const;
  /// M^k_j(lambda), 1-based.
  cplx entry(int k, int j, cplx lambda) const;
  cplx delta(cplx lambda) const;
  /// det X^{l,j}(lambda), 1-based; the empty minor has determinant 1.
  cplx cofactor_det(int l, int j, cplx lambda) const;
  /// (-1)^((m-1)(l+j)) with m = n - N.
  double cofactor_sign(int l, int j) const;

  /// Ascending coefficients of Delta, trimmed below 1e-12 of the largest.
  const CVector& delta_coeffs() const { return coeffs_; }
  cplx delta_poly(cplx lambda) const;
  std::vector<DeltaRoot> roots(double cluster_radius = 1e-6) const;
  double choose_R(double safety = 1.1) const;

 private:
  int n_;
  int N_;
  cplx alpha_;
  CMatrix bstar_;
  CMatrix bstar_conj_;
  CVector coeffs_;
};

}  // namespace utm
