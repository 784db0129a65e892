#include "utm/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "utm/problem.hpp"

namespace utm {

namespace {

cplx minus_i_pow(int n) {
  static const cplx cycle[4] = {1.0, -I, -1.0, I};
  return cycle[((n % 4) + 4) % 4];
}

}  // namespace

CMatrix concomitant_matrix(int n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "concomitant needs n >= 2");
  CMatrix C = CMatrix::Zero(n, n);
  const cplx lead = minus_i_pow(n);
  for (int p = 0; p < n; ++p) {
    const int q = n - 1 - p;
    C(p, q) = (q % 2 == 0) ? lead : -lead;
  }
  return C;
}

cplx concomitant(const CVector& u, const CVector& v) {
  const auto C = concomitant_matrix(static_cast<int>(u.size()));
  return (u.transpose() * C * v.conjugate())(0, 0);
}

CMatrix kernel_basis(const CMatrix& B) {
  const auto n = B.cols();
  Eigen::JacobiSVD<CMatrix> svd(B, Eigen::ComputeFullV);
  svd.setThreshold(1e-12);
  const auto r = svd.rank();
  if (r != B.rows()) {
    throw Error(ErrorCode::KernelComputationFailed, "boundary matrix is rank deficient");
  }
  return svd.matrixV().rightCols(n - r);
}

CMatrix canonical_rows(const CMatrix& rows) {
  CMatrix A = rows;
  const auto m = A.rows();
  const auto n = A.cols();
  const double scale = std::max(A.cwiseAbs().maxCoeff(), 1e-300);
  std::vector<Eigen::Index> pivot_col(m, -1);
  Eigen::Index row = 0;
  for (Eigen::Index col = n - 1; col >= 0 && row < m; --col) {
    Eigen::Index best = row;
    for (Eigen::Index i = row + 1; i < m; ++i) {
      if (std::abs(A(i, col)) > std::abs(A(best, col))) best = i;
    }
    if (std::abs(A(best, col)) <= 1e-12 * scale) continue;
    A.row(row).swap(A.row(best));
    A.row(row) /= A(row, col);
    for (Eigen::Index i = 0; i < m; ++i) {
      if (i != row) A.row(i) -= A(i, col) * A.row(row);
    }
    pivot_col[row] = col;
    ++row;
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (std::abs(A(i, j).real()) < 1e-14) A(i, j).real(0.0);
      if (std::abs(A(i, j).imag()) < 1e-14) A(i, j).imag(0.0);
    }
  }
  std::vector<Eigen::Index> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](auto x, auto y) { return pivot_col[x] < pivot_col[y]; });
  CMatrix out(m, n);
  for (Eigen::Index i = 0; i < m; ++i) out.row(i) = A.row(order[i]);
  return out;
}

CMatrix adjoint_forms(const CMatrix& B) {
  const auto n = static_cast<int>(B.cols());
  const CMatrix K = kernel_basis(B);
  const CMatrix raw = (K.transpose() * concomitant_matrix(n)).conjugate();
  return canonical_rows(raw);
}

bool same_row_space(const CMatrix& A, const CMatrix& B, double tol) {
  if (A.cols() != B.cols()) return false;
  const int ra = matrix_rank(A, tol);
  const int rb = matrix_rank(B, tol);
  CMatrix both(A.rows() + B.rows(), A.cols());
  both << A, B;
  return ra == rb && matrix_rank(both, tol) == ra;
}

ComplementaryForms complementary_forms(const CMatrix& B, const CMatrix& Bstar) {
  const auto n = static_cast<int>(B.cols());
  const CMatrix C = concomitant_matrix(n);
  const CMatrix K = kernel_basis(B);
  const CMatrix Bs_bar = Bstar.conjugate();

  // (Bc K)^T conj(B*) = -K^T C fixes Bc on ker(B).
  const CMatrix rhs = -(K.transpose() * C);
  const CMatrix P =
      Bs_bar.transpose().completeOrthogonalDecomposition().solve(rhs.transpose()).transpose();
  ComplementaryForms out;
  out.Bc = P.transpose() * K.adjoint();

  // B^T conj(Bc*) = -C - Bc^T conj(B*).
  const CMatrix rest = -C - out.Bc.transpose() * Bs_bar;
  const CMatrix X = B.transpose().completeOrthogonalDecomposition().solve(rest);
  out.Bc_star = X.conjugate();

  const CMatrix full = C + B.transpose() * out.Bc_star.conjugate() + out.Bc.transpose() * Bs_bar;
  out.residual = full.cwiseAbs().maxCoeff();
  if (!(out.residual < 1e-12)) {
    throw Error(ErrorCode::CompletionFailed, "complementary forms do not close the identity");
  }
  return out;
}

}  // namespace utm
