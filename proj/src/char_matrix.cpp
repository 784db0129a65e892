#include "utm/char_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "utm/boundary.hpp"

namespace utm {

CharMatrix::CharMatrix(const ValidatedProblem& problem)
    : n_(problem.order()), N_(problem.conditions()), alpha_(std::polar(1.0, 2.0 * pi / n_)) {
  bstar_ = adjoint_forms(problem.boundary());
  bstar_conj_ = bstar_.conjugate();

  // Interpolate Delta at the roots of unity of order deg + 1.
  const int m = size();
  const int deg = (n_ - 1) * m;
  const int pts = deg + 1;
  CVector samples(pts);
  for (int k = 0; k < pts; ++k) samples[k] = delta(std::polar(1.0, 2.0 * pi * k / pts));
  CVector c(pts);
  for (int j = 0; j < pts; ++j) {
    cplx s{};
    for (int k = 0; k < pts; ++k) s += samples[k] * std::polar(1.0, -2.0 * pi * j * k / pts);
    c[j] = s / static_cast<double>(pts);
  }

  double scale = 1.0;
  for (int j = 0; j < m; ++j) scale *= bstar_.row(j).cwiseAbs().sum();
  const double cmax = c.cwiseAbs().maxCoeff();
  if (cmax <= 1e-12 * scale) {
    throw Error(ErrorCode::DeltaIdenticallyZero, "characteristic determinant vanishes identically");
  }
  for (auto& v : c) {
    if (std::abs(v) < 1e-12 * cmax) v = 0.0;
  }
  int top = pts - 1;
  while (top > 0 && c[top] == cplx{}) --top;
  coeffs_ = c.head(top + 1);
}

cplx CharMatrix::alpha_pow(int p) const {
  const int r = ((p % n_) + n_) % n_;
  return std::polar(1.0, 2.0 * pi * r / n_);
}

cplx CharMatrix::entry(int k, int j, cplx lambda) const {
  const cplx z = -I * alpha_pow(k - 1) * lambda;
  cplx s{};
  for (int r = n_ - 1; r >= 0; --r) s = s * z + bstar_conj_(j - 1, r);
  return s;
}

CMatrix CharMatrix::eval(cplx lambda) const {
  const int m = size();
  CMatrix M(m, m);
  for (int k = 1; k <= m; ++k) {
    for (int j = 1; j <= m; ++j) M(k - 1, j - 1) = entry(k, j, lambda);
  }
  return M;
}

cplx CharMatrix::delta(cplx lambda) const {
  const int m = size();
  if (m == 1) return entry(1, 1, lambda);
  return eval(lambda).determinant();
}

cplx CharMatrix::cofactor_det(int l, int j, cplx lambda) const {
  const int m = size();
  if (m == 1) return 1.0;
  // Rows l+1, ..., l+m-1 and columns j+1, ..., j+m-1 of [[M, M], [M, M]].
  CMatrix X(m - 1, m - 1);
  for (int a = 0; a < m - 1; ++a) {
    const int row = (l + a) % m + 1;
    for (int b = 0; b < m - 1; ++b) {
      const int col = (j + b) % m + 1;
      X(a, b) = entry(row, col, lambda);
    }
  }
  return X.determinant();
}

double CharMatrix::cofactor_sign(int l, int j) const {
  return ((size() - 1) * (l + j)) % 2 == 0 ? 1.0 : -1.0;
}

cplx CharMatrix::delta_poly(cplx lambda) const {
  cplx s{};
  for (auto i = coeffs_.size() - 1; i >= 0; --i) s = s * lambda + coeffs_[i];
  return s;
}

std::vector<DeltaRoot> CharMatrix::roots(double cluster_radius) const {
  std::vector<DeltaRoot> out;
  Eigen::Index low = 0;
  while (low < coeffs_.size() && coeffs_[low] == cplx{}) ++low;
  if (low > 0) out.push_back({0.0, static_cast<int>(low)});

  const CVector p = coeffs_.tail(coeffs_.size() - low);
  const auto d = p.size() - 1;
  if (d < 1) return out;
  CMatrix companion = CMatrix::Zero(d, d);
  for (Eigen::Index i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < d; ++i) companion(i, d - 1) = -p[i] / p[d];
  Eigen::ComplexEigenSolver<CMatrix> es(companion, false);
  std::vector<cplx> ev(es.eigenvalues().begin(), es.eigenvalues().end());
  std::sort(ev.begin(), ev.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });

  std::vector<bool> used(ev.size(), false);
  for (std::size_t i = 0; i < ev.size(); ++i) {
    if (used[i]) continue;
    cplx sum = ev[i];
    int count = 1;
    for (std::size_t j = i + 1; j < ev.size(); ++j) {
      if (!used[j] && std::abs(ev[j] - ev[i]) < cluster_radius) {
        used[j] = true;
        sum += ev[j];
        ++count;
      }
    }
    out.push_back({sum / static_cast<double>(count), count});
  }
  return out;
}

double CharMatrix::choose_R(double safety) const {
  if (safety < 1.0) throw Error(ErrorCode::InvalidArgument, "safety factor must be >= 1");
  double r = 1.0;
  for (const auto& root : roots()) r = std::max(r, std::abs(root.value));
  return safety * r;
}

}  // namespace utm
