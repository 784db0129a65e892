#include "utm/datum.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "jet.hpp"
#include "utm/boundary.hpp"

namespace utm {

namespace {

using RJet = detail::Jet<double>;

// Transition sharpness of the cutoff and width parameter of the bump profile.
constexpr double kCutoffWeight = 1.5;
constexpr double kBumpWeight = 6.0;
// exp(-600) and all its scaled derivatives vanish in double precision.
constexpr double kFlat = 600.0;

std::vector<double> factorials(int order) {
  std::vector<double> f(order + 1, 1.0);
  for (int k = 1; k <= order; ++k) f[k] = f[k - 1] * k;
  return f;
}

// Taylor jet of the cutoff in the scaled variable s = (x - L/2) / (L/2).
RJet cutoff_jet(double x, double L, int order) {
  const double half = 0.5 * L;
  const double s0 = (x - half) / half;
  if (s0 <= 0.0 || kCutoffWeight / s0 > kFlat) return RJet(order, s0 <= 0.5 ? 1.0 : 0.0);
  if (s0 >= 1.0 || kCutoffWeight / (1.0 - s0) > kFlat) return RJet(order, 0.0);

  RJet s(order, s0);
  if (order >= 1) s[1] = 1.0 / half;
  const RJet one_minus = 1.0 - s;
  if (s0 <= 0.5) {
    const RJet e = exp(kCutoffWeight * (reciprocal(one_minus) - reciprocal(s)));
    return reciprocal(1.0 + e);
  }
  const RJet e = exp(kCutoffWeight * (reciprocal(s) - reciprocal(one_minus)));
  return e * reciprocal(1.0 + e);
}

RJet bump_jet(double x, const Bump& b, int order) {
  const double s0 = (x - b.centre) / b.half_width;
  const double gap = 1.0 - s0 * s0;
  if (gap <= 0.0 || kBumpWeight / gap > kFlat) return RJet(order, 0.0);
  RJet s(order, s0);
  if (order >= 1) s[1] = 1.0 / b.half_width;
  const RJet q = 1.0 - s * s;
  return exp(kBumpWeight * (1.0 - reciprocal(q))) * b.amplitude;
}

double unit_uniform(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace

std::vector<double> cutoff_derivatives(double x, double L, int order) {
  const auto jet = cutoff_jet(x, L, order);
  const auto fact = factorials(order);
  std::vector<double> out(order + 1);
  for (int k = 0; k <= order; ++k) out[k] = jet[k] * fact[k];
  return out;
}

std::vector<double> bump_derivatives(double x, const Bump& b, int order) {
  Bump unit = b;
  unit.amplitude = 1.0;
  const auto jet = bump_jet(x, unit, order);
  const auto fact = factorials(order);
  std::vector<double> out(order + 1);
  for (int k = 0; k <= order; ++k) out[k] = jet[k] * fact[k];
  return out;
}

InitialDatum::InitialDatum(double support, CVector poly_coeffs, std::vector<Bump> bumps,
                           int max_order)
    : support_(support), poly_(std::move(poly_coeffs)), bumps_(std::move(bumps)),
      max_order_(max_order) {
  if (!(support > 0.0)) throw Error(ErrorCode::InvalidArgument, "support must be positive");
}

CVector InitialDatum::derivatives(double x, int kmax) const {
  if (kmax < 0 || kmax > max_order()) {
    throw Error(ErrorCode::InvalidArgument, "derivative order outside the datum's range");
  }
  CVector out = CVector::Zero(kmax + 1);
  if (x < 0.0 || x >= support_) return out;

  const int order = kmax + shift_;
  const auto deg = static_cast<int>(poly_.size()) - 1;
  const auto fact = factorials(std::max(order, deg));

  // Polynomial Taylor coefficients at x: p_k = sum_j c_j x^(j-k) / ((j-k)! k!).
  detail::Jet<cplx> poly(order);
  for (int k = 0; k <= std::min(order, deg); ++k) {
    cplx s{};
    double xp = 1.0;
    for (int j = k; j <= deg; ++j) {
      s += poly_[j] * xp / fact[j - k];
      xp *= x;
    }
    poly[k] = s / fact[k];
  }

  const RJet chi = cutoff_jet(x, support_, order);
  detail::Jet<cplx> total(order);
  for (int k = 0; k <= order; ++k) {
    cplx s{};
    for (int j = 0; j <= k; ++j) s += chi[j] * poly[k - j];
    total[k] = s;
  }
  for (const auto& b : bumps_) {
    const RJet bj = bump_jet(x, b, order);
    for (int k = 0; k <= order; ++k) total[k] += bj[k];
  }
  for (int k = 0; k <= kmax; ++k) out[k] = scale_ * total[k + shift_] * fact[k + shift_];
  return out;
}

cplx InitialDatum::derivative(double x, int k) const { return derivatives(x, k)[k]; }

CVector InitialDatum::boundary_vector(int count) const { return derivatives(0.0, count - 1); }

InitialDatum InitialDatum::differentiated(int shift, cplx scale) const {
  if (shift < 0 || shift > max_order()) {
    throw Error(ErrorCode::InvalidArgument, "derivative shift outside the datum's range");
  }
  InitialDatum d = *this;
  d.shift_ += shift;
  d.scale_ *= scale;
  return d;
}

std::vector<Bump> random_bumps(double L, std::uint64_t seed, double amplitude) {
  std::mt19937_64 gen(seed);
  const int count = 1 + static_cast<int>(gen() % 2);
  std::vector<Bump> out;
  for (int i = 0; i < count; ++i) {
    Bump b;
    b.half_width = L * (0.3 + 0.075 * unit_uniform(gen));
    const double lo = 0.25 * L + b.half_width;
    const double hi = L - b.half_width;
    b.centre = lo + (hi - lo) * unit_uniform(gen);
    const double sign = (gen() & 1U) ? 1.0 : -1.0;
    b.amplitude = sign * amplitude * (0.5 + 0.5 * unit_uniform(gen));
    out.push_back(b);
  }
  return out;
}

InitialDatum make_datum(const ValidatedProblem& problem, double cutoff_scale,
                        const CVector& kernel_coeffs, std::uint64_t bump_seed,
                        double bump_amplitude) {
  const int n = problem.order();
  if (!(cutoff_scale > 0.0)) throw Error(ErrorCode::InvalidArgument, "cutoff scale must be positive");
  if (kernel_coeffs.size() != n) {
    throw Error(ErrorCode::InvalidArgument, "kernel coefficient vector must have length n");
  }
  const double res = (problem.boundary() * kernel_coeffs).cwiseAbs().maxCoeff();
  const double ref = problem.boundary().cwiseAbs().maxCoeff() *
                     std::max(1.0, kernel_coeffs.cwiseAbs().maxCoeff());
  if (res > 1e-12 * ref) {
    throw Error(ErrorCode::CoeffsNotInKernel, "boundary data do not satisfy B f = 0");
  }
  auto bumps = bump_amplitude == 0.0 ? std::vector<Bump>{}
                                     : random_bumps(cutoff_scale, bump_seed, bump_amplitude);
  return InitialDatum(cutoff_scale, kernel_coeffs, std::move(bumps), 2 * n + 3);
}

InitialDatum apply_operator(const ValidatedProblem& problem, const InitialDatum& f) {
  const int n = problem.order();
  static const cplx cycle[4] = {1.0, -I, -1.0, I};
  return f.differentiated(n, cycle[n % 4]);
}

CVector generic_kernel_coeffs(const ValidatedProblem& problem, double L) {
  const CMatrix basis = canonical_rows(kernel_basis(problem.boundary()).transpose());
  CVector c = CVector::Zero(basis.cols());
  for (Eigen::Index i = 0; i < basis.rows(); ++i) {
    c += (1.0 - 0.3 * static_cast<double>(i)) * basis.row(i).transpose();
  }
  for (auto& v : c) {
    if (std::abs(v) < 1e-14) v = 0.0;
  }
  const auto fact = factorials(static_cast<int>(c.size()));
  double size = 0.0;
  for (Eigen::Index j = 0; j < c.size(); ++j) {
    size = std::max(size, std::abs(c[j]) * std::pow(0.5 * L, static_cast<double>(j)) / fact[j]);
  }
  return c / size;
}

}  // namespace utm
