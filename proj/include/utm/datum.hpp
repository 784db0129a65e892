#pragma once

#include <cstdint>
#include <vector>

#include "utm/common.hpp"
#include "utm/problem.hpp"

namespace utm {

/// One smooth bump amplitude * exp(w (1 - 1/(1 - s^2))), s = (x - centre) / half_width.
struct Bump {
  double centre = 0.0;
  double half_width = 1.0;
  double amplitude = 1.0;
};

/// f(x) = chi(x) * sum_j c_j x^j / j! + sum of bumps, restricted to [0, inf).
///
/// chi is 1 on [0, L/2] and 0 beyond L; every bump lives inside [L/4, L], so
/// the boundary values of f are exactly c_0, ..., c_{n-1}. Derivatives are
/// exact (Taylor arithmetic). A datum may carry a derivative shift and a
/// scale, which is how S f = (-i)^n f^(n) is represented.
class InitialDatum {
 public:
  InitialDatum(double support, CVector poly_coeffs, std::vector<Bump> bumps, int max_order);

  double support() const { return support_; }
  int max_order() const { return max_order_ - shift_; }
  const CVector& poly_coeffs() const { return poly_; }
  const std::vector<Bump>& bumps() const { return bumps_; }

  cplx value(double x) const { return derivative(x, 0); }
  cplx derivative(double x, int k) const;
  /// f, f', ..., f^(kmax) at x.
  CVector derivatives(double x, int kmax) const;
  /// (f(0), f'(0), ..., f^(count-1)(0)).
  CVector boundary_vector(int count) const;

  /// c * d^shift/dx^shift of this datum.
  InitialDatum differentiated(int shift, cplx scale) const;

 private:
  double support_;
  CVector poly_;
  std::vector<Bump> bumps_;
  int max_order_;
  int shift_ = 0;
  cplx scale_{1.0, 0.0};
};

/// Cutoff 1 on [0, L/2], 0 beyond L, with derivatives up to `order`.
std::vector<double> cutoff_derivatives(double x, double L, int order);
/// Derivatives of a unit bump profile up to `order`.
std::vector<double> bump_derivatives(double x, const Bump& b, int order);

/// Seeded random bumps inside [L/4, L]; portable across standard libraries.
std::vector<Bump> random_bumps(double L, std::uint64_t seed, double amplitude = 1.0);

/// Throws Error{CoeffsNotInKernel} unless B * kernel_coeffs = 0.
InitialDatum make_datum(const ValidatedProblem& problem, double cutoff_scale,
                        const CVector& kernel_coeffs, std::uint64_t bump_seed,
                        double bump_amplitude = 1.0);

/// S f = (-i)^n f^(n).
InitialDatum apply_operator(const ValidatedProblem& problem, const InitialDatum& f);

/// A kernel vector of B with every free direction present, scaled so that
/// max_j |c_j| (L/2)^j / j! = 1.
CVector generic_kernel_coeffs(const ValidatedProblem& problem, double L);

}  // namespace utm
