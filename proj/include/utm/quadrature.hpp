#pragma once

#include <functional>
#include <vector>

#include "utm/common.hpp"
#include "utm/contour.hpp"

namespace utm {

class InitialDatum;

struct QuadratureParams {
  double rel_tol = 1e-11;
  double abs_tol = 1e-12;
  /// Order of the finer rule; panels use max_panel_order / 2 and max_panel_order points.
  int max_panel_order = 32;
  /// Hard cap on the truncation radius of infinite rays.
  double truncation_radius = 2e4;
  /// Gauss nodes of the coarse rule per wavelength of the fastest oscillation.
  double oscillation_density = 6.0;
  int max_refinements = 12;
};

/// Local oscillation/variation rate of an integrand along a segment,
/// base + coef * |lambda|^power, in radians per unit arclength.
struct RateHint {
  double base = 1.0;
  double coef = 0.0;
  int power = 0;
  double at(double r) const;
};

/// Bound on |integrand| along an infinite ray, used to pick the truncation radius.
struct DecayModel {
  enum class Kind { None, Exponential, Algebraic, Sampled };
  Kind kind = Kind::None;
  /// Magnitude at the inner radius.
  double scale = 1.0;
  /// Exponential: scale * exp(growth (r - r_in) - decay (r^power - r_in^power)).
  double growth = 0.0;
  double decay = 0.0;
  int power = 1;
  /// Algebraic: scale * (r / r_in)^(-order), order > 1.
  double order = 2.0;
  /// Sampled: max |integrand| over [r, 2r].
  std::function<double(double)> magnitude;

  static DecayModel exponential(double scale, double growth, double decay, int power);
  static DecayModel algebraic(double scale, double order);
  static DecayModel sampled(std::function<double(double)> magnitude);
};

/// Radius beyond which the modelled tail stays below abs_tol / 10. Throws
/// Error{TailBoundUnavailable} for Kind::None. `capped` reports hitting `cap`.
double truncation_radius(const PathSegment& seg, const DecayModel& model, double abs_tol,
                         double cap, bool* capped = nullptr);

/// Values of a vector-valued integrand: out(i, b) = g_b(lambdas[i]).
using BatchIntegrand = std::function<void(const std::vector<cplx>& lambdas, CMatrix& out)>;

struct BatchResult {
  CVector value;
  double error = 0.0;
  bool converged = true;
  long evaluations = 0;
  double truncated_at = 0.0;
};

struct ScalarResult {
  cplx value{};
  double error = 0.0;
  bool converged = true;
};

/// Gauss-Legendre nodes and weights on [-1, 1], cached.
const std::pair<RVector, RVector>& gauss_legendre(int points);

/// Adaptive panel Gauss-Legendre along one segment with p / 2p order
/// doubling. Every batch component shares the nodes, so expensive factors of
/// the integrand are evaluated once per node.
BatchResult integrate_batch(const BatchIntegrand& g, Eigen::Index batch, const PathSegment& seg,
                            const RateHint& rate, const DecayModel& decay,
                            const QuadratureParams& params);

BatchResult integrate_contour(const BatchIntegrand& g, Eigen::Index batch, const Contour& contour,
                              const std::vector<RateHint>& rates,
                              const std::vector<DecayModel>& decays, const QuadratureParams& params);

ScalarResult integrate_segment(const std::function<cplx(cplx)>& g, const PathSegment& seg,
                               const QuadratureParams& params, const RateHint& rate = {},
                               const DecayModel& decay = {});

/// Integral of e^{i lambda x} lambda^{-m} over the indented real line: exactly
/// zero, since the only pole lies below the contour and the integrand decays
/// in the upper half-plane. Throws Error{NonpositiveX}.
cplx gamma0_monomial_integral(int m, double x, double delta_indent);

/// c_j = f^(j)(0), j < m_terms: F_0[f](lambda) - s(lambda) / 2 pi decays like
/// lambda^(-m_terms - 1) with s(lambda) = sum_j c_j / (i lambda)^(j + 1).
std::vector<cplx> tail_subtraction_coeffs(const InitialDatum& f, int m_terms);
cplx tail_sum(const std::vector<cplx>& coeffs, cplx lambda);

}  // namespace utm
