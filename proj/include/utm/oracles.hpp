#pragma once

#include <functional>
#include <vector>

#include "utm/common.hpp"
#include "utm/contour.hpp"
#include "utm/datum.hpp"

namespace utm {

enum class OracleMethod { SineTransform, CosineTransform, AdaptiveQuad, FdResidual, Residue };

struct OracleResult {
  cplx value{};
  OracleMethod method = OracleMethod::AdaptiveQuad;
  double est_error = 0.0;
};

/// q_t = q_xx, q(0, t) = 0: (2/pi) int_0^inf sin(lambda x) e^{-lambda^2 t} F_s(lambda) d lambda
/// with F_s(lambda) = int_0^L sin(lambda y) f(y) dy, by nested Gauss-Kronrod.
OracleResult heat_dirichlet_solution(const InitialDatum& f, double x, double t);

/// Same with cosines, for q_x(0, t) = 0.
OracleResult heat_neumann_solution(const InitialDatum& f, double x, double t);

/// Adaptive Gauss-Kronrod along a finite segment; infinite rays are cut at `r_max`.
OracleResult adaptive_reference(const std::function<cplx(cplx)>& g, const PathSegment& seg,
                                double tol = 1e-12, double r_max = 0.0);

/// Weights of the centred second-order stencil for d^k/dx^k on offsets
/// -p..p (p = floor((k + 1) / 2)), in units of h^-k.
std::vector<double> central_weights(int k);

/// |q_t + a (-i)^n q^(n)| by centred second-order differences with space step
/// h and time step ht (ht <= 0 means ht = h). est_error compares with h / 2.
OracleResult fd_residual(const std::function<cplx(double, double)>& q, int n, cplx a, double x,
                         double t, double h, double ht = 0.0);

/// The residual alone, without the halved-step comparison.
double fd_residual_value(const std::function<cplx(double, double)>& q, int n, cplx a, double x,
                         double t, double h, double ht);

}  // namespace utm
