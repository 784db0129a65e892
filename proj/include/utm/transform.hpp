#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <vector>

#include "utm/char_matrix.hpp"
#include "utm/common.hpp"
#include "utm/contour.hpp"
#include "utm/datum.hpp"
#include "utm/problem.hpp"
#include "utm/quadrature.hpp"

namespace utm {

/// fhat(mu) = integral over [0, L] of e^{-i mu y} f(y) dy for complex mu, by
/// composite 20-point Gauss-Legendre. Finer panel levels are built on demand.
class FourierSampler {
 public:
  explicit FourierSampler(const InitialDatum& f);
  cplx operator()(cplx mu) const;
  double support() const { return L_; }

 private:
  struct Level {
    std::once_flag built;
    int panels = 0;
    CMatrix weighted;  // 20 x panels: Gauss weight * f at each node
  };
  const Level& level_for(double abs_mu) const;

  InitialDatum f_;
  double L_;
  int base_panels_;
  mutable std::vector<std::unique_ptr<Level>> levels_;
};

/// The x-kernel of F_k: F_k[f](lambda) = integral of kernel(k, lambda, x) f(x) dx.
/// Throws Error{OnDeltaZero} when Delta(alpha^(N+1-k) lambda) vanishes.
cplx kernel(const CharMatrix& cm, int k, cplx lambda, double x);

/// Weights w_l, l = 1..n-N, with F_k[f](lambda) = sum_l w_l fhat(alpha^(N+l-k) lambda).
std::vector<cplx> transform_weights(const CharMatrix& cm, int k, cplx lambda);

/// F_k[f](lambda) from the cofactor formula.
cplx forward(const CharMatrix& cm, const FourierSampler& fhat, int k, cplx lambda);
cplx forward(const ValidatedProblem& problem, const InitialDatum& f, int k, cplx lambda);

struct SolverOptions {
  QuadratureParams quad;
  double safety = 1.1;
  /// 0 picks min(0.1, R / 10).
  double delta_indent = 0.0;
  double theta_fraction = 0.5;
  /// Cap on the peak exponent allowed along rotated rays.
  double max_exponent = 10.0;
};

/// Contour integrals for one problem and one datum: the inverse transform at
/// t = 0 and the evolved field for t > 0.
class TransformPair {
 public:
  TransformPair(const ValidatedProblem& problem, const InitialDatum& f, SolverOptions options = {});

  const ValidatedProblem& problem() const { return problem_; }
  const CharMatrix& char_matrix() const { return *cm_; }
  const ContourSystem& contours() const { return cs_; }
  const InitialDatum& datum() const { return f_; }
  const SolverOptions& options() const { return options_; }
  int components() const { return static_cast<int>(cs_.gammas.size()); }

  cplx fourier(cplx mu) const { return (*fhat_)(mu); }
  cplx forward(int k, cplx lambda) const;
  /// F_k[S f], S f = (-i)^n f^(n).
  cplx forward_operator(int k, cplx lambda) const;

  /// Row k holds the integral over Gamma_k of e^{i lambda x} lambda^{-p} G_k(lambda)
  /// at t = 0, where G = F[f] (apply_operator false) or F[S f]. Gamma_0 uses
  /// tail subtraction; rays of Gamma_k on the real axis are turned into the
  /// decay sector.
  CMatrix contributions(const std::vector<double>& xs, int p = 0, bool apply_operator = false) const;

  /// Row k of contributions alone. Gamma_0 needs p >= 0; Gamma_k accepts any p.
  CVector contribution(int k, const std::vector<double>& xs, int p = 0, bool apply_operator = false) const;

  /// f[F[f]](x) = column sums of contributions(xs).
  CVector reconstruct(const std::vector<double>& xs) const;

  /// q(x_i, t_j) for t_j >= 0.
  CMatrix evolve(const std::vector<double>& xs, const std::vector<double>& ts) const;

  /// Contour system used for the t > 0 columns of evolve, given the grid extent.
  ContourSystem time_contours(double t_min, double x_min, double x_max) const;

  bool converged() const { return converged_; }

 private:
  CMatrix gamma0_subtracted(const std::vector<double>& xs, int p, bool apply_operator) const;
  CVector gamma_k_at_rest(int k, const std::vector<double>& xs, int p, bool apply_operator) const;
  CMatrix evolve_positive(const std::vector<double>& xs, const std::vector<double>& ts) const;

  ValidatedProblem problem_;
  InitialDatum f_;
  InitialDatum sf_;
  SolverOptions options_;
  std::shared_ptr<const CharMatrix> cm_;
  std::shared_ptr<const FourierSampler> fhat_;
  std::shared_ptr<const FourierSampler> sfhat_;
  ContourSystem cs_;
  mutable bool converged_ = true;
};

/// Generic inverse transform sum_k integral over Gamma_k of e^{i lambda x}
/// F(k, lambda): no tail subtraction, truncation by sampled decay.
CVector inverse(const ValidatedProblem& problem, const ContourSystem& cs,
                const std::function<cplx(int, cplx)>& F, const std::vector<double>& xs,
                const QuadratureParams& params = {}, double support = 0.0);

cplx reconstruct(const ValidatedProblem& problem, const InitialDatum& f, double x,
                 const SolverOptions& options = {});

/// Integral over Gamma_k (k >= 1) of e^{i lambda x} F_k[f](lambda); zero for f in Phi.
cplx gamma_k_vanishing(const ValidatedProblem& problem, const InitialDatum& f, int k, double x,
                       const SolverOptions& options = {});

}  // namespace utm
