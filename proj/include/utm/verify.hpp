#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "utm/datum.hpp"
#include "utm/transform.hpp"

namespace utm {

struct VerifySettings {
  double support = 3.0;
  std::uint64_t seed = 1;
  double tol = 1e-6;
  SolverOptions solver;
};

/// Outcome of one numbered acceptance criterion for one problem.
struct CheckResult {
  int criterion = 0;
  std::string name;
  bool applicable = true;
  bool pass = false;
  /// Worst measured quantity and the bound it was held to.
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
  double seconds = 0.0;
};

struct NamedDatum {
  std::string name;
  InitialDatum datum;
};

/// "boundary" (generic kernel coefficients, no bumps), "bump" (bumps only) and
/// "mixed" (both).
std::vector<NamedDatum> test_data(const ValidatedProblem& problem, const VerifySettings& s);

/// Criteria 1 and 2: f[F[f]] = f and the Gamma_k, k >= 1, integrals vanish at
/// 20 points of [0.05 L, L] for every test datum.
std::vector<CheckResult> check_reconstruction(const ValidatedProblem& problem, const VerifySettings& s);

/// Criterion 3: heat problems with Dirichlet or Neumann data against the
/// sine or cosine transform solution. Not applicable elsewhere.
CheckResult check_heat_baseline(const ValidatedProblem& problem, const VerifySettings& s);

/// Criterion 4: finite-difference residual at 9 interior points with step
/// halving, boundary forms extrapolated to x = 0, and q(., 0) = f.
CheckResult check_evolution(const ValidatedProblem& problem, const VerifySettings& s);

/// Criteria 5, 6 and 7 on the mixed datum: remainder structure, type-II
/// residuals with both sides of the type-II spectral identity, and type-I
/// verdicts against the predicate.
std::vector<CheckResult> check_spectral(const ValidatedProblem& problem, const VerifySettings& s);

/// Criterion 8: cofactor identity at 20 random points; for robin-4 also the
/// root regression (|root| < 4, double root at 0).
CheckResult check_char_algebra(const ValidatedProblem& problem, const VerifySettings& s);

/// Criterion 9: closed-form transform kernels of the two third-order problems
/// at 50 random (x, lambda). Not applicable elsewhere.
CheckResult check_transform_kernels(const ValidatedProblem& problem, const VerifySettings& s);

/// Every criterion, in order.
std::vector<CheckResult> verify_problem(const ValidatedProblem& problem, const VerifySettings& s);

/// Polynomial extrapolation of B q(., t) to x = 0 from samples q(x_i),
/// x_i = i * spacing, i = 1..count.
CVector extrapolated_boundary_values(const ValidatedProblem& problem, const CVector& samples,
                                     double spacing, int degree);

}  // namespace utm
