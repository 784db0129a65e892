#pragma once

#include <optional>
#include <string>
#include <vector>

#include "utm/common.hpp"

namespace utm {

/// Number of boundary conditions required at x = 0 and whether (n, a) is an
/// admissible dispersion pair at all.
struct WellPosednessClass {
  int N = 0;
  bool admissible = false;
};

/// q_t + a (-i)^n d^n q / dx^n = 0 on (0, inf) with N boundary forms at x = 0.
///
/// Row r of `boundary` holds the coefficients of f(0), f'(0), ..., f^(n-1)(0).
struct HalfLineProblem {
  int n = 2;
  cplx a{1.0, 0.0};
  CMatrix boundary;
  std::string label;
};

WellPosednessClass classify(int n, cplx a);

/// Numerical rank by full-pivot row reduction; pivots below
/// `rel_tol * max|pivot|` count as zero.
int matrix_rank(const CMatrix& m, double rel_tol = 1e-12);

/// A problem that passed `validate`. Immutable.
class ValidatedProblem {
 public:
  const HalfLineProblem& problem() const { return problem_; }
  int order() const { return problem_.n; }
  cplx dispersion() const { return problem_.a; }
  int conditions() const { return static_cast<int>(problem_.boundary.rows()); }
  const CMatrix& boundary() const { return problem_.boundary; }
  const std::string& label() const { return problem_.label; }

 private:
  friend ValidatedProblem validate(const HalfLineProblem&, bool);
  explicit ValidatedProblem(HalfLineProblem p) : problem_(std::move(p)) {}
  HalfLineProblem problem_;
};

/// Throws Error{WrongConditionCount | RankDeficientBoundary |
/// InadmissibleDispersion}. Complex boundary coefficients are rejected unless
/// `allow_complex` is set.
ValidatedProblem validate(const HalfLineProblem& problem, bool allow_complex = false);

/// lkdv-dirichlet, lkdv-reverse, heat-dirichlet, heat-neumann, robin-4.
std::vector<HalfLineProblem> builtin_catalog();
std::optional<HalfLineProblem> find_builtin(const std::string& label);

/// (n odd and a = -i) or (n even and Re a > 0): the k >= 1 contours leave the
/// real axis and the forward transforms there are also type-I.
bool type_one_predicate(int n, cplx a);

}  // namespace utm
