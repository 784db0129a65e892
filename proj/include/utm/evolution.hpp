#pragma once

#include <vector>

#include "utm/transform.hpp"

namespace utm {

/// q(x_i, t_j) on a grid.
struct SolutionField {
  std::vector<double> xs;
  std::vector<double> ts;
  CMatrix values;  ///< xs.size() x ts.size()
};

/// q(x, t) = sum_k integral over Gamma_k of e^{i lambda x - a lambda^n t} F_k[f](lambda).
/// t = 0 is the reconstruction; t > 0 uses contours deformed into the
/// sectors where the evolution factor decays. Throws
/// Error{DeformationRequired} if a real-axis ray is left without decay.
cplx solve_at(const ValidatedProblem& problem, const InitialDatum& f, double x, double t,
              const SolverOptions& options = {});

/// All positive times share one deformed contour system and one set of
/// forward-transform values per node.
SolutionField solve_grid(const ValidatedProblem& problem, const InitialDatum& f,
                         const std::vector<double>& xs, const std::vector<double>& ts,
                         const SolverOptions& options = {});
SolutionField solve_grid(const TransformPair& pair, const std::vector<double>& xs,
                         const std::vector<double>& ts);

/// Comma list "a,b,c" or range "start:step:stop" (stop included up to rounding).
std::vector<double> parse_grid(const std::string& spec);

}  // namespace utm
