#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "utm/problem.hpp"
#include "utm/quadrature.hpp"

namespace utm {

/// Datum used by the CLI: kernel coefficients (generic when absent), cutoff
/// scale and bump seed.
struct DatumSpec {
  std::optional<CVector> kernel;
  double support = 3.0;
  std::uint64_t seed = 1;
};

/// Contents of a problem file.
///
///   # comment
///   label=lkdv-dirichlet
///   order=3
///   a=0,-1
///   bc=1,0,0
///   datum.support=3
///   solve.xs=0.5:0.5:2
struct ProblemFile {
  HalfLineProblem problem;
  bool allow_complex_bc = false;
  DatumSpec datum;
  QuadratureParams quad;
  std::vector<double> xs;
  std::vector<double> ts;
};

/// Throws Error{ConfigParse} naming the offending line.
ProblemFile parse_problem_file(std::istream& in, const std::string& source = "<input>");
ProblemFile load_problem_file(const std::string& path);

/// "re,im" or a single real.
cplx parse_complex(const std::string& text);
/// Comma separated entries; a complex entry is written "(re;im)".
CVector parse_coefficients(const std::string& text);

}  // namespace utm
