#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "utm/config.hpp"

namespace utm {

/// Everything a subcommand needs after flags and problem files are merged.
struct RunConfig {
  std::string source;  ///< builtin name or file path
  HalfLineProblem problem;
  bool allow_complex_bc = false;
  DatumSpec datum;
  QuadratureParams quad;
  std::string out_dir;  ///< empty: CSV to stdout, summaries to stderr
  double tol = 1e-6;
  std::vector<double> xs;
  std::vector<double> ts;
};

/// Doubles in shortest round-trip form.
std::string format_double(double v);

/// Entry point of the `utm` executable. Exit code 0 iff every requested check
/// passes; 1 when a check fails; 2 on usage, parse or numeric errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace utm
