#include "utm/evolution.hpp"

#include <cmath>
#include <sstream>

namespace utm {

cplx solve_at(const ValidatedProblem& problem, const InitialDatum& f, double x, double t,
              const SolverOptions& options) {
  return TransformPair(problem, f, options).evolve({x}, {t})(0, 0);
}

SolutionField solve_grid(const TransformPair& pair, const std::vector<double>& xs,
                         const std::vector<double>& ts) {
  if (xs.empty() || ts.empty()) throw Error(ErrorCode::InvalidArgument, "empty solution grid");
  return {xs, ts, pair.evolve(xs, ts)};
}

SolutionField solve_grid(const ValidatedProblem& problem, const InitialDatum& f,
                         const std::vector<double>& xs, const std::vector<double>& ts,
                         const SolverOptions& options) {
  return solve_grid(TransformPair(problem, f, options), xs, ts);
}

namespace {

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw Error(ErrorCode::InvalidArgument, "bad number '" + s + "'");
  return v;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> out;
  const std::string s = trim(spec);
  if (s.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(parse_number(trim(item)));
    if (parts.size() != 3 || !(parts[1] > 0.0) || parts[2] < parts[0]) {
      throw Error(ErrorCode::InvalidArgument, "range must be start:step:stop with step > 0");
    }
    const auto count = static_cast<long>(std::floor((parts[2] - parts[0]) / parts[1] + 1e-9));
    for (long i = 0; i <= count; ++i) out.push_back(parts[0] + static_cast<double>(i) * parts[1]);
    return out;
  }
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(trim(item)));
  if (out.empty()) throw Error(ErrorCode::InvalidArgument, "empty grid");
  return out;
}

}  // namespace utm
