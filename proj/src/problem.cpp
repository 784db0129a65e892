#include "utm/problem.hpp"

#include <cmath>
#include <sstream>

namespace utm {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::WrongConditionCount: return "WrongConditionCount";
    case ErrorCode::RankDeficientBoundary: return "RankDeficientBoundary";
    case ErrorCode::InadmissibleDispersion: return "InadmissibleDispersion";
    case ErrorCode::KernelComputationFailed: return "KernelComputationFailed";
    case ErrorCode::CompletionFailed: return "CompletionFailed";
    case ErrorCode::CoeffsNotInKernel: return "CoeffsNotInKernel";
    case ErrorCode::DeltaIdenticallyZero: return "DeltaIdenticallyZero";
    case ErrorCode::OnDeltaZero: return "OnDeltaZero";
    case ErrorCode::NoComponents: return "NoComponents";
    case ErrorCode::NoDecaySector: return "NoDecaySector";
    case ErrorCode::TailBoundUnavailable: return "TailBoundUnavailable";
    case ErrorCode::NonpositiveX: return "NonpositiveX";
    case ErrorCode::FitResidualTooLarge: return "FitResidualTooLarge";
    case ErrorCode::DeformationRequired: return "DeformationRequired";
    case ErrorCode::ConfigParse: return "ConfigParse";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

constexpr double kUnitTol = 1e-12;

bool near(cplx z, cplx w) { return std::abs(z - w) <= kUnitTol * (1.0 + std::abs(w)); }

}  // namespace

WellPosednessClass classify(int n, cplx a) {
  if (n < 2 || a == cplx{0.0, 0.0}) {
    throw Error(ErrorCode::InvalidArgument, "classify requires n >= 2 and a != 0");
  }
  if (n % 2 == 0) {
    return {n / 2, a.real() >= 0.0};
  }
  if (near(a, I)) return {(n + 1) / 2, true};
  if (near(a, -I)) return {(n - 1) / 2, true};
  return {(n - 1) / 2, false};
}

int matrix_rank(const CMatrix& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::FullPivLU<CMatrix> lu(m);
  lu.setThreshold(rel_tol);
  return static_cast<int>(lu.rank());
}

ValidatedProblem validate(const HalfLineProblem& problem, bool allow_complex) {
  if (problem.n < 2) {
    throw Error(ErrorCode::InvalidArgument, "order must be >= 2");
  }
  const auto cls = classify(problem.n, problem.a);
  if (!cls.admissible) {
    std::ostringstream os;
    os << "n=" << problem.n << ", a=" << problem.a << " admits no well-posed half-line problem";
    throw Error(ErrorCode::InadmissibleDispersion, os.str());
  }
  if (problem.boundary.cols() != problem.n || problem.boundary.rows() != cls.N) {
    std::ostringstream os;
    os << "expected " << cls.N << " boundary forms with " << problem.n << " coefficients, got "
       << problem.boundary.rows() << "x" << problem.boundary.cols();
    throw Error(ErrorCode::WrongConditionCount, os.str());
  }
  if (!allow_complex && problem.boundary.imag().cwiseAbs().maxCoeff() != 0.0) {
    throw Error(ErrorCode::InvalidArgument, "complex boundary coefficients need allow_complex_bc");
  }
  if (matrix_rank(problem.boundary) != cls.N) {
    throw Error(ErrorCode::RankDeficientBoundary, "boundary forms are linearly dependent");
  }
  return ValidatedProblem(problem);
}

std::vector<HalfLineProblem> builtin_catalog() {
  std::vector<HalfLineProblem> out;

  {
    HalfLineProblem p{3, -I, CMatrix::Zero(1, 3), "lkdv-dirichlet"};
    p.boundary(0, 0) = 1.0;
    out.push_back(p);
  }
  {
    HalfLineProblem p{3, I, CMatrix::Zero(2, 3), "lkdv-reverse"};
    p.boundary(0, 0) = 1.0;
    p.boundary(1, 1) = 1.0;
    out.push_back(p);
  }
  {
    HalfLineProblem p{2, 1.0, CMatrix::Zero(1, 2), "heat-dirichlet"};
    p.boundary(0, 0) = 1.0;
    out.push_back(p);
  }
  {
    HalfLineProblem p{2, 1.0, CMatrix::Zero(1, 2), "heat-neumann"};
    p.boundary(0, 1) = 1.0;
    out.push_back(p);
  }
  {
    // B1 f = f'''(0) + 3 f''(0), B2 f = f'(0) - 2 f(0)
    HalfLineProblem p{4, std::polar(1.0, -pi / 6.0), CMatrix::Zero(2, 4), "robin-4"};
    p.boundary(0, 2) = 3.0;
    p.boundary(0, 3) = 1.0;
    p.boundary(1, 0) = -2.0;
    p.boundary(1, 1) = 1.0;
    out.push_back(p);
  }
  return out;
}

std::optional<HalfLineProblem> find_builtin(const std::string& label) {
  for (auto& p : builtin_catalog()) {
    if (p.label == label) return p;
  }
  return std::nullopt;
}

bool type_one_predicate(int n, cplx a) {
  if (n % 2 == 1) return near(a, -I);
  return a.real() > 0.0;
}

}  // namespace utm
