#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace utm {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

enum class ErrorCode {
  WrongConditionCount,
  RankDeficientBoundary,
  InadmissibleDispersion,
  KernelComputationFailed,
  CompletionFailed,
  CoeffsNotInKernel,
  DeltaIdenticallyZero,
  OnDeltaZero,
  NoComponents,
  NoDecaySector,
  TailBoundUnavailable,
  NonpositiveX,
  FitResidualTooLarge,
  DeformationRequired,
  ConfigParse,
  InvalidArgument,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace utm
