#pragma once

#include <optional>

#include "utm/common.hpp"
#include "utm/datum.hpp"
#include "utm/problem.hpp"

namespace utm::test {

/// Code of the utm::Error thrown by fn, or nullopt when nothing is thrown.
template <class Fn>
std::optional<ErrorCode> error_code(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline ValidatedProblem builtin(const std::string& label) { return validate(*find_builtin(label)); }

/// Kernel coefficients with the generic boundary behaviour plus seeded bumps on [0, 3].
inline InitialDatum mixed_datum(const ValidatedProblem& p, std::uint64_t seed = 3) {
  return make_datum(p, 3.0, generic_kernel_coeffs(p, 3.0), seed, 1.0);
}

inline InitialDatum zero_datum(const ValidatedProblem& p) {
  return make_datum(p, 3.0, CVector::Zero(p.order()), 1, 0.0);
}

}  // namespace utm::test
