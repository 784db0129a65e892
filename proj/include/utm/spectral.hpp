#pragma once

#include <string>
#include <vector>

#include "utm/transform.hpp"

namespace utm {

enum class Verdict { Pass, Fail, Divergent };

const char* to_string(Verdict v);

/// F_k[S f](lambda) - lambda^n F_k[f](lambda) at each lambda.
CVector remainder_samples(const TransformPair& pair, int k, const std::vector<cplx>& lambdas);
CVector remainder_samples(const ValidatedProblem& problem, const InitialDatum& f, int k,
                          const std::vector<cplx>& lambdas);

/// Least-squares fits of the remainder on one contour index.
struct RemainderFit {
  int k = 0;
  /// Degree n - 1, ascending.
  CVector coeffs;
  /// Degree n + 1 on the same samples; entries n and n + 1 should vanish.
  CVector overfit;
  /// Degree n - 1 again on a disjoint set of samples.
  CVector check;
  double residual = 0.0;
  double excess = 0.0;
  double check_gap = 0.0;
  /// +1 or -1: which sign of the closed form the fit matches, 0 if neither.
  int sign = 0;
};

struct RemainderPolynomial {
  std::vector<RemainderFit> fits;  ///< k = 0..N
  /// sum_r (Bc f)_r M^1_r(lambda) / 2 pi, ascending.
  CVector closed_form;
  /// Size of lambda^n F_k[f] on the sample circles; tolerances are relative to it.
  double scale = 0.0;
  double sample_radius = 1.0;
  /// max over k, j of | |c_kj| - |c_0j| |.
  double magnitude_spread = 0.0;
  /// max over k of |c_k - sign_k * closed_form|.
  double closed_form_gap = 0.0;
  std::string convention;

  cplx operator()(int k, cplx lambda) const;
};

/// Fits every contour index. Throws Error{FitResidualTooLarge} when a fit
/// misses its samples by more than 1e-8 * scale.
RemainderPolynomial remainder_polynomial(const TransformPair& pair);
RemainderPolynomial remainder_polynomial(const ValidatedProblem& problem, const InitialDatum& f);

/// |integral over Gamma_k of e^{i lambda x} lambda^{-n} P_k(lambda)| per x.
/// k = 0 is exactly zero term by term; k >= 1 is integrated with the real
/// rays turned into the upper half-plane.
std::vector<double> check_type_II(const TransformPair& pair, const RemainderPolynomial& rem, int k,
                                  const std::vector<double>& xs);

struct TypeOneCheck {
  std::vector<double> residuals;
  std::vector<Verdict> verdicts;
  /// Pass exactly when the rays of Gamma_k leave the real axis.
  Verdict expected = Verdict::Pass;
  /// Truncation radii of the scan.
  std::vector<double> radii;
};

/// integral over Gamma_k (k >= 1) of e^{i lambda x} P_k(lambda), re-evaluated
/// with the rays cut at L0, 2 L0 and 4 L0. Divergent when successive values
/// differ by more than 10 tol.
TypeOneCheck check_type_I(const TransformPair& pair, const RemainderPolynomial& rem, int k,
                          const std::vector<double>& xs, double tol = 1e-6);

struct SpectralEntry {
  int k = 0;
  double x = 0.0;
  std::string type;  ///< "I" or "II"
  double residual = 0.0;
  Verdict verdict = Verdict::Pass;
};

struct SpectralReport {
  std::string label;
  std::vector<double> xs;
  std::vector<SpectralEntry> entries;
  /// Both sides of: sum_k int e^{i lambda x} lambda^{-n} F_k[S f] = sum_k int e^{i lambda x} F_k[f].
  CVector operator_side;
  CVector datum_side;
  /// When the type-I predicate holds: on the union of Gamma_k, k >= 1,
  /// int e^{i lambda x} F_k[S f] against int e^{i lambda x} lambda^n F_k[f];
  /// on Gamma_0 the type-II pair.
  bool type_one_split = false;
  std::vector<double> type_one_gap;
  std::vector<double> gamma0_gap;
  RemainderPolynomial remainder;
  std::string sign_note;

  std::vector<double> type_two_gap() const;
};

SpectralReport spectral_representation_check(const TransformPair& pair, const std::vector<double>& xs,
                                             double tol = 1e-6);

}  // namespace utm
