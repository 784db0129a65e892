#include "utm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "utm/boundary.hpp"

namespace utm {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Divergent: return "DIVERGENT";
  }
  return "?";
}

CVector remainder_samples(const TransformPair& pair, int k, const std::vector<cplx>& lambdas) {
  const int n = pair.problem().order();
  CVector out(static_cast<Eigen::Index>(lambdas.size()));
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const cplx l = lambdas[i];
    out[static_cast<Eigen::Index>(i)] = pair.forward_operator(k, l) - std::pow(l, n) * pair.forward(k, l);
  }
  return out;
}

CVector remainder_samples(const ValidatedProblem& problem, const InitialDatum& f, int k,
                          const std::vector<cplx>& lambdas) {
  return remainder_samples(TransformPair(problem, f), k, lambdas);
}

namespace {

cplx horner(const CVector& c, cplx z) {
  cplx s{};
  for (Eigen::Index j = c.size() - 1; j >= 0; --j) s = s * z + c[j];
  return s;
}

std::vector<cplx> circle(int count, double radius, double offset) {
  std::vector<cplx> out;
  for (int i = 0; i < count; ++i) out.push_back(std::polar(radius, offset + 2.0 * pi * i / count));
  return out;
}

// Least squares in the scaled variable lambda / rho, returned in lambda.
CVector fit(const std::vector<cplx>& lambdas, const CVector& values, int degree, double rho) {
  const auto m = static_cast<Eigen::Index>(lambdas.size());
  CMatrix V(m, degree + 1);
  for (Eigen::Index i = 0; i < m; ++i) {
    cplx z = 1.0;
    for (int j = 0; j <= degree; ++j, z *= lambdas[static_cast<std::size_t>(i)] / rho) V(i, j) = z;
  }
  CVector c = V.colPivHouseholderQr().solve(values);
  for (int j = 0; j <= degree; ++j) c[j] /= std::pow(rho, j);
  return c;
}

double max_abs(const CVector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

}  // namespace

cplx RemainderPolynomial::operator()(int k, cplx lambda) const {
  return horner(fits.at(static_cast<std::size_t>(k)).coeffs, lambda);
}

RemainderPolynomial remainder_polynomial(const TransformPair& pair) {
  const ValidatedProblem& problem = pair.problem();
  const CharMatrix& cm = pair.char_matrix();
  const int n = problem.order();
  const int N = problem.conditions();

  // Stay well inside the nearest nonzero pole of the transforms.
  double rho = 1.0;
  double nearest = std::numeric_limits<double>::infinity();
  for (const auto& r : cm.roots()) {
    if (std::abs(r.value) > 1e-8) nearest = std::min(nearest, std::abs(r.value));
  }
  if (std::isfinite(nearest)) rho = 0.5 * nearest;

  RemainderPolynomial out;
  out.sample_radius = rho;
  const auto first = circle(n + 2, rho, 0.1);
  const auto second = circle(n + 2, 0.8 * rho, 0.1 + pi / (n + 2));

  // Closed form from the complementary boundary forms.
  const ComplementaryForms cf = complementary_forms(problem.boundary(), cm.adjoint_rows());
  const CVector bc_f = cf.Bc * pair.datum().boundary_vector(n);
  out.closed_form = CVector::Zero(n);
  for (int s = 0; s < n; ++s) {
    cplx c{};
    for (Eigen::Index r = 0; r < bc_f.size(); ++r) c += bc_f[r] * std::conj(cm.adjoint_rows()(r, s));
    out.closed_form[s] = c * std::pow(-I, s) / (2.0 * pi);
  }

  std::vector<CVector> first_values;
  std::vector<CVector> second_values;
  for (int k = 0; k <= N; ++k) {
    first_values.push_back(remainder_samples(pair, k, first));
    second_values.push_back(remainder_samples(pair, k, second));
    for (const auto& l : first) out.scale = std::max(out.scale, std::abs(std::pow(l, n) * pair.forward(k, l)));
  }

  for (int k = 0; k <= N; ++k) {
    RemainderFit rf;
    rf.k = k;
    rf.coeffs = fit(first, first_values[k], n - 1, rho);
    rf.overfit = fit(first, first_values[k], n + 1, rho);
    rf.check = fit(second, second_values[k], n - 1, 0.8 * rho);
    for (std::size_t i = 0; i < first.size(); ++i) {
      rf.residual = std::max(rf.residual, std::abs(first_values[k][static_cast<Eigen::Index>(i)] - horner(rf.coeffs, first[i])));
    }
    rf.excess = std::max(std::abs(rf.overfit[n]), std::abs(rf.overfit[n + 1]));
    rf.check_gap = max_abs(rf.coeffs - rf.check);
    const double plus = max_abs(rf.coeffs - out.closed_form);
    const double minus = max_abs(rf.coeffs + out.closed_form);
    const double agree = 1e-8 * std::max(out.scale, 1e-300);
    if (std::min(plus, minus) <= agree) rf.sign = plus <= minus ? 1 : -1;
    out.closed_form_gap = std::max(out.closed_form_gap, std::min(plus, minus));
    if (rf.residual > 1e-8 * out.scale) {
      std::ostringstream os;
      os << "remainder fit for k=" << k << " misses its samples by " << rf.residual;
      throw Error(ErrorCode::FitResidualTooLarge, os.str());
    }
    out.fits.push_back(std::move(rf));
  }

  for (const auto& rf : out.fits) {
    for (int j = 0; j < n; ++j) {
      out.magnitude_spread =
          std::max(out.magnitude_spread, std::abs(std::abs(rf.coeffs[j]) - std::abs(out.fits[0].coeffs[j])));
    }
  }

  std::ostringstream note;
  note << "sign relative to the closed form:";
  for (const auto& rf : out.fits) note << " k=" << rf.k << (rf.sign > 0 ? " +" : rf.sign < 0 ? " -" : " ?");
  out.convention = note.str();
  return out;
}

RemainderPolynomial remainder_polynomial(const ValidatedProblem& problem, const InitialDatum& f) {
  return remainder_polynomial(TransformPair(problem, f));
}

std::vector<double> check_type_II(const TransformPair& pair, const RemainderPolynomial& rem, int k,
                                  const std::vector<double>& xs) {
  const int n = pair.problem().order();
  if (k < 0 || k > pair.components()) throw Error(ErrorCode::InvalidArgument, "contour index out of range");
  for (double x : xs) {
    if (!(x > 0.0)) throw Error(ErrorCode::NonpositiveX, "type-II check needs x > 0");
  }
  std::vector<double> out(xs.size(), 0.0);
  const CVector& c = rem.fits.at(static_cast<std::size_t>(k)).coeffs;
  if (k == 0) {
    // Each term c_j lambda^(j - n), j < n, integrates to zero over Gamma_0.
    for (std::size_t i = 0; i < xs.size(); ++i) {
      cplx v{};
      for (int j = 0; j < n; ++j) {
        if (c[j] != cplx{}) v += c[j] * gamma0_monomial_integral(n - j, xs[i], pair.contours().delta_indent);
      }
      out[i] = std::abs(v);
    }
    return out;
  }

  const ContourSystem cs = rotate_real_rays_inward(pair.contours(), pair.options().theta_fraction);
  const Contour& path = cs.gammas[static_cast<std::size_t>(k - 1)];
  const auto nx = static_cast<Eigen::Index>(xs.size());
  BatchIntegrand integrand = [&](const std::vector<cplx>& lambdas, CMatrix& vals) {
    vals.resize(static_cast<Eigen::Index>(lambdas.size()), nx);
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      const cplx l = lambdas[i];
      const cplx v = horner(c, l) / std::pow(l, n);
      for (Eigen::Index b = 0; b < nx; ++b) vals(static_cast<Eigen::Index>(i), b) = v * std::exp(I * l * xs[b]);
    }
  };
  const double x_min = *std::min_element(xs.begin(), xs.end());
  const double x_max = *std::max_element(xs.begin(), xs.end());
  std::vector<RateHint> rates(path.size(), RateHint{x_max + 1.0, 0.0, 0});
  std::vector<DecayModel> decays;
  for (const auto& seg : path) {
    if (!seg.infinite()) {
      decays.emplace_back();
      continue;
    }
    double scale = 0.0;
    for (int j = 0; j < n; ++j) scale += std::abs(c[j]) * std::pow(seg.r_in, j - n);
    decays.push_back(DecayModel::exponential(scale, 0.0, x_min * std::sin(seg.angle), 1));
  }
  const auto res = integrate_contour(integrand, nx, path, rates, decays, pair.options().quad);
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = std::abs(res.value[static_cast<Eigen::Index>(i)]);
  return out;
}

TypeOneCheck check_type_I(const TransformPair& pair, const RemainderPolynomial& rem, int k,
                          const std::vector<double>& xs, double tol) {
  const int n = pair.problem().order();
  if (k < 1 || k > pair.components()) throw Error(ErrorCode::InvalidArgument, "type-I check needs k >= 1");
  for (double x : xs) {
    if (!(x > 0.0)) throw Error(ErrorCode::NonpositiveX, "type-I check needs x > 0");
  }
  const CVector& c = rem.fits.at(static_cast<std::size_t>(k)).coeffs;
  const Contour& path = pair.contours().gammas[static_cast<std::size_t>(k - 1)];
  const double x_min = *std::min_element(xs.begin(), xs.end());
  const double x_max = *std::max_element(xs.begin(), xs.end());

  TypeOneCheck out;
  out.expected = type_one_predicate(n, pair.problem().dispersion()) ? Verdict::Pass : Verdict::Divergent;

  // First radius: past the point where the tail of every decaying ray is negligible.
  double lambda0 = 64.0;
  for (const auto& seg : path) {
    if (!seg.infinite() || on_real_axis(seg)) continue;
    const double rate = x_min * std::sin(seg.angle);
    auto tail = [&](double r) {
      double poly = 0.0;
      for (int j = 0; j < n; ++j) poly += std::abs(c[j]) * std::pow(r, j);
      return poly * std::exp(-rate * r) / rate;
    };
    while (tail(lambda0) > 1e-3 * tol && lambda0 < 1e4) lambda0 *= 2.0;
  }

  const auto nx = static_cast<Eigen::Index>(xs.size());
  BatchIntegrand integrand = [&](const std::vector<cplx>& lambdas, CMatrix& vals) {
    vals.resize(static_cast<Eigen::Index>(lambdas.size()), nx);
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      const cplx l = lambdas[i];
      const cplx v = horner(c, l);
      for (Eigen::Index b = 0; b < nx; ++b) vals(static_cast<Eigen::Index>(i), b) = v * std::exp(I * l * xs[b]);
    }
  };
  std::vector<CVector> values;
  for (int s = 0; s < 3; ++s) {
    const double cut = lambda0 * std::ldexp(1.0, s);
    out.radii.push_back(cut);
    Contour finite;
    for (const auto& seg : path) {
      finite.push_back(seg.infinite() ? PathSegment::ray(seg.angle, seg.r_in, cut, seg.orientation, seg.origin) : seg);
    }
    std::vector<RateHint> rates(finite.size(), RateHint{x_max + 1.0, 0.0, 0});
    std::vector<DecayModel> decays(finite.size());
    values.push_back(integrate_contour(integrand, nx, finite, rates, decays, pair.options().quad).value);
  }
  for (Eigen::Index i = 0; i < nx; ++i) {
    const double drift = std::max(std::abs(values[1][i] - values[0][i]), std::abs(values[2][i] - values[1][i]));
    const double r = std::abs(values[2][i]);
    out.residuals.push_back(r);
    if (drift > 10.0 * tol) {
      out.verdicts.push_back(Verdict::Divergent);
    } else {
      out.verdicts.push_back(r < tol ? Verdict::Pass : Verdict::Fail);
    }
  }
  return out;
}

std::vector<double> SpectralReport::type_two_gap() const {
  std::vector<double> out;
  for (Eigen::Index i = 0; i < operator_side.size(); ++i) out.push_back(std::abs(operator_side[i] - datum_side[i]));
  return out;
}

SpectralReport spectral_representation_check(const TransformPair& pair, const std::vector<double>& xs,
                                             double tol) {
  const ValidatedProblem& problem = pair.problem();
  const int n = problem.order();
  const int N = pair.components();
  SpectralReport rep;
  rep.label = problem.label();
  rep.xs = xs;
  rep.remainder = remainder_polynomial(pair);
  rep.sign_note = rep.remainder.convention;

  for (int k = 0; k <= N; ++k) {
    const auto res = check_type_II(pair, rep.remainder, k, xs);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      rep.entries.push_back({k, xs[i], "II", res[i], res[i] < tol ? Verdict::Pass : Verdict::Fail});
    }
  }
  for (int k = 1; k <= N; ++k) {
    const auto chk = check_type_I(pair, rep.remainder, k, xs, tol);
    for (std::size_t i = 0; i < xs.size(); ++i) rep.entries.push_back({k, xs[i], "I", chk.residuals[i], chk.verdicts[i]});
  }

  rep.operator_side = CVector::Zero(static_cast<Eigen::Index>(xs.size()));
  for (int k = 0; k <= N; ++k) rep.operator_side += pair.contribution(k, xs, n, true);
  rep.datum_side = pair.reconstruct(xs);

  rep.type_one_split = type_one_predicate(n, problem.dispersion());
  if (rep.type_one_split) {
    CVector lhs = CVector::Zero(static_cast<Eigen::Index>(xs.size()));
    CVector rhs = lhs;
    for (int k = 1; k <= N; ++k) {
      lhs += pair.contribution(k, xs, 0, true);
      rhs += pair.contribution(k, xs, -n, false);
    }
    const CVector g0 = pair.contribution(0, xs, n, true) - pair.contribution(0, xs, 0, false);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const auto e = static_cast<Eigen::Index>(i);
      rep.type_one_gap.push_back(std::abs(lhs[e] - rhs[e]));
      rep.gamma0_gap.push_back(std::abs(g0[e]));
    }
  }
  return rep;
}

}  // namespace utm
