#include "utm/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "utm/evolution.hpp"
#include "utm/oracles.hpp"
#include "utm/spectral.hpp"

namespace utm {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double uniform(std::mt19937_64& gen, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

bool row_is_unit(const CMatrix& B, Eigen::Index row, Eigen::Index col) {
  for (Eigen::Index j = 0; j < B.cols(); ++j) {
    if (B(row, j) != (j == col ? cplx{1.0} : cplx{})) return false;
  }
  return true;
}

// 0 none, 1 Dirichlet, 2 Neumann.
int heat_kind(const ValidatedProblem& p) {
  if (p.order() != 2 || p.dispersion() != cplx{1.0} || p.conditions() != 1) return 0;
  const CMatrix B = p.boundary() / p.boundary().cwiseAbs().maxCoeff();
  if (row_is_unit(B, 0, 0)) return 1;
  if (row_is_unit(B, 0, 1)) return 2;
  return 0;
}

// 1: n = 3, a = -i, f(0) = 0.  2: n = 3, a = i, f(0) = f'(0) = 0.
int third_order_kind(const ValidatedProblem& p) {
  if (p.order() != 3) return 0;
  const CMatrix& B = p.boundary();
  if (p.dispersion() == -I && B.rows() == 1 && row_is_unit(B, 0, 0)) return 1;
  if (p.dispersion() == I && B.rows() == 2 && row_is_unit(B, 0, 0) && row_is_unit(B, 1, 1)) return 2;
  return 0;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

CheckResult finish(CheckResult r, Clock::time_point t0) {
  r.seconds = seconds_since(t0);
  return r;
}

}  // namespace

std::vector<NamedDatum> test_data(const ValidatedProblem& problem, const VerifySettings& s) {
  const double L = s.support;
  const CVector generic = generic_kernel_coeffs(problem, L);
  const CVector zero = CVector::Zero(problem.order());
  std::vector<NamedDatum> out;
  out.push_back({"boundary", make_datum(problem, L, generic, s.seed, 0.0)});
  out.push_back({"bump", make_datum(problem, L, zero, s.seed + 1, 1.0)});
  out.push_back({"mixed", make_datum(problem, L, generic, s.seed + 2, 1.0)});
  return out;
}

std::vector<CheckResult> check_reconstruction(const ValidatedProblem& problem, const VerifySettings& s) {
  const auto t0 = Clock::now();
  CheckResult rec{1, "reconstruction", true, true, 0.0, s.tol, "", 0.0};
  CheckResult van{2, "gamma-k vanishing", true, true, 0.0, s.tol, "", 0.0};
  std::vector<double> xs;
  for (int i = 0; i < 20; ++i) xs.push_back(s.support * (0.05 + 0.95 * i / 19.0));
  std::ostringstream rd;
  std::ostringstream vd;
  for (const auto& nd : test_data(problem, s)) {
    const TransformPair tp(problem, nd.datum, s.solver);
    const CMatrix c = tp.contributions(xs);
    double err = 0.0;
    double gk = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const auto col = static_cast<Eigen::Index>(i);
      err = std::max(err, std::abs(c.col(col).sum() - nd.datum.value(xs[i])));
      for (Eigen::Index k = 1; k < c.rows(); ++k) gk = std::max(gk, std::abs(c(k, col)));
    }
    rec.measured = std::max(rec.measured, err);
    van.measured = std::max(van.measured, gk);
    rd << nd.name << "=" << fmt(err) << " ";
    vd << nd.name << "=" << fmt(gk) << " ";
  }
  rec.pass = rec.measured < s.tol;
  van.pass = van.measured < s.tol;
  rec.detail = "max |f[F[f]] - f|: " + rd.str();
  van.detail = "max |int over Gamma_k|: " + vd.str();
  rec.seconds = van.seconds = seconds_since(t0);
  return {rec, van};
}

CheckResult check_heat_baseline(const ValidatedProblem& problem, const VerifySettings& s) {
  const auto t0 = Clock::now();
  CheckResult r{3, "heat baseline", true, true, 0.0, s.tol, "", 0.0};
  const int kind = heat_kind(problem);
  if (kind == 0) {
    r.applicable = false;
    r.detail = "not a Dirichlet or Neumann heat problem";
    return r;
  }
  const InitialDatum f = test_data(problem, s)[2].datum;
  const std::vector<double> xs{0.5, 1.0, 1.5};
  const std::vector<double> ts{0.01, 0.1, 1.0};
  const CMatrix q = TransformPair(problem, f, s.solver).evolve(xs, ts);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ts.size(); ++j) {
      const OracleResult o = kind == 1 ? heat_dirichlet_solution(f, xs[i], ts[j]) : heat_neumann_solution(f, xs[i], ts[j]);
      r.measured = std::max(r.measured, std::abs(q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) - o.value));
    }
  }
  r.pass = r.measured < s.tol;
  r.detail = std::string(kind == 1 ? "sine" : "cosine") + " transform oracle, max diff " + fmt(r.measured);
  return finish(r, t0);
}

CVector extrapolated_boundary_values(const ValidatedProblem& problem, const CVector& samples,
                                     double spacing, int degree) {
  const int n = problem.order();
  const Eigen::Index m = samples.size();
  if (m <= degree || degree < n - 1) throw Error(ErrorCode::InvalidArgument, "too few samples for the fit");
  const double X = spacing * static_cast<double>(m);
  CMatrix V(m, degree + 1);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double z = (static_cast<double>(i) + 1.0) * spacing / X;
    for (int j = 0; j <= degree; ++j) V(i, j) = std::pow(z, j);
  }
  const CVector c = V.colPivHouseholderQr().solve(samples);
  CVector derivs(n);
  double fact = 1.0;
  for (int k = 0; k < n; ++k) {
    if (k > 0) fact *= k;
    derivs[k] = c[k] * fact / std::pow(X, k);
  }
  return problem.boundary() * derivs;
}

CheckResult check_evolution(const ValidatedProblem& problem, const VerifySettings& s) {
  const auto t0 = Clock::now();
  CheckResult r{4, "evolution", true, true, 0.0, 1e-3, "", 0.0};
  const int n = problem.order();
  const cplx a = problem.dispersion();
  const InitialDatum f = test_data(problem, s)[2].datum;
  const TransformPair tp(problem, f, s.solver);
  const std::vector<double> xs{0.5, 1.0, 1.5};
  // Caps e^{|a| R^n t} on the arcs.
  const double R = tp.contours().R;
  const double t_max = std::min(0.2, 3.0 / (std::abs(a) * std::pow(R, n)));
  const std::vector<double> ts{0.5 * t_max, 0.75 * t_max, t_max};
  // Residuals are reported at the finer step; the coarser one gives the ratio.
  const double h0 = n <= 3 ? 0.005 : 0.01;
  const auto w = central_weights(n);
  const int p = static_cast<int>(w.size() / 2);

  double worst = 0.0;
  double worst_ratio_dev = 0.0;
  bool ratios_ok = true;
  const auto width = static_cast<Eigen::Index>(w.size());
  for (double t : ts) {
    std::vector<double> res[2];
    for (int level = 0; level < 2; ++level) {
      const double h = h0 / (1 << level);
      const double ht = h * h;
      // One batch holds the stencils of every x.
      std::vector<double> sx;
      for (double x : xs) {
        for (int i = -p; i <= p; ++i) sx.push_back(x + i * h);
      }
      const CMatrix q = tp.evolve(sx, {t - ht, t, t + ht});
      for (std::size_t b = 0; b < xs.size(); ++b) {
        const double x = xs[b];
        auto qf = [&](double xx, double tt) {
          const auto i = static_cast<Eigen::Index>(std::lround((xx - x) / h) + p);
          const Eigen::Index j = tt < t ? 0 : (tt > t ? 2 : 1);
          return q(static_cast<Eigen::Index>(b) * width + i, j);
        };
        res[level].push_back(fd_residual_value(qf, n, a, x, t, h, ht));
      }
    }
    for (std::size_t b = 0; b < xs.size(); ++b) {
      worst = std::max(worst, res[1][b]);
      // Ratio only above the quadrature noise floor.
      if (res[0][b] > 1e-8) {
        const double ratio = res[0][b] / res[1][b];
        worst_ratio_dev = std::max(worst_ratio_dev, std::abs(std::log2(ratio) - 2.0));
        if (ratio < 2.5 || ratio > 6.0) ratios_ok = false;
      }
    }
  }

  // Boundary forms at x = 0 by extrapolation from x_i = 0.02 i.
  double bc = 0.0;
  {
    std::vector<double> near;
    for (int i = 1; i <= 20; ++i) near.push_back(0.02 * i);
    const CMatrix q = tp.evolve(near, ts);
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
      bc = std::max(bc, extrapolated_boundary_values(problem, q.col(j), 0.02, 12).cwiseAbs().maxCoeff());
    }
  }

  // Initial condition.
  double ic = 0.0;
  {
    std::vector<double> pts;
    for (int i = 0; i < 20; ++i) pts.push_back(s.support * (0.05 + 0.95 * i / 19.0));
    const CMatrix q = tp.evolve(pts, {0.0});
    for (std::size_t i = 0; i < pts.size(); ++i) ic = std::max(ic, std::abs(q(static_cast<Eigen::Index>(i), 0) - f.value(pts[i])));
  }

  r.measured = std::max(worst, bc);
  r.pass = worst < 1e-3 && ratios_ok && bc < 1e-3 && ic < s.tol;
  r.detail = "fd residual " + fmt(worst) + ", |log2 ratio - 2| <= " + fmt(worst_ratio_dev) + ", boundary forms " +
             fmt(bc) + ", |q(.,0) - f| " + fmt(ic);
  return finish(r, t0);
}

std::vector<CheckResult> check_spectral(const ValidatedProblem& problem, const VerifySettings& s) {
  const auto t0 = Clock::now();
  const int n = problem.order();
  CheckResult rem{5, "remainder structure", true, true, 0.0, 0.0, "", 0.0};
  CheckResult two{6, "type-II certification", true, true, 0.0, s.tol, "", 0.0};
  CheckResult one{7, "type-I dichotomy", true, true, 0.0, s.tol, "", 0.0};

  const InitialDatum f = test_data(problem, s)[2].datum;
  const TransformPair tp(problem, f, s.solver);
  const std::vector<double> xs{0.3, 0.7, 1.2};
  SpectralReport rep;
  try {
    rep = spectral_representation_check(tp, xs, s.tol);
  } catch (const Error& e) {
    rem.pass = two.pass = one.pass = false;
    rem.detail = two.detail = one.detail = e.what();
    return {rem, two, one};
  }

  // 5: degree bound, magnitudes across k, the constant remainder of the
  // reversed third-order problem.
  const auto& rp = rep.remainder;
  const double scale = std::max(rp.scale, 1e-300);
  double excess = 0.0;
  for (const auto& fit : rp.fits) excess = std::max(excess, fit.excess);
  rem.measured = std::max(excess / scale, rp.magnitude_spread / scale);
  rem.threshold = 1e-8;
  rem.pass = excess < 1e-9 * scale && rp.magnitude_spread < 1e-8 * scale;
  std::ostringstream rd;
  rd << "excess/scale " << fmt(excess / scale) << ", spread/scale " << fmt(rp.magnitude_spread / scale) << "; "
     << rp.convention;
  if (third_order_kind(problem) == 2) {
    const double expect = std::abs(f.derivative(0.0, 2)) / (2.0 * pi);
    double worst = 0.0;
    for (const auto& fit : rp.fits) {
      worst = std::max(worst, std::abs(std::abs(fit.coeffs[0]) - expect));
      for (int j = 1; j < n; ++j) worst = std::max(worst, std::abs(fit.coeffs[j]));
    }
    rem.pass = rem.pass && worst < 1e-8 * scale;
    rd << "; constant |f''(0)|/2pi off by " << fmt(worst);
  }
  rem.detail = rd.str();

  // 6
  for (const auto& e : rep.entries) {
    if (e.type == "II") two.measured = std::max(two.measured, e.residual);
  }
  double identity = 0.0;
  for (double g : rep.type_two_gap()) identity = std::max(identity, g);
  two.pass = two.measured < s.tol && identity < s.tol;
  two.detail = "max residual " + fmt(two.measured) + ", identity gap " + fmt(identity);
  two.measured = std::max(two.measured, identity);

  // 7
  const Verdict expected = type_one_predicate(n, problem.dispersion()) ? Verdict::Pass : Verdict::Divergent;
  std::ostringstream od;
  od << "expected " << to_string(expected) << ":";
  for (const auto& e : rep.entries) {
    if (e.type != "I") continue;
    if (e.verdict != expected) one.pass = false;
    od << " k=" << e.k << "/x=" << e.x << " " << to_string(e.verdict);
  }
  if (rep.type_one_split) {
    double gap = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) gap = std::max({gap, rep.type_one_gap[i], rep.gamma0_gap[i]});
    one.measured = gap;
    one.pass = one.pass && gap < s.tol;
    od << "; split identity gap " << fmt(gap);
  }
  one.detail = od.str();
  rem.seconds = two.seconds = one.seconds = seconds_since(t0);
  return {rem, two, one};
}

CheckResult check_char_algebra(const ValidatedProblem& problem, const VerifySettings& s) {
  const auto t0 = Clock::now();
  CheckResult r{8, "characteristic algebra", true, true, 0.0, 1e-9, "", 0.0};
  const CharMatrix cm(problem);
  const int m = cm.size();
  std::mt19937_64 gen(s.seed);
  double worst = 0.0;
  int tried = 0;
  while (tried < 20) {
    const cplx l = std::polar(uniform(gen, 0.2, 3.0), uniform(gen, -pi, pi));
    const cplx d = cm.delta(l);
    if (std::abs(d) < 1e-6) continue;
    ++tried;
    for (int j = 1; j <= m; ++j) {
      for (int rr = 1; rr <= m; ++rr) {
        cplx sum{};
        for (int l2 = 1; l2 <= m; ++l2) sum += cm.cofactor_sign(l2, j) * cm.cofactor_det(l2, j, l) * cm.entry(l2, rr, l);
        worst = std::max(worst, std::abs(sum - (j == rr ? d : cplx{})) / std::abs(d));
      }
    }
  }
  r.measured = worst;
  r.pass = worst < 1e-9;
  std::ostringstream os;
  os << "cofactor identity " << fmt(worst);
  if (problem.label() == "robin-4") {
    double biggest = 0.0;
    int zero_mult = 0;
    for (const auto& root : cm.roots()) {
      biggest = std::max(biggest, std::abs(root.value));
      if (std::abs(root.value) < 1e-6) zero_mult = root.multiplicity;
    }
    r.pass = r.pass && biggest < 4.0 && zero_mult == 2;
    os << "; max |root| " << fmt(biggest) << ", multiplicity at 0: " << zero_mult;
  }
  r.detail = os.str();
  return finish(r, t0);
}

CheckResult check_transform_kernels(const ValidatedProblem& problem, const VerifySettings& s) {
  const auto t0 = Clock::now();
  CheckResult r{9, "transform kernels", true, true, 0.0, 1e-12, "", 0.0};
  const int kind = third_order_kind(problem);
  if (kind == 0) {
    r.applicable = false;
    r.detail = "no closed form on record";
    return r;
  }
  const CharMatrix cm(problem);
  const cplx al = cm.alpha();
  std::mt19937_64 gen(s.seed + 99);
  for (int i = 0; i < 50; ++i) {
    const double x = uniform(gen, 0.0, 2.0);
    const cplx l = std::polar(uniform(gen, 0.5, 3.0), uniform(gen, -pi, pi));
    std::vector<std::pair<int, cplx>> cases;
    if (kind == 1) {
      cases.emplace_back(1, -(al * std::exp(-I * al * l * x) + al * al * std::exp(-I * al * al * l * x)) / (2.0 * pi));
    } else {
      cases.emplace_back(1, std::exp(-I * al * al * l * x) / (2.0 * pi));
      cases.emplace_back(2, std::exp(-I * al * l * x) / (2.0 * pi));
    }
    for (const auto& [k, expect] : cases) {
      const cplx got = kernel(cm, k, l, x);
      r.measured = std::max(r.measured, std::abs(got - expect) / std::max(1.0, std::abs(expect)));
    }
  }
  r.pass = r.measured < 1e-12;
  r.detail = "max relative deviation " + fmt(r.measured);
  return finish(r, t0);
}

std::vector<CheckResult> verify_problem(const ValidatedProblem& problem, const VerifySettings& s) {
  std::vector<CheckResult> out = check_reconstruction(problem, s);
  out.push_back(check_heat_baseline(problem, s));
  out.push_back(check_evolution(problem, s));
  for (auto& r : check_spectral(problem, s)) out.push_back(std::move(r));
  out.push_back(check_char_algebra(problem, s));
  out.push_back(check_transform_kernels(problem, s));
  return out;
}

}  // namespace utm
