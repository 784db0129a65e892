#include "utm/oracles.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace utm {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

double l1_norm(const InitialDatum& f) {
  const double L = f.support();
  return GK::integrate([&](double y) { return std::abs(f.value(y)); }, 0.0, L, 12, 1e-10);
}

// f sampled on a fixed composite Gauss rule over [0, L], fine enough for
// |lambda| <= lambda_max; the trig transform is then a weighted sum.
class TrigTable {
 public:
  TrigTable(const InitialDatum& f, double lambda_max) {
    using Rule = boost::math::quadrature::gauss<double, 30>;
    const double L = f.support();
    const int pieces = std::max(static_cast<int>(4 * L), static_cast<int>(std::ceil(L * lambda_max / 3.0)));
    const double h = L / pieces;
    const auto& xs = Rule::abscissa();
    const auto& ws = Rule::weights();
    for (int p = 0; p < pieces; ++p) {
      const double mid = (p + 0.5) * h;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        for (double sgn : {-1.0, 1.0}) {
          if (i == 0 && sgn < 0.0 && xs[0] == 0.0) continue;
          const double y = mid + sgn * 0.5 * h * xs[i];
          nodes_.push_back(y);
          weighted_.push_back(0.5 * h * ws[i] * f.value(y).real());
        }
      }
    }
  }

  double operator()(double lambda, bool sine) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      sum += weighted_[i] * (sine ? std::sin(lambda * nodes_[i]) : std::cos(lambda * nodes_[i]));
    }
    return sum;
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> weighted_;
};

OracleResult heat_half_line(const InitialDatum& f, double x, double t, bool sine) {
  if (t < 0.0) throw Error(ErrorCode::InvalidArgument, "t must be nonnegative");
  if (f.poly_coeffs().imag().cwiseAbs().maxCoeff() != 0.0) {
    throw Error(ErrorCode::InvalidArgument, "heat oracles expect real data");
  }
  const double L = f.support();
  // Cut-off: Gaussian factor below 1e-16 relative to ||f||_1, or three
  // consecutive unit steps where the damped transform is negligible.
  const double norm = std::max(l1_norm(f), 1e-300);
  constexpr double kMaxLambda = 400.0;
  double lambda_max = kMaxLambda;
  if (t > 0.0) lambda_max = std::min(kMaxLambda, std::sqrt(std::log(norm * 1e16) / t));
  const TrigTable table(f, lambda_max);
  int quiet = 0;
  for (double lam = 1.0; lam < lambda_max; lam += 1.0) {
    quiet = std::abs(table(lam, sine)) * std::exp(-lam * lam * t) < 1e-16 * norm ? quiet + 1 : 0;
    if (quiet == 3) {
      lambda_max = lam;
      break;
    }
  }

  auto integrand = [&](double lam) {
    const double kern = sine ? std::sin(lam * x) : std::cos(lam * x);
    return kern * std::exp(-lam * lam * t) * table(lam, sine);
  };
  double sum = 0.0;
  double err = 0.0;
  // About one oscillation of the integrand per piece.
  const int pieces = static_cast<int>(std::ceil(lambda_max * (x + L) / (2.0 * pi)));
  for (int i = 0; i < pieces; ++i) {
    const double a = lambda_max * i / pieces;
    const double b = lambda_max * (i + 1) / pieces;
    double e = 0.0;
    sum += GK::integrate(integrand, a, b, 2, 1e-10, &e);
    err += e;
  }
  return {2.0 / pi * sum, sine ? OracleMethod::SineTransform : OracleMethod::CosineTransform,
          2.0 / pi * err};
}

}  // namespace

OracleResult heat_dirichlet_solution(const InitialDatum& f, double x, double t) {
  return heat_half_line(f, x, t, true);
}

OracleResult heat_neumann_solution(const InitialDatum& f, double x, double t) {
  return heat_half_line(f, x, t, false);
}

OracleResult adaptive_reference(const std::function<cplx(cplx)>& g, const PathSegment& seg,
                                double tol, double r_max) {
  double a = seg.param_start();
  double b = seg.param_end();
  if (seg.infinite()) {
    if (!(r_max > seg.r_in)) throw Error(ErrorCode::TailBoundUnavailable, "cut radius required for an infinite ray");
    (seg.orientation > 0 ? b : a) = r_max;
  }
  double err = 0.0;
  auto h = [&](double s) { return g(seg.at(s)) * seg.tangent(s); };
  const cplx v = GK::integrate(h, a, b, 30, tol, &err);
  return {v, OracleMethod::AdaptiveQuad, err * std::max(1.0, std::abs(v))};
}

std::vector<double> central_weights(int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "derivative order must be positive");
  const int p = (k + 1) / 2;
  const int m = 2 * p + 1;
  // Fornberg's recursion for weights on nodes -p..p at 0.
  std::vector<double> nodes(m);
  for (int i = 0; i < m; ++i) nodes[i] = i - p;
  std::vector<std::vector<double>> c(m, std::vector<double>(k + 1, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0];
  c[0][0] = 1.0;
  for (int i = 1; i < m; ++i) {
    const int mn = std::min(i, k);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i];
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int s = mn; s >= 1; --s) c[i][s] = c1 * (s * c[i - 1][s - 1] - c5 * c[i - 1][s]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int s = mn; s >= 1; --s) c[j][s] = (c4 * c[j][s] - s * c[j][s - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(m);
  for (int i = 0; i < m; ++i) w[i] = c[i][k];
  return w;
}

double fd_residual_value(const std::function<cplx(double, double)>& q, int n, cplx a, double x,
                         double t, double h, double ht) {
  if (ht <= 0.0) ht = h;
  static const cplx cycle[4] = {1.0, -I, -1.0, I};
  const auto w = central_weights(n);
  const int p = static_cast<int>(w.size() / 2);
  cplx dn{};
  for (int i = 0; i < static_cast<int>(w.size()); ++i) {
    if (w[i] != 0.0) dn += w[i] * q(x + (i - p) * h, t);
  }
  dn /= std::pow(h, n);
  const cplx dt = (q(x, t + ht) - q(x, t - ht)) / (2.0 * ht);
  return std::abs(dt + a * cycle[n % 4] * dn);
}

OracleResult fd_residual(const std::function<cplx(double, double)>& q, int n, cplx a, double x,
                         double t, double h, double ht) {
  if (ht <= 0.0) ht = h;
  const double r1 = fd_residual_value(q, n, a, x, t, h, ht);
  const double r2 = fd_residual_value(q, n, a, x, t, 0.5 * h, 0.5 * ht);
  return {r1, OracleMethod::FdResidual, std::abs(r1 - r2)};
}

}  // namespace utm
