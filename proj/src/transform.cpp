#include "utm/transform.hpp"

#include <algorithm>
#include <cmath>

#include "utm/parallel.hpp"

namespace utm {

namespace {

constexpr int kRule = 20;
constexpr int kMaxLevels = 9;

struct Terms {
  std::vector<cplx> weights;
  std::vector<cplx> args;
};

Terms transform_terms(const CharMatrix& cm, int k, cplx lambda) {
  const int N = cm.conditions();
  if (k < 0 || k > N) throw Error(ErrorCode::InvalidArgument, "contour index out of range");
  if (k == 0) return {{1.0 / (2.0 * pi)}, {lambda}};

  const int m = cm.size();
  const cplx beta = cm.alpha_pow(N + 1 - k) * lambda;
  const cplx d = cm.delta(beta);
  double ref = 0.0;
  const auto& c = cm.delta_coeffs();
  for (Eigen::Index j = 0; j < c.size(); ++j) ref += std::abs(c[j]) * std::pow(std::abs(beta), static_cast<double>(j));
  if (std::abs(d) <= 1e-13 * ref) {
    throw Error(ErrorCode::OnDeltaZero, "lambda maps onto a zero of Delta");
  }
  std::vector<cplx> m1(m);
  for (int j = 1; j <= m; ++j) m1[j - 1] = cm.entry(1, j, lambda);

  Terms t;
  for (int l = 1; l <= m; ++l) {
    cplx s{};
    for (int j = 1; j <= m; ++j) s += cm.cofactor_sign(l, j) * cm.cofactor_det(l, j, beta) * m1[j - 1];
    t.weights.push_back(s / (2.0 * pi * d));
    t.args.push_back(cm.alpha_pow(N + l - k) * lambda);
  }
  return t;
}

double max_abs_exp(cplx lambda, const std::vector<double>& xs) {
  double best = 0.0;
  for (double x : xs) best = std::max(best, std::exp(-lambda.imag() * x));
  return best;
}

// max over [r, 2r] of |h| along a ray, sampled at geometric points.
DecayModel sampled_ray_decay(double angle, std::function<double(cplx)> mag) {
  return DecayModel::sampled([angle, mag = std::move(mag)](double r) {
    double best = 0.0;
    for (int i = 0; i <= 8; ++i) best = std::max(best, mag(std::polar(r * std::pow(2.0, i / 8.0), angle)));
    return best;
  });
}

void check_positive(const std::vector<double>& xs) {
  for (double x : xs) {
    if (!(x > 0.0)) throw Error(ErrorCode::NonpositiveX, "contour representation needs x > 0");
  }
}

}  // namespace

FourierSampler::FourierSampler(const InitialDatum& f) : f_(f), L_(f.support()) {
  base_panels_ = 64;
  while (L_ / base_panels_ > 0.1) base_panels_ *= 2;
  for (int j = 0; j < kMaxLevels; ++j) levels_.push_back(std::make_unique<Level>());
}

const FourierSampler::Level& FourierSampler::level_for(double abs_mu) const {
  int j = 0;
  while (j + 1 < kMaxLevels && base_panels_ * std::ldexp(1.0, j) < abs_mu * L_ / 10.0) ++j;
  Level& lv = *levels_[j];
  std::call_once(lv.built, [&] {
    const int P = base_panels_ << j;
    const double h = L_ / P;
    const auto& rule = gauss_legendre(kRule);
    lv.panels = P;
    lv.weighted.resize(kRule, P);
    for (int p = 0; p < P; ++p) {
      const double mid = (p + 0.5) * h;
      for (int i = 0; i < kRule; ++i) {
        lv.weighted(i, p) = 0.5 * h * rule.second[i] * f_.value(mid + 0.5 * h * rule.first[i]);
      }
    }
  });
  return lv;
}

cplx FourierSampler::operator()(cplx mu) const {
  const Level& lv = level_for(std::abs(mu));
  const int P = lv.panels;
  const double h = L_ / P;
  const auto& rule = gauss_legendre(kRule);
  Eigen::Matrix<cplx, kRule, 1> z;
  for (int i = 0; i < kRule; ++i) z[i] = std::exp(-I * mu * (0.5 * h * rule.first[i]));
  const CVector u = lv.weighted.transpose() * z;
  const cplx step = std::exp(-I * mu * h);
  cplx sum{};
  cplx e{};
  for (int p = 0; p < P; ++p) {
    e = (p % 64 == 0) ? std::exp(-I * mu * ((p + 0.5) * h)) : e * step;
    sum += e * u[p];
  }
  return sum;
}

std::vector<cplx> transform_weights(const CharMatrix& cm, int k, cplx lambda) {
  return transform_terms(cm, k, lambda).weights;
}

cplx kernel(const CharMatrix& cm, int k, cplx lambda, double x) {
  const auto t = transform_terms(cm, k, lambda);
  cplx s{};
  for (std::size_t l = 0; l < t.weights.size(); ++l) s += t.weights[l] * std::exp(-I * t.args[l] * x);
  return s;
}

cplx forward(const CharMatrix& cm, const FourierSampler& fhat, int k, cplx lambda) {
  const auto t = transform_terms(cm, k, lambda);
  cplx s{};
  for (std::size_t l = 0; l < t.weights.size(); ++l) s += t.weights[l] * fhat(t.args[l]);
  return s;
}

cplx forward(const ValidatedProblem& problem, const InitialDatum& f, int k, cplx lambda) {
  const CharMatrix cm(problem);
  const FourierSampler fhat(f);
  return forward(cm, fhat, k, lambda);
}

TransformPair::TransformPair(const ValidatedProblem& problem, const InitialDatum& f,
                             SolverOptions options)
    : problem_(problem), f_(f), sf_(apply_operator(problem, f)), options_(options) {
  cm_ = std::make_shared<const CharMatrix>(problem_);
  fhat_ = std::make_shared<const FourierSampler>(f_);
  sfhat_ = std::make_shared<const FourierSampler>(sf_);
  const double R = cm_->choose_R(options_.safety);
  const double delta = options_.delta_indent > 0.0 ? options_.delta_indent : std::min(0.1, R / 10.0);
  cs_ = build_contours(problem_, R, delta);
}

cplx TransformPair::forward(int k, cplx lambda) const { return utm::forward(*cm_, *fhat_, k, lambda); }

cplx TransformPair::forward_operator(int k, cplx lambda) const {
  return utm::forward(*cm_, *sfhat_, k, lambda);
}

CMatrix TransformPair::gamma0_subtracted(const std::vector<double>& xs, int p, bool apply_op) const {
  check_positive(xs);
  const int n = problem_.order();
  const InitialDatum& g = apply_op ? sf_ : f_;
  const FourierSampler& ghat = apply_op ? *sfhat_ : *fhat_;
  const int m = std::min(n + 1, g.max_order() + 1);
  const auto coeffs = tail_subtraction_coeffs(g, m);
  const double L = f_.support();
  const double rho = std::max(cs_.delta_indent, std::min(1.0, (m + p) / L));
  const double inf = std::numeric_limits<double>::infinity();
  const Contour path = {PathSegment::ray(pi, rho, inf, -1), PathSegment::arc(rho, pi, 0.0),
                        PathSegment::ray(0.0, rho, inf, 1)};

  auto h = [&](cplx lambda) {
    return std::pow(lambda, -p) * (ghat(lambda) - tail_sum(coeffs, lambda)) / (2.0 * pi);
  };
  const auto nx = static_cast<Eigen::Index>(xs.size());
  BatchIntegrand integrand = [&](const std::vector<cplx>& lambdas, CMatrix& out) {
    out.resize(static_cast<Eigen::Index>(lambdas.size()), nx);
    parallel_for(lambdas.size(), [&](std::size_t i) {
      const cplx v = h(lambdas[i]);
      for (Eigen::Index b = 0; b < nx; ++b) out(static_cast<Eigen::Index>(i), b) = v * std::exp(I * lambdas[i] * xs[b]);
    });
  };
  const double x_max = *std::max_element(xs.begin(), xs.end());
  std::vector<RateHint> rates(3, RateHint{x_max + L, 0.0, 0});
  std::vector<DecayModel> decays = {
      sampled_ray_decay(pi, [&](cplx l) { return std::abs(h(l)); }), DecayModel{},
      sampled_ray_decay(0.0, [&](cplx l) { return std::abs(h(l)); })};
  const auto res = integrate_contour(integrand, nx, path, rates, decays, options_.quad);
  if (!res.converged) converged_ = false;

  CMatrix out(1, nx);
  for (Eigen::Index b = 0; b < nx; ++b) {
    cplx v = res.value[b];
    // The subtracted terms c_j / (2 pi (i lambda)^(j+1)) lambda^(-p) integrate to zero.
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      if (coeffs[j] != cplx{}) {
        v += coeffs[j] / (2.0 * pi * std::pow(I, static_cast<int>(j) + 1)) *
             gamma0_monomial_integral(static_cast<int>(j) + 1 + p, xs[b], rho);
      }
    }
    out(0, b) = v;
  }
  return out;
}

CVector TransformPair::gamma_k_at_rest(int k, const std::vector<double>& xs, int p, bool apply_op) const {
  check_positive(xs);
  const ContourSystem cs = rotate_real_rays_inward(cs_, options_.theta_fraction);
  const Contour& path = cs.gammas[k - 1];
  const FourierSampler& ghat = apply_op ? *sfhat_ : *fhat_;
  auto h = [&](cplx lambda) { return std::pow(lambda, -p) * utm::forward(*cm_, ghat, k, lambda); };
  const auto nx = static_cast<Eigen::Index>(xs.size());
  BatchIntegrand integrand = [&](const std::vector<cplx>& lambdas, CMatrix& out) {
    out.resize(static_cast<Eigen::Index>(lambdas.size()), nx);
    parallel_for(lambdas.size(), [&](std::size_t i) {
      const cplx v = h(lambdas[i]);
      for (Eigen::Index b = 0; b < nx; ++b) out(static_cast<Eigen::Index>(i), b) = v * std::exp(I * lambdas[i] * xs[b]);
    });
  };
  const double x_max = *std::max_element(xs.begin(), xs.end());
  const double L = f_.support();
  std::vector<RateHint> rates(path.size(), RateHint{x_max + L, 0.0, 0});
  std::vector<DecayModel> decays;
  for (const auto& seg : path) {
    if (!seg.infinite()) {
      decays.emplace_back();
      continue;
    }
    decays.push_back(sampled_ray_decay(seg.angle, [&, xs](cplx l) { return std::abs(h(l)) * max_abs_exp(l, xs); }));
  }
  const auto res = integrate_contour(integrand, nx, path, rates, decays, options_.quad);
  if (!res.converged) converged_ = false;
  return res.value;
}

CMatrix TransformPair::contributions(const std::vector<double>& xs, int p, bool apply_op) const {
  const int N = components();
  CMatrix out(N + 1, static_cast<Eigen::Index>(xs.size()));
  out.row(0) = gamma0_subtracted(xs, p, apply_op);
  for (int k = 1; k <= N; ++k) out.row(k) = gamma_k_at_rest(k, xs, p, apply_op).transpose();
  return out;
}

CVector TransformPair::contribution(int k, const std::vector<double>& xs, int p, bool apply_op) const {
  if (k < 0 || k > components()) throw Error(ErrorCode::InvalidArgument, "contour index out of range");
  if (k == 0) {
    if (p < 0) throw Error(ErrorCode::InvalidArgument, "Gamma_0 integrals need p >= 0");
    return gamma0_subtracted(xs, p, apply_op).row(0).transpose();
  }
  return gamma_k_at_rest(k, xs, p, apply_op);
}

CVector TransformPair::reconstruct(const std::vector<double>& xs) const {
  return contributions(xs).colwise().sum().transpose();
}

ContourSystem TransformPair::time_contours(double t_min, double x_min, double x_max) const {
  GrowthModel growth;
  growth.support = f_.support();
  growth.x_min = x_min;
  growth.x_max = x_max;
  growth.max_exponent = options_.max_exponent;
  growth.nus.push_back({1.0});
  const int N = components();
  for (int k = 1; k <= N; ++k) {
    std::vector<cplx> nu;
    for (int l = 1; l <= cm_->size(); ++l) nu.push_back(cm_->alpha_pow(N + l - k));
    growth.nus.push_back(nu);
  }
  return deform_for_time(cs_, problem_, t_min, options_.theta_fraction, &growth);
}

CMatrix TransformPair::evolve_positive(const std::vector<double>& xs, const std::vector<double>& ts) const {
  check_positive(xs);
  const int n = problem_.order();
  const cplx a = problem_.dispersion();
  const double t_min = *std::min_element(ts.begin(), ts.end());
  const double t_max = *std::max_element(ts.begin(), ts.end());
  const double x_min = *std::min_element(xs.begin(), xs.end());
  const double x_max = *std::max_element(xs.begin(), xs.end());
  const double L = f_.support();
  const ContourSystem cs = time_contours(t_min, x_min, x_max);

  auto check_rays = [&](const Contour& c) {
    for (const auto& seg : c) {
      if (on_real_axis(seg) && std::cos(std::arg(a) + n * seg.angle) <= 1e-12) {
        throw Error(ErrorCode::DeformationRequired, "a ray on the real axis carries no decay for t > 0");
      }
    }
  };
  check_rays(cs.gamma0);
  for (const auto& c : cs.gammas) check_rays(c);

  const auto nx = static_cast<Eigen::Index>(xs.size());
  const auto nt = static_cast<Eigen::Index>(ts.size());
  CVector total = CVector::Zero(nx * nt);
  for (int k = 0; k <= components(); ++k) {
    const Contour& path = k == 0 ? cs.gamma0 : cs.gammas[k - 1];
    auto values = [&](cplx lambda, cplx* out) {
      const cplx F = forward(k, lambda);
      const cplx ln = a * std::pow(lambda, n);
      for (Eigen::Index j = 0; j < nt; ++j) {
        for (Eigen::Index i = 0; i < nx; ++i) out[i + j * nx] = F * std::exp(I * lambda * xs[i] - ln * ts[j]);
      }
    };
    BatchIntegrand integrand = [&](const std::vector<cplx>& lambdas, CMatrix& out) {
      out.resize(static_cast<Eigen::Index>(lambdas.size()), nx * nt);
      CMatrix tmp(nx * nt, static_cast<Eigen::Index>(lambdas.size()));
      parallel_for(lambdas.size(), [&](std::size_t i) { values(lambdas[i], tmp.col(static_cast<Eigen::Index>(i)).data()); });
      out = tmp.transpose();
    };
    std::vector<RateHint> rates(path.size(), RateHint{x_max + L, n * std::abs(a) * t_max, n - 1});
    std::vector<DecayModel> decays;
    for (const auto& seg : path) {
      if (!seg.infinite()) {
        decays.emplace_back();
        continue;
      }
      decays.push_back(sampled_ray_decay(seg.angle, [&](cplx l) {
        std::vector<cplx> buf(static_cast<std::size_t>(nx * nt));
        values(l, buf.data());
        double best = 0.0;
        for (const auto& v : buf) best = std::max(best, std::abs(v));
        return best;
      }));
    }
    const auto res = integrate_contour(integrand, nx * nt, path, rates, decays, options_.quad);
    if (!res.converged) converged_ = false;
    total += res.value;
  }
  CMatrix out(nx, nt);
  for (Eigen::Index j = 0; j < nt; ++j) {
    for (Eigen::Index i = 0; i < nx; ++i) out(i, j) = total[i + j * nx];
  }
  return out;
}

CMatrix TransformPair::evolve(const std::vector<double>& xs, const std::vector<double>& ts) const {
  CMatrix out(static_cast<Eigen::Index>(xs.size()), static_cast<Eigen::Index>(ts.size()));
  std::vector<double> pos;
  std::vector<Eigen::Index> pos_idx;
  bool need_rest = false;
  for (std::size_t j = 0; j < ts.size(); ++j) {
    if (ts[j] < 0.0) throw Error(ErrorCode::InvalidArgument, "t must be nonnegative");
    if (ts[j] == 0.0) {
      need_rest = true;
    } else {
      pos.push_back(ts[j]);
      pos_idx.push_back(static_cast<Eigen::Index>(j));
    }
  }
  if (need_rest) {
    const CVector rest = reconstruct(xs);
    for (std::size_t j = 0; j < ts.size(); ++j) {
      if (ts[j] == 0.0) out.col(static_cast<Eigen::Index>(j)) = rest;
    }
  }
  if (!pos.empty()) {
    const CMatrix moving = evolve_positive(xs, pos);
    for (std::size_t j = 0; j < pos.size(); ++j) out.col(pos_idx[j]) = moving.col(static_cast<Eigen::Index>(j));
  }
  return out;
}

CVector inverse(const ValidatedProblem& problem, const ContourSystem& cs,
                const std::function<cplx(int, cplx)>& F, const std::vector<double>& xs,
                const QuadratureParams& params, double support) {
  (void)problem;
  check_positive(xs);
  const auto nx = static_cast<Eigen::Index>(xs.size());
  const double x_max = *std::max_element(xs.begin(), xs.end());
  CVector total = CVector::Zero(nx);
  for (std::size_t k = 0; k <= cs.gammas.size(); ++k) {
    const Contour& path = k == 0 ? cs.gamma0 : cs.gammas[k - 1];
    const int kk = static_cast<int>(k);
    BatchIntegrand integrand = [&](const std::vector<cplx>& lambdas, CMatrix& out) {
      out.resize(static_cast<Eigen::Index>(lambdas.size()), nx);
      for (std::size_t i = 0; i < lambdas.size(); ++i) {
        const cplx v = F(kk, lambdas[i]);
        for (Eigen::Index b = 0; b < nx; ++b) out(static_cast<Eigen::Index>(i), b) = v * std::exp(I * lambdas[i] * xs[b]);
      }
    };
    std::vector<RateHint> rates(path.size(), RateHint{x_max + support + 1.0, 0.0, 0});
    std::vector<DecayModel> decays;
    for (const auto& seg : path) {
      if (!seg.infinite()) {
        decays.emplace_back();
        continue;
      }
      decays.push_back(sampled_ray_decay(seg.angle, [&](cplx l) { return std::abs(F(kk, l)) * max_abs_exp(l, xs); }));
    }
    total += integrate_contour(integrand, nx, path, rates, decays, params).value;
  }
  return total;
}

cplx reconstruct(const ValidatedProblem& problem, const InitialDatum& f, double x,
                 const SolverOptions& options) {
  return TransformPair(problem, f, options).reconstruct({x})[0];
}

cplx gamma_k_vanishing(const ValidatedProblem& problem, const InitialDatum& f, int k, double x,
                       const SolverOptions& options) {
  const TransformPair tp(problem, f, options);
  if (k < 1 || k > tp.components()) throw Error(ErrorCode::InvalidArgument, "k must index a Gamma_k, k >= 1");
  return tp.contribution(k, {x})[0];
}

}  // namespace utm
