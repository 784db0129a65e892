#include "utm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "utm/datum.hpp"

namespace utm {

double RateHint::at(double r) const {
  return base + (coef != 0.0 ? coef * std::pow(std::max(r, 0.0), power) : 0.0);
}

DecayModel DecayModel::exponential(double scale, double growth, double decay, int power) {
  DecayModel m;
  m.kind = Kind::Exponential;
  m.scale = scale;
  m.growth = growth;
  m.decay = decay;
  m.power = power;
  return m;
}

DecayModel DecayModel::algebraic(double scale, double order) {
  DecayModel m;
  m.kind = Kind::Algebraic;
  m.scale = scale;
  m.order = order;
  return m;
}

DecayModel DecayModel::sampled(std::function<double(double)> magnitude) {
  DecayModel m;
  m.kind = Kind::Sampled;
  m.magnitude = std::move(magnitude);
  return m;
}

double truncation_radius(const PathSegment& seg, const DecayModel& model, double abs_tol,
                         double cap, bool* capped) {
  if (capped) *capped = false;
  const double r0 = std::max(seg.r_in, 1e-3);
  const double target = abs_tol / 10.0;
  auto clamp = [&](double r) {
    if (r > cap) {
      if (capped) *capped = true;
      return cap;
    }
    return std::max(r, seg.r_in * (1.0 + 1e-12) + 1e-12);
  };

  switch (model.kind) {
    case DecayModel::Kind::None:
      throw Error(ErrorCode::TailBoundUnavailable, "infinite ray without a decay model");

    case DecayModel::Kind::Exponential: {
      if (model.scale <= 0.0) return clamp(r0);
      if (!(model.decay > 0.0) && !(model.growth < 0.0)) {
        throw Error(ErrorCode::TailBoundUnavailable, "decay model does not decay");
      }
      const double p = model.power;
      auto log_mag = [&](double r) {
        return std::log(model.scale) + model.growth * (r - r0) -
               model.decay * (std::pow(r, p) - std::pow(r0, p));
      };
      // Tail beyond r is at most |g(r)| / (slope of the exponent).
      auto tail_ok = [&](double r) {
        const double slope = model.decay * p * std::pow(r, p - 1.0) - model.growth;
        if (slope <= 0.0) return false;
        return log_mag(r) - std::log(slope) < std::log(target);
      };
      double hi = std::max(r0, 1.0);
      while (!tail_ok(hi)) {
        hi *= 2.0;
        if (hi > cap) return clamp(hi);
      }
      double lo = r0;
      if (tail_ok(lo)) return clamp(lo);
      for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (tail_ok(mid) ? hi : lo) = mid;
      }
      return clamp(hi);
    }

    case DecayModel::Kind::Algebraic: {
      if (!(model.order > 1.0)) throw Error(ErrorCode::TailBoundUnavailable, "algebraic order must exceed 1");
      // scale r0^q r^(1-q) / (q - 1) < target.
      const double q = model.order;
      const double r = std::pow(model.scale * std::pow(r0, q) / ((q - 1.0) * target), 1.0 / (q - 1.0));
      return clamp(std::max(r, r0));
    }

    case DecayModel::Kind::Sampled: {
      double r = std::max(r0, 4.0);
      int quiet = 0;
      while (r < cap) {
        // max |g| on [r, 2r] times r bounds the integral over that stretch.
        const double m = model.magnitude(r);
        if (!std::isfinite(m)) throw Error(ErrorCode::TailBoundUnavailable, "integrand overflows along the ray");
        if (m * r < target) {
          if (++quiet == 2) return clamp(r);
        } else {
          quiet = 0;
        }
        r *= 2.0;
      }
      return clamp(r);
    }
  }
  return clamp(r0);
}

const std::pair<RVector, RVector>& gauss_legendre(int points) {
  static std::mutex mu;
  static std::map<int, std::pair<RVector, RVector>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(points);
  if (it != cache.end()) return it->second;

  // Golub-Welsch, then one Newton step on the three-term recurrence.
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(points, points);
  for (int k = 1; k < points; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    J(k, k - 1) = b;
    J(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  RVector x = es.eigenvalues();
  RVector w(points);
  for (int i = 0; i < points; ++i) {
    for (int iter = 0; iter < 2; ++iter) {
      double p0 = 1.0;
      double p1 = x[i];
      for (int k = 2; k <= points; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x[i] * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = points * (x[i] * p1 - p0) / (x[i] * x[i] - 1.0);
      if (iter == 0) {
        x[i] -= p1 / dp;
      } else {
        w[i] = 2.0 / ((1.0 - x[i] * x[i]) * dp * dp);
      }
    }
  }
  return cache.emplace(points, std::make_pair(x, w)).first->second;
}

namespace {

struct Panel {
  double a;  // natural parameter, traversal order
  double b;
  int depth;
};

// Arclength per unit of the natural parameter.
double speed(const PathSegment& seg) { return seg.kind == SegmentKind::Arc ? seg.radius : 1.0; }

double radius_at(const PathSegment& seg, double s) { return std::abs(seg.at(s)); }

std::vector<Panel> initial_panels(const PathSegment& seg, double start, double end,
                                  const RateHint& rate, const QuadratureParams& params) {
  const int p = params.max_panel_order / 2;
  const double dir = end >= start ? 1.0 : -1.0;
  const double total = std::abs(end - start);
  std::vector<Panel> out;
  if (total == 0.0) return out;
  const double v = speed(seg);
  double u = 0.0;
  // Geometric grading away from the inner end of a ray.
  double grade = seg.kind == SegmentKind::Ray ? 0.125 : 1.0;
  while (u < total) {
    const double s = start + dir * u;
    const double r = radius_at(seg, s);
    const double wavelength = 2.0 * pi / std::max(rate.at(r), 1e-3);
    double h = p / params.oscillation_density * wavelength;
    h = std::min(h, 0.5 * std::max(1.0, r)) / v;
    h *= grade;
    grade = std::min(1.0, 2.0 * grade);
    if (u + 1.5 * h >= total) h = total - u;
    out.push_back({s, start + dir * (u + h), 0});
    u += h;
  }
  return out;
}

}  // namespace

BatchResult integrate_batch(const BatchIntegrand& g, Eigen::Index batch, const PathSegment& seg,
                            const RateHint& rate, const DecayModel& decay,
                            const QuadratureParams& params) {
  BatchResult res;
  res.value = CVector::Zero(batch);

  double start = seg.param_start();
  double end = seg.param_end();
  if (seg.infinite()) {
    bool capped = false;
    const double lambda_max =
        truncation_radius(seg, decay, params.abs_tol, params.truncation_radius, &capped);
    res.truncated_at = lambda_max;
    if (capped) res.converged = false;
    if (seg.orientation > 0) {
      end = lambda_max;
    } else {
      start = lambda_max;
    }
  }

  const int p = params.max_panel_order / 2;
  const auto& lo_rule = gauss_legendre(p);
  const auto& hi_rule = gauss_legendre(2 * p);
  const double total = std::abs(end - start);
  if (total == 0.0) return res;

  std::vector<Panel> pending = initial_panels(seg, start, end, rate, params);
  std::vector<std::pair<Panel, CVector>> accepted_rows;
  double scale = 0.0;

  for (int round = 0; !pending.empty(); ++round) {
    std::vector<cplx> nodes;
    std::vector<cplx> weights;
    nodes.reserve(pending.size() * 3 * p);
    weights.reserve(pending.size() * 3 * p);
    for (const auto& pan : pending) {
      const double mid = 0.5 * (pan.a + pan.b);
      const double half = 0.5 * (pan.b - pan.a);
      for (const auto* rule : {&lo_rule, &hi_rule}) {
        for (Eigen::Index i = 0; i < rule->first.size(); ++i) {
          const double s = mid + half * rule->first[i];
          nodes.push_back(seg.at(s));
          weights.push_back(half * rule->second[i] * seg.tangent(s));
        }
      }
    }
    CMatrix vals;
    g(nodes, vals);
    res.evaluations += static_cast<long>(nodes.size());

    std::vector<CVector> coarse(pending.size());
    std::vector<CVector> fine(pending.size());
    std::size_t idx = 0;
    for (std::size_t k = 0; k < pending.size(); ++k) {
      CVector c = CVector::Zero(batch);
      CVector f = CVector::Zero(batch);
      for (int i = 0; i < p; ++i, ++idx) c += weights[idx] * vals.row(idx).transpose();
      for (int i = 0; i < 2 * p; ++i, ++idx) f += weights[idx] * vals.row(idx).transpose();
      coarse[k] = std::move(c);
      fine[k] = std::move(f);
      scale = std::max(scale, fine[k].cwiseAbs().maxCoeff());
    }

    const double global = std::max(params.abs_tol, params.rel_tol * scale);
    std::vector<Panel> next;
    for (std::size_t k = 0; k < pending.size(); ++k) {
      const Panel& pan = pending[k];
      const double err = (fine[k] - coarse[k]).cwiseAbs().maxCoeff();
      const double frac = std::abs(pan.b - pan.a) / total;
      const bool last = round + 1 >= params.max_refinements || !std::isfinite(err);
      if (err <= global * std::max(frac, 1e-3) || last) {
        if (err > global * std::max(frac, 1e-3)) res.converged = false;
        res.value += fine[k];
        res.error += err;
      } else {
        const double mid = 0.5 * (pan.a + pan.b);
        next.push_back({pan.a, mid, pan.depth + 1});
        next.push_back({mid, pan.b, pan.depth + 1});
      }
    }
    pending = std::move(next);
  }
  return res;
}

BatchResult integrate_contour(const BatchIntegrand& g, Eigen::Index batch, const Contour& contour,
                              const std::vector<RateHint>& rates,
                              const std::vector<DecayModel>& decays, const QuadratureParams& params) {
  BatchResult total;
  total.value = CVector::Zero(batch);
  for (std::size_t i = 0; i < contour.size(); ++i) {
    const RateHint rate = i < rates.size() ? rates[i] : RateHint{};
    const DecayModel decay = i < decays.size() ? decays[i] : DecayModel{};
    auto r = integrate_batch(g, batch, contour[i], rate, decay, params);
    total.value += r.value;
    total.error += r.error;
    total.converged = total.converged && r.converged;
    total.evaluations += r.evaluations;
    total.truncated_at = std::max(total.truncated_at, r.truncated_at);
  }
  return total;
}

ScalarResult integrate_segment(const std::function<cplx(cplx)>& g, const PathSegment& seg,
                               const QuadratureParams& params, const RateHint& rate,
                               const DecayModel& decay) {
  BatchIntegrand batch = [&](const std::vector<cplx>& lambdas, CMatrix& out) {
    out.resize(static_cast<Eigen::Index>(lambdas.size()), 1);
    for (std::size_t i = 0; i < lambdas.size(); ++i) out(static_cast<Eigen::Index>(i), 0) = g(lambdas[i]);
  };
  const auto r = integrate_batch(batch, 1, seg, rate, decay, params);
  return {r.value[0], r.error, r.converged};
}

cplx gamma0_monomial_integral(int m, double x, double delta_indent) {
  if (!(x > 0.0)) throw Error(ErrorCode::NonpositiveX, "closing in the upper half-plane needs x > 0");
  if (m < 1 || !(delta_indent > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "need m >= 1 and a positive indentation");
  }
  return 0.0;
}

std::vector<cplx> tail_subtraction_coeffs(const InitialDatum& f, int m_terms) {
  if (m_terms < 0 || m_terms > f.max_order() + 1) {
    throw Error(ErrorCode::InvalidArgument, "too many subtraction terms for the datum");
  }
  if (m_terms == 0) return {};
  const CVector bv = f.boundary_vector(m_terms);
  return {bv.data(), bv.data() + bv.size()};
}

cplx tail_sum(const std::vector<cplx>& coeffs, cplx lambda) {
  // sum_j c_j w^(j+1), w = 1 / (i lambda), by Horner.
  const cplx w = 1.0 / (I * lambda);
  cplx s{};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) s = (s + *it) * w;
  return s;
}

}  // namespace utm
