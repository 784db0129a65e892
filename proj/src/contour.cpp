#include "utm/contour.hpp"

#include <algorithm>
#include <cmath>

namespace utm {

namespace {

constexpr double kAngleTol = 1e-12;

// Re(a e^{i n phi}) / |a|.
double decay_rate(int n, cplx a, double phi) { return std::cos(std::arg(a) + n * phi); }

double peak_exponent(double g, double c, int n) {
  if (g <= 0.0) return 0.0;
  if (c <= 0.0) return std::numeric_limits<double>::infinity();
  const double r = std::pow(g / (n * c), 1.0 / (n - 1));
  return g * r - c * std::pow(r, n);
}

// Target angle for a ray at phi0 moved into a sector with Re(a lambda^n) > 0.
double rotation_target(int n, cplx a, double phi0, double fraction) {
  const double width = pi / n;
  const double v = decay_rate(n, a, phi0);
  if (std::abs(v) <= 1e-12) {
    const double step = 1e-6 * width;
    const int side = decay_rate(n, a, phi0 + step) > 0.0 ? 1 : -1;
    return phi0 + side * fraction * width;
  }
  if (v < 0.0) throw Error(ErrorCode::NoDecaySector, "ray lies inside a growth sector");
  // arg a + n phi0 = psi + 2 pi j with psi in (-pi/2, pi/2); the centre has psi = 0.
  const double raw = std::arg(a) + n * phi0;
  const double psi = raw - 2.0 * pi * std::round(raw / (2.0 * pi));
  const double centre = phi0 - psi / n;
  return phi0 + 2.0 * fraction * (centre - phi0);
}

void set_ray_angle(Contour& c, std::size_t idx, double angle) {
  c[idx].angle = angle;
  if (idx > 0 && c[idx - 1].kind == SegmentKind::Arc) c[idx - 1].theta_end = angle;
  if (idx + 1 < c.size() && c[idx + 1].kind == SegmentKind::Arc) c[idx + 1].theta_start = angle;
}

}  // namespace

PathSegment PathSegment::ray(double angle, double r_in, double r_out, int orientation, cplx origin) {
  if (!(r_out > r_in)) throw Error(ErrorCode::InvalidArgument, "ray needs r_out > r_in");
  PathSegment s;
  s.kind = SegmentKind::Ray;
  s.origin = origin;
  s.angle = angle;
  s.r_in = r_in;
  s.r_out = r_out;
  s.orientation = orientation >= 0 ? 1 : -1;
  return s;
}

PathSegment PathSegment::arc(double radius, double theta_start, double theta_end, cplx centre) {
  if (!(radius > 0.0) || std::abs(theta_end - theta_start) >= 2.0 * pi) {
    throw Error(ErrorCode::InvalidArgument, "arc needs positive radius and span below 2 pi");
  }
  PathSegment s;
  s.kind = SegmentKind::Arc;
  s.origin = centre;
  s.radius = radius;
  s.theta_start = theta_start;
  s.theta_end = theta_end;
  s.orientation = theta_end >= theta_start ? 1 : -1;
  return s;
}

double PathSegment::param_start() const {
  if (kind == SegmentKind::Arc) return theta_start;
  return orientation > 0 ? r_in : r_out;
}

double PathSegment::param_end() const {
  if (kind == SegmentKind::Arc) return theta_end;
  return orientation > 0 ? r_out : r_in;
}

cplx PathSegment::at(double s) const {
  if (kind == SegmentKind::Arc) return origin + std::polar(radius, s);
  return origin + std::polar(s, angle);
}

cplx PathSegment::tangent(double s) const {
  if (kind == SegmentKind::Arc) return I * std::polar(radius, s);
  return std::polar(1.0, angle);
}

double PathSegment::length() const {
  if (kind == SegmentKind::Arc) return radius * std::abs(theta_end - theta_start);
  return r_out - r_in;
}

PathSegment PathSegment::reversed() const {
  PathSegment s = *this;
  if (kind == SegmentKind::Arc) {
    std::swap(s.theta_start, s.theta_end);
    s.orientation = -orientation;
  } else {
    s.orientation = -orientation;
  }
  return s;
}

PathSegment PathSegment::piece(double a, double b) const {
  if (kind == SegmentKind::Arc) return arc(radius, a, b, origin);
  return ray(angle, std::min(a, b), std::max(a, b), b >= a ? 1 : -1, origin);
}

std::vector<Sector> decay_sectors(int n, cplx a) {
  std::vector<Sector> out;
  const double arg = std::arg(a);
  for (int j = -n - 2; j <= n + 2; ++j) {
    double lo = (0.5 * pi - arg + 2.0 * pi * j) / n;
    double hi = (1.5 * pi - arg + 2.0 * pi * j) / n;
    lo = std::max(lo, 0.0);
    hi = std::min(hi, pi);
    if (hi - lo <= kAngleTol) continue;
    if (std::abs(lo) < kAngleTol) lo = 0.0;
    if (std::abs(hi - pi) < kAngleTol) hi = pi;
    out.push_back({lo, hi});
  }
  std::sort(out.begin(), out.end(), [](const Sector& x, const Sector& y) { return x.lo < y.lo; });
  return out;
}

ContourSystem build_contours(const ValidatedProblem& problem, double R, double delta_indent) {
  if (!(delta_indent > 0.0) || !(delta_indent < R)) {
    throw Error(ErrorCode::InvalidArgument, "need 0 < delta < R");
  }
  const double inf = std::numeric_limits<double>::infinity();
  ContourSystem cs;
  cs.R = R;
  cs.delta_indent = delta_indent;
  cs.gamma0 = {PathSegment::ray(pi, delta_indent, inf, -1),
               PathSegment::arc(delta_indent, pi, 0.0),
               PathSegment::ray(0.0, delta_indent, inf, 1)};
  cs.sectors = decay_sectors(problem.order(), problem.dispersion());
  if (cs.sectors.empty()) throw Error(ErrorCode::NoComponents, "no decay sector in the upper half-plane");
  if (static_cast<int>(cs.sectors.size()) != problem.conditions()) {
    throw Error(ErrorCode::NoComponents, "decay sector count differs from the number of conditions");
  }
  for (const auto& s : cs.sectors) {
    cs.gammas.push_back({PathSegment::ray(s.lo, R, inf, -1), PathSegment::arc(R, s.lo, s.hi),
                         PathSegment::ray(s.hi, R, inf, 1)});
  }
  return cs;
}

double GrowthModel::growth(int contour, double phi) const {
  double up = 0.0;
  if (contour < static_cast<int>(nus.size())) {
    for (const auto& nu : nus[contour]) up = std::max(up, (nu * std::polar(1.0, phi)).imag());
  }
  const double s = std::sin(phi);
  return support * up - (s > 0.0 ? x_min : x_max) * s;
}

ContourSystem deform_for_time(const ContourSystem& cs, const ValidatedProblem& problem, double t,
                              double theta_fraction, const GrowthModel* growth) {
  if (t < 0.0) throw Error(ErrorCode::InvalidArgument, "t must be nonnegative");
  if (!(theta_fraction > 0.0 && theta_fraction < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "theta_fraction must lie in (0, 1)");
  }
  if (t == 0.0) return cs;
  const int n = problem.order();
  const cplx a = problem.dispersion();

  ContourSystem out = cs;
  auto deform = [&](Contour& c, int index) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!c[i].infinite()) continue;
      const double phi0 = c[i].angle;
      double chosen = phi0;
      for (int halvings = 0; halvings < 24; ++halvings) {
        const double target = rotation_target(n, a, phi0, theta_fraction * std::ldexp(1.0, -halvings));
        if (!growth) {
          chosen = target;
          break;
        }
        const double cdec = t * std::abs(a) * decay_rate(n, a, target);
        if (peak_exponent(growth->growth(index, target), cdec, n) <= growth->max_exponent) {
          chosen = target;
          break;
        }
      }
      set_ray_angle(c, i, chosen);
    }
  };
  deform(out.gamma0, 0);
  for (std::size_t k = 0; k < out.gammas.size(); ++k) deform(out.gammas[k], static_cast<int>(k) + 1);
  return out;
}

bool on_real_axis(const PathSegment& seg) {
  if (seg.kind != SegmentKind::Ray || seg.origin.imag() != 0.0) return false;
  return std::abs(std::sin(seg.angle)) < kAngleTol;
}

ContourSystem rotate_real_rays_inward(const ContourSystem& cs, double theta_fraction) {
  ContourSystem out = cs;
  for (std::size_t k = 0; k < out.gammas.size(); ++k) {
    auto& c = out.gammas[k];
    const Sector s = out.sectors[k];
    const double turn = theta_fraction * (s.hi - s.lo);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!on_real_axis(c[i])) continue;
      const bool lower = std::abs(c[i].angle - s.lo) < std::abs(c[i].angle - s.hi);
      set_ray_angle(c, i, lower ? s.lo + turn : s.hi - turn);
    }
  }
  return out;
}

std::vector<std::pair<double, cplx>> sample_segment(const PathSegment& seg, int count, double r_max) {
  std::vector<std::pair<double, cplx>> out;
  double a = seg.param_start();
  double b = seg.param_end();
  if (!std::isfinite(a)) a = r_max;
  if (!std::isfinite(b)) b = r_max;
  for (int i = 0; i < count; ++i) {
    const double s = count == 1 ? a : a + (b - a) * i / (count - 1);
    out.emplace_back(s, seg.at(s));
  }
  return out;
}

}  // namespace utm
