#pragma once

#include <limits>
#include <vector>

#include "utm/common.hpp"
#include "utm/problem.hpp"

namespace utm {

enum class SegmentKind { Ray, Arc };

/// A ray origin + r e^{i angle}, r in [r_in, r_out], or an arc
/// centre + radius e^{i theta}, theta from theta_start to theta_end.
///
/// The natural parameter is r for rays and theta for arcs. Rays with
/// orientation +1 run outward; arcs run anticlockwise when theta_end >
/// theta_start.
struct PathSegment {
  SegmentKind kind = SegmentKind::Ray;
  cplx origin{};
  double angle = 0.0;
  double r_in = 0.0;
  double r_out = std::numeric_limits<double>::infinity();
  double radius = 0.0;
  double theta_start = 0.0;
  double theta_end = 0.0;
  int orientation = 1;

  static PathSegment ray(double angle, double r_in, double r_out, int orientation,
                         cplx origin = {});
  static PathSegment arc(double radius, double theta_start, double theta_end, cplx centre = {});

  bool infinite() const { return kind == SegmentKind::Ray && !std::isfinite(r_out); }
  /// Start and end of the natural parameter in traversal order.
  double param_start() const;
  double param_end() const;
  cplx at(double s) const;
  /// d lambda / ds for the natural parameter.
  cplx tangent(double s) const;
  double length() const;
  PathSegment reversed() const;
  /// Same segment restricted to natural parameters between a and b, traversed a -> b.
  PathSegment piece(double a, double b) const;
};

using Contour = std::vector<PathSegment>;

/// Open angular interval (lo, hi).
struct Sector {
  double lo = 0.0;
  double hi = 0.0;
  double centre() const { return 0.5 * (lo + hi); }
};

struct ContourSystem {
  Contour gamma0;
  std::vector<Contour> gammas;
  std::vector<Sector> sectors;  ///< the decay sector bounded by each gammas[k]
  double delta_indent = 0.1;
  double R = 1.0;
};

/// Components of {arg lambda in (0, pi) : Re(a lambda^n) < 0}, increasing.
std::vector<Sector> decay_sectors(int n, cplx a);

/// Gamma_0 left to right; Gamma_k: inward ray at the lower edge, anticlockwise
/// arc on |lambda| = R, outward ray at the upper edge (negative orientation of
/// the sector boundary). Throws Error{NoComponents}.
ContourSystem build_contours(const ValidatedProblem& problem, double R, double delta_indent);

/// Exponential type of the integrand along a direction, used to cap ray
/// rotations: |F(r e^{i phi}) e^{i r e^{i phi} x}| <~ exp(growth(phi) r).
struct GrowthModel {
  double support = 0.0;
  double x_min = 0.0;
  double x_max = 0.0;
  double max_exponent = 10.0;
  /// Imaginary parts of lambda -> nu lambda for the transform arguments of
  /// each contour; Gamma_0 uses {1}.
  std::vector<std::vector<cplx>> nus;

  double growth(int contour, double phi) const;
};

/// Rotate every semi-infinite ray into the adjacent open sector where
/// Re(a lambda^n) > 0 (towards its centre when the ray already lies inside
/// one), by theta_fraction of the sector width, halving the rotation while the
/// peak exponent predicted by `growth` exceeds its cap. Arcs are stretched to
/// the new ray angles. t = 0 returns cs unchanged.
ContourSystem deform_for_time(const ContourSystem& cs, const ValidatedProblem& problem, double t,
                              double theta_fraction, const GrowthModel* growth = nullptr);

/// Rays of Gamma_k (k >= 1) lying on the real axis turned into their own
/// decay sector by theta_fraction of its width. Used for t = 0 evaluation.
ContourSystem rotate_real_rays_inward(const ContourSystem& cs, double theta_fraction);

/// True when the ray lies on the real axis.
bool on_real_axis(const PathSegment& seg);

/// Points along a segment for plotting; infinite rays are cut at `r_max`.
std::vector<std::pair<double, cplx>> sample_segment(const PathSegment& seg, int count,
                                                   double r_max);

}  // namespace utm
