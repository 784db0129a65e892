#include <doctest.h>

#include <limits>

#include "helpers.hpp"
#include "utm/quadrature.hpp"
#include "utm/transform.hpp"

using namespace utm;
using utm::test::builtin;
using utm::test::error_code;

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

cplx integrate(const std::function<cplx(cplx)>& g, const Contour& c, const std::vector<DecayModel>& decays,
               const RateHint& rate = {}) {
  QuadratureParams q;
  cplx sum{};
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto r = integrate_segment(g, c[i], q, rate, decays[i]);
    CHECK(r.converged);
    sum += r.value;
  }
  return sum;
}

}  // namespace

TEST_CASE("pole above the indented line: residue value") {
  // Rays tilted into the upper half-plane below the pole at 2 i delta.
  const double d = 0.1;
  const double tilt = pi / 8;
  const cplx pole{0.0, 2.0 * d};
  const Contour c{PathSegment::ray(pi - tilt, d, inf, -1), PathSegment::arc(d, pi - tilt, tilt),
                  PathSegment::ray(tilt, d, inf, 1)};
  const auto decay = DecayModel::exponential(1.0 / d, 0.0, std::sin(tilt), 1);
  const std::vector<DecayModel> decays{decay, {}, decay};
  const cplx value = integrate([&](cplx l) { return std::exp(I * l) / (l - pole); }, c, decays);
  CHECK(std::abs(value - 2.0 * pi * I * std::exp(I * pole)) < 1e-8);
}

TEST_CASE("arc integrals of constants") {
  QuadratureParams q;
  const auto arc = PathSegment::arc(2.0, 0.0, pi / 2);
  const auto r = integrate_segment([](cplx) { return cplx{1.0}; }, arc, q);
  CHECK(std::abs(r.value - cplx{-2.0, 2.0}) < 1e-14);
  // |d lambda| = r d theta = r d lambda / (i lambda) on an arc about 0.
  auto unit_length = [](cplx l) { return 2.0 / (I * l); };
  CHECK(std::abs(integrate_segment(unit_length, arc, q).value - pi) < 1e-14);
  CHECK(std::abs(integrate_segment(unit_length, arc.reversed(), q).value + pi) < 1e-14);
}

TEST_CASE("deformed and undeformed rays agree for a forward-transform integrand") {
  const auto p = builtin("heat-dirichlet");
  const InitialDatum f = utm::test::mixed_datum(p);
  const FourierSampler fh(f);
  const double x = 1.0;
  const double t = 0.5;
  auto g = [&](cplx l) { return std::exp(I * l * x - l * l * t) * fh(l); };
  const double r0 = 1.0;
  const double phi = pi / 10;
  const Contour straight{PathSegment::ray(0.0, r0, inf, 1)};
  const Contour bent{PathSegment::arc(r0, 0.0, phi), PathSegment::ray(phi, r0, inf, 1)};
  const double L = f.support();
  const RateHint rate{x + L, 0.0, 0};
  const auto flat = DecayModel::exponential(10.0, 0.0, t, 2);
  const auto tilted = DecayModel::exponential(10.0, L * std::sin(phi), t * std::cos(2 * phi), 2);
  const cplx a = integrate(g, straight, {flat}, rate);
  const cplx b = integrate(g, bent, {{}, tilted}, rate);
  CHECK(std::abs(a - b) < 1e-7);
  CHECK(std::abs(a) > 1e-3);
}

TEST_CASE("monomial integrals over the indented line vanish") {
  CHECK(gamma0_monomial_integral(3, 1.0, 0.1) == cplx{});
  CHECK(gamma0_monomial_integral(1, 0.5, 0.1) == cplx{});
  CHECK(error_code([] { gamma0_monomial_integral(2, 0.0, 0.1); }) == ErrorCode::NonpositiveX);
  CHECK(error_code([] { gamma0_monomial_integral(2, -1.0, 0.1); }) == ErrorCode::NonpositiveX);
  CHECK(error_code([] { gamma0_monomial_integral(0, 1.0, 0.1); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("monomial integral: truncated quadrature trends to zero") {
  const double d = 0.1;
  auto truncated = [&](double cut) {
    const Contour c{PathSegment::ray(pi, d, cut, -1), PathSegment::arc(d, pi, 0.0), PathSegment::ray(0.0, d, cut, 1)};
    return std::abs(integrate([](cplx l) { return std::exp(I * l) / (l * l); }, c, {{}, {}, {}}, {1.0, 0.0, 0}));
  };
  const double v2 = truncated(1e2);
  const double v3 = truncated(1e3);
  CHECK(v3 < 1e-3);
  CHECK(v3 < v2);
}

TEST_CASE("tail subtraction coefficients") {
  const auto rev = builtin("lkdv-reverse");
  const InitialDatum f = utm::test::mixed_datum(rev);
  const auto c = tail_subtraction_coeffs(f, 3);
  REQUIRE(c.size() == 3);
  CHECK(std::abs(c[0]) < 1e-15);
  CHECK(std::abs(c[1]) < 1e-15);
  CHECK(std::abs(c[2] - f.derivative(0.0, 2)) < 1e-15);
  CHECK(std::abs(c[2]) > 0.0);

  const InitialDatum bump = make_datum(rev, 3.0, CVector::Zero(3), 4);
  for (cplx v : tail_subtraction_coeffs(bump, 5)) CHECK(v == cplx{});
  CHECK(error_code([&] { tail_subtraction_coeffs(bump, 100); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("tail subtraction: remainder decays with the next power") {
  const auto p = builtin("robin-4");
  const InitialDatum f = utm::test::mixed_datum(p);
  const FourierSampler fh(f);
  const std::vector<double> ls{1e2, 3e2, 1e3, 3e3, 1e4};
  for (int m = 1; m <= 3; ++m) {
    const auto c = tail_subtraction_coeffs(f, m);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (double l : ls) {
      const double lx = std::log(l);
      const double ly = std::log(std::abs(fh(l) - tail_sum(c, l)));
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    const double k = static_cast<double>(ls.size());
    const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    CAPTURE(m);
    CHECK(std::abs(slope + (m + 1)) < 0.2);
  }
}

TEST_CASE("segment integrals: additivity and orientation") {
  QuadratureParams q;
  auto g = [](cplx l) { return std::exp(I * 3.0 * l) / (l + 2.0); };
  const auto ray = PathSegment::ray(0.4, 0.5, 7.0, 1);
  const cplx whole = integrate_segment(g, ray, q, {3.0, 0.0, 0}).value;
  const cplx parts = integrate_segment(g, ray.piece(0.5, 2.5), q, {3.0, 0.0, 0}).value +
                     integrate_segment(g, ray.piece(2.5, 7.0), q, {3.0, 0.0, 0}).value;
  CHECK(std::abs(whole - parts) < 1e-12 * std::abs(whole));
  CHECK(std::abs(integrate_segment(g, ray.reversed(), q, {3.0, 0.0, 0}).value + whole) < 1e-14 * std::abs(whole));
  const auto arc = PathSegment::arc(1.5, 0.2, 2.0);
  const cplx forward_arc = integrate_segment(g, arc, q).value;
  CHECK(std::abs(integrate_segment(g, arc.reversed(), q).value + forward_arc) < 1e-14 * std::abs(forward_arc));
}

TEST_CASE("Gauss-Legendre rules integrate polynomials of degree 2n - 1 exactly") {
  for (int n : {4, 8, 16, 32}) {
    const auto& [x, w] = gauss_legendre(n);
    for (int d = 0; d < 2 * n; ++d) {
      double s = 0.0;
      for (Eigen::Index i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], d);
      const double exact = d % 2 == 0 ? 2.0 / (d + 1) : 0.0;
      CHECK(std::abs(s - exact) < 1e-13);
    }
  }
}

TEST_CASE("panel convergence: a smooth integrand converges quickly") {
  QuadratureParams coarse;
  coarse.max_panel_order = 8;
  coarse.rel_tol = 1e-13;
  coarse.abs_tol = 1e-15;
  const auto seg = PathSegment::ray(0.0, 0.0, 5.0, 1);
  const auto r = integrate_segment([](cplx l) { return std::exp(-l) * std::cos(4.0 * l); }, seg, coarse, {4.0, 0.0, 0});
  const double exact = (1.0 - std::exp(-5.0) * (std::cos(20.0) - 4.0 * std::sin(20.0))) / 17.0;
  CHECK(std::abs(r.value - exact) < 1e-12);
  CHECK(r.error < 1e-10);
}

TEST_CASE("truncation radius") {
  const auto ray = PathSegment::ray(0.3, 1.0, inf, 1);
  const auto model = DecayModel::exponential(5.0, 0.0, 2.0, 2);
  const double tol = 1e-12;
  const double r = truncation_radius(ray, model, tol, 1e6);
  // Integral of 5 exp(-2 (s^2 - 1)) over s > r is below the value at r over the slope 4 r.
  const double tail = 5.0 * std::exp(-2.0 * (r * r - 1.0)) / (4.0 * r);
  CHECK(tail < tol / 10.0 * (1.0 + 1e-9));
  CHECK(tail > tol / 1000.0);
  CHECK(r < 5.0);
  bool capped = false;
  truncation_radius(ray, DecayModel::algebraic(1.0, 1.5), 1e-30, 10.0, &capped);
  CHECK(capped);
  CHECK(error_code([&] { truncation_radius(ray, DecayModel{}, tol, 1e6); }) == ErrorCode::TailBoundUnavailable);
  QuadratureParams q;
  CHECK(error_code([&] { integrate_segment([](cplx) { return cplx{1.0}; }, ray, q); }) ==
        ErrorCode::TailBoundUnavailable);
}
