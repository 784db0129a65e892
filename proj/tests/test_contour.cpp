#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "utm/char_matrix.hpp"
#include "utm/contour.hpp"

using namespace utm;
using utm::test::builtin;
using utm::test::error_code;

namespace {

ContourSystem contours_of(const ValidatedProblem& p) {
  const double R = CharMatrix(p).choose_R();
  return build_contours(p, R, std::min(0.1, R / 10.0));
}

cplx direction(const PathSegment& s, double param) {
  return s.tangent(param) * (s.param_end() >= s.param_start() ? 1.0 : -1.0);
}

double finite_param(const PathSegment& s, double p, double cap) { return std::isfinite(p) ? p : cap; }

}  // namespace

TEST_CASE("contours: one component for the lkdv-dirichlet problem") {
  const auto cs = contours_of(builtin("lkdv-dirichlet"));
  REQUIRE(cs.gammas.size() == 1);
  CHECK(cs.sectors[0].lo == doctest::Approx(pi / 3));
  CHECK(cs.sectors[0].hi == doctest::Approx(2 * pi / 3));
  for (const auto& seg : cs.gammas[0]) CHECK_FALSE(on_real_axis(seg));
}

TEST_CASE("contours: two components with a ray on the real axis for the reversed problem") {
  const auto cs = contours_of(builtin("lkdv-reverse"));
  REQUIRE(cs.gammas.size() == 2);
  CHECK(cs.sectors[0].lo == doctest::Approx(0.0));
  CHECK(cs.sectors[0].hi == doctest::Approx(pi / 3));
  CHECK(cs.sectors[1].lo == doctest::Approx(2 * pi / 3));
  CHECK(cs.sectors[1].hi == doctest::Approx(pi));
  CHECK(on_real_axis(cs.gammas[0].front()));
  CHECK(on_real_axis(cs.gammas[1].back()));
}

TEST_CASE("contours: fourth-order Robin problem") {
  const auto p = builtin("robin-4");
  const auto cs = contours_of(p);
  CHECK(cs.gammas.size() == 2);
  CHECK(cs.R < 4.0 * 1.1);
  for (const auto& g : cs.gammas) {
    REQUIRE(g.size() == 3);
    CHECK(g[0].infinite());
    CHECK(g[1].kind == SegmentKind::Arc);
    CHECK(g[2].infinite());
  }
}

TEST_CASE("contours: indented real line") {
  const auto cs = contours_of(builtin("heat-dirichlet"));
  REQUIRE(cs.gamma0.size() == 3);
  const double d = cs.delta_indent;
  CHECK(d == doctest::Approx(0.1));
  CHECK(std::abs(cs.gamma0[0].at(cs.gamma0[0].param_end()) - cplx{-d, 0.0}) < 1e-15);
  CHECK(std::abs(cs.gamma0[1].at(cs.gamma0[1].param_start()) - cplx{-d, 0.0}) < 1e-15);
  CHECK(std::abs(cs.gamma0[1].at(pi / 2) - cplx{0.0, d}) < 1e-15);
  CHECK(std::abs(cs.gamma0[2].at(cs.gamma0[2].param_start()) - cplx{d, 0.0}) < 1e-15);
  CHECK(direction(cs.gamma0[0], 1.0).real() > 0.0);
  CHECK(direction(cs.gamma0[2], 1.0).real() > 0.0);
}

TEST_CASE("contours: sampled points inside each enclosed region satisfy the sector conditions") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto& raw : builtin_catalog()) {
    CAPTURE(raw.label);
    const auto p = validate(raw);
    const auto cs = contours_of(p);
    for (const auto& s : cs.sectors) {
      for (int i = 0; i < 100; ++i) {
        const double phi = s.lo + (s.hi - s.lo) * (0.001 + 0.998 * u(gen));
        const cplx l = std::polar(cs.R * (1.001 + 5.0 * u(gen)), phi);
        CHECK((p.dispersion() * std::pow(l, p.order())).real() < 0.0);
        CHECK(l.imag() > 0.0);
      }
    }
  }
}

TEST_CASE("contours: enclosed region lies to the right of each component") {
  for (const auto& raw : builtin_catalog()) {
    CAPTURE(raw.label);
    const auto p = validate(raw);
    const auto cs = contours_of(p);
    for (const auto& g : cs.gammas) {
      for (const auto& seg : g) {
        const double a = finite_param(seg, seg.param_start(), 3.0 * cs.R);
        const double b = finite_param(seg, seg.param_end(), 3.0 * cs.R);
        const double mid = 0.5 * (a + b);
        const cplx right = -I * direction(seg, mid);
        const cplx probe = seg.at(mid) + 1e-3 * right;
        CHECK(std::abs(probe) > cs.R);
        CHECK((p.dispersion() * std::pow(probe, p.order())).real() < 0.0);
      }
    }
  }
}

TEST_CASE("contours: consecutive segments join") {
  for (const auto& raw : builtin_catalog()) {
    const auto cs = contours_of(validate(raw));
    auto joined = [](const Contour& g) {
      for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        if (std::abs(g[i].at(g[i].param_end()) - g[i + 1].at(g[i + 1].param_start())) > 1e-12) return false;
      }
      return true;
    };
    CHECK(joined(cs.gamma0));
    for (const auto& g : cs.gammas) CHECK(joined(g));
  }
}

TEST_CASE("time deformation: the right ray of the indented line turns into (0, pi/3)") {
  const auto p = builtin("lkdv-dirichlet");
  const auto cs = contours_of(p);
  const auto d = deform_for_time(cs, p, 0.1, 0.5);
  CHECK(d.gamma0[2].angle > 0.0);
  CHECK(d.gamma0[2].angle < pi / 3);
  CHECK(d.gamma0[2].angle == doctest::Approx(pi / 6));
}

TEST_CASE("time deformation: t = 0 is the identity") {
  const auto p = builtin("robin-4");
  const auto cs = contours_of(p);
  const auto d = deform_for_time(cs, p, 0.0, 0.5);
  for (std::size_t k = 0; k < cs.gammas.size(); ++k) {
    for (std::size_t i = 0; i < cs.gammas[k].size(); ++i) {
      CHECK(d.gammas[k][i].angle == cs.gammas[k][i].angle);
      CHECK(d.gammas[k][i].theta_start == cs.gammas[k][i].theta_start);
      CHECK(d.gammas[k][i].theta_end == cs.gammas[k][i].theta_end);
    }
  }
}

TEST_CASE("time deformation: real ray of the reversed problem turns below the axis") {
  const auto p = builtin("lkdv-reverse");
  const auto cs = contours_of(p);
  const auto d = deform_for_time(cs, p, 0.1, 0.5);
  const double phi = d.gammas[0].front().angle;
  CHECK(phi < 0.0);
  CHECK(phi > -pi / 3);
  CHECK((p.dispersion() * std::pow(std::polar(1.0, phi), 3)).real() > 0.0);
}

TEST_CASE("time deformation: rays land where the evolution factor decays and arcs follow them") {
  for (const auto& raw : builtin_catalog()) {
    CAPTURE(raw.label);
    const auto p = validate(raw);
    const auto cs = contours_of(p);
    const auto d = deform_for_time(cs, p, 0.05, 0.5);
    auto check = [&](const Contour& g) {
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i].infinite()) {
          CHECK((p.dispersion() * std::pow(std::polar(1.0, g[i].angle), p.order())).real() > 0.0);
        } else {
          CHECK(g[i].radius > 0.0);
        }
      }
      for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        CHECK(std::abs(g[i].at(g[i].param_end()) - g[i + 1].at(g[i + 1].param_start())) < 1e-12);
      }
    };
    check(d.gamma0);
    for (const auto& g : d.gammas) check(g);
    CHECK(d.R == cs.R);
  }
}

TEST_CASE("contours: error paths") {
  const auto p = builtin("heat-dirichlet");
  CHECK(error_code([&] { build_contours(p, 1.0, 1.5); }) == ErrorCode::InvalidArgument);
  CHECK(error_code([&] { build_contours(p, 1.0, 0.0); }) == ErrorCode::InvalidArgument);
  const auto cs = contours_of(p);
  CHECK(error_code([&] { deform_for_time(cs, p, 0.1, 1.0); }) == ErrorCode::InvalidArgument);
  CHECK(error_code([&] { deform_for_time(cs, p, -0.1, 0.5); }) == ErrorCode::InvalidArgument);
  CHECK(error_code([] { PathSegment::ray(0.0, 2.0, 1.0, 1); }) == ErrorCode::InvalidArgument);
  CHECK(error_code([] { PathSegment::arc(1.0, 0.0, 7.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("path segments: reversal, pieces and sampling") {
  const auto arc = PathSegment::arc(2.0, 0.0, pi / 2);
  CHECK(arc.length() == doctest::Approx(pi));
  const auto rev = arc.reversed();
  CHECK(std::abs(rev.at(rev.param_start()) - cplx{0.0, 2.0}) < 1e-15);
  CHECK(rev.orientation == -1);
  const auto ray = PathSegment::ray(pi / 4, 1.0, std::numeric_limits<double>::infinity(), -1);
  CHECK(ray.infinite());
  const auto piece = ray.piece(5.0, 1.0);
  CHECK(piece.length() == doctest::Approx(4.0));
  CHECK(piece.orientation == -1);
  const auto pts = sample_segment(ray, 5, 9.0);
  REQUIRE(pts.size() == 5);
  CHECK(pts.front().first == doctest::Approx(9.0));
  CHECK(pts.back().first == doctest::Approx(1.0));
  CHECK(std::abs(pts.back().second - std::polar(1.0, pi / 4)) < 1e-15);
}

TEST_CASE("real rays turned into their own sector at rest") {
  const auto p = builtin("lkdv-reverse");
  const auto cs = contours_of(p);
  const auto r = rotate_real_rays_inward(cs, 0.5);
  CHECK(r.gammas[0].front().angle == doctest::Approx(pi / 6));
  CHECK(r.gammas[1].back().angle == doctest::Approx(5 * pi / 6));
  CHECK(r.gammas[0].back().angle == cs.gammas[0].back().angle);
}
