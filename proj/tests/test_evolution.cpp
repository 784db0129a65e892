#include <doctest.h>

#include "helpers.hpp"
#include "utm/evolution.hpp"
#include "utm/oracles.hpp"
#include "utm/verify.hpp"

using namespace utm;
using utm::test::builtin;
using utm::test::error_code;
using utm::test::mixed_datum;

TEST_CASE("solve_at: Dirichlet heat against the sine-transform solution") {
  const auto p = builtin("heat-dirichlet");
  const InitialDatum f = mixed_datum(p);
  const auto ref = heat_dirichlet_solution(f, 1.0, 0.1);
  CHECK(std::abs(solve_at(p, f, 1.0, 0.1) - ref.value) < 1e-6);
}

TEST_CASE("solve_at: t = 0 returns the datum") {
  for (const auto& raw : builtin_catalog()) {
    const auto p = validate(raw);
    const InitialDatum f = mixed_datum(p);
    CHECK(std::abs(solve_at(p, f, 1.1, 0.0) - f.value(1.1)) < 1e-6);
  }
}

TEST_CASE("solve_at: lkdv-dirichlet satisfies the equation at (0.8, 0.2)") {
  const auto p = builtin("lkdv-dirichlet");
  const TransformPair tp(p, mixed_datum(p));
  auto q = [&](double x, double t) { return tp.evolve({x}, {t})(0, 0); };
  CHECK(std::abs(fd_residual(q, 3, -I, 0.8, 0.2, 1e-3).value) < 1e-4);
}

TEST_CASE("solve_grid: lkdv-reverse grid meets both boundary conditions") {
  const auto p = builtin("lkdv-reverse");
  const InitialDatum f = mixed_datum(p);
  std::vector<double> xs;
  for (int i = 1; i <= 20; ++i) xs.push_back(0.02 * i);
  std::vector<double> ts;
  for (int j = 1; j <= 10; ++j) ts.push_back(0.02 * j);
  const SolutionField field = solve_grid(p, f, xs, ts);
  CHECK(field.values.rows() == 20);
  CHECK(field.values.cols() == 10);
  for (Eigen::Index j = 0; j < field.values.cols(); ++j) {
    CAPTURE(ts[static_cast<std::size_t>(j)]);
    CHECK(extrapolated_boundary_values(p, field.values.col(j), 0.02, 12).cwiseAbs().maxCoeff() < 1e-3);
  }
}

TEST_CASE("solve_grid: t = 0 column is the reconstruction") {
  const auto p = builtin("robin-4");
  const InitialDatum f = mixed_datum(p);
  const std::vector<double> xs{0.3, 0.9, 1.7};
  const SolutionField field = solve_grid(p, f, xs, {0.0});
  const CVector rec = TransformPair(p, f).reconstruct(xs);
  CHECK((field.values.col(0) - rec).norm() == 0.0);
}

TEST_CASE("solve_grid: Neumann heat grid against the cosine-transform solution") {
  const auto p = builtin("heat-neumann");
  const InitialDatum f = mixed_datum(p);
  const std::vector<double> xs{0.5, 1.0, 1.5};
  const std::vector<double> ts{0.01, 0.1, 1.0};
  const SolutionField field = solve_grid(p, f, xs, ts);
  double worst = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ts.size(); ++j) {
      const cplx ref = heat_neumann_solution(f, xs[i], ts[j]).value;
      worst = std::max(worst, std::abs(field.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) - ref));
    }
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("solve_grid: independent of how the grid is split") {
  const auto p = builtin("lkdv-dirichlet");
  const InitialDatum f = mixed_datum(p);
  const SolutionField all = solve_grid(p, f, {0.5, 1.0}, {0.05, 0.1});
  const cplx single = solve_at(p, f, 1.0, 0.1);
  CHECK(std::abs(all.values(1, 1) - single) < 1e-10);
}

TEST_CASE("solve: error paths") {
  const auto p = builtin("heat-dirichlet");
  const InitialDatum f = mixed_datum(p);
  CHECK(error_code([&] { solve_at(p, f, 0.0, 0.1); }) == ErrorCode::NonpositiveX);
  CHECK(error_code([&] { solve_at(p, f, 1.0, -0.1); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("grid specifications") {
  const auto a = parse_grid("0.5,1,1.5");
  REQUIRE(a.size() == 3);
  CHECK(a[2] == 1.5);
  const auto b = parse_grid("0:0.1:1");
  REQUIRE(b.size() == 11);
  CHECK(b.back() == doctest::Approx(1.0));
  CHECK(parse_grid("2").size() == 1);
  CHECK(error_code([] { parse_grid("1:0:2"); }) == ErrorCode::InvalidArgument);
  CHECK(error_code([] { parse_grid("a,b"); }) == ErrorCode::InvalidArgument);
  CHECK(error_code([] { parse_grid(""); }) == ErrorCode::InvalidArgument);
}
