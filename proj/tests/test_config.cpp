#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "utm/config.hpp"

using namespace utm;
using utm::test::error_code;

namespace {

ProblemFile parse(const std::string& text) {
  std::istringstream in(text);
  return parse_problem_file(in, "test.cfg");
}

std::string parse_message(const std::string& text) {
  try {
    parse(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConfigParse);
    return e.what();
  }
  FAIL("no error");
  return "";
}

}  // namespace

TEST_CASE("problem file: full example") {
  const auto pf = parse(
      "# third order\n"
      "label = mine\n"
      "order=3\n"
      "a=0,-1   # dispersive\n"
      "bc=1,0,0\n"
      "\n"
      "datum.support=2.5\n"
      "datum.seed=9\n"
      "datum.kernel=0,1,(0.5;-1)\n"
      "quad.rel_tol=1e-10\n"
      "quad.max_order=32\n"
      "solve.xs=0.5:0.5:2\n"
      "solve.ts=0,0.1\n");
  CHECK(pf.problem.label == "mine");
  CHECK(pf.problem.n == 3);
  CHECK(pf.problem.a == cplx(0, -1));
  REQUIRE(pf.problem.boundary.rows() == 1);
  CHECK(pf.problem.boundary(0, 0) == cplx(1, 0));
  CHECK(pf.datum.support == 2.5);
  CHECK(pf.datum.seed == 9);
  REQUIRE(pf.datum.kernel.has_value());
  CHECK((*pf.datum.kernel)[2] == cplx(0.5, -1));
  CHECK(pf.quad.rel_tol == 1e-10);
  CHECK(pf.quad.max_panel_order == 32);
  CHECK(pf.xs == std::vector<double>{0.5, 1.0, 1.5, 2.0});
  CHECK(pf.ts == std::vector<double>{0.0, 0.1});
  CHECK_FALSE(pf.allow_complex_bc);
}

TEST_CASE("problem file: complex boundary rows") {
  const auto pf = parse("order=2\na=1\nbc=(1;2),0\nallow_complex_bc=true\n");
  CHECK(pf.allow_complex_bc);
  CHECK(pf.problem.boundary(0, 0) == cplx(1, 2));
}

TEST_CASE("problem file: errors name the line") {
  CHECK(parse_message("order=2\nfoo=1\n").find("test.cfg:2") != std::string::npos);
  CHECK(parse_message("order=2\nfoo=1\n").find("unknown key") != std::string::npos);
  CHECK(parse_message("a=1\nbc=1,0\n").find("missing order") != std::string::npos);
  CHECK(parse_message("order=2\nbc=1,0\n").find("missing a") != std::string::npos);
  CHECK(parse_message("order=2\na=1\n").find("missing bc") != std::string::npos);
  CHECK(parse_message("order=2\na=1\nbc=1,0,0\n").find("test.cfg:3") != std::string::npos);
  CHECK(parse_message("order=2\na=1\nbc=1,0\nquad.max_order=5\n").find("test.cfg:4") != std::string::npos);
  CHECK(parse_message("order=2\na=1\nbc=1,0\ndatum.seed=-1\n").find("test.cfg:4") != std::string::npos);
  CHECK(parse_message("order=2.5\n").find("test.cfg:1") != std::string::npos);
  CHECK(parse_message("order=2\na=x\n").find("test.cfg:2") != std::string::npos);
  CHECK(parse_message("order 2\n").find("key=value") != std::string::npos);
  CHECK(parse_message("order=2\na=1\nbc=1,0\nsolve.xs=1:-1:2\n").find("test.cfg:4") != std::string::npos);
}

TEST_CASE("complex and coefficient parsing") {
  CHECK(parse_complex("2") == cplx(2, 0));
  CHECK(parse_complex(" 0 , -1 ") == cplx(0, -1));
  CHECK(error_code([] { parse_complex("1,2,3"); }) == ErrorCode::InvalidArgument);
  CHECK(error_code([] { parse_complex("abc"); }) == ErrorCode::InvalidArgument);
  const CVector c = parse_coefficients("-2, 1, (0;3), 0");
  REQUIRE(c.size() == 4);
  CHECK(c[0] == cplx(-2, 0));
  CHECK(c[2] == cplx(0, 3));
  CHECK(error_code([] { parse_coefficients("(1;2;3)"); }) == ErrorCode::InvalidArgument);
  CHECK(error_code([] { parse_coefficients("1,,2"); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("missing problem file") {
  CHECK(error_code([] { load_problem_file("/nonexistent/problem.cfg"); }) == ErrorCode::ConfigParse);
}
