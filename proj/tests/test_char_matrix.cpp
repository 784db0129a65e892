#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "utm/char_matrix.hpp"

using namespace utm;
using utm::test::builtin;

namespace {

cplx random_point(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> r(0.2, 4.0);
  std::uniform_real_distribution<double> th(-pi, pi);
  return std::polar(r(gen), th(gen));
}

}  // namespace

TEST_CASE("characteristic matrix: third order, one condition") {
  const CharMatrix cm(builtin("lkdv-dirichlet"));
  const cplx a = cm.alpha();
  for (cplx l : {cplx{0.7, 0.2}, cplx{-1.3, 2.0}}) {
    CMatrix expect(2, 2);
    expect << 1.0, -I * l, 1.0, -I * a * l;
    CHECK((cm.eval(l) - expect).norm() < 1e-14);
    CHECK(std::abs(cm.delta(a * l) - (-I * l * (a * a - a))) < 1e-14);
  }
  CHECK(std::abs(cm.cofactor_det(1, 2, 0.4) - 1.0) < 1e-15);
  CHECK(std::abs(cm.cofactor_det(1, 2, 0.4) - cm.entry(2, 1, 0.4)) < 1e-15);
}

TEST_CASE("characteristic matrix: third order, two conditions") {
  const CharMatrix cm(builtin("lkdv-reverse"));
  CHECK(cm.size() == 1);
  const cplx a = cm.alpha();
  for (cplx l : {cplx{0.7, 0.2}, cplx{-1.3, 2.0}}) {
    CHECK(std::abs(cm.eval(l)(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(cm.delta(a * l) - 1.0) < 1e-15);
    CHECK(std::abs(cm.delta(a * a * l) - 1.0) < 1e-15);
    CHECK(std::abs(cm.cofactor_det(1, 1, l) - 1.0) < 1e-15);
  }
  CHECK(cm.roots().empty());
  CHECK(cm.choose_R() == doctest::Approx(1.1));
}

TEST_CASE("characteristic matrix: value at the origin holds only constant coefficients") {
  for (const auto& raw : builtin_catalog()) {
    const CharMatrix cm(validate(raw));
    const CMatrix M = cm.eval(0.0);
    for (int k = 0; k < cm.size(); ++k) {
      for (int j = 0; j < cm.size(); ++j) CHECK(std::abs(M(k, j) - std::conj(cm.adjoint_rows()(j, 0))) < 1e-15);
    }
  }
}

TEST_CASE("characteristic determinant: heat Dirichlet is a nonzero constant") {
  const CharMatrix cm(builtin("heat-dirichlet"));
  const cplx d0 = cm.delta(0.0);
  CHECK(std::abs(d0) > 0.5);
  CHECK(std::abs(cm.delta({3.0, -2.0}) - d0) < 1e-14);
  CHECK(cm.roots().empty());
}

TEST_CASE("characteristic determinant: one root at the origin for the lkdv-dirichlet problem") {
  const CharMatrix cm(builtin("lkdv-dirichlet"));
  const auto roots = cm.roots();
  REQUIRE(roots.size() == 1);
  CHECK(std::abs(roots[0].value) < 1e-12);
  CHECK(roots[0].multiplicity == 1);
  CHECK(cm.choose_R() == doctest::Approx(1.1));
}

TEST_CASE("characteristic determinant: fourth-order Robin roots") {
  const CharMatrix cm(builtin("robin-4"));
  int at_zero = 0;
  int total = 0;
  for (const auto& r : cm.roots()) {
    CHECK(std::abs(r.value) < 4.0);
    total += r.multiplicity;
    if (std::abs(r.value) < 1e-6) at_zero = r.multiplicity;
  }
  CHECK(at_zero == 2);
  CHECK(total == cm.delta_coeffs().size() - 1);
  CHECK(cm.choose_R() < 4.0 * 1.1);
}

TEST_CASE("characteristic determinant: polynomial coefficients, roots and cofactor identity") {
  std::mt19937_64 gen(17);
  for (const auto& raw : builtin_catalog()) {
    CAPTURE(raw.label);
    const CharMatrix cm(validate(raw));
    const int m = cm.size();
    for (int trial = 0; trial < 50; ++trial) {
      const cplx l = random_point(gen);
      CHECK(std::abs(cm.delta_poly(l) - cm.delta(l)) <= 1e-10 * std::max(1.0, std::abs(cm.delta(l))));
    }
    const double R = cm.choose_R();
    const auto& c = cm.delta_coeffs();
    const double lead = std::abs(c[c.size() - 1]) * std::pow(R, static_cast<double>(c.size() - 1));
    for (const auto& r : cm.roots()) CHECK(std::abs(cm.delta(r.value)) < 1e-8 * lead);

    int tried = 0;
    while (tried < 20) {
      const cplx l = random_point(gen);
      const cplx d = cm.delta(l);
      if (std::abs(d) < 1e-6) continue;
      ++tried;
      for (int j = 1; j <= m; ++j) {
        for (int r = 1; r <= m; ++r) {
          cplx sum{};
          for (int q = 1; q <= m; ++q) sum += cm.cofactor_sign(q, j) * cm.cofactor_det(q, j, l) * cm.entry(q, r, l);
          CHECK(std::abs(sum - (j == r ? d : cplx{})) < 1e-9 * std::abs(d));
        }
      }
    }
  }
}

TEST_CASE("characteristic matrix: alpha powers") {
  const CharMatrix cm(builtin("robin-4"));
  CHECK(std::abs(cm.alpha() - I) < 1e-15);
  CHECK(std::abs(cm.alpha_pow(4) - 1.0) < 1e-15);
  CHECK(std::abs(cm.alpha_pow(-1) + I) < 1e-15);
}
