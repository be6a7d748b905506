#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "polywave/errors.hpp"
#include "polywave/factorization.hpp"
#include "polywave/symbols.hpp"

using namespace polywave;

namespace {

LaurentPolynomial reversed_mask(const LaurentPolynomial& g) {
  LaurentPolynomial r;
  r.lo = 0;
  r.coeffs.assign(g.coeffs.rbegin(), g.coeffs.rend());
  return r;
}

// Classical filter through the generic Bezout path, independent of the
// closed-form Q and of q_zeros.
LaurentPolynomial classical_mask_oracle(int order) {
  RealPolynomial p = RealPolynomial::constant(1.0);
  for (int i = 0; i < order; ++i) p = multiply(p, RealPolynomial{{1.0, -1.0}});
  const RealPolynomial q = bezout_solve(p);
  LaurentPolynomial m2 = riesz_factor(cos_substitute(q), 4.0);
  m2 = reversed_mask(m2);
  return multiply(m1_factor({order, 0.0, 0}), m2);
}

}  // namespace

TEST_CASE("m1_factor is the normalized binomial") {
  const LaurentPolynomial m1 = m1_factor({1, 0.0, 0});
  CHECK(m1.lo == 0);
  CHECK(m1.at(0) == doctest::Approx(0.5));
  CHECK(m1.at(1) == doctest::Approx(0.5));
  // |m1|^2 equals d on the circle
  const SymbolContext ctx{3, 1.5, 1};
  const LaurentPolynomial m = m1_factor(ctx);
  const LaurentPolynomial d = d_symbol(FrequencyVector::polyharmonic(3, 1.5), 1);
  for (double w : {0.0, 0.7, 2.1}) {
    CHECK(std::norm(eval_circle(m, w)) ==
          doctest::Approx(eval_circle(d, w).real()).epsilon(1e-12));
  }
}

TEST_CASE("riesz_factor on 2 - c") {
  // |q|^2 = 4(2 - cos w): inner zero 2 - sqrt(3), scale (1 + sqrt(3))
  const LaurentPolynomial q = riesz_factor(RealPolynomial{{2.0, -1.0}}, 4.0);
  REQUIRE(q.coeffs.size() == 2);
  CHECK(q.lo == 0);
  const double s3 = std::sqrt(3.0);
  CHECK(q.at(0) == doctest::Approx(-(s3 - 1.0)).epsilon(1e-10));
  CHECK(q.at(1) == doctest::Approx(1.0 + s3).epsilon(1e-10));
  for (double w : {0.0, 0.9, 3.1}) {
    CHECK(std::norm(eval_circle(q, w)) ==
          doctest::Approx(4.0 * (2.0 - std::cos(w))).epsilon(1e-10));
  }
}

TEST_CASE("riesz_factor of a constant") {
  const LaurentPolynomial q = riesz_factor(RealPolynomial{{9.0}}, 4.0);
  REQUIRE(q.coeffs.size() == 1);
  CHECK(q.at(0) == doctest::Approx(6.0));
}

TEST_CASE("riesz_factor keeps unit-circle zeros once") {
  // |q|^2 = 2(1 + cos w) = |1 + z|^2: double zero at z = -1
  const LaurentPolynomial q = riesz_factor(RealPolynomial{{1.0, 1.0}}, 2.0);
  REQUIRE(q.coeffs.size() == 2);
  CHECK(std::abs(q.at(0)) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(q.at(1)) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::norm(eval_circle(q, 1.3)) ==
        doctest::Approx(2.0 * (1.0 + std::cos(1.3))).epsilon(1e-6));
}

TEST_CASE("riesz_factor rejects sign-changing input") {
  CHECK_THROWS_AS(riesz_factor(RealPolynomial{{0.0, 1.0}}, 1.0), NegativeOnCircle);
}

TEST_CASE("refinement mask hits the classical quartet for N=2") {
  const RefinementMask mask = refinement_mask({2, 0.0, 0});
  const double s3 = std::sqrt(3.0);
  const std::vector<double> want{(1.0 + s3) / 4.0, (3.0 + s3) / 4.0, (3.0 - s3) / 4.0,
                                 (1.0 - s3) / 4.0};
  REQUIRE(mask.g.coeffs.size() == 4);
  CHECK(mask.g.lo == 0);
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(mask.g.coeffs[i] == doctest::Approx(want[i]).epsilon(1e-10));
}

TEST_CASE("refinement mask N=1 closed form") {
  for (double xi : {0.0, 1.0, 3.0}) {
    const SymbolContext ctx{1, xi, 0};
    const double x0 = ctx.x0();
    const double den = std::sqrt(1.0 + x0 * x0);
    const RefinementMask mask = refinement_mask(ctx);
    REQUIRE(mask.g.coeffs.size() == 2);
    CHECK(mask.g.at(0) == doctest::Approx(std::sqrt(2.0) * x0 / den).epsilon(1e-12));
    CHECK(mask.g.at(1) == doctest::Approx(std::sqrt(2.0) / den).epsilon(1e-12));
  }
}

TEST_CASE("mask diagnostics across the parameter sweep") {
  for (int order = 1; order <= 6; ++order) {
    for (double xi : {0.0, 1.0, 4.0}) {
      for (int level : {0, 1, 3}) {
        const RefinementMask mask = refinement_mask({order, xi, level});
        CHECK(mask.g.lo == 0);
        CHECK(static_cast<int>(mask.g.coeffs.size()) == 2 * order);
        CHECK(mask.qmf_residual <= 1e-9);
        CHECK(mask.factorization_residual <= 1e-9);
        // g(1) = 2 sqrt(Q(0))
        double sum = 0.0;
        for (double c : mask.g.coeffs) sum += c;
        const double want = 2.0 * std::sqrt(q_polynomial_closed_form({order, xi, level})(0.0));
        CHECK(sum == doctest::Approx(want).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("classical degeneration matches the Bezout-path oracle") {
  for (int order = 1; order <= 6; ++order) {
    const LaurentPolynomial oracle = classical_mask_oracle(order);
    const LaurentPolynomial g0 = refinement_mask({order, 0.0, 0}).g;
    for (int i = 0; i < 2 * order; ++i) CHECK(std::abs(g0.at(i) - oracle.at(i)) <= 1e-9);
  }
}

TEST_CASE("masks converge to the classical filter as the level grows") {
  // the deviation is first order in xi/2^(k+1), so the deep-level bound
  // needs k = 30 to get under 1e-8 at xi = 4
  for (int order : {2, 3, 4}) {
    for (double xi : {1.0, 4.0}) {
      const LaurentPolynomial deep = refinement_mask({order, xi, 30}).g;
      const LaurentPolynomial classical = refinement_mask({order, 0.0, 0}).g;
      for (int i = 0; i < 2 * order; ++i)
        CHECK(std::abs(deep.at(i) - classical.at(i)) <= 1e-8);
    }
  }
}

TEST_CASE("mask_family enumerates consecutive levels") {
  const std::vector<RefinementMask> fam = mask_family(2, 1.0, 3);
  REQUIRE(fam.size() == 3);
  for (int m = 0; m < 3; ++m) CHECK(fam[static_cast<std::size_t>(m)].context.level == m);
  CHECK_THROWS_AS(mask_family(2, 1.0, 0), std::invalid_argument);
}

TEST_CASE("half the squared modulus of g reproduces the symbol") {
  for (int order : {1, 2, 4}) {
    for (double xi : {0.0, 2.0}) {
      const SymbolContext ctx{order, xi, 2};
      const LaurentPolynomial g = refinement_mask(ctx).g;
      const LaurentPolynomial a = a_symbol(ctx).a;
      CHECK(factorization_residual(g, a, 256) <= 1e-9);
    }
  }
}

TEST_CASE("mask JSON includes diagnostics") {
  const std::string j = mask_to_json(refinement_mask({2, 1.0, 0}));
  CHECK(j.find("\"kind\": \"mask\"") != std::string::npos);
  CHECK(j.find("qmf_residual") != std::string::npos);
  CHECK(j.find("factorization_residual") != std::string::npos);
}
