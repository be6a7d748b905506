#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "polywave/errors.hpp"
#include "polywave/laurent.hpp"

using namespace polywave;

TEST_CASE("laurent arithmetic basics") {
  const LaurentPolynomial p{-1, {1.0, 2.0, 3.0}};
  CHECK(p.hi() == 1);
  CHECK(p.at(-1) == 1.0);
  CHECK(p.at(0) == 2.0);
  CHECK(p.at(1) == 3.0);
  CHECK(p.at(2) == 0.0);
  CHECK(p.at(-5) == 0.0);

  const LaurentPolynomial q = LaurentPolynomial::monomial(2, 4.0);
  const LaurentPolynomial r = multiply(p, q);
  CHECK(r.lo == 1);
  CHECK(r.at(1) == 4.0);
  CHECK(r.at(2) == 8.0);
  CHECK(r.at(3) == 12.0);

  const LaurentPolynomial s = add(p, scale(p, -1.0));
  CHECK(s.is_zero());

  const LaurentPolynomial t = add(LaurentPolynomial{0, {1.0}}, LaurentPolynomial{2, {5.0}});
  CHECK(t.lo == 0);
  CHECK(t.at(1) == 0.0);
  CHECK(t.at(2) == 5.0);
}

TEST_CASE("trimmed strips zero margins") {
  const LaurentPolynomial p = trimmed(LaurentPolynomial{-2, {0.0, 1.0, 0.0, 2.0, 0.0}});
  CHECK(p.lo == -1);
  CHECK(p.hi() == 1);
  const LaurentPolynomial z = trimmed(LaurentPolynomial{3, {0.0, 0.0}});
  CHECK(z.is_zero());
}

TEST_CASE("eval_circle matches direct summation") {
  const LaurentPolynomial p{-2, {1.0, -3.0, 2.0, -3.0, 1.0}};
  for (double w : {0.0, 0.3, 1.0, 2.5}) {
    const std::complex<double> v = eval_circle(p, w);
    // symmetric -> real cosine polynomial
    CHECK(std::abs(v.imag()) < 1e-13);
    const double want = 2.0 * std::cos(2.0 * w) - 6.0 * std::cos(w) + 2.0;
    CHECK(v.real() == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("reflect_conjugate reverses support") {
  const LaurentPolynomial p{0, {1.0, 2.0, 3.0}};
  const LaurentPolynomial r = reflect_conjugate(p);
  CHECK(r.lo == -2);
  CHECK(r.at(-2) == 3.0);
  CHECK(r.at(0) == 1.0);
  // |p|^2 on the circle is p * reflect_conjugate(p)
  const LaurentPolynomial sq = multiply(p, r);
  const double got = eval_circle(sq, 0.7).real();
  CHECK(got == doctest::Approx(std::norm(eval_circle(p, 0.7))).epsilon(1e-12));
}

TEST_CASE("real polynomial evaluation and composition") {
  const RealPolynomial p{{1.0, -2.0, 1.0}};  // (1-x)^2
  CHECK(p(0.0) == 1.0);
  CHECK(p(1.0) == 0.0);
  CHECK(p(3.0) == 4.0);

  const RealPolynomial inner{{1.0, -1.0}};  // 1 - x
  const RealPolynomial c = compose(p, inner);  // x^2
  CHECK(c.degree() == 2);
  CHECK(c(2.0) == doctest::Approx(4.0));

  const LaurentPolynomial lx{-1, {-0.25, 0.5, -0.25}};
  const LaurentPolynomial cl = compose_laurent(p, lx);
  // at z=1 the inner evaluates to 0, so p(0)=1
  CHECK(eval_circle(cl, 0.0).real() == doctest::Approx(1.0));
}

TEST_CASE("cos_substitute rewrites sin^2(w/2) as a cosine polynomial") {
  const RealPolynomial q{{2.0, -1.0, 0.5}};
  const RealPolynomial qt = cos_substitute(q);
  for (double w : {0.0, 0.4, 1.3, 3.0}) {
    const double s = std::sin(w / 2.0) * std::sin(w / 2.0);
    CHECK(qt(std::cos(w)) == doctest::Approx(q(s)).epsilon(1e-13));
  }
}

TEST_CASE("roots of a quadratic with known complex pair") {
  // x^2 + x/2 + 2/3: roots (-3 +- i sqrt(87)) / 12... verify by residual
  const RealPolynomial p{{2.0 / 3.0, 0.5, 1.0}};
  const ComplexRootSet rs = roots(p);
  REQUIRE(rs.total_multiplicity() == 2);
  CHECK(rs.roots[0].value == std::conj(rs.roots[1].value));
  for (const ComplexRoot& r : rs.roots) CHECK(std::abs(p(r.value)) < 1e-12);
}

TEST_CASE("roots of R_3 hit the closed-form pair") {
  // 1 + 3y + 6y^2 has roots (-3 +- i sqrt(15)) / 12
  const RealPolynomial p{{1.0, 3.0, 6.0}};
  const ComplexRootSet rs = roots(p);
  REQUIRE(rs.total_multiplicity() == 2);
  const double re = -0.25;
  const double im = std::sqrt(15.0) / 12.0;
  CHECK(rs.roots[0].value.real() == doctest::Approx(re).epsilon(1e-12));
  CHECK(std::abs(rs.roots[0].value.imag()) == doctest::Approx(im).epsilon(1e-12));
}

TEST_CASE("roots of random polynomials have small residuals") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    RealPolynomial p;
    const int deg = 2 + static_cast<int>(rng() % 7);
    p.coeffs.resize(static_cast<std::size_t>(deg) + 1);
    for (double& c : p.coeffs) c = coef(rng);
    if (std::abs(p.coeffs.back()) < 0.1) p.coeffs.back() = 1.0;
    const ComplexRootSet rs = roots(p);
    CHECK(rs.total_multiplicity() == p.degree());
    double scale = 0.0;
    for (double c : p.coeffs) scale = std::max(scale, std::abs(c));
    for (const ComplexRoot& r : rs.roots) {
      const double growth = std::pow(std::max(1.0, std::abs(r.value)), p.degree());
      CHECK(std::abs(p(r.value)) <= 1e-7 * scale * growth);
    }
    // conjugate closure
    for (const ComplexRoot& r : rs.roots) {
      if (r.value.imag() == 0.0) continue;
      bool mate = false;
      for (const ComplexRoot& s : rs.roots)
        if (s.value == std::conj(r.value)) mate = true;
      CHECK(mate);
    }
  }
}

TEST_CASE("roots rejects constants") {
  CHECK_THROWS_AS(roots(RealPolynomial{{3.0}}), std::invalid_argument);
  CHECK_THROWS_AS(roots(RealPolynomial::zero()), std::invalid_argument);
}

TEST_CASE("roots of a linear polynomial") {
  const ComplexRootSet rs = roots(RealPolynomial{{-6.0, 2.0}});
  REQUIRE(rs.total_multiplicity() == 1);
  CHECK(rs.roots[0].value.real() == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(rs.roots[0].value.imag() == 0.0);
}
