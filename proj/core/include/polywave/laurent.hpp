#pragma once

#include <complex>
#include <vector>

namespace polywave {

/// Finitely supported two-sided coefficient sequence: coeffs[i] multiplies
/// z^(lo+i). Kept in canonical trimmed form (first/last coefficient nonzero
/// unless the polynomial is identically zero).
struct LaurentPolynomial {
  int lo = 0;
  std::vector<double> coeffs;

  static LaurentPolynomial zero() { return {0, {}}; }
  static LaurentPolynomial constant(double c);
  static LaurentPolynomial monomial(int exponent, double c = 1.0);

  bool is_zero() const { return coeffs.empty(); }
  int hi() const { return lo + static_cast<int>(coeffs.size()) - 1; }
  // Coefficient of z^k, zero outside the stored window.
  double at(int k) const;
};

LaurentPolynomial trimmed(LaurentPolynomial p);
LaurentPolynomial multiply(const LaurentPolynomial& p, const LaurentPolynomial& q);
LaurentPolynomial add(const LaurentPolynomial& p, const LaurentPolynomial& q);
LaurentPolynomial scale(const LaurentPolynomial& p, double s);

// p(e^{i omega})
std::complex<double> eval_circle(const LaurentPolynomial& p, double omega);

// p(z) -> p(1/z)
LaurentPolynomial reflect_conjugate(const LaurentPolynomial& p);

/// Monomial-basis polynomial, coefficients in ascending powers, trimmed.
struct RealPolynomial {
  std::vector<double> coeffs;

  static RealPolynomial zero() { return {{}}; }
  static RealPolynomial constant(double c);

  bool is_zero() const { return coeffs.empty(); }
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  double at(int k) const;
  double operator()(double x) const;
  std::complex<double> operator()(std::complex<double> x) const;
};

RealPolynomial trimmed(RealPolynomial p);
RealPolynomial multiply(const RealPolynomial& p, const RealPolynomial& q);
RealPolynomial add(const RealPolynomial& p, const RealPolynomial& q);
RealPolynomial scale(const RealPolynomial& p, double s);

// p(inner(x)) by Horner in the coefficient ring.
RealPolynomial compose(const RealPolynomial& p, const RealPolynomial& inner);
LaurentPolynomial compose_laurent(const RealPolynomial& p, const LaurentPolynomial& inner);

struct ComplexRoot {
  std::complex<double> value;
  int multiplicity = 1;
};

/// Roots of a real polynomial. Non-real roots appear in exactly conjugate
/// pairs; ordering is deterministic by (real, imag).
struct ComplexRootSet {
  std::vector<ComplexRoot> roots;
  int total_multiplicity() const;
};

/// All complex roots by Durand-Kerner simultaneous iteration on the monic
/// normalization. Initial guesses sit on a perturbed circle at the Fujiwara
/// bound; throws NonConvergence after 500 sweeps without meeting tol.
ComplexRootSet roots(const RealPolynomial& p, double tol = 1e-12);

// Q~ with Q~(cos w) = Q(sin^2(w/2)), i.e. Q~(c) = Q((1-c)/2).
RealPolynomial cos_substitute(const RealPolynomial& q);

}  // namespace polywave
