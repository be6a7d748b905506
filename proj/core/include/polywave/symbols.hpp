#pragma once

#include <string>
#include <vector>

#include "polywave/laurent.hpp"

namespace polywave {

/// Upper half of the symmetric frequency vector: 0 <= l1 <= ... <= lN.
/// The full vector is these values together with their negations.
struct FrequencyVector {
  std::vector<double> lambdas;

  explicit FrequencyVector(std::vector<double> ls);
  static FrequencyVector polyharmonic(int order, double xi);

  int order() const { return static_cast<int>(lambdas.size()); }
  // Multiplicity of the exponent s*lambda as a characteristic root.
  int exponent_multiplicity(double lambda) const;
};

/// Parameters of one construction level: order N, frequency xi >= 0 and
/// refinement level k, with the derived quantities x0 = e^(-xi/2^(k+1)) and
/// eta = 4 x0 / (1 + x0)^2.
struct SymbolContext {
  int order = 1;
  double xi = 0.0;
  int level = 0;

  double x0() const;
  double eta() const;
};

struct SubdivisionSymbol {
  SymbolContext context;
  LaurentPolynomial a;  // symmetric, span -(2N-1)..(2N-1)
};

// R_N(y) = sum_{j<N} C(N+j-1, j) y^j; exact in binary64 for N <= 16.
RealPolynomial daubechies_polynomial(int order);

LaurentPolynomial d_symbol(const FrequencyVector& lams, int k);
RealPolynomial p_polynomial(const FrequencyVector& lams, int k);

/// Minimal-degree Q with P(x)Q(x) + P(1-x)Q(1-x) = 1, via coefficient
/// matching and partial-pivot elimination on the 2N x 2N system.
RealPolynomial bezout_solve(const RealPolynomial& p);

// Closed-form Q for the polyharmonic P = (1 - eta x)^N.
RealPolynomial q_polynomial_closed_form(const SymbolContext& ctx);

// Zeros of Q mapped from the Daubechies polynomial zeros.
ComplexRootSet q_zeros(const SymbolContext& ctx);
double q_leading_coefficient(const SymbolContext& ctx);

SubdivisionSymbol a_symbol(const SymbolContext& ctx);
SubdivisionSymbol a_symbol_general(const FrequencyVector& lams, int k);

struct SymbolReport {
  double symmetry_defect = 0.0;
  double min_circle_value = 0.0;
  double interpolatory_defect = 0.0;
  int grid_size = 0;
  bool pass = false;
};

SymbolReport verify_symbol(const SubdivisionSymbol& s, int grid_size);

std::string symbol_to_json(const SubdivisionSymbol& s);

}  // namespace polywave
