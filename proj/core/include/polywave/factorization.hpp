#pragma once

#include <string>
#include <vector>

#include "polywave/laurent.hpp"
#include "polywave/symbols.hpp"

namespace polywave {

/// Compact refinement filter g with support 0..2N-1 satisfying
/// |g(e^{iw})|^2 = 2 a(e^{iw}) and the QMF identity sum_j g_j g_{j+2l} = 2 delta.
struct RefinementMask {
  SymbolContext context;
  LaurentPolynomial g;
  double qmf_residual = 0.0;
  double factorization_residual = 0.0;
};

// M1(z) = (z + x0)^N / (1 + x0)^N, the square root of d on the circle.
LaurentPolynomial m1_factor(const SymbolContext& ctx);

/// Spectral factor of a nonnegative cosine polynomial: real q of the same
/// degree with |q(e^{iw})|^2 = scale_target * Qtilde(cos w). Zeros are taken
/// from each reciprocal pair with modulus < 1; unit-modulus zeros once with
/// halved multiplicity. q(1) > 0 fixes the global sign.
LaurentPolynomial riesz_factor(const RealPolynomial& qtilde, double scale_target);

RefinementMask refinement_mask(const SymbolContext& ctx);
std::vector<RefinementMask> mask_family(int order, double xi, int levels);

// Diagnostics against a freshly built symbol, on a circle grid.
double qmf_residual(const LaurentPolynomial& g);
double factorization_residual(const LaurentPolynomial& g, const LaurentPolynomial& a, int grid_size);

std::string mask_to_json(const RefinementMask& m);

}  // namespace polywave
