#pragma once

#include <iosfwd>
#include <vector>

#include "polywave/factorization.hpp"
#include "polywave/symbols.hpp"

namespace polywave {

/// Finitely supported samples at the dyadic grid j/2^level; values[i] lives
/// at (lo+i)/2^level.
struct SampleSequence {
  int level = 0;
  int lo = 0;
  std::vector<double> values;

  double at_index(int j) const;
};

/// Samples of a compactly supported function on the grid of spacing
/// 2^-(base_level + resolution); values[i] sits at (lo+i)*spacing().
struct DyadicGridFunction {
  int base_level = 0;  // m
  int resolution = 0;  // L
  int lo = 0;
  std::vector<double> values;

  double spacing() const;
  double abscissa(std::size_t i) const;
};

/// One interpolatory refinement step: even slots are bitwise copies of the
/// input, odd slots come from the symbol's odd coefficients.
SampleSequence subdivide_once(const SampleSequence& s, const SubdivisionSymbol& symbol);

/// Samples of sum_i t^powers[i] * exp(signs[i]*lambda_i*t) over the integer
/// window [window_lo, window_hi] at grid 2^-k. Entry i refers to
/// lams.lambdas[i]; powers and signs must have equal length <= N.
SampleSequence exponential_samples(const FrequencyVector& lams, const std::vector<int>& powers,
                                   const std::vector<int>& signs, int k, int window_lo,
                                   int window_hi);

/// Sup-norm error (relative to the sup of the exact samples) between
/// subdivided and exactly resampled data after `steps` refinements, measured
/// on the interior where the subdivision stencil never saw the boundary.
double reproduction_error(const FrequencyVector& lams, const std::vector<int>& powers,
                          const std::vector<int>& signs, int k0, int steps);

// Same measurement but the sampled exponentials may use frequencies the
// scheme was not built for (negative controls).
double reproduction_error(const FrequencyVector& scheme, const FrequencyVector& sample,
                          const std::vector<int>& powers, const std::vector<int>& signs, int k0,
                          int steps);

// Cardinal interpolant of the scheme, tabulated by L subdivision steps from
// a Kronecker delta at level m.
DyadicGridFunction fundamental_function(int order, double xi, int m, int L);

/// Father wavelet tabulated by exact dyadic refinement: integer-grid values
/// of the deepest level from the classical fixed point, then L coarse-to-fine
/// refinement passes with the level masks. Scale is the orthonormal one
/// (bottom values summing to 1), no integral normalization.
DyadicGridFunction tabulate_father_raw(int order, double xi, int m, int L);

// Same tabulation, renormalized so the Riemann sum is exactly 1.
DyadicGridFunction cascade_father(int order, double xi, int m, int L);

// psi_m from the alternating flip of the level-m mask over phi_{m+1}.
DyadicGridFunction mother_wavelet(int order, double xi, int m, int L);

// Integer-grid values of the classical (xi = 0) father wavelet; the
// eigenvalue-1 fixed point of its refinement transition matrix.
std::vector<double> classical_integer_values(int order);

void write_csv(const DyadicGridFunction& f, std::ostream& os);

}  // namespace polywave
