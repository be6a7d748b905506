#include "polywave/subdivision.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "dense_solve.hpp"
#include "polywave/errors.hpp"

namespace polywave {

double SampleSequence::at_index(int j) const {
  if (j < lo || j >= lo + static_cast<int>(values.size())) return 0.0;
  return values[static_cast<std::size_t>(j - lo)];
}

double DyadicGridFunction::spacing() const { return std::exp2(-(base_level + resolution)); }

double DyadicGridFunction::abscissa(std::size_t i) const {
  return (static_cast<double>(lo) + static_cast<double>(i)) * spacing();
}

SampleSequence subdivide_once(const SampleSequence& s, const SubdivisionSymbol& symbol) {
  if (symbol.context.level != s.level)
    throw LevelMismatch("subdivide_once: symbol level does not match sequence level");
  SampleSequence out;
  out.level = s.level + 1;
  if (s.values.empty()) return out;

  const int span = symbol.a.hi();
  const int in_lo = s.lo;
  const int in_hi = s.lo + static_cast<int>(s.values.size()) - 1;
  out.lo = 2 * in_lo - span;
  const int out_hi = 2 * in_hi + span;
  out.values.assign(static_cast<std::size_t>(out_hi - out.lo + 1), 0.0);

  // Interpolatory slots are exact copies; only odd slots convolve.
  for (int j = in_lo; j <= in_hi; ++j)
    out.values[static_cast<std::size_t>(2 * j - out.lo)] = s.at_index(j);
  for (int jp = out.lo; jp <= out_hi; ++jp) {
    if ((jp & 1) == 0) continue;
    double acc = 0.0;
    for (int j = in_lo; j <= in_hi; ++j) acc += symbol.a.at(jp - 2 * j) * s.at_index(j);
    out.values[static_cast<std::size_t>(jp - out.lo)] = acc;
  }
  return out;
}

SampleSequence exponential_samples(const FrequencyVector& lams, const std::vector<int>& powers,
                                   const std::vector<int>& signs, int k, int window_lo,
                                   int window_hi) {
  if (powers.size() != signs.size())
    throw std::invalid_argument("exponential_samples: powers and signs must pair up");
  if (powers.size() > lams.lambdas.size())
    throw std::invalid_argument("exponential_samples: more terms than frequencies");
  if (window_hi < window_lo) throw std::invalid_argument("exponential_samples: empty window");
  for (std::size_t i = 0; i < powers.size(); ++i) {
    if (signs[i] != 1 && signs[i] != -1)
      throw std::invalid_argument("exponential_samples: signs must be +-1");
    if (powers[i] < 0 || powers[i] >= lams.exponent_multiplicity(lams.lambdas[i]))
      throw PowerExceedsMultiplicity("exponential_samples: power exceeds frequency multiplicity");
  }

  SampleSequence out;
  out.level = k;
  out.lo = window_lo;
  out.values.resize(static_cast<std::size_t>(window_hi - window_lo + 1));
  const double h = std::exp2(-k);
  for (int j = window_lo; j <= window_hi; ++j) {
    const double t = j * h;
    double v = 0.0;
    for (std::size_t i = 0; i < powers.size(); ++i)
      v += std::pow(t, powers[i]) * std::exp(signs[i] * lams.lambdas[i] * t);
    out.values[static_cast<std::size_t>(j - window_lo)] = v;
  }
  return out;
}

namespace {

double reproduction_error_impl(const FrequencyVector& scheme, const FrequencyVector& sample,
                               const std::vector<int>& powers, const std::vector<int>& signs,
                               int k0, int steps) {
  if (steps < 1) throw std::invalid_argument("reproduction_error: steps must be >= 1");
  const int n = scheme.order();
  const int span = 2 * n - 1;
  const int window = 4 * n;

  SampleSequence data = exponential_samples(sample, powers, signs, k0, -window, window);
  int valid_lo = -window, valid_hi = window;
  for (int s = 0; s < steps; ++s) {
    data = subdivide_once(data, a_symbol_general(scheme, k0 + s));
    valid_lo = 2 * valid_lo + span;
    valid_hi = 2 * valid_hi - span;
  }
  if (valid_hi <= valid_lo) throw std::invalid_argument("reproduction_error: no interior left");

  const SampleSequence exact =
      exponential_samples(sample, powers, signs, k0 + steps, valid_lo, valid_hi);
  double sup = 0.0;
  for (double v : exact.values) sup = std::max(sup, std::abs(v));
  double err = 0.0;
  for (int j = valid_lo; j <= valid_hi; ++j)
    err = std::max(err, std::abs(data.at_index(j) - exact.at_index(j)));
  return err / sup;
}

}  // namespace

double reproduction_error(const FrequencyVector& lams, const std::vector<int>& powers,
                          const std::vector<int>& signs, int k0, int steps) {
  return reproduction_error_impl(lams, lams, powers, signs, k0, steps);
}

double reproduction_error(const FrequencyVector& scheme, const FrequencyVector& sample,
                          const std::vector<int>& powers, const std::vector<int>& signs, int k0,
                          int steps) {
  return reproduction_error_impl(scheme, sample, powers, signs, k0, steps);
}

DyadicGridFunction fundamental_function(int order, double xi, int m, int L) {
  if (L < 1) throw std::invalid_argument("fundamental_function: L must be >= 1");
  SampleSequence seq{m, 0, {1.0}};
  for (int s = 0; s < L; ++s) seq = subdivide_once(seq, a_symbol({order, xi, m + s}));
  return {m, L, seq.lo, std::move(seq.values)};
}

std::vector<double> classical_integer_values(int order) {
  if (order == 1) return {1.0, 0.0};  // indicator of [0,1)
  const LaurentPolynomial g = refinement_mask({order, 0.0, 0}).g;
  const std::size_t dim = static_cast<std::size_t>(2 * order);
  std::vector<double> mat(dim * dim, 0.0);
  std::vector<double> rhs(dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      mat[i * dim + j] = g.at(2 * static_cast<int>(i) - static_cast<int>(j)) - (i == j ? 1.0 : 0.0);
  // Replace the last equation by the normalization sum(v) = 1.
  for (std::size_t j = 0; j < dim; ++j) mat[(dim - 1) * dim + j] = 1.0;
  rhs[dim - 1] = 1.0;
  return detail::solve_dense(std::move(mat), std::move(rhs));
}

namespace {

// Unit-grid samples phi_hat_m(n 2^-L), n = 0 .. (2N-1) 2^L, by exact
// coarse-to-fine refinement from the deepest level's integer values.
std::vector<double> father_unit_grid(int order, double xi, int m, int L) {
  std::vector<double> vals = classical_integer_values(order);
  for (int s = L - 1; s >= 0; --s) {
    const LaurentPolynomial g = refinement_mask({order, xi, m + s}).g;
    const long stride = 1L << (L - 1 - s);
    const long old_len = static_cast<long>(vals.size());
    const long new_len = (2L * order - 1) * (1L << (L - s)) + 1;
    std::vector<double> next(static_cast<std::size_t>(new_len), 0.0);
    for (long n = 0; n < new_len; ++n) {
      double acc = 0.0;
      for (int i = g.lo; i <= g.hi(); ++i) {
        const long idx = n - static_cast<long>(i) * stride;
        if (idx >= 0 && idx < old_len) acc += g.at(i) * vals[static_cast<std::size_t>(idx)];
      }
      next[static_cast<std::size_t>(n)] = acc;
    }
    vals = std::move(next);
  }
  return vals;
}

}  // namespace

DyadicGridFunction tabulate_father_raw(int order, double xi, int m, int L) {
  if (L < 1) throw std::invalid_argument("tabulate_father_raw: L must be >= 1");
  std::vector<double> vals = father_unit_grid(order, xi, m, L);
  const double amp = std::exp2(m);
  for (double& v : vals) v *= amp;
  return {m, L, 0, std::move(vals)};
}

DyadicGridFunction cascade_father(int order, double xi, int m, int L) {
  DyadicGridFunction f = tabulate_father_raw(order, xi, m, L);
  double sum = 0.0;
  for (double v : f.values) sum += v;
  const double target = std::exp2(m + L);
  for (double& v : f.values) v *= target / sum;
  return f;
}

DyadicGridFunction mother_wavelet(int order, double xi, int m, int L) {
  if (L < 1) throw std::invalid_argument("mother_wavelet: L must be >= 1");
  const LaurentPolynomial g = refinement_mask({order, xi, m}).g;
  const std::vector<double> phi = father_unit_grid(order, xi, m + 1, L - 1);
  const long phi_len = static_cast<long>(phi.size());
  const long half = 1L << (L - 1);

  // h_j = (-1)^j g_{1-j}, j = 2-2N .. 1
  const int j_lo = 1 - g.hi();
  const int j_hi = 1 - g.lo;
  DyadicGridFunction psi;
  psi.base_level = m;
  psi.resolution = L;
  psi.lo = static_cast<int>(j_lo * half);
  const long count = (j_hi - j_lo) * half + phi_len;
  psi.values.assign(static_cast<std::size_t>(count), 0.0);
  const double amp = std::exp2(0.5 * m);  // unit L2 norm across base levels
  for (int j = j_lo; j <= j_hi; ++j) {
    const double h = ((j % 2 == 0) ? 1.0 : -1.0) * g.at(1 - j);
    if (h == 0.0) continue;
    const long offset = static_cast<long>(j) * half - psi.lo;
    for (long i = 0; i < phi_len; ++i)
      psi.values[static_cast<std::size_t>(offset + i)] += amp * h * phi[static_cast<std::size_t>(i)];
  }
  return psi;
}

void write_csv(const DyadicGridFunction& f, std::ostream& os) {
  os << "t,value\n";
  char buf[64];
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", f.abscissa(i));
    os << buf << ',';
    std::snprintf(buf, sizeof buf, "%.17g", f.values[i]);
    os << buf << '\n';
  }
}

}  // namespace polywave
