#include "polywave/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "polywave/errors.hpp"
#include "dense_solve.hpp"
#include <limits>

namespace polywave {

FrequencyVector::FrequencyVector(std::vector<double> ls) : lambdas(std::move(ls)) {
  if (lambdas.empty()) throw std::invalid_argument("FrequencyVector: need at least one frequency");
  for (double l : lambdas)
    if (!(l >= 0.0)) throw std::invalid_argument("FrequencyVector: frequencies must be nonnegative");
  if (!std::is_sorted(lambdas.begin(), lambdas.end()))
    throw std::invalid_argument("FrequencyVector: frequencies must be sorted ascending");
}

FrequencyVector FrequencyVector::polyharmonic(int order, double xi) {
  return FrequencyVector(std::vector<double>(static_cast<std::size_t>(order), xi));
}

int FrequencyVector::exponent_multiplicity(double lambda) const {
  int count = 0;
  for (double l : lambdas)
    if (l == lambda) ++count;
  return lambda == 0.0 ? 2 * count : count;
}

double SymbolContext::x0() const { return std::exp(-xi / std::exp2(level + 1)); }

double SymbolContext::eta() const {
  const double x = x0();
  return 4.0 * x / ((1.0 + x) * (1.0 + x));
}

RealPolynomial daubechies_polynomial(int order) {
  if (order < 1) throw std::invalid_argument("daubechies_polynomial: order must be >= 1");
  if (order > 16) throw OrderTooLarge("daubechies_polynomial: binomials exceed exact binary64 range for N > 16");
  RealPolynomial r;
  r.coeffs.resize(static_cast<std::size_t>(order));
  double binom = 1.0;  // C(N-1, 0)
  for (int j = 0; j < order; ++j) {
    r.coeffs[static_cast<std::size_t>(j)] = binom;
    binom = binom * static_cast<double>(order + j) / static_cast<double>(j + 1);
  }
  return r;
}

LaurentPolynomial d_symbol(const FrequencyVector& lams, int k) {
  if (k < 0) throw std::invalid_argument("d_symbol: level must be >= 0");
  LaurentPolynomial d = LaurentPolynomial::constant(1.0);
  for (double lambda : lams.lambdas) {
    const double x = std::exp(-lambda / std::exp2(k + 1));
    const double w = 1.0 / ((1.0 + x) * (1.0 + x));
    // (z + x)(z^-1 + x) = x z + (1 + x^2) + x z^-1
    LaurentPolynomial factor{-1, {x * w, (1.0 + x * x) * w, x * w}};
    d = multiply(d, factor);
  }
  return d;
}

RealPolynomial p_polynomial(const FrequencyVector& lams, int k) {
  if (k < 0) throw std::invalid_argument("p_polynomial: level must be >= 0");
  RealPolynomial p = RealPolynomial::constant(1.0);
  for (double lambda : lams.lambdas) {
    const double x = std::exp(-lambda / std::exp2(k + 1));
    const double eta = 4.0 * x / ((1.0 + x) * (1.0 + x));
    p = multiply(p, RealPolynomial{{1.0, -eta}});
  }
  return p;
}

namespace {

RealPolynomial reflect_argument(const RealPolynomial& p) {
  // p(1 - x)
  return compose(p, RealPolynomial{{1.0, -1.0}});
}

}  // namespace

RealPolynomial bezout_solve(const RealPolynomial& p_in) {
  const RealPolynomial p = trimmed(p_in);
  const int n = p.degree();
  if (n < 1) throw std::invalid_argument("bezout_solve: deg P must be >= 1");
  const RealPolynomial pr = reflect_argument(p);

  // Unknowns: coefficients of Q (degree < N) then of S := Q(1-x).
  // Equations: coefficient matching of P*Q + P(1-.)*S = 1, degrees 0..2N-1.
  const std::size_t dim = 2 * static_cast<std::size_t>(n);
  std::vector<double> mat(dim * dim, 0.0);
  std::vector<double> rhs(dim, 0.0);
  rhs[0] = 1.0;
  for (std::size_t row = 0; row < dim; ++row) {
    const int deg = static_cast<int>(row);
    for (int j = 0; j < n; ++j) {
      mat[row * dim + static_cast<std::size_t>(j)] = p.at(deg - j);
      mat[row * dim + static_cast<std::size_t>(n + j)] = pr.at(deg - j);
    }
  }
  const std::vector<double> sol = detail::solve_dense(std::move(mat), std::move(rhs));
  RealPolynomial q;
  q.coeffs.assign(sol.begin(), sol.begin() + n);
  return trimmed(std::move(q));
}

RealPolynomial q_polynomial_closed_form(const SymbolContext& ctx) {
  const double eta = ctx.eta();
  const double denom = 2.0 - eta;
  // Q(x) = (2-eta)^(-N) R_N((1 - eta(1-x)) / (2-eta))
  const RealPolynomial inner{{(1.0 - eta) / denom, eta / denom}};
  RealPolynomial q = compose(daubechies_polynomial(ctx.order), inner);
  return scale(q, std::pow(denom, -ctx.order));
}

double q_leading_coefficient(const SymbolContext& ctx) {
  const int n = ctx.order;
  double central = 1.0;  // (2N-2)! / ((N-1)!)^2 = C(2N-2, N-1)
  for (int j = 1; j < n; ++j) central = central * static_cast<double>(n - 1 + j) / static_cast<double>(j);
  return std::pow(2.0 - ctx.eta(), -2 * n + 1) * std::pow(ctx.eta(), n - 1) * central;
}

ComplexRootSet q_zeros(const SymbolContext& ctx) {
  const double eta = ctx.eta();
  if (!(eta > 0.0)) throw std::invalid_argument("q_zeros: eta must be positive");
  ComplexRootSet out;
  if (ctx.order == 1) return out;
  const ComplexRootSet daub = roots(daubechies_polynomial(ctx.order));
  out.roots.reserve(daub.roots.size());
  for (const ComplexRoot& r : daub.roots) {
    const std::complex<double> mapped = (r.value * (2.0 - eta) + (eta - 1.0)) / eta;
    out.roots.push_back({mapped, r.multiplicity});
  }
  std::sort(out.roots.begin(), out.roots.end(), [](const ComplexRoot& a, const ComplexRoot& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  return out;
}

namespace {

SubdivisionSymbol assemble_symbol(const SymbolContext& ctx, const LaurentPolynomial& d,
                                  const RealPolynomial& q) {
  // x = 1/2 - (z + z^-1)/4 on the unit circle equals sin^2(w/2).
  const LaurentPolynomial x_of_z{-1, {-0.25, 0.5, -0.25}};
  const LaurentPolynomial b = compose_laurent(q, x_of_z);
  return {ctx, scale(multiply(d, b), 2.0)};
}

}  // namespace

SubdivisionSymbol a_symbol(const SymbolContext& ctx) {
  const FrequencyVector lams = FrequencyVector::polyharmonic(ctx.order, ctx.xi);
  return assemble_symbol(ctx, d_symbol(lams, ctx.level), q_polynomial_closed_form(ctx));
}

SubdivisionSymbol a_symbol_general(const FrequencyVector& lams, int k) {
  SymbolContext ctx{lams.order(), lams.lambdas.back(), k};
  return assemble_symbol(ctx, d_symbol(lams, k), bezout_solve(p_polynomial(lams, k)));
}

SymbolReport verify_symbol(const SubdivisionSymbol& s, int grid_size) {
  if (grid_size < 64) throw std::invalid_argument("verify_symbol: grid_size must be >= 64");
  SymbolReport rep;
  rep.grid_size = grid_size;

  const LaurentPolynomial& a = s.a;
  for (int j = 0; j <= a.hi(); ++j)
    rep.symmetry_defect = std::max(rep.symmetry_defect, std::abs(a.at(j) - a.at(-j)));

  // a(z) + a(-z) = 2 is equivalent to the even coefficients being delta.
  for (int j = a.lo; j <= a.hi(); ++j) {
    if (j % 2 != 0) continue;
    const double target = (j == 0) ? 1.0 : 0.0;
    rep.interpolatory_defect = std::max(rep.interpolatory_defect, std::abs(a.at(j) - target));
  }

  const double pi = std::acos(-1.0);
  rep.min_circle_value = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid_size; ++i) {
    const double omega = 2.0 * pi * static_cast<double>(i) / static_cast<double>(grid_size);
    rep.min_circle_value = std::min(rep.min_circle_value, eval_circle(a, omega).real());
  }

  rep.pass = rep.symmetry_defect <= 1e-10 && rep.interpolatory_defect <= 1e-10 &&
             rep.min_circle_value >= -1e-12;
  return rep;
}

std::string symbol_to_json(const SubdivisionSymbol& s) {
  nlohmann::json j;
  j["N"] = s.context.order;
  j["xi"] = s.context.xi;
  j["level"] = s.context.level;
  j["lo"] = s.a.lo;
  j["coeffs"] = s.a.coeffs;
  return j.dump(2);
}

}  // namespace polywave
