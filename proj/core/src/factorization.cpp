#include "polywave/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "polywave/errors.hpp"

namespace polywave {

LaurentPolynomial m1_factor(const SymbolContext& ctx) {
  const double x0 = ctx.x0();
  const RealPolynomial base{{x0, 1.0}};
  RealPolynomial num = RealPolynomial::constant(1.0);
  for (int i = 0; i < ctx.order; ++i) num = multiply(num, base);
  LaurentPolynomial m1{0, num.coeffs};
  return scale(m1, std::pow(1.0 + x0, -ctx.order));
}

namespace {

// Real monic polynomial from a conjugate-closed root list.
RealPolynomial real_poly_from_roots(std::vector<std::complex<double>> rs) {
  std::sort(rs.begin(), rs.end(), [](const std::complex<double>& a, const std::complex<double>& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  RealPolynomial out = RealPolynomial::constant(1.0);
  std::vector<std::complex<double>> pending;  // positive-imag roots awaiting mates
  for (const auto& r : rs) {
    if (r.imag() == 0.0) {
      out = multiply(out, RealPolynomial{{-r.real(), 1.0}});
    } else if (r.imag() < 0.0) {
      pending.push_back(std::conj(r));
    } else {
      // Pair with the stored conjugate; tolerate tiny asymmetry.
      if (!pending.empty()) {
        const std::complex<double> mate = pending.back();
        pending.pop_back();
        const double re = 0.5 * (r.real() + mate.real());
        const double im = 0.5 * (r.imag() + mate.imag());
        out = multiply(out, RealPolynomial{{re * re + im * im, -2.0 * re, 1.0}});
      } else {
        out = multiply(out, RealPolynomial{{std::norm(r), -2.0 * r.real(), 1.0}});
      }
    }
  }
  for (const auto& r : pending)
    out = multiply(out, RealPolynomial{{std::norm(r), -2.0 * r.real(), 1.0}});
  return out;
}

// Root of w^2 - 2cw + 1 with modulus <= 1, evaluated stably as
// 1 / (c + sqrt(c^2-1)) with the larger-modulus denominator branch.
std::complex<double> reciprocal_pair_inner(std::complex<double> c) {
  const std::complex<double> s = std::sqrt(c * c - 1.0);
  const std::complex<double> d = (std::abs(c + s) >= std::abs(c - s)) ? c + s : c - s;
  return 1.0 / d;
}

RealPolynomial reversed(const RealPolynomial& p) {
  RealPolynomial r;
  r.coeffs.assign(p.coeffs.rbegin(), p.coeffs.rend());
  return trimmed(std::move(r));
}

double sum_coeffs(const RealPolynomial& p) {
  double s = 0.0;
  for (double c : p.coeffs) s += c;
  return s;
}

}  // namespace

LaurentPolynomial riesz_factor(const RealPolynomial& qtilde_in, double scale_target) {
  if (!(scale_target > 0.0)) throw std::invalid_argument("riesz_factor: scale_target must be > 0");
  const RealPolynomial qtilde = trimmed(qtilde_in);
  if (qtilde.is_zero()) throw std::invalid_argument("riesz_factor: zero polynomial");

  const double pi = std::acos(-1.0);
  double coeff_scale = 0.0;
  for (double c : qtilde.coeffs) coeff_scale = std::max(coeff_scale, std::abs(c));
  for (int i = 0; i < 512; ++i) {
    const double w = 2.0 * pi * i / 512.0;
    if (qtilde(std::cos(w)) < -1e-10 * coeff_scale)
      throw NegativeOnCircle("riesz_factor: input is negative on the circle");
  }

  const int deg = qtilde.degree();
  if (deg == 0) {
    return LaurentPolynomial::constant(std::sqrt(scale_target * qtilde.coeffs[0]));
  }

  // W(z) = Qtilde((z + 1/z)/2); p(z) = z^deg W(z) has reciprocal root pairs.
  const LaurentPolynomial w_laurent = compose_laurent(qtilde, LaurentPolynomial{-1, {0.5, 0.0, 0.5}});
  RealPolynomial p;
  p.coeffs.assign(static_cast<std::size_t>(2 * deg + 1), 0.0);
  for (int k = -deg; k <= deg; ++k) p.coeffs[static_cast<std::size_t>(k + deg)] = w_laurent.at(k);
  p = trimmed(std::move(p));

  const ComplexRootSet rs = roots(p);
  const double band = 1e-7;
  std::vector<std::complex<double>> inside, unit;
  for (const ComplexRoot& r : rs.roots) {
    const double mod = std::abs(r.value);
    for (int m = 0; m < r.multiplicity; ++m) {
      if (mod < 1.0 - band)
        inside.push_back(r.value);
      else if (mod <= 1.0 + band)
        unit.push_back(r.value);
    }
  }
  // Unit-modulus zeros come in coincident pairs; keep every other one.
  std::sort(unit.begin(), unit.end(), [](const std::complex<double>& a, const std::complex<double>& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  for (std::size_t i = 0; i < unit.size(); i += 2) {
    std::complex<double> u = unit[i];
    if (i + 1 < unit.size()) u = 0.5 * (unit[i] + unit[i + 1]);
    if (std::abs(u.imag()) <= 1e-9) u = {u.real(), 0.0};
    inside.push_back(u);
  }

  RealPolynomial q0 = real_poly_from_roots(std::move(inside));

  // Scale where |q0| is largest to keep the ratio well conditioned.
  double best = -1.0, omega_star = 0.0;
  for (int i = 0; i < 512; ++i) {
    const double w = 2.0 * pi * i / 512.0;
    const double mag = std::norm(q0(std::polar(1.0, w)));
    if (mag > best) {
      best = mag;
      omega_star = w;
    }
  }
  const double target = scale_target * std::max(0.0, qtilde(std::cos(omega_star)));
  double s = std::sqrt(target / best);
  const double at_one = sum_coeffs(q0);
  if (at_one < 0.0 || (at_one == 0.0 && q0.coeffs.back() < 0.0)) s = -s;

  RealPolynomial q = scale(q0, s);
  return LaurentPolynomial{0, q.coeffs};
}

double qmf_residual(const LaurentPolynomial& g) {
  const int n = static_cast<int>(g.coeffs.size());
  double worst = 0.0;
  for (int l = -(n / 2); l <= n / 2; ++l) {
    double acc = 0.0;
    for (int j = g.lo; j <= g.hi(); ++j) acc += g.at(j) * g.at(j + 2 * l);
    worst = std::max(worst, std::abs(acc - (l == 0 ? 2.0 : 0.0)));
  }
  return worst;
}

double factorization_residual(const LaurentPolynomial& g, const LaurentPolynomial& a, int grid_size) {
  const double pi = std::acos(-1.0);
  double worst = 0.0;
  for (int i = 0; i < grid_size; ++i) {
    const double w = 2.0 * pi * i / grid_size;
    const double lhs = 0.5 * std::norm(eval_circle(g, w));
    worst = std::max(worst, std::abs(lhs - eval_circle(a, w).real()));
  }
  return worst;
}

RefinementMask refinement_mask(const SymbolContext& ctx) {
  const double q_at_zero = q_polynomial_closed_form(ctx)(0.0);
  const double m2_at_one = 2.0 * std::sqrt(q_at_zero);

  RealPolynomial m2;
  if (ctx.order == 1) {
    m2 = RealPolynomial::constant(m2_at_one);
  } else {
    // Zeros of Qtilde come from the Daubechies zeros through c = 1 - 2C.
    // Keep the bounded (modulus < 1) member of each reciprocal pair, then
    // reverse the polynomial: the reversal has the same modulus on the
    // circle and lines up with the classical Daubechies table.
    std::vector<std::complex<double>> rs;
    for (const ComplexRoot& c : q_zeros(ctx).roots) {
      const std::complex<double> cz = 1.0 - 2.0 * c.value;
      for (int m = 0; m < c.multiplicity; ++m) rs.push_back(reciprocal_pair_inner(cz));
    }
    const RealPolynomial q0 = real_poly_from_roots(std::move(rs));
    m2 = scale(reversed(q0), m2_at_one / sum_coeffs(q0));
  }

  RefinementMask mask;
  mask.context = ctx;
  mask.g = multiply(m1_factor(ctx), LaurentPolynomial{0, m2.coeffs});
  mask.qmf_residual = qmf_residual(mask.g);
  mask.factorization_residual = factorization_residual(mask.g, a_symbol(ctx).a, 512);
  return mask;
}

std::vector<RefinementMask> mask_family(int order, double xi, int levels) {
  if (levels < 1) throw std::invalid_argument("mask_family: levels must be >= 1");
  std::vector<RefinementMask> out;
  out.reserve(static_cast<std::size_t>(levels));
  for (int m = 0; m < levels; ++m) out.push_back(refinement_mask({order, xi, m}));
  return out;
}

std::string mask_to_json(const RefinementMask& m) {
  nlohmann::json j;
  j["kind"] = "mask";
  j["N"] = m.context.order;
  j["xi"] = m.context.xi;
  j["level"] = m.context.level;
  j["lo"] = m.g.lo;
  j["coeffs"] = m.g.coeffs;
  j["qmf_residual"] = m.qmf_residual;
  j["factorization_residual"] = m.factorization_residual;
  return j.dump(2);
}

}  // namespace polywave
