#include "polywave/laurent.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "polywave/errors.hpp"

namespace polywave {

LaurentPolynomial LaurentPolynomial::constant(double c) {
  if (c == 0.0) return zero();
  return {0, {c}};
}

LaurentPolynomial LaurentPolynomial::monomial(int exponent, double c) {
  if (c == 0.0) return zero();
  return {exponent, {c}};
}

double LaurentPolynomial::at(int k) const {
  if (k < lo || k > hi()) return 0.0;
  return coeffs[static_cast<std::size_t>(k - lo)];
}

LaurentPolynomial trimmed(LaurentPolynomial p) {
  std::size_t head = 0;
  while (head < p.coeffs.size() && p.coeffs[head] == 0.0) ++head;
  if (head == p.coeffs.size()) return LaurentPolynomial::zero();
  std::size_t tail = p.coeffs.size();
  while (tail > head && p.coeffs[tail - 1] == 0.0) --tail;
  p.lo += static_cast<int>(head);
  p.coeffs = std::vector<double>(p.coeffs.begin() + static_cast<long>(head),
                                 p.coeffs.begin() + static_cast<long>(tail));
  return p;
}

LaurentPolynomial multiply(const LaurentPolynomial& p, const LaurentPolynomial& q) {
  if (p.is_zero() || q.is_zero()) return LaurentPolynomial::zero();
  LaurentPolynomial r;
  r.lo = p.lo + q.lo;
  r.coeffs.assign(p.coeffs.size() + q.coeffs.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.coeffs.size(); ++i)
    for (std::size_t j = 0; j < q.coeffs.size(); ++j)
      r.coeffs[i + j] += p.coeffs[i] * q.coeffs[j];
  return trimmed(std::move(r));
}

LaurentPolynomial add(const LaurentPolynomial& p, const LaurentPolynomial& q) {
  if (p.is_zero()) return q;
  if (q.is_zero()) return p;
  const int lo = std::min(p.lo, q.lo);
  const int hi = std::max(p.hi(), q.hi());
  LaurentPolynomial r;
  r.lo = lo;
  r.coeffs.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
  for (int k = lo; k <= hi; ++k)
    r.coeffs[static_cast<std::size_t>(k - lo)] = p.at(k) + q.at(k);
  return trimmed(std::move(r));
}

LaurentPolynomial scale(const LaurentPolynomial& p, double s) {
  if (s == 0.0) return LaurentPolynomial::zero();
  LaurentPolynomial r = p;
  for (double& c : r.coeffs) c *= s;
  return r;
}

namespace {

bool is_symmetric(const LaurentPolynomial& p) {
  if (p.lo != -p.hi()) return false;
  const std::size_t n = p.coeffs.size();
  for (std::size_t i = 0; i < n / 2; ++i)
    if (p.coeffs[i] != p.coeffs[n - 1 - i]) return false;
  return true;
}

}  // namespace

std::complex<double> eval_circle(const LaurentPolynomial& p, double omega) {
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
    const double k = static_cast<double>(p.lo + static_cast<int>(i));
    acc += p.coeffs[i] * std::polar(1.0, omega * k);
  }
#ifndef NDEBUG
  if (is_symmetric(p)) {
    double mass = 0.0;
    for (double c : p.coeffs) mass += std::abs(c);
    assert(std::abs(acc.imag()) <= 1e-12 * std::max(1.0, mass));
  }
#endif
  return acc;
}

LaurentPolynomial reflect_conjugate(const LaurentPolynomial& p) {
  LaurentPolynomial r;
  r.lo = -p.hi();
  r.coeffs.assign(p.coeffs.rbegin(), p.coeffs.rend());
  return r;
}

RealPolynomial RealPolynomial::constant(double c) {
  if (c == 0.0) return zero();
  return {{c}};
}

double RealPolynomial::at(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs.size())) return 0.0;
  return coeffs[static_cast<std::size_t>(k)];
}

double RealPolynomial::operator()(double x) const {
  double acc = 0.0;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

std::complex<double> RealPolynomial::operator()(std::complex<double> x) const {
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

RealPolynomial trimmed(RealPolynomial p) {
  while (!p.coeffs.empty() && p.coeffs.back() == 0.0) p.coeffs.pop_back();
  return p;
}

RealPolynomial multiply(const RealPolynomial& p, const RealPolynomial& q) {
  if (p.is_zero() || q.is_zero()) return RealPolynomial::zero();
  RealPolynomial r;
  r.coeffs.assign(p.coeffs.size() + q.coeffs.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.coeffs.size(); ++i)
    for (std::size_t j = 0; j < q.coeffs.size(); ++j)
      r.coeffs[i + j] += p.coeffs[i] * q.coeffs[j];
  return trimmed(std::move(r));
}

RealPolynomial add(const RealPolynomial& p, const RealPolynomial& q) {
  RealPolynomial r;
  r.coeffs.assign(std::max(p.coeffs.size(), q.coeffs.size()), 0.0);
  for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] = p.at(static_cast<int>(i)) + q.at(static_cast<int>(i));
  return trimmed(std::move(r));
}

RealPolynomial scale(const RealPolynomial& p, double s) {
  if (s == 0.0) return RealPolynomial::zero();
  RealPolynomial r = p;
  for (double& c : r.coeffs) c *= s;
  return r;
}

RealPolynomial compose(const RealPolynomial& p, const RealPolynomial& inner) {
  RealPolynomial acc = RealPolynomial::zero();
  for (std::size_t i = p.coeffs.size(); i-- > 0;) {
    acc = multiply(acc, inner);
    acc = add(acc, RealPolynomial::constant(p.coeffs[i]));
  }
  return acc;
}

LaurentPolynomial compose_laurent(const RealPolynomial& p, const LaurentPolynomial& inner) {
  LaurentPolynomial acc = LaurentPolynomial::zero();
  for (std::size_t i = p.coeffs.size(); i-- > 0;) {
    acc = multiply(acc, inner);
    acc = add(acc, LaurentPolynomial::constant(p.coeffs[i]));
  }
  return acc;
}

int ComplexRootSet::total_multiplicity() const {
  int n = 0;
  for (const ComplexRoot& r : roots) n += r.multiplicity;
  return n;
}

namespace {

double fujiwara_bound(const std::vector<double>& monic) {
  // monic[i] is the coefficient of x^i, monic.back() == 1.
  const std::size_t n = monic.size() - 1;
  double bound = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    double mag = std::abs(monic[n - k]);
    if (k == n) mag *= 0.5;
    bound = std::max(bound, std::pow(mag, 1.0 / static_cast<double>(k)));
  }
  return 2.0 * bound;
}

}  // namespace

ComplexRootSet roots(const RealPolynomial& p_in, double tol) {
  const RealPolynomial p = trimmed(p_in);
  const int deg = p.degree();
  if (deg < 1) throw std::invalid_argument("roots: degree must be >= 1");

  std::vector<double> monic(p.coeffs.begin(), p.coeffs.end());
  const double lead = monic.back();
  for (double& c : monic) c /= lead;

  const double radius = std::max(fujiwara_bound(monic), 1e-3);
  const std::size_t n = static_cast<std::size_t>(deg);
  std::vector<std::complex<double>> z(n);
  const double pi = std::acos(-1.0);
  for (std::size_t i = 0; i < n; ++i) {
    // Fixed angular offset keeps the start set off the real axis and
    // asymmetric under conjugation.
    const double theta = 2.0 * pi * static_cast<double>(i) / static_cast<double>(n) + 0.376;
    z[i] = std::polar(radius, theta);
  }

  const auto eval_monic = [&](std::complex<double> x) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t i = monic.size(); i-- > 0;) acc = acc * x + monic[i];
    return acc;
  };

  const int max_sweeps = 500;
  const double step_tol = tol * std::max(1.0, radius);
  bool converged = false;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    double max_step = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      std::complex<double> denom{1.0, 0.0};
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        denom *= z[i] - z[j];
      }
      if (denom == std::complex<double>(0.0, 0.0)) {
        z[i] += std::complex<double>(step_tol + 1e-9, step_tol + 1e-9);
        max_step = std::max(max_step, 1.0);
        continue;
      }
      const std::complex<double> delta = eval_monic(z[i]) / denom;
      z[i] -= delta;
      max_step = std::max(max_step, std::abs(delta));
    }
    converged = max_step <= step_tol;
  }
  if (!converged) throw NonConvergence("roots: Durand-Kerner did not converge within 500 sweeps");

  // Snap near-real roots onto the axis.
  for (auto& zi : z) {
    if (std::abs(zi.imag()) <= 1e-10 * std::max(1.0, std::abs(zi))) zi = {zi.real(), 0.0};
  }

  // Pair the remaining roots with their nearest conjugates and symmetrize so
  // downstream reconstructions get exactly real coefficients.
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (used[i] || z[i].imag() <= 0.0) continue;
    std::size_t best = n;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j] || j == i || z[j].imag() >= 0.0) continue;
      const double dist = std::abs(z[i] - std::conj(z[j]));
      if (dist < best_dist) {
        best_dist = dist;
        best = j;
      }
    }
    if (best == n) {
      z[i] = {z[i].real(), 0.0};
      continue;
    }
    const double re = 0.5 * (z[i].real() + z[best].real());
    const double im = 0.5 * (z[i].imag() - z[best].imag());
    z[i] = {re, im};
    z[best] = {re, -im};
    used[i] = used[best] = true;
  }
  // Any stray unpaired negative-imaginary root also collapses to the axis.
  for (std::size_t i = 0; i < n; ++i) {
    if (!used[i] && z[i].imag() != 0.0 && z[i].imag() < 0.0) {
      bool has_mate = false;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i && z[j] == std::conj(z[i])) has_mate = true;
      if (!has_mate) z[i] = {z[i].real(), 0.0};
    }
  }

  // Residual check against the requested tolerance.
  double coeff_scale = 0.0;
  for (double c : p.coeffs) coeff_scale = std::max(coeff_scale, std::abs(c));
  for (const auto& zi : z) {
    const double res = std::abs(p(zi)) / coeff_scale;
    const double growth = std::pow(std::max(1.0, std::abs(zi)), static_cast<double>(deg));
    if (res > 1e6 * tol * growth)
      throw NonConvergence("roots: residual too large after iteration");
  }

  std::sort(z.begin(), z.end(), [](const std::complex<double>& a, const std::complex<double>& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });

  ComplexRootSet out;
  out.roots.reserve(n);
  for (const auto& zi : z) out.roots.push_back({zi, 1});
  return out;
}

RealPolynomial cos_substitute(const RealPolynomial& q) {
  return compose(q, RealPolynomial{{0.5, -0.5}});
}

}  // namespace polywave
