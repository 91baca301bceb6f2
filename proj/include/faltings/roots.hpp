#pragma once

// Simultaneous root finding (Aberth-Ehrlich): double-precision seeds,
// polished at the context precision, conjugate pairs made exact.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "faltings/errors.hpp"
#include "faltings/intpoly.hpp"
#include "faltings/numctx.hpp"

namespace faltings {

namespace detail {

inline double cabs_d(const std::complex<double>& z) { return std::abs(z); }
inline Real cabs_d(const Complex& z) { return abs(z); }

// One Aberth sweep; returns the largest correction relative to max(1, |z|).
template <class C, class Scalar>
Scalar aberth_sweep(const std::vector<C>& coeffs, std::vector<C>& z, const C& zero, const C& one) {
  const std::size_t n = z.size();
  Scalar worst = cabs_d(zero);
  for (std::size_t i = 0; i < n; ++i) {
    C p = coeffs.back();
    C dp = zero;
    for (std::size_t k = coeffs.size() - 1; k-- > 0;) {
      dp = dp * z[i] + p;
      p = p * z[i] + coeffs[k];
    }
    if (cabs_d(p) == cabs_d(zero)) continue;
    C ratio = p / dp;
    C repulse = zero;
    for (std::size_t k = 0; k < n; ++k)
      if (k != i) repulse += one / (z[i] - z[k]);
    C w = ratio / (one - ratio * repulse);
    z[i] -= w;
    Scalar rel = cabs_d(w) / std::max(cabs_d(z[i]), cabs_d(one));
    if (rel > worst) worst = rel;
  }
  return worst;
}

inline std::vector<std::complex<double>> aberth_seeds(const Poly& p) {
  const int n = p.degree();
  std::vector<std::complex<double>> coeffs;
  for (const auto& a : p.coeffs()) coeffs.emplace_back(a.convert_to<double>(), 0.0);
  for (const auto& a : coeffs)
    if (!std::isfinite(a.real())) return {};
  // Radius from the geometric mean of the roots' magnitudes.
  double radius = std::pow(std::abs(coeffs.front().real() / coeffs.back().real()), 1.0 / n);
  if (!(radius > 0) || !std::isfinite(radius)) radius = 1.0;
  std::vector<std::complex<double>> z(n);
  for (int k = 0; k < n; ++k) z[k] = std::polar(radius, 2 * M_PI * k / n + 0.4);
  const std::complex<double> zero(0.0, 0.0), one(1.0, 0.0);
  for (int it = 0; it < 500; ++it) {
    double rel = aberth_sweep<std::complex<double>, double>(coeffs, z, zero, one);
    if (rel < 1e-14) break;
  }
  return z;
}

}  // namespace detail

inline Real coefficient_l1(const Poly& p, const PrecisionContext& ctx) {
  Real s = ctx.real(0);
  for (const auto& a : p.coeffs()) s += abs(ctx.real(a.str()));
  return s;
}

inline Complex poly_eval(const Poly& p, const Complex& z, const PrecisionContext& ctx) {
  Complex acc(ctx.bits());
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * z + Complex(ctx.real(it->str()));
  return acc;
}

// All complex roots of a squarefree polynomial. Real roots come first in
// ascending order, then each upper-half-plane root immediately followed by
// its exact conjugate.
inline std::vector<Complex> roots_hp(const Poly& p, const PrecisionContext& ctx) {
  if (p.degree() < 1) throw OutOfRange("roots_hp needs degree >= 1");
  if (!is_squarefree(p)) throw NotSquarefree(p.to_string() + " has a repeated factor");
  const int n = p.degree();
  std::vector<Complex> coeffs;
  for (const auto& a : p.coeffs()) coeffs.emplace_back(ctx.real(a.str()));

  std::vector<Complex> z;
  if (n == 1) {
    z.push_back(Complex(-coeffs[0].re / coeffs[1].re));
  } else {
    auto seeds = detail::aberth_seeds(p);
    if (seeds.empty()) {
      for (int k = 0; k < n; ++k)
        z.push_back(Complex::polar(
            ctx.real(1), Real::pi(ctx.bits()) * (2L * k) / static_cast<long>(n) + ctx.real("0.4")));
    } else {
      for (const auto& s : seeds) z.emplace_back(ctx.from_double(s.real()), ctx.from_double(s.imag()));
    }
    const Real tol = ctx.pow10(-(ctx.digits() + 2));
    const Complex zero(ctx.bits());
    const Complex one(ctx.real(1));
    bool done = false;
    for (int it = 0; it < 400 && !done; ++it) {
      Real rel = detail::aberth_sweep<Complex, Real>(coeffs, z, zero, one);
      if (rel < tol) {
        // One confirming sweep at converged accuracy.
        detail::aberth_sweep<Complex, Real>(coeffs, z, zero, one);
        done = true;
      }
    }
    if (!done) throw NoConvergence("root iteration did not converge for " + p.to_string());
  }

  // Classify and make conjugate pairs exact.
  const Real real_tol = ctx.pow10(-(ctx.digits() - 2));
  std::vector<Real> reals;
  std::vector<Complex> upper;
  int lower = 0;
  for (auto& r : z) {
    Real scale = max(ctx.real(1), abs(r));
    if (abs(r.im) <= real_tol * scale) {
      reals.push_back(r.re);
    } else if (r.im > 0) {
      upper.push_back(r);
    } else {
      ++lower;
    }
  }
  if (lower != static_cast<int>(upper.size()))
    throw NoConvergence("roots of " + p.to_string() + " do not pair into conjugates");
  // Real roots: a few real Newton steps after dropping the imaginary part.
  std::vector<BigInt> dc = p.derivative().coeffs();
  for (auto& x : reals) {
    for (int it = 0; it < 3; ++it) {
      Real f = ctx.real(0), df = ctx.real(0);
      for (auto a = p.coeffs().rbegin(); a != p.coeffs().rend(); ++a) f = f * x + ctx.real(a->str());
      for (auto a = dc.rbegin(); a != dc.rend(); ++a) df = df * x + ctx.real(a->str());
      if (df.is_zero()) break;
      x -= f / df;
    }
  }
  std::sort(reals.begin(), reals.end());
  std::sort(upper.begin(), upper.end(), [](const Complex& a, const Complex& b) {
    int c = cmp(a.re, b.re);
    return c != 0 ? c < 0 : a.im < b.im;
  });
  std::vector<Complex> out;
  for (auto& x : reals) out.emplace_back(x);
  for (auto& u : upper) {
    out.push_back(u);
    out.push_back(conj(u));
  }

  const Real l1 = coefficient_l1(p, ctx);
  for (const auto& r : out) {
    Real bound = l1 * pow(max(ctx.real(1), abs(r)), static_cast<long>(n)) * ctx.pow10(-(ctx.digits() - 5));
    if (abs(poly_eval(p, r, ctx)) >= bound)
      throw NoConvergence("root residual too large for " + p.to_string());
  }
  return out;
}

}  // namespace faltings
