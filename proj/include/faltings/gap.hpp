#pragma once

// Explicit gap above h_min for semistable curves:
//   eps(P) = exp(-37.84 / P)           (conjugates of j this small force h(j) >= 37.84)
//   delta  = 0.027 eps^(1/3)           (radius around rho where |j| <= eps)
//   delta' = (1/2) delta sqrt(1 - delta^2/4) - (sqrt 3/4) delta^2
//   gap(P) = (1 - P) C(delta')
// and the constant is min(0.0007, max_P gap(P)).

#include <cmath>
#include <vector>

#include "faltings/errors.hpp"
#include "faltings/numctx.hpp"

namespace faltings {

struct GapResult {
  Real p_star;
  Real eps;
  Real delta;
  Real delta_prime;
  Real c_value;
  Real gap;
  Real final_gap;
  int digits_used;
};

inline Real eps_of_p(const Real& p, const PrecisionContext& ctx) {
  if (!(p > 0L && p < 1L)) throw OutOfRange("P must lie in (0, 1), got " + p.str(12));
  return exp(-ctx.real("37.84") / p.at_precision(ctx.bits()));
}

inline Real delta_of_eps(const Real& eps, const PrecisionContext& ctx) {
  if (eps < 0L || eps > ctx.real("5.08e-5"))
    throw OutOfRange("eps must lie in [0, 5.08e-5], got " + eps.str(12));
  return ctx.real("0.027") * cbrt(eps.at_precision(ctx.bits()));
}

inline Real delta_prime(const Real& delta, const PrecisionContext& ctx) {
  if (delta < 0L || delta >= ctx.real("0.5")) throw OutOfRange("delta must lie in [0, 1/2), got " + delta.str(12));
  Real d = delta.at_precision(ctx.bits());
  Real d2 = sqr(d);
  return d / 2L * sqrt(1L - d2 / 4L) - sqrt(ctx.real(3)) / 4L * d2;
}

// The lower bound C(delta') for V(tau) - V(rho) outside B_delta. With
// q = exp(-pi sqrt 3) and t = exp(-2 pi delta'):
//   (pi/6) d' - (1/2) log(1 + 2 d'/sqrt 3) + 2q(1 - t)/(1 + q)
//   + 2q^3(1 - t^3)/(1 + q^3) + 2/((1-q^2)(1-q^2 t^2)) - 2/(1-q^2)^2
// The last pair is evaluated as the single fraction
//   -2 q^2 (1 - t^2) / ((1-q^2)^2 (1 - q^2 t^2)).
// C is O(d'^2) built from O(d') terms, so about log10(1/d') digits cancel
// twice; the context must cover that.
inline Real c_of_delta_prime(const Real& dp, const PrecisionContext& ctx) {
  if (dp < 0L) throw OutOfRange("delta' must be non-negative");
  if (dp.is_zero()) return ctx.real(0);
  const double lost = -std::log10(dp.to_double());
  if (ctx.digits() < 2 * lost + 15)
    throw InsufficientPrecision("C(delta') at delta' = " + dp.str(6) + " needs at least " +
                                std::to_string(static_cast<int>(std::ceil(2 * lost + 15))) + " digits");
  const Real d = dp.at_precision(ctx.bits());
  const Real pi = const_pi(ctx);
  const Real q = q_rho(ctx);
  const Real q2 = sqr(q);
  const Real q3 = q2 * q;
  // 1 - t^k = -expm1(-2 pi k d')
  const Real one_minus_t = -expm1(-pi * d * 2L);
  const Real one_minus_t2 = -expm1(-pi * d * 4L);
  const Real one_minus_t3 = -expm1(-pi * d * 6L);
  const Real t2 = 1L - one_minus_t2;

  Real c = pi / 6L * d;
  c -= log1p(d * 2L / sqrt(ctx.real(3))) / 2L;
  c += q * 2L * one_minus_t / (1L + q);
  c += q3 * 2L * one_minus_t3 / (1L + q3);
  c -= q2 * 2L * one_minus_t2 / (sqr(1L - q2) * (1L - q2 * t2));
  return c;
}

inline Real gap_fn(const Real& p, const PrecisionContext& ctx) {
  Real dp = delta_prime(delta_of_eps(eps_of_p(p, ctx), ctx), ctx);
  return (1L - p.at_precision(ctx.bits())) * c_of_delta_prime(dp, ctx);
}

inline GapResult gap_at(const Real& p, const PrecisionContext& ctx) {
  Real pp = p.at_precision(ctx.bits());
  Real eps = eps_of_p(pp, ctx);
  Real delta = delta_of_eps(eps, ctx);
  Real dp = delta_prime(delta, ctx);
  Real c = c_of_delta_prime(dp, ctx);
  Real gap = (1L - pp) * c;
  const Real cap = ctx.real("0.0007");
  Real final_gap = gap < cap ? gap : cap;
  return {std::move(pp), std::move(eps), std::move(delta), std::move(dp),
          std::move(c), std::move(gap), std::move(final_gap), ctx.digits()};
}

// Coarse uniform scan of 2048 points on [p_lo, p_hi], then golden-section
// refinement of the best bracket down to tol_p.
inline GapResult maximize_gap(const PrecisionContext& ctx, const Real& p_lo, const Real& p_hi, const Real& tol_p) {
  if (!(p_lo > 0L && p_hi < 1L && p_lo < p_hi))
    throw OutOfRange("need 0 < p_lo < p_hi < 1");
  const Real lo = p_lo.at_precision(ctx.bits());
  const Real hi = p_hi.at_precision(ctx.bits());
  if (hi - lo <= tol_p) return gap_at((lo + hi) / 2L, ctx);

  constexpr long kScan = 2048;
  std::vector<Real> values;
  values.reserve(kScan);
  const Real h = (hi - lo) / (kScan - 1);
  std::size_t best = 0;
  for (long k = 0; k < kScan; ++k) {
    values.push_back(gap_fn(lo + h * k, ctx));
    if (values.back() > values[best]) best = static_cast<std::size_t>(k);
  }
  // Separated local maxima comparable to the best one mean the scan cannot
  // be trusted to have found the global maximum.
  const Real threshold = values[best] * ctx.real("0.9");
  if (values[best] > 0L) {
    for (std::size_t k = 1; k + 1 < values.size(); ++k) {
      bool local_max = values[k] >= values[k - 1] && values[k] >= values[k + 1];
      std::size_t dist = k > best ? k - best : best - k;
      if (local_max && dist > 2 && values[k] > threshold)
        throw NotUnimodal("gap function has a second local maximum near P = " + (lo + h * static_cast<long>(k)).str(8));
    }
  }

  Real a = best == 0 ? lo : lo + h * static_cast<long>(best - 1);
  Real b = best + 1 == values.size() ? hi : lo + h * static_cast<long>(best + 1);
  const Real inv_phi = (sqrt(ctx.real(5)) - 1L) / 2L;
  Real c = b - (b - a) * inv_phi;
  Real d = a + (b - a) * inv_phi;
  Real fc = gap_fn(c, ctx), fd = gap_fn(d, ctx);
  for (int it = 0; it < 200 && b - a > tol_p; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - (b - a) * inv_phi;
      fc = gap_fn(c, ctx);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + (b - a) * inv_phi;
      fd = gap_fn(d, ctx);
    }
  }
  GapResult r = gap_at((a + b) / 2L, ctx);
  // Never report worse than the best scanned point.
  if (values[best] > r.gap) r = gap_at(lo + h * static_cast<long>(best), ctx);
  return r;
}

inline GapResult maximize_gap(const PrecisionContext& ctx) {
  return maximize_gap(ctx, ctx.real("0.5"), ctx.real("0.9999"), ctx.real("1e-6"));
}

}  // namespace faltings
