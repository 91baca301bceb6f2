#pragma once

// Modular discriminant, j, the non-holomorphic E2 and V(tau) on the upper
// half-plane, together with reduction to the fundamental domain and the
// inverse of j.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "faltings/errors.hpp"
#include "faltings/numctx.hpp"

namespace faltings {

struct UHPoint {
  Real x;
  Real y;
};

// Integer matrix [[a, b], [c, d]] acting by tau -> (a tau + b) / (c tau + d).
struct Mat2 {
  long a = 1, b = 0, c = 0, d = 1;

  long det() const { return a * d - b * c; }
  friend bool operator==(const Mat2&, const Mat2&) = default;
  // this * o
  Mat2 operator*(const Mat2& o) const {
    auto mul = [](long u, long v) {
      long r;
      if (__builtin_mul_overflow(u, v, &r)) throw PrecisionExhausted("SL2(Z) matrix entries overflow");
      return r;
    };
    auto add = [](long u, long v) {
      long r;
      if (__builtin_add_overflow(u, v, &r)) throw PrecisionExhausted("SL2(Z) matrix entries overflow");
      return r;
    };
    return {add(mul(a, o.a), mul(b, o.c)), add(mul(a, o.b), mul(b, o.d)),
            add(mul(c, o.a), mul(d, o.c)), add(mul(c, o.b), mul(d, o.d))};
  }
  static Mat2 translate(long n) { return {1, n, 0, 1}; }
  static Mat2 invert() { return {0, -1, 1, 0}; }
};

inline UHPoint act(const Mat2& m, const UHPoint& t) {
  Complex tau{t.x, t.y};
  Complex num = tau * m.a + Complex(Real(m.b, t.x.precision()));
  Complex den = tau * m.c + Complex(Real(m.d, t.x.precision()));
  Complex r = num / den;
  return {r.re, r.im};
}

// A point of the closed fundamental domain in canonical position, with the
// SL2(Z) element that carried the input there.
struct FDPoint {
  UHPoint point;
  Mat2 reduced_by;
};

namespace detail {

inline Complex q_of(const UHPoint& t) {
  Real two_pi = Real::pi(t.x.precision()) * 2L;
  return Complex::polar(exp(-two_pi * t.y), two_pi * t.x);
}

// Truncation order making the tail of a q-series at height y smaller than
// 10^-(digits+guard); never below the context's own setting.
inline int terms_for(const Real& y, const PrecisionContext& ctx) {
  double yd = std::max(y.to_double(), 1e-300);
  double need = (ctx.digits() + ctx.guard_digits()) * std::log(10.0) / (2.0 * M_PI * yd) + 5.0;
  if (!(need < 1e7)) throw PrecisionExhausted("Im tau too small for a convergent q-series");
  return std::max(ctx.series_terms(), static_cast<int>(std::ceil(need)));
}

// Holomorphic q-series data at a point: Lambert sums sum n^k q^n/(1-q^n)
// for k = 1, 3, 5 and the normalized discriminant q prod (1-q^n)^24.
struct QData {
  Complex q;
  Complex s1, s3, s5;
  Complex delta;  // q prod (1 - q^n)^24, without (2 pi)^12
};

inline QData q_data(const UHPoint& t, int terms) {
  const mpfr_prec_t bits = t.x.precision();
  QData d{q_of(t), Complex(bits), Complex(bits), Complex(bits), Complex(bits)};
  Complex qn = d.q;
  Complex prod(Real(1L, bits));
  for (long n = 1; n <= terms; ++n) {
    Complex one_minus = 1L - qn;
    Complex ratio = qn / one_minus;
    d.s1 += ratio * n;
    d.s3 += ratio * (n * n * n);
    d.s5 += ratio * (n * n * n * n * n);
    prod *= one_minus;
    qn *= d.q;
  }
  Complex p2 = prod * prod;
  Complex p4 = p2 * p2;
  Complex p8 = p4 * p4;
  d.delta = d.q * (p8 * p8 * p8);
  return d;
}

inline Complex e4_of(const QData& d) { return d.s3 * 240L + 1L; }
inline Complex e6_of(const QData& d) { return 1L - d.s5 * 504L; }

}  // namespace detail

inline Real two_pi(const PrecisionContext& ctx) { return const_pi(ctx) * 2L; }

inline UHPoint rho_point(const PrecisionContext& ctx) {
  return {ctx.real("-0.5"), sqrt(ctx.real(3)) / 2L};
}

// Reduce tau into the closed fundamental domain, canonical representative:
// x in [-1/2, 1/2) and, on the unit arc, x <= 0.
inline FDPoint reduce_fd(const UHPoint& tau, const PrecisionContext& ctx) {
  if (!(tau.y > 0)) throw OutOfRange("reduce_fd needs Im tau > 0");
  if (tau.y < ctx.pow10(-ctx.digits() / 2))
    throw PrecisionExhausted("Im tau = " + tau.y.str(6) + " is too close to the real axis for " +
                             std::to_string(ctx.digits()) + " digits");
  const Real tol = ctx.fd_tol();
  const Real half = ctx.real("0.5");
  Real x = tau.x.at_precision(ctx.bits());
  Real y = tau.y.at_precision(ctx.bits());
  Mat2 m;
  for (int iter = 0;; ++iter) {
    if (iter > 10000) throw PrecisionExhausted("fundamental-domain reduction did not terminate");
    Real shift = floor(x + half);
    if (!shift.is_zero()) {
      long n = shift.to_long_floor();
      x -= shift;
      m = Mat2::translate(-n) * m;
    }
    Real r2 = sqr(x) + sqr(y);
    if (r2 < 1L - tol) {
      x = -x / r2;
      y = y / r2;
      m = Mat2::invert() * m;
      continue;
    }
    // Canonical boundary representatives.
    if (abs(r2 - 1L) <= tol && x > tol) {
      x = -x / r2;
      y = y / r2;
      m = Mat2::invert() * m;
    }
    if (x >= half - tol) {
      x -= 1L;
      m = Mat2::translate(-1) * m;
    }
    return {{std::move(x), std::move(y)}, m};
  }
}

// log |Delta(tau)| by the product formula with an explicit truncation order;
// valid anywhere in the upper half-plane when `terms` is large enough.
inline Real log_abs_delta_series(const UHPoint& t, int terms) {
  const Real pi = Real::pi(t.x.precision());
  const Real r = exp(-pi * t.y * 2L);
  const Real theta = pi * t.x * 2L;
  Real sum(t.x.precision());
  Real rn = r;
  for (long n = 1; n <= terms; ++n) {
    // |1 - q^n|^2 = 1 - 2 r^n cos(n theta) + r^{2n}
    Real w = sqr(rn) - rn * cos(theta * n) * 2L;
    sum += log1p(w);
    rn *= r;
  }
  return log(pi * 2L) * 12L - pi * t.y * 2L + sum * 12L;
}

inline Real log_abs_delta(const FDPoint& tau, const PrecisionContext& ctx) {
  return log_abs_delta_series(tau.point, ctx.series_terms());
}

// log |Delta| at an arbitrary point, without reduction.
inline Real log_abs_delta_at(const UHPoint& tau, const PrecisionContext& ctx) {
  return log_abs_delta_series(tau, detail::terms_for(tau.y, ctx));
}

namespace detail {
// j and dj/dtau at a reduced point; dj/dtau = -2 pi i E4^2 E6 / Delta.
struct JValue {
  Complex j;
  Complex dj;
};
inline JValue j_with_derivative(const UHPoint& reduced, const PrecisionContext& ctx) {
  QData d = q_data(reduced, ctx.series_terms());
  Complex e4 = e4_of(d);
  Complex e4sq = e4 * e4;
  Complex j = e4sq * e4 / d.delta;
  Complex t = e4sq * e6_of(d) / d.delta;
  Real tp = two_pi(ctx);
  // -2 pi i * t
  Complex dj{t.im * tp, -(t.re * tp)};
  return {std::move(j), std::move(dj)};
}
}  // namespace detail

inline Complex j_eval(const UHPoint& tau, const PrecisionContext& ctx) {
  FDPoint r = reduce_fd(tau, ctx);
  detail::QData d = detail::q_data(r.point, ctx.series_terms());
  Complex e4 = detail::e4_of(d);
  return e4 * e4 * e4 / d.delta;
}

// Non-holomorphic E2(x, y) = 1 - 24 sum n q^n/(1-q^n) - 3/(pi y). Not
// SL2(Z)-invariant, so no reduction happens here.
inline Complex e2_eval(const UHPoint& tau, const PrecisionContext& ctx) {
  if (tau.y < ctx.real("0.5")) throw DomainTooLow("e2_eval needs Im tau >= 1/2, got " + tau.y.str(8));
  UHPoint t{tau.x.at_precision(ctx.bits()), tau.y.at_precision(ctx.bits())};
  detail::QData d = detail::q_data(t, detail::terms_for(t.y, ctx));
  Complex e2 = 1L - d.s1 * 24L;
  e2.re -= ctx.real(3) / (const_pi(ctx) * t.y);
  return e2;
}

// V(tau) = -(1/12) log(|Delta(tau)| Im(tau)^6), evaluated at the reduced point.
inline Real v_at_reduced(const FDPoint& r, const PrecisionContext& ctx) {
  return -(log_abs_delta(r, ctx) + log(r.point.y) * 6L) / 12L;
}

inline Real v_eval(const UHPoint& tau, const PrecisionContext& ctx) {
  return v_at_reduced(reduce_fd(tau, ctx), ctx);
}

namespace detail {

// j(tau) ~ c (tau - rho)^3 near rho with c = E4'(rho)^3 / Delta(rho) and
// E4'(rho) = -(2 pi i / 3) E6(rho).
inline Complex rho_cube_coefficient(const PrecisionContext& ctx) {
  QData d = q_data(rho_point(ctx), ctx.series_terms());
  Complex e6 = e6_of(d);
  Real k = two_pi(ctx) / 3L;
  Complex e4p{e6.im * k, -(e6.re * k)};
  return e4p * e4p * e4p / d.delta;
}

// j(tau) - 1728 ~ s (tau - i)^2 near i with s = -pi^2 E4(i)^4 / Delta(i).
inline Complex i_square_coefficient(const PrecisionContext& ctx) {
  QData d = q_data({ctx.real(0), ctx.real(1)}, ctx.series_terms());
  Complex e4 = e4_of(d);
  Complex e4sq = e4 * e4;
  return -(e4sq * e4sq / d.delta) * sqr(const_pi(ctx));
}

struct SeedEntry {
  double x, y, jre, jim;
};

// 64 points of the fundamental domain with their j-values, computed once at
// low precision. Seeds for Newton when |j| is moderate.
inline const std::vector<SeedEntry>& seed_table() {
  static const std::vector<SeedEntry> table = [] {
    PrecisionContext low(15, 2);
    std::vector<SeedEntry> out;
    for (int i = 0; i < 8; ++i) {
      double x = -0.5 + (i + 0.5) / 8.0;
      double arc = std::sqrt(1.0 - x * x);
      for (int k = 0; k < 8; ++k) {
        double y = arc + (k + 0.5) / 8.0 * (1.45 - arc);
        Complex j = j_eval({low.from_double(x), low.from_double(y)}, low);
        out.push_back({x, y, j.re.to_double(), j.im.to_double()});
      }
    }
    return out;
  }();
  return table;
}

inline bool newton_j(UHPoint tau, const Complex& target, const PrecisionContext& ctx, FDPoint& out) {
  const Real step_tol = ctx.pow10(-(ctx.digits() + 2));
  const Real max_step = ctx.real("0.25");
  const Real scale = max(ctx.real(1), abs(target));
  int converged_steps = 0;
  for (int it = 0; it < 80; ++it) {
    FDPoint r = reduce_fd(tau, ctx);
    JValue jv = j_with_derivative(r.point, ctx);
    Complex f = jv.j - target;
    if (jv.dj.re.is_zero() && jv.dj.im.is_zero()) return false;
    Complex step = f / jv.dj;
    Real len = abs(step);
    if (!len.is_finite()) return false;
    if (len > max_step) step = step * (max_step / len);
    UHPoint next{r.point.x - step.re, r.point.y - step.im};
    // Stay inside the half-plane.
    for (int halve = 0; !(next.y > r.point.y / 4L); ++halve) {
      if (halve > 60) return false;
      step = step / ctx.real(2);
      next = {r.point.x - step.re, r.point.y - step.im};
    }
    tau = std::move(next);
    if (len <= step_tol) {
      // One further step after the size test to land on full precision.
      if (++converged_steps >= 2) {
        FDPoint fin = reduce_fd(tau, ctx);
        Complex res = j_with_derivative(fin.point, ctx).j - target;
        if (abs(res) < scale * ctx.pow10(-(ctx.digits() - 3))) {
          out = std::move(fin);
          return true;
        }
        return false;
      }
    }
  }
  return false;
}

inline std::vector<UHPoint> inverse_j_seeds(const Complex& target, const PrecisionContext& ctx) {
  std::vector<UHPoint> seeds;
  const Real mod = abs(target);
  if (mod > 3500L) {
    // j = 1/q + 744 + O(q)
    Complex q = Complex(ctx.real(1)) / (target - 744L);
    Complex lq = log(q);
    Real tp = two_pi(ctx);
    seeds.push_back({lq.im / tp, -lq.re / tp});
  }
  if (mod < 60L) {
    Complex c = rho_cube_coefficient(ctx);
    Complex root = cbrt(target / c);
    UHPoint rho = rho_point(ctx);
    Complex w = Complex::polar(ctx.real(1), two_pi(ctx) / 3L);
    for (int k = 0; k < 3; ++k) {
      if (root.im > -rho.y / 2L) seeds.push_back({rho.x + root.re, rho.y + root.im});
      root = root * w;
    }
  }
  Complex off = target - 1728L;
  if (abs(off) < 150L) {
    Complex s = i_square_coefficient(ctx);
    Complex root = sqrt(off / s);
    seeds.push_back({root.re, ctx.real(1) + root.im});
    seeds.push_back({-root.re, ctx.real(1) - root.im});
  }
  const auto& table = seed_table();
  std::vector<std::pair<double, std::size_t>> order;
  double tr = target.re.to_double(), ti = target.im.to_double();
  for (std::size_t k = 0; k < table.size(); ++k)
    order.emplace_back(std::hypot(table[k].jre - tr, table[k].jim - ti), k);
  std::sort(order.begin(), order.end());
  for (std::size_t k = 0; k < std::min<std::size_t>(4, order.size()); ++k) {
    const auto& e = table[order[k].second];
    seeds.push_back({ctx.from_double(e.x), ctx.from_double(e.y)});
  }
  return seeds;
}

}  // namespace detail

// A tau in the canonical fundamental domain with j(tau) = j.
inline FDPoint inverse_j(const Complex& j, const PrecisionContext& ctx) {
  if (j.re.is_zero() && j.im.is_zero()) return {rho_point(ctx), Mat2{}};
  if (cmp(j.re, 1728L) == 0 && j.im.is_zero()) return {{ctx.real(0), ctx.real(1)}, Mat2{}};
  for (const PrecisionContext& attempt : {ctx, ctx.with_digits(2 * ctx.digits())}) {
    Complex target{j.re.at_precision(attempt.bits()), j.im.at_precision(attempt.bits())};
    for (const UHPoint& seed : detail::inverse_j_seeds(target, attempt)) {
      FDPoint out;
      if (detail::newton_j(seed, target, attempt, out)) {
        return {{out.point.x.at_precision(ctx.bits()), out.point.y.at_precision(ctx.bits())},
                out.reduced_by};
      }
    }
  }
  throw NoConvergence("inverse_j did not converge for j = " + j.re.str(12) + " + " + j.im.str(12) + "i");
}

}  // namespace faltings
