#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "faltings/errors.hpp"
#include "faltings/real.hpp"

namespace faltings {

// Working precision and the derived tolerances. Immutable once built; every
// numeric operation takes one explicitly.
class PrecisionContext {
 public:
  explicit PrecisionContext(int digits, int guard_digits = 10,
                            std::optional<int> series_terms = std::nullopt)
      : digits_(digits), guard_(guard_digits) {
    if (digits < 15) throw InvalidContext("digits must be >= 15, got " + std::to_string(digits));
    if (guard_digits < 2) throw InvalidContext("guard_digits must be >= 2");
    if (series_terms && *series_terms < 1) throw InvalidContext("series_terms must be positive");
    // |q| <= exp(-pi*sqrt(3)) on the closed fundamental domain.
    terms_ = series_terms ? *series_terms
                          : static_cast<int>(std::ceil((digits_ + guard_) * std::log(10.0) /
                                                       (M_PI * std::sqrt(3.0)))) + 5;
    bits_ = static_cast<mpfr_prec_t>(std::ceil((digits_ + guard_) * 3.3219280948873623)) + 8;
  }

  int digits() const { return digits_; }
  int guard_digits() const { return guard_; }
  int series_terms() const { return terms_; }
  mpfr_prec_t bits() const { return bits_; }

  // Same context with a different number of digits (and auto series terms).
  PrecisionContext with_digits(int digits) const { return PrecisionContext(digits, guard_); }

  Real real(long v) const { return Real(v, bits_); }
  Real real(std::string_view decimal) const { return Real(decimal, bits_); }
  Real from_double(double v) const { return Real(v, bits_); }
  Complex complex(long re, long im = 0) const { return {real(re), real(im)}; }
  Real pow10(long e) const { return pow(real(10), e); }

  Real fd_tol() const { return pow10(-(digits_ - 5)); }
  Real newton_tol() const { return pow10(-(digits_ - 3)); }

 private:
  int digits_;
  int guard_;
  int terms_;
  mpfr_prec_t bits_;
};

inline Real const_pi(const PrecisionContext& ctx) { return Real::pi(ctx.bits()); }

// Arithmetic-geometric mean; quadratic convergence, stops once the two
// means agree to the working precision.
inline Real agm(Real a, Real b) {
  const mpfr_prec_t bits = std::max(a.precision(), b.precision());
  for (int i = 0; i < 200; ++i) {
    Real next_a = (a + b) / 2L;
    Real next_b = sqrt(a * b);
    a = std::move(next_a);
    b = std::move(next_b);
    Real diff = abs(a - b);
    if (diff.is_zero() || diff.exponent2() < a.exponent2() - static_cast<long>(bits) + 2) break;
  }
  return (a + b) / 2L;
}

// Gamma at num/den for den in {2,3,4}. Uses the elliptic-integral closed
// forms through the AGM, whose error after convergence is a few ulps at the
// internal precision (digits + guard), far below 10^-digits:
//   Gamma(1/4)^2 = (2 pi)^(3/2) / AGM(1, sqrt 2)
//   Gamma(1/3)^3 = 2^(4/3) pi^2 / (3^(1/4) AGM(1, cos(pi/12)))
// and the reflection formula for 2/3 and 3/4.
inline Real gamma_rat(long num, long den, const PrecisionContext& ctx) {
  if (!(num > 0 && num < den) || !(den == 2 || den == 3 || den == 4) || (den == 4 && num == 2))
    throw UnsupportedArgument("gamma_rat supports 1/2, 1/3, 2/3, 1/4, 3/4; got " +
                              std::to_string(num) + "/" + std::to_string(den));
  const Real pi = const_pi(ctx);
  if (den == 2) return sqrt(pi);
  if (den == 4) {
    Real g14 = sqrt(pow(pi * 2L, ctx.real(3) / 2L) / agm(ctx.real(1), sqrt(ctx.real(2))));
    if (num == 1) return g14;
    return pi * sqrt(ctx.real(2)) / g14;
  }
  Real sqrt3 = sqrt(ctx.real(3));
  Real cos15 = (sqrt(ctx.real(6)) + sqrt(ctx.real(2))) / 4L;
  Real cube = pow(ctx.real(2), ctx.real(4) / 3L) * sqr(pi) /
              (pow(ctx.real(3), ctx.real(1) / 4L) * agm(ctx.real(1), cos15));
  Real g13 = cbrt(cube);
  if (num == 1) return g13;
  return pi * 2L / (sqrt3 * g13);
}

// -q(rho) = exp(-pi sqrt 3).
inline Real q_rho(const PrecisionContext& ctx) { return exp(-const_pi(ctx) * sqrt(ctx.real(3))); }

}  // namespace faltings
