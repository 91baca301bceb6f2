#pragma once

// Thin RAII value types over MPFR. Every value carries its own precision;
// binary operations produce a result at the larger of the two operand
// precisions, so precision flows from the PrecisionContext that created the
// inputs and no process-wide default is ever consulted.

#include <mpfr.h>

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace faltings {

class Real {
 public:
  explicit Real(mpfr_prec_t bits = 64) {
    mpfr_init2(v_, bits);
    mpfr_set_zero(v_, 1);
  }
  Real(long value, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_si(v_, value, MPFR_RNDN);
  }
  Real(double value, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_d(v_, value, MPFR_RNDN);
  }
  // Exact decimal literal, e.g. "37.84", rounded once to `bits`.
  Real(std::string_view decimal, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    std::string s(decimal);
    if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0) {
      mpfr_clear(v_);
      throw std::invalid_argument("not a decimal number: " + s);
    }
  }

  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    // Steal the limbs; leave `o` as a valid zero of minimal precision.
    *v_ = *o.v_;
    mpfr_init2(o.v_, MPFR_PREC_MIN);
    mpfr_set_zero(o.v_, 1);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  // Same value rounded to a different precision.
  Real at_precision(mpfr_prec_t bits) const {
    Real r(bits);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  static Real pi(mpfr_prec_t bits) {
    Real r(bits);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long_floor() const { return mpfr_get_si(v_, MPFR_RNDD); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  // Binary exponent e with value = m * 2^e, 0.5 <= |m| < 1; very negative for 0.
  long exponent2() const {
    return is_zero() ? -(1L << 40) : static_cast<long>(mpfr_get_exp(v_));
  }

  // Decimal text with `significant` digits (general notation).
  std::string str(int significant) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", significant, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }
  // Fixed notation with `decimals` digits after the point.
  std::string fixed(int decimals) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rf", decimals, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }

  Real& operator+=(const Real& o) { return assign2(mpfr_add, o); }
  Real& operator-=(const Real& o) { return assign2(mpfr_sub, o); }
  Real& operator*=(const Real& o) { return assign2(mpfr_mul, o); }
  Real& operator/=(const Real& o) { return assign2(mpfr_div, o); }
  Real& operator+=(long o) { mpfr_add_si(v_, v_, o, MPFR_RNDN); return *this; }
  Real& operator-=(long o) { mpfr_sub_si(v_, v_, o, MPFR_RNDN); return *this; }
  Real& operator*=(long o) { mpfr_mul_si(v_, v_, o, MPFR_RNDN); return *this; }
  Real& operator/=(long o) { mpfr_div_si(v_, v_, o, MPFR_RNDN); return *this; }

  friend Real operator-(const Real& a) {
    Real r(a.precision());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

#define FALTINGS_REAL_BINOP(op, fn, fn_si, fn_si_rev)                  \
  friend Real operator op(const Real& a, const Real& b) {              \
    Real r(std::max(a.precision(), b.precision()));                    \
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);                                   \
    return r;                                                          \
  }                                                                    \
  friend Real operator op(Real&& a, const Real& b) {                   \
    if (a.precision() >= b.precision()) {                              \
      fn(a.v_, a.v_, b.v_, MPFR_RNDN);                                 \
      return std::move(a);                                             \
    }                                                                  \
    return static_cast<const Real&>(a) op b;                           \
  }                                                                    \
  friend Real operator op(const Real& a, long b) {                     \
    Real r(a.precision());                                             \
    fn_si(r.v_, a.v_, b, MPFR_RNDN);                                   \
    return r;                                                          \
  }                                                                    \
  friend Real operator op(long a, const Real& b) {                     \
    Real r(b.precision());                                             \
    fn_si_rev(r.v_, a, b.v_, MPFR_RNDN);                               \
    return r;                                                          \
  }

  FALTINGS_REAL_BINOP(+, mpfr_add, mpfr_add_si, rev_add)
  FALTINGS_REAL_BINOP(-, mpfr_sub, mpfr_sub_si, mpfr_si_sub)
  FALTINGS_REAL_BINOP(*, mpfr_mul, mpfr_mul_si, rev_mul)
  FALTINGS_REAL_BINOP(/, mpfr_div, mpfr_div_si, mpfr_si_div)
#undef FALTINGS_REAL_BINOP

  friend int cmp(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_); }
  friend int cmp(const Real& a, long b) { return mpfr_cmp_si(a.v_, b); }
  friend bool operator<(const Real& a, const Real& b) { return cmp(a, b) < 0; }
  friend bool operator>(const Real& a, const Real& b) { return cmp(a, b) > 0; }
  friend bool operator<=(const Real& a, const Real& b) { return cmp(a, b) <= 0; }
  friend bool operator>=(const Real& a, const Real& b) { return cmp(a, b) >= 0; }
  friend bool operator==(const Real& a, const Real& b) { return cmp(a, b) == 0; }
  friend bool operator<(const Real& a, long b) { return cmp(a, b) < 0; }
  friend bool operator>(const Real& a, long b) { return cmp(a, b) > 0; }
  friend bool operator<=(const Real& a, long b) { return cmp(a, b) <= 0; }
  friend bool operator>=(const Real& a, long b) { return cmp(a, b) >= 0; }

  friend std::ostream& operator<<(std::ostream& os, const Real& x) {
    return os << x.str(static_cast<int>(x.precision() * 0.30103));
  }

  using Unary = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);
  Real apply(Unary fn) const {
    Real r(precision());
    fn(r.v_, v_, MPFR_RNDN);
    return r;
  }

 private:
  static int rev_add(mpfr_ptr r, long a, mpfr_srcptr b, mpfr_rnd_t rnd) {
    return mpfr_add_si(r, b, a, rnd);
  }
  static int rev_mul(mpfr_ptr r, long a, mpfr_srcptr b, mpfr_rnd_t rnd) {
    return mpfr_mul_si(r, b, a, rnd);
  }
  using Binary = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
  Real& assign2(Binary fn, const Real& o) {
    if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
    fn(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }

  mpfr_t v_;
};

inline Real abs(const Real& x) { return x.apply(mpfr_abs); }
inline Real sqrt(const Real& x) { return x.apply(mpfr_sqrt); }
inline Real cbrt(const Real& x) { return x.apply(mpfr_cbrt); }
inline Real exp(const Real& x) { return x.apply(mpfr_exp); }
inline Real expm1(const Real& x) { return x.apply(mpfr_expm1); }
inline Real log(const Real& x) { return x.apply(mpfr_log); }
inline Real log1p(const Real& x) { return x.apply(mpfr_log1p); }
inline Real log10(const Real& x) { return x.apply(mpfr_log10); }
inline Real sin(const Real& x) { return x.apply(mpfr_sin); }
inline Real cos(const Real& x) { return x.apply(mpfr_cos); }
inline Real sqr(const Real& x) { return x.apply(mpfr_sqr); }
inline Real floor(const Real& x) {
  Real r(x.precision());
  mpfr_floor(r.raw(), x.raw());
  return r;
}
inline Real atan2(const Real& y, const Real& x) {
  Real r(std::max(x.precision(), y.precision()));
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}
inline Real hypot(const Real& x, const Real& y) {
  Real r(std::max(x.precision(), y.precision()));
  mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}
inline Real pow(const Real& x, const Real& y) {
  Real r(std::max(x.precision(), y.precision()));
  mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}
inline Real pow(const Real& x, long n) {
  Real r(x.precision());
  mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN);
  return r;
}
// 2^k * x, exact.
inline Real ldexp(const Real& x, long k) {
  Real r(x.precision());
  mpfr_mul_2si(r.raw(), x.raw(), k, MPFR_RNDN);
  return r;
}
inline const Real& max(const Real& a, const Real& b) { return a < b ? b : a; }
inline const Real& min(const Real& a, const Real& b) { return b < a ? b : a; }

// Complex number over Real. std::complex<Real> is unspecified for
// non-fundamental types, so the handful of operations needed live here.
struct Complex {
  Real re;
  Real im;

  explicit Complex(mpfr_prec_t bits = 64) : re(bits), im(bits) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  explicit Complex(Real r) : re(std::move(r)), im(0L, re.precision()) {}

  mpfr_prec_t precision() const { return std::max(re.precision(), im.precision()); }

  static Complex polar(const Real& modulus, const Real& angle) {
    Real s(angle.precision()), c(angle.precision());
    mpfr_sin_cos(s.raw(), c.raw(), angle.raw(), MPFR_RNDN);
    return {modulus * c, modulus * s};
  }

  Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
  Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
  Complex& operator*=(const Complex& o) { *this = *this * o; return *this; }
  Complex& operator*=(const Real& o) { re *= o; im *= o; return *this; }

  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator*(const Complex& a, const Real& s) { return {a.re * s, a.im * s}; }
  friend Complex operator*(const Real& s, const Complex& a) { return {a.re * s, a.im * s}; }
  friend Complex operator*(const Complex& a, long s) { return {a.re * s, a.im * s}; }
  friend Complex operator/(const Complex& a, const Real& s) { return {a.re / s, a.im / s}; }
  friend Complex operator/(const Complex& a, const Complex& b) {
    // Smith's algorithm keeps intermediate magnitudes bounded.
    if (abs(b.re) >= abs(b.im)) {
      Real r = b.im / b.re;
      Real d = b.re + b.im * r;
      return {(a.re + a.im * r) / d, (a.im - a.re * r) / d};
    }
    Real r = b.re / b.im;
    Real d = b.re * r + b.im;
    return {(a.re * r + a.im) / d, (a.im * r - a.re) / d};
  }
  friend Complex operator+(const Complex& a, long s) { return {a.re + s, a.im}; }
  friend Complex operator-(const Complex& a, long s) { return {a.re - s, a.im}; }
  friend Complex operator-(long s, const Complex& a) { return {s - a.re, -a.im}; }
};

inline Complex conj(const Complex& z) { return {z.re, -z.im}; }
inline Real norm(const Complex& z) { return sqr(z.re) + sqr(z.im); }
inline Real abs(const Complex& z) { return hypot(z.re, z.im); }
inline Real arg(const Complex& z) { return atan2(z.im, z.re); }
inline Complex exp(const Complex& z) { return Complex::polar(exp(z.re), z.im); }
inline Complex log(const Complex& z) { return {log(abs(z)), arg(z)}; }
// Principal square root.
inline Complex sqrt(const Complex& z) {
  Real r = abs(z);
  if (r.is_zero()) return z;
  Real re = sqrt((r + z.re) / 2L);
  if (re.is_zero()) return {re, sqrt(r)};  // negative real axis
  return {re, z.im / (re * 2L)};
}
// Principal cube root.
inline Complex cbrt(const Complex& z) {
  Real r = abs(z);
  if (r.is_zero()) return z;
  return Complex::polar(cbrt(r), arg(z) / 3L);
}

}  // namespace faltings
