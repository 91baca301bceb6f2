#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "faltings/errors.hpp"

namespace faltings {

using BigInt = boost::multiprecision::cpp_int;

// Dense integer polynomial, coefficient k of X^k at index k. Trailing zeros
// are trimmed; the zero polynomial has no coefficients.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }
  static Poly constant(BigInt v) { return Poly(std::vector<BigInt>{std::move(v)}); }
  static Poly x() { return Poly(std::vector<BigInt>{0, 1}); }
  // X - a
  static Poly linear_root(const BigInt& a) { return Poly(std::vector<BigInt>{-a, 1}); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const BigInt& lead() const { return c_.back(); }
  const std::vector<BigInt>& coeffs() const { return c_; }
  BigInt coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : BigInt(0); }

  BigInt content() const {
    BigInt g = 0;
    for (const auto& a : c_) g = gcd(g, abs(a));
    return g;
  }
  // Primitive part with positive leading coefficient.
  Poly primitive() const {
    if (is_zero()) return *this;
    BigInt g = content();
    if (lead() < 0) g = -g;
    std::vector<BigInt> out(c_);
    for (auto& a : out) a /= g;
    return Poly(std::move(out));
  }

  Poly derivative() const {
    std::vector<BigInt> out;
    for (std::size_t k = 1; k < c_.size(); ++k) out.push_back(c_[k] * static_cast<long>(k));
    return Poly(std::move(out));
  }
  // X^n p(1/X)
  Poly reversed() const {
    std::vector<BigInt> out(c_.rbegin(), c_.rend());
    return Poly(std::move(out));
  }

  BigInt eval(const BigInt& x) const {
    BigInt acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
  // p(a X + b)
  Poly compose_linear(const BigInt& a, const BigInt& b) const {
    Poly acc;
    Poly lin(std::vector<BigInt>{b, a});
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * lin + constant(*it);
    return acc;
  }

  friend Poly operator+(const Poly& p, const Poly& q) {
    std::vector<BigInt> out(std::max(p.c_.size(), q.c_.size()));
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = p.coeff(k) + q.coeff(k);
    return Poly(std::move(out));
  }
  friend Poly operator-(const Poly& p) {
    std::vector<BigInt> out(p.c_);
    for (auto& a : out) a = -a;
    return Poly(std::move(out));
  }
  friend Poly operator-(const Poly& p, const Poly& q) { return p + (-q); }
  friend Poly operator*(const Poly& p, const Poly& q) {
    if (p.is_zero() || q.is_zero()) return {};
    std::vector<BigInt> out(p.c_.size() + q.c_.size() - 1);
    for (std::size_t i = 0; i < p.c_.size(); ++i)
      for (std::size_t j = 0; j < q.c_.size(); ++j) out[i + j] += p.c_[i] * q.c_[j];
    return Poly(std::move(out));
  }
  friend Poly operator*(const Poly& p, const BigInt& s) { return p * constant(s); }
  friend bool operator==(const Poly& p, const Poly& q) { return p.c_ == q.c_; }

  Poly pow(unsigned e) const {
    Poly r = constant(1), b = *this;
    while (e) {
      if (e & 1U) r = r * b;
      b = b * b;
      e >>= 1U;
    }
    return r;
  }

  // Exact quotient p / d over Z, or nullopt if d does not divide p in Z[X].
  std::optional<Poly> exact_div(const Poly& d) const {
    if (d.is_zero()) return std::nullopt;
    std::vector<BigInt> rem(c_);
    const int dd = d.degree();
    if (degree() < dd) return is_zero() ? std::optional<Poly>(Poly{}) : std::nullopt;
    std::vector<BigInt> quo(degree() - dd + 1);
    for (int k = degree(); k >= dd; --k) {
      if (rem[k] == 0) continue;
      if (rem[k] % d.lead() != 0) return std::nullopt;
      BigInt t = rem[k] / d.lead();
      quo[k - dd] = t;
      for (int i = 0; i <= dd; ++i) rem[k - dd + i] -= t * d.c_[i];
    }
    for (const auto& r : rem)
      if (r != 0) return std::nullopt;
    return Poly(std::move(quo));
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (int k = degree(); k >= 0; --k) {
      const BigInt& a = c_[k];
      if (a == 0) continue;
      BigInt mag = abs(a);
      if (s.empty()) {
        if (a < 0) s += "-";
      } else {
        s += a < 0 ? " - " : " + ";
      }
      if (k == 0 || mag != 1) s += mag.str();
      if (k >= 1 && mag != 1) s += "*";
      if (k >= 1) s += "x";
      if (k >= 2) s += "^" + std::to_string(k);
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<BigInt> c_;
};

// Pseudo-remainder of a by b (scaled so that the division is exact over Z).
inline Poly pseudo_rem(Poly a, const Poly& b) {
  const int db = b.degree();
  while (!a.is_zero() && a.degree() >= db) {
    const int shift = a.degree() - db;
    std::vector<BigInt> mono(shift + 1);
    mono[shift] = a.lead();
    a = a * Poly::constant(b.lead()) - b * Poly(std::move(mono));
  }
  return a;
}

// Primitive gcd over Z[X] via the primitive remainder sequence.
inline Poly poly_gcd(Poly a, Poly b) {
  a = a.primitive();
  b = b.primitive();
  while (!b.is_zero()) {
    Poly r = pseudo_rem(a, b).primitive();
    a = std::move(b);
    b = std::move(r);
  }
  return a.primitive();
}

inline bool is_squarefree(const Poly& p) { return poly_gcd(p, p.derivative()).degree() == 0; }

// The k-th cyclotomic polynomial by exact division of X^k - 1.
inline Poly cyclotomic(int k) {
  if (k < 1) throw InputError("InvalidArgument", "cyclotomic index must be >= 1");
  std::vector<BigInt> c(k + 1);
  c[0] = -1;
  c[k] = 1;
  Poly p(std::move(c));
  for (int d = 1; d < k; ++d)
    if (k % d == 0) p = *p.exact_div(cyclotomic(d));
  return p;
}

// Primitive, sign-normalized polynomial of degree >= 1: the carrier of an
// algebraic j-invariant through its minimal polynomial.
class IntPolynomial {
 public:
  explicit IntPolynomial(const Poly& p) : p_(p.primitive()) {
    if (p.is_zero()) throw ZeroPolynomial("the zero polynomial has no roots");
    if (p_.degree() < 1) throw InputError("ConstantPolynomial", "polynomial must have degree >= 1");
  }
  explicit IntPolynomial(std::vector<BigInt> coeffs) : IntPolynomial(Poly(std::move(coeffs))) {}

  const Poly& poly() const { return p_; }
  int degree() const { return p_.degree(); }
  const BigInt& leading() const { return p_.lead(); }
  const std::vector<BigInt>& coeffs() const { return p_.coeffs(); }
  std::string to_string() const { return p_.to_string(); }

  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.p_ == b.p_; }
  // Degree first, then coefficients low to high.
  friend bool operator<(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return std::lexicographical_compare(a.coeffs().begin(), a.coeffs().end(), b.coeffs().begin(),
                                        b.coeffs().end());
  }

 private:
  Poly p_;
};

}  // namespace faltings
