#pragma once

// Monic Eisenstein polynomials
//   f(X) = (X - 1)^n + sum_{k=1..n} 9^k b_k (X - 1)^(n-k),   f(0) = p,
// for primes p = (-1)^n + 9m. A root alpha generates a totally ramified
// extension in which (alpha - 1)/9 is integral; the curves with j = 0 over
// these fields have Faltings height h_min + log p / (3n).

#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/miller_rabin.hpp>

#include "faltings/errors.hpp"
#include "faltings/heights.hpp"
#include "faltings/intpoly.hpp"
#include "faltings/numctx.hpp"

namespace faltings {

struct EisensteinSpec {
  int n = 1;
  BigInt p = 17;
  BigInt m = 2;
};

struct EisensteinResult {
  EisensteinSpec spec;
  std::vector<BigInt> b;         // b_1 .. b_n
  std::vector<BigInt> f_coeffs;  // low to high, monic of degree n
};

struct FamilyEntry {
  int n;
  BigInt p;
  Real h0;
  Real height;
  bool constructible;
};

inline int auto_p(int n) {
  if (n < 1) throw OutOfRange("n must be positive");
  return n % 2 == 1 ? 17 : 19;
}

inline bool is_prime(const BigInt& p) {
  if (p < 2) return false;
  std::mt19937 rng(12345);
  return boost::multiprecision::miller_rabin_test(p, 25, rng);
}

namespace detail {

inline BigInt sign_pow(long e) { return e % 2 == 0 ? BigInt(1) : BigInt(-1); }

inline BigInt pmod(const BigInt& a, const BigInt& p) {
  BigInt r = a % p;
  return r < 0 ? r + p : r;
}

inline BigInt inv_mod(const BigInt& a, const BigInt& p) {
  BigInt r = 1, base = pmod(a, p), e = p - 2;
  while (e > 0) {
    if ((e & 1) != 0) r = r * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return r;
}

// psi(b) = sum_k (-1)^(n-k) 9^(k-1) b_k
inline BigInt psi(const std::vector<BigInt>& b) {
  const long n = static_cast<long>(b.size());
  BigInt s = 0, nine = 1;
  for (long k = 1; k <= n; ++k) {
    s += sign_pow(n - k) * nine * b[k - 1];
    nine *= 9;
  }
  return s;
}

// a_k, the coefficient of X^(n-k), for k = 0..n:
//   a_k = C(n,k)(-1)^k + sum_{j=1..k} 9^j b_j C(n-j, k-j) (-1)^(k-j)
inline std::vector<BigInt> a_from_b(const std::vector<BigInt>& b) {
  const long n = static_cast<long>(b.size());
  std::vector<BigInt> a(n + 1, 0);
  BigInt nine = 1;
  for (long j = 0; j <= n; ++j) {
    // column j contributes 9^j b_j C(n-j, i) (-1)^i to a_{j+i}
    BigInt w = j == 0 ? BigInt(1) : nine * b[j - 1];
    BigInt c = 1;
    for (long i = 0; j + i <= n; ++i) {
      a[j + i] += (i % 2 == 0 ? w : BigInt(-w)) * c;
      c = c * (n - j - i) / (i + 1);
    }
    nine *= 9;
  }
  return a;
}

// (X - 1)^n + sum 9^k b_k (X - 1)^(n-k) by Horner in (X - 1), low to high.
inline Poly shifted_form(const std::vector<BigInt>& b) {
  const Poly xm1 = Poly::linear_root(1);
  Poly f = Poly::constant(1);
  BigInt nine = 1;
  for (const auto& bk : b) {
    nine *= 9;
    f = f * xm1 + Poly::constant(nine * bk);
  }
  return f;
}

// Binomial coefficients mod p, rows 0..n.
inline std::vector<std::vector<BigInt>> pascal_mod(long n, const BigInt& p) {
  std::vector<std::vector<BigInt>> t(n + 1);
  for (long r = 0; r <= n; ++r) {
    t[r].assign(r + 1, 1);
    for (long k = 1; k < r; ++k) t[r][k] = (t[r - 1][k - 1] + t[r - 1][k]) % p;
  }
  return t;
}

}  // namespace detail

inline EisensteinSpec make_spec(int n, const BigInt& p) {
  if (n < 1) throw OutOfRange("n must be positive");
  if (!is_prime(p)) throw NotPrime(p.str() + " is not prime");
  BigInt rest = p - detail::sign_pow(n);
  if (detail::pmod(rest, 9) != 0)
    throw BadCongruence("p = " + p.str() + " is not congruent to (-1)^" + std::to_string(n) + " mod 9");
  if (p < 5) throw OutOfRange("p must be at least 5");
  return {n, p, rest / 9};
}

inline EisensteinResult build_eisenstein(const EisensteinSpec& spec) {
  const EisensteinSpec s = make_spec(spec.n, spec.p);
  if (s.m != spec.m) throw BadCongruence("m must equal (p - (-1)^n)/9 = " + s.m.str());
  const long n = s.n;
  const BigInt& p = s.p;

  // Row k < n: a_k = 0 mod p involves b_1..b_k with leading coefficient
  // 9^k, a unit mod p; the last row psi(b) = m fixes b_n. Forward
  // substitution solves the triangular system.
  const auto binom = detail::pascal_mod(n, p);
  std::vector<BigInt> nine(n + 1, 1);  // 9^k mod p
  for (long k = 1; k <= n; ++k) nine[k] = nine[k - 1] * 9 % p;
  std::vector<BigInt> b(n, 0);
  for (long k = 1; k <= n; ++k) {
    BigInt rhs, lead;
    if (k < n) {
      rhs = -binom[n][k] * detail::sign_pow(k);
      for (long j = 1; j < k; ++j) rhs -= nine[j] * b[j - 1] * binom[n - j][k - j] * detail::sign_pow(k - j);
      lead = nine[k];
    } else {
      rhs = s.m;
      for (long j = 1; j < n; ++j) rhs -= detail::sign_pow(n - j) * nine[j - 1] * b[j - 1];
      lead = nine[n - 1];
    }
    b[k - 1] = detail::pmod(detail::pmod(rhs, p) * detail::inv_mod(lead, p), p);
  }
  std::vector<BigInt> a = detail::a_from_b(b);
  for (long k = 1; k < n; ++k)
    if (detail::pmod(a[k], p) != 0) throw NoConvergence("internal: congruence system not solved at k = " + std::to_string(k));

  // Restore psi(b) = m exactly; the shift is a multiple of p.
  b[0] += detail::sign_pow(n - 1) * (s.m - detail::psi(b));

  a = detail::a_from_b(b);
  std::vector<BigInt> coeffs(a.rbegin(), a.rend());
  return {s, std::move(b), std::move(coeffs)};
}

inline EisensteinResult build_eisenstein(int n, const BigInt& p) { return build_eisenstein(make_spec(n, p)); }

// Exact integer checks of every property the construction promises.
inline bool verify_eisenstein(const EisensteinResult& r) {
  const int n = r.spec.n;
  const BigInt& p = r.spec.p;
  if (n < 1 || static_cast<int>(r.b.size()) != n) return false;
  if (p < 5 || !is_prime(p)) return false;
  if (p != detail::sign_pow(n) + r.spec.m * 9) return false;
  Poly f(r.f_coeffs);
  if (f.degree() != n || f.lead() != 1) return false;
  if (f.coeffs() != detail::shifted_form(r.b).coeffs()) return false;
  if (f.coeff(0) != p) return false;
  for (int k = 0; k < n; ++k)
    if (detail::pmod(f.coeff(k), p) != 0) return false;
  if (detail::pmod(f.coeff(0), p * p) == 0) return false;
  // f(9Y + 1) = 9^n g(Y) with g monic in Z[Y]
  Poly shifted = f.compose_linear(9, 1);
  BigInt scale = 1;
  for (int k = 0; k < n; ++k) scale *= 9;
  for (const auto& c : shifted.coeffs())
    if (c % scale != 0) return false;
  if (shifted.lead() != scale) return false;
  return detail::psi(r.b) == r.spec.m;
}

// h0 = log p / (3n), height = h_min + h0. `constructible` records whether
// (n, p) satisfies the congruence hypothesis.
inline FamilyEntry family_entry(int n, const BigInt& p, const PrecisionContext& ctx) {
  if (n < 1) throw OutOfRange("n must be positive");
  if (p < 2) throw OutOfRange("p must be at least 2");
  bool ok = true;
  try {
    make_spec(n, p);
  } catch (const PreconditionError&) {
    ok = false;
  }
  Real h0 = log(ctx.real(p.str())) / (3L * n);
  Real height = hmin_closed(ctx) + h0;
  return {n, p, std::move(h0), std::move(height), ok};
}

inline std::vector<FamilyEntry> family_heights(int n_max, const PrecisionContext& ctx) {
  if (n_max < 1) throw OutOfRange("n_max must be positive");
  const Real hmin = hmin_closed(ctx);
  std::vector<FamilyEntry> out;
  for (int n = 1; n <= n_max; ++n) {
    BigInt p = auto_p(n);
    EisensteinResult r = build_eisenstein(n, p);
    if (!verify_eisenstein(r)) throw NoConvergence("construction failed verification at n = " + std::to_string(n));
    Real h0 = log(ctx.real(p.str())) / (3L * n);
    Real height = hmin + h0;
    out.push_back({n, p, std::move(h0), std::move(height), true});
  }
  return out;
}

}  // namespace faltings
