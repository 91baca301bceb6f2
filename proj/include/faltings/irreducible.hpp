#pragma once

// Irreducibility over Q for primitive integer polynomials.
//
// Stage 1: distinct-degree factorization modulo small primes. Each good prime
// restricts the degrees a rational factor can have to subset sums of the
// local factor degrees; if no proper degree survives all primes, the
// polynomial is irreducible.
//
// Stage 2 (only for surviving degrees d <= n/2): every rational factor of
// degree d is lc * prod_{alpha in S} (X - alpha) up to a divisor of lc, so
// lc * e_k(S) is an integer for each k. Subsets of the numerical roots whose
// scaled symmetric functions are all near integers give candidate factors,
// which are then tested by exact division in Z[X].

#include <cstdint>
#include <numeric>
#include <vector>

#include "faltings/errors.hpp"
#include "faltings/intpoly.hpp"
#include "faltings/numctx.hpp"

namespace faltings {

namespace gf {

using Elt = std::int64_t;
using PolyP = std::vector<Elt>;  // low to high, trimmed

inline Elt mod(Elt a, Elt p) {
  a %= p;
  return a < 0 ? a + p : a;
}
inline Elt inv(Elt a, Elt p) {
  Elt r = 1, b = mod(a, p), e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}
inline void trim(PolyP& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}
inline int deg(const PolyP& f) { return static_cast<int>(f.size()) - 1; }

inline PolyP reduce(const Poly& f, Elt p) {
  PolyP out;
  for (const auto& a : f.coeffs()) out.push_back(mod(static_cast<Elt>(BigInt(a % p)), p));
  trim(out);
  return out;
}

// a mod b, b nonzero
inline PolyP rem(PolyP a, const PolyP& b, Elt p) {
  const int db = deg(b);
  const Elt lead_inv = inv(b.back(), p);
  while (deg(a) >= db) {
    Elt t = a.back() * lead_inv % p;
    const int shift = deg(a) - db;
    for (int i = 0; i <= db; ++i) a[shift + i] = mod(a[shift + i] - t * b[i], p);
    trim(a);
  }
  return a;
}

inline PolyP quot(PolyP a, const PolyP& b, Elt p) {
  const int db = deg(b);
  const Elt lead_inv = inv(b.back(), p);
  PolyP q(std::max(0, deg(a) - db + 1));
  while (deg(a) >= db) {
    Elt t = a.back() * lead_inv % p;
    const int shift = deg(a) - db;
    q[shift] = t;
    for (int i = 0; i <= db; ++i) a[shift + i] = mod(a[shift + i] - t * b[i], p);
    trim(a);
  }
  trim(q);
  return q;
}

inline PolyP mulmod(const PolyP& a, const PolyP& b, const PolyP& f, Elt p) {
  if (a.empty() || b.empty()) return {};
  PolyP out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  trim(out);
  return rem(std::move(out), f, p);
}

inline PolyP powmod(PolyP base, Elt e, const PolyP& f, Elt p) {
  PolyP r{1};
  base = rem(std::move(base), f, p);
  while (e) {
    if (e & 1) r = mulmod(r, base, f, p);
    base = mulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

inline PolyP gcd(PolyP a, PolyP b, Elt p) {
  while (!b.empty()) {
    PolyP r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Elt li = inv(a.back(), p);
    for (auto& c : a) c = c * li % p;
  }
  return a;
}

inline PolyP derivative(const PolyP& f, Elt p) {
  PolyP out;
  for (std::size_t k = 1; k < f.size(); ++k) out.push_back(f[k] * static_cast<Elt>(k) % p);
  trim(out);
  return out;
}

// Degrees of the irreducible factors of a squarefree f over F_p.
inline std::vector<int> factor_degrees(PolyP f, Elt p) {
  std::vector<int> degrees;
  PolyP h{0, 1};
  for (int d = 1; 2 * d <= deg(f); ++d) {
    h = powmod(h, p, f, p);
    PolyP hx = h;
    if (hx.size() < 2) hx.resize(2, 0);
    hx[1] = mod(hx[1] - 1, p);
    trim(hx);
    PolyP g = gcd(f, hx, p);
    if (deg(g) > 0) {
      for (int k = 0; k < deg(g) / d; ++k) degrees.push_back(d);
      f = quot(f, g, p);
      h = rem(h, f, p);
    }
  }
  if (deg(f) > 0) degrees.push_back(deg(f));
  return degrees;
}

}  // namespace gf

// Proper factor degrees (1..n-1) still possible after `prime_count` good primes.
inline std::vector<int> possible_factor_degrees(const Poly& f, int prime_count = 24) {
  const int n = f.degree();
  std::vector<bool> allowed(n + 1, true);
  int used = 0;
  for (gf::Elt p = 3; used < prime_count && p < 2000; p += 2) {
    bool is_prime = true;
    for (gf::Elt d = 3; d * d <= p; d += 2)
      if (p % d == 0) is_prime = false;
    if (!is_prime) continue;
    gf::PolyP fp = gf::reduce(f, p);
    if (gf::deg(fp) != n) continue;  // p divides the leading coefficient
    if (gf::deg(gf::gcd(fp, gf::derivative(fp, p), p)) > 0) continue;
    ++used;
    std::vector<bool> sums(n + 1, false);
    sums[0] = true;
    for (int d : gf::factor_degrees(fp, p))
      for (int s = n; s >= d; --s)
        if (sums[s - d]) sums[s] = true;
    for (int s = 0; s <= n; ++s) allowed[s] = allowed[s] && sums[s];
  }
  std::vector<int> out;
  for (int d = 1; d < n; ++d)
    if (allowed[d]) out.push_back(d);
  return out;
}

enum class Irreducibility { Irreducible, Reducible, Unknown };

struct IrreducibilityResult {
  Irreducibility verdict;
  Poly factor;  // a proper factor when Reducible
};

namespace detail {

// Coefficients of prod (X - r) over the chosen roots, high degree first.
inline std::vector<Complex> elementary(const std::vector<const Complex*>& roots, const PrecisionContext& ctx) {
  std::vector<Complex> e{Complex(ctx.real(1))};
  for (const Complex* r : roots) {
    std::vector<Complex> next(e.size() + 1, Complex(ctx.bits()));
    for (std::size_t k = 0; k < e.size(); ++k) {
      next[k] += e[k];
      next[k + 1] -= e[k] * *r;
    }
    e = std::move(next);
  }
  return e;
}

inline bool near_integer(const Real& v, const Real& tol) {
  Real r = floor(v + Real(0.5, v.precision()));
  return abs(v - r) <= tol * max(Real(1L, v.precision()), abs(v));
}

}  // namespace detail

// `roots` must be all n roots of f at the context precision.
inline IrreducibilityResult check_irreducible(const Poly& f, const std::vector<Complex>& roots,
                                              const PrecisionContext& ctx,
                                              std::size_t max_subsets = 2'000'000) {
  const int n = f.degree();
  if (n <= 1) return {Irreducibility::Irreducible, {}};
  std::vector<int> degrees = possible_factor_degrees(f);
  const Real lc = ctx.real(f.lead().str());
  const Real tol = ctx.pow10(-(ctx.digits() / 2));
  std::size_t budget = max_subsets;
  for (int d : degrees) {
    if (2 * d > n) continue;
    // Enumerate d-subsets in lexicographic order.
    std::vector<int> idx(d);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      if (budget-- == 0) return {Irreducibility::Unknown, {}};
      Complex trace(ctx.bits());
      for (int i : idx) trace += roots[i];
      Complex scaled = trace * lc;
      if (abs(scaled.im) <= tol * max(ctx.real(1), abs(scaled)) && detail::near_integer(scaled.re, tol)) {
        std::vector<const Complex*> pick;
        for (int i : idx) pick.push_back(&roots[i]);
        std::vector<Complex> e = detail::elementary(pick, ctx);
        std::vector<BigInt> coeffs(d + 1);
        bool ok = true;
        for (int k = 0; k <= d && ok; ++k) {
          Complex v = e[k] * lc;
          if (abs(v.im) > tol * max(ctx.real(1), abs(v)) || !detail::near_integer(v.re, tol)) {
            ok = false;
            break;
          }
          coeffs[d - k] = BigInt(floor(v.re + ctx.real("0.5")).fixed(0));
        }
        if (ok) {
          Poly g = Poly(coeffs).primitive();
          if (g.degree() == d && f.exact_div(g)) return {Irreducibility::Reducible, g};
        }
      }
      int pos = d - 1;
      while (pos >= 0 && idx[pos] == n - d + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int k = pos + 1; k < d; ++k) idx[k] = idx[k - 1] + 1;
    }
  }
  return {Irreducibility::Irreducible, {}};
}

}  // namespace faltings
