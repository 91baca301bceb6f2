#pragma once

// Weil heights of algebraic j-invariants and the stable Faltings height of
// the elliptic curves carrying them.
//
// For j with primitive minimal polynomial a_n X^n + ... + a_0 and roots
// alpha_i, the finite part of h(j) is (1/n) log a_n and
//   h_stab = (1/12)(1/n) log a_n + (1/n) sum_i V(tau_i) + (1/2) log pi,
// with j(tau_i) = alpha_i.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "faltings/errors.hpp"
#include "faltings/intpoly.hpp"
#include "faltings/irreducible.hpp"
#include "faltings/modular.hpp"
#include "faltings/numctx.hpp"
#include "faltings/roots.hpp"

namespace faltings {

// Deligne's minimum -(1/2) log((Gamma(1/3)/Gamma(2/3))^3 / sqrt 3).
inline Real hmin_closed(const PrecisionContext& ctx) {
  Real ratio = gamma_rat(1, 3, ctx) / gamma_rat(2, 3, ctx);
  return -log(ratio * ratio * ratio / sqrt(ctx.real(3))) / 2L;
}

struct WeilHeight {
  Real total;
  Real finite;
  Real arch;
};

struct RootInfo {
  Complex root;
  FDPoint tau;
  Real v;
};

struct HeightReport {
  IntPolynomial poly;
  int degree;
  Real weil_total;
  Real weil_finite;
  Real weil_arch;
  Real faltings_stable;
  Real hmin_gap;
  std::vector<RootInfo> per_root;
  bool is_integral_j;
  Real lower_bound_p54;
};

namespace detail {

inline void require_irreducible(const Poly& p, const std::vector<Complex>& roots, const PrecisionContext& ctx) {
  IrreducibilityResult r = check_irreducible(p, roots, ctx);
  if (r.verdict == Irreducibility::Reducible)
    throw Reducible(p.to_string() + " has the factor " + r.factor.to_string());
  if (r.verdict == Irreducibility::Unknown)
    throw IrreducibilityUnknown("could not certify " + p.to_string() + " irreducible");
}

inline WeilHeight weil_from_roots(const Poly& p, const std::vector<Complex>& roots, const PrecisionContext& ctx) {
  const long n = p.degree();
  Real finite = log(ctx.real(p.lead().str())) / n;
  Real arch = ctx.real(0);
  for (const auto& r : roots) {
    Real m = abs(r);
    if (m > 1L) arch += log(m);
  }
  arch /= n;
  Real total = finite + arch;
  return {std::move(total), std::move(finite), std::move(arch)};
}

}  // namespace detail

inline std::vector<Complex> roots_hp(const IntPolynomial& poly, const PrecisionContext& ctx) {
  return roots_hp(poly.poly(), ctx);
}

// Absolute logarithmic Weil height of a root of an irreducible polynomial.
inline WeilHeight weil_height(const IntPolynomial& poly, const PrecisionContext& ctx) {
  std::vector<Complex> roots = roots_hp(poly.poly(), ctx);
  detail::require_irreducible(poly.poly(), roots, ctx);
  return detail::weil_from_roots(poly.poly(), roots, ctx);
}

// h_j/12 - (1/2) log(1 + h_j) + unstable_term - 2.071
inline Real prop54_lower_bound(const Real& h_j, const Real& unstable_term, const PrecisionContext& ctx) {
  if (h_j < 0L) throw NegativeInput("h(j) must be non-negative");
  if (unstable_term < 0L) throw NegativeInput("unstable discriminant term must be non-negative");
  Real hj = h_j.at_precision(ctx.bits());
  return hj / 12L - log1p(hj) / 2L + unstable_term - ctx.real("2.071");
}

inline HeightReport faltings_stable(const IntPolynomial& poly, const PrecisionContext& ctx) {
  const Poly& p = poly.poly();
  std::vector<Complex> roots = roots_hp(p, ctx);
  detail::require_irreducible(p, roots, ctx);
  WeilHeight w = detail::weil_from_roots(p, roots, ctx);

  // roots_hp lists reals first, then (z, conj z) pairs; the conjugate reuses
  // V and takes the mirrored point -conj(tau).
  std::vector<RootInfo> per_root;
  per_root.reserve(roots.size());
  for (std::size_t k = 0; k < roots.size(); ++k) {
    const Complex& r = roots[k];
    if (!per_root.empty() && r.im < 0L) {
      const RootInfo& mate = per_root.back();
      UHPoint mirrored{-mate.tau.point.x, mate.tau.point.y};
      per_root.push_back({r, reduce_fd(mirrored, ctx), mate.v});
      continue;
    }
    FDPoint tau = inverse_j(r, ctx);
    Real v = v_at_reduced(tau, ctx);
    per_root.push_back({r, std::move(tau), std::move(v)});
  }
  Real sum_v = ctx.real(0);
  for (const auto& info : per_root) sum_v += info.v;
  const long n = p.degree();
  Real h = w.finite / 12L + sum_v / n + log(const_pi(ctx)) / 2L;
  Real gap = h - hmin_closed(ctx);
  Real lb = prop54_lower_bound(w.total, ctx.real(0), ctx);
  return HeightReport{poly,
                      p.degree(),
                      std::move(w.total),
                      std::move(w.finite),
                      std::move(w.arch),
                      std::move(h),
                      std::move(gap),
                      std::move(per_root),
                      p.lead() == 1,
                      std::move(lb)};
}

// 0.72 <= h(j)/12 - h_stab <= (1/2) log(1 + h(j)) + 2.071
inline bool silverman_sandwich_check(const HeightReport& report, const PrecisionContext& ctx) {
  Real mid = report.weil_total / 12L - report.faltings_stable;
  Real upper = log1p(report.weil_total) / 2L + ctx.real("2.071");
  return mid >= ctx.real("0.72") && mid <= upper;
}

struct ScanEntry {
  IntPolynomial poly;
  std::optional<HeightReport> report;
  std::string error;  // empty when report is present
};

// Heights of every polynomial, ascending by h_stab (ties: degree, then
// coefficients). Failed entries keep their error text and go last, in
// input order.
inline std::vector<ScanEntry> scan_corpus(const std::vector<IntPolynomial>& polys, const PrecisionContext& ctx) {
  std::vector<ScanEntry> ok, failed;
  for (const auto& p : polys) {
    try {
      ok.push_back({p, faltings_stable(p, ctx), {}});
    } catch (const Error& e) {
      failed.push_back({p, std::nullopt, e.what()});
    }
  }
  std::stable_sort(ok.begin(), ok.end(), [](const ScanEntry& a, const ScanEntry& b) {
    int c = cmp(a.report->faltings_stable, b.report->faltings_stable);
    if (c != 0) return c < 0;
    return a.poly < b.poly;
  });
  for (auto& f : failed) ok.push_back(std::move(f));
  return ok;
}

}  // namespace faltings
