#pragma once

// Sampling-based checks of the inequalities and identities the gap argument
// relies on. Each check evaluates both sides on a grid at full precision and
// records every violation and the smallest margin. A pass is evidence on the
// sampled points, not a proof.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "faltings/errors.hpp"
#include "faltings/gap.hpp"
#include "faltings/modular.hpp"
#include "faltings/numctx.hpp"

namespace faltings {

struct GridSpec {
  int nx = 100;
  int ny = 100;
  double y_max = 5.0;
  double exclusion_delta = 0.0;
};

// One evaluated instance: the inequality lhs <= rhs (or the lemma's
// direction) at `point`, or a named constant check.
struct CertEntry {
  std::string label;
  std::optional<UHPoint> point;
  Real lhs;
  Real rhs;
};

struct CertResult {
  std::string lemma_id;
  long points_checked = 0;
  std::vector<CertEntry> violations;
  std::optional<Real> min_margin;
  bool passed = true;
  std::vector<CertEntry> entries;  // filled by the constants check only
};

inline const std::vector<std::string>& lemma_ids() {
  static const std::vector<std::string> ids{"fp_i", "fp_ii", "fp_iii", "l53",  "l54",
                                            "bilu", "e2id",  "vmono",  "l64", "r61"};
  return ids;
}

// x/12 - (1/2) log(1 + x)
inline Real r61_value(const Real& x) { return x / 12L - log1p(x) / 2L; }

namespace detail {

class Recorder {
 public:
  Recorder(std::string id, const PrecisionContext& ctx) : ctx_(ctx) { result_.lemma_id = std::move(id); }

  // Checks lhs <= rhs (strict: lhs < rhs) with a relative slack for
  // evaluation error; margin is rhs - lhs.
  void check(std::string label, std::optional<UHPoint> point, Real lhs, Real rhs, bool strict = false) {
    ++result_.points_checked;
    Real margin = rhs - lhs;
    Real slack = ctx_.pow10(-(ctx_.digits() - 5)) * max(ctx_.real(1), abs(rhs));
    bool bad = strict ? margin <= 0L : margin < -slack;
    if (!result_.min_margin || margin < *result_.min_margin) result_.min_margin = margin;
    if (bad) result_.violations.push_back({std::move(label), std::move(point), std::move(lhs), std::move(rhs)});
  }

  CertResult finish() {
    result_.passed = result_.violations.empty();
    return std::move(result_);
  }

 private:
  const PrecisionContext& ctx_;
  CertResult result_;
};

// Uniform x in [-1/2, 1/2], y uniform in [sqrt(1 - x^2), y_max].
inline std::vector<UHPoint> fd_grid(const GridSpec& g, const PrecisionContext& ctx) {
  std::vector<UHPoint> pts;
  const Real y_max = ctx.from_double(g.y_max);
  for (int i = 0; i < g.nx; ++i) {
    Real x = ctx.real("-0.5") + ctx.real(i) / static_cast<long>(g.nx - 1);
    Real y_lo = sqrt(1L - sqr(x));
    for (int k = 0; k < g.ny; ++k) {
      Real y = y_lo + (y_max - y_lo) * static_cast<long>(k) / static_cast<long>(g.ny - 1);
      pts.push_back({x, std::move(y)});
    }
  }
  return pts;
}

inline std::vector<Real> linspace(const Real& a, const Real& b, long n) {
  std::vector<Real> out;
  for (long k = 0; k < n; ++k) out.push_back(a + (b - a) * k / (n - 1));
  return out;
}

inline bool in_closed_fd(const UHPoint& t, const PrecisionContext& ctx) {
  const Real tol = ctx.fd_tol();
  return abs(t.x) <= ctx.real("0.5") + tol && sqr(t.x) + sqr(t.y) >= 1L - tol;
}

inline Real j_imag_axis(const Real& y, const PrecisionContext& ctx) {
  return j_eval({ctx.real(0), y}, ctx).re;
}

inline void validate(const GridSpec& g) {
  if (g.nx < 2 || g.ny < 2) throw OutOfRange("grid needs nx, ny >= 2");
  if (!(g.y_max > 1.0)) throw OutOfRange("grid needs y_max > 1");
  if (g.exclusion_delta < 0.0 || g.exclusion_delta >= 0.5) throw OutOfRange("exclusion delta must lie in [0, 1/2)");
}

// Central-difference gradient of V against (pi/6) (Im E2, Re E2).
inline Real e2_identity_residual(const UHPoint& t, const PrecisionContext& ctx) {
  const Real h = ctx.pow10(-(ctx.digits() / 3));
  Real vx = (v_eval({t.x + h, t.y}, ctx) - v_eval({t.x - h, t.y}, ctx)) / (h * 2L);
  Real vy = (v_eval({t.x, t.y + h}, ctx) - v_eval({t.x, t.y - h}, ctx)) / (h * 2L);
  Complex e2 = e2_eval(t, ctx);
  Real k = const_pi(ctx) / 6L;
  return max(abs(vx - k * e2.im), abs(vy - k * e2.re));
}

inline Real e2_identity_bound(const PrecisionContext& ctx) {
  return sqr(ctx.pow10(-(ctx.digits() / 3))) * 10L;
}

// Sign changes of Re E2 on x = -1/2 over [0.5, y_max], each bisected to 1e-15.
inline std::vector<Real> e2_zeros_on_left_edge(double y_max, int samples, const PrecisionContext& ctx) {
  const Real x = ctx.real("-0.5");
  auto f = [&](const Real& y) { return e2_eval({x, y}, ctx).re; };
  std::vector<Real> ys = linspace(ctx.real("0.5"), ctx.from_double(y_max), samples);
  std::vector<Real> zeros;
  Real prev = f(ys[0]);
  for (std::size_t k = 1; k < ys.size(); ++k) {
    Real cur = f(ys[k]);
    if (cur.is_zero()) {
      zeros.push_back(ys[k]);
    } else if (prev.sign() * cur.sign() < 0) {
      Real a = ys[k - 1], b = ys[k], fa = prev;
      while (b - a > ctx.real("1e-15")) {
        Real m = (a + b) / 2L;
        Real fm = f(m);
        if (fm.sign() == fa.sign()) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      zeros.push_back((a + b) / 2L);
    }
    prev = std::move(cur);
  }
  return zeros;
}

}  // namespace detail

inline CertResult certify(const std::string& lemma_id, const GridSpec& grid, const PrecisionContext& ctx) {
  detail::validate(grid);
  detail::Recorder rec(lemma_id, ctx);
  const Real pi = const_pi(ctx);
  const long n1d = static_cast<long>(grid.nx) * grid.ny;

  if (lemma_id == "fp_i") {
    // |j(tau)| <= j(i Im tau)
    for (const auto& t : detail::fd_grid(grid, ctx))
      rec.check("|j(tau)| <= j(i y)", t, abs(j_eval(t, ctx)), detail::j_imag_axis(t.y, ctx));
  } else if (lemma_id == "fp_ii") {
    // j(iy) <= e^{2 pi y} + 1193 for y >= 1
    for (const auto& y : detail::linspace(ctx.real(1), ctx.from_double(grid.y_max), n1d))
      rec.check("j(iy) <= e^(2 pi y) + 1193", UHPoint{ctx.real(0), y}, detail::j_imag_axis(y, ctx),
                exp(pi * y * 2L) + 1193L);
  } else if (lemma_id == "fp_iii") {
    // Im tau <= (3/2) log max(e, |j(tau)|)
    const Real e = exp(ctx.real(1));
    for (const auto& t : detail::fd_grid(grid, ctx)) {
      Real aj = abs(j_eval(t, ctx));
      rec.check("Im tau <= 1.5 log max(e, |j|)", t, t.y, log(max(e, aj)) * 3L / 2L);
    }
  } else if (lemma_id == "l53") {
    // log max(1, |j|) <= 2 pi Im tau + 7.09
    for (const auto& t : detail::fd_grid(grid, ctx)) {
      Real aj = abs(j_eval(t, ctx));
      rec.check("log+|j| <= 2 pi y + 7.09", t, aj > 1L ? log(aj) : ctx.real(0), pi * t.y * 2L + ctx.real("7.09"));
    }
  } else if (lemma_id == "l54") {
    // log |Delta| < -2 pi Im tau + 22.16
    for (const auto& t : detail::fd_grid(grid, ctx)) {
      FDPoint r = reduce_fd(t, ctx);
      rec.check("log|Delta| < -2 pi y + 22.16", t, log_abs_delta(r, ctx), ctx.real("22.16") - pi * t.y * 2L,
                true);
    }
  } else if (lemma_id == "bilu") {
    // |j(tau)| <= 47000 |tau - c|^3 for |tau - c| <= 0.001, c in {rho, -rho^2}
    const UHPoint rho = rho_point(ctx);
    const std::vector<UHPoint> centers{rho, {-rho.x, rho.y}};
    const Real radius = ctx.real("0.001");
    for (const auto& c : centers) {
      for (int i = 1; i < grid.nx; ++i) {
        Real r = radius * static_cast<long>(i) / static_cast<long>(grid.nx - 1);
        for (int k = 0; k < grid.ny; ++k) {
          Complex off = Complex::polar(r, pi * (2L * k) / static_cast<long>(grid.ny));
          UHPoint t{c.x + off.re, c.y + off.im};
          if (!detail::in_closed_fd(t, ctx)) continue;
          rec.check("|j| <= 47000 |tau - c|^3", t, abs(j_eval(t, ctx)), r * r * r * 47000L);
        }
      }
    }
  } else if (lemma_id == "e2id") {
    // dV/dx - i dV/dy = -(pi i / 6) E2, by central differences
    const Real bound = detail::e2_identity_bound(ctx);
    for (const auto& t : detail::fd_grid(grid, ctx))
      rec.check("|grad V - (pi/6)(Im E2, Re E2)| <= 10 h^2", t, detail::e2_identity_residual(t, ctx), bound);
    // E2 is real on x in {-1/2, 0, 1/2}.
    const Real im_bound = ctx.pow10(-(ctx.digits() - 5));
    for (const char* xs : {"-0.5", "0", "0.5"}) {
      const Real x = ctx.real(xs);
      for (const auto& y : detail::linspace(sqrt(ctx.real(3)) / 2L, ctx.from_double(grid.y_max), grid.ny)) {
        UHPoint t{x, y};
        rec.check("|Im E2| on x in {-1/2, 0, 1/2}", t, abs(e2_eval(t, ctx).im), im_bound);
      }
    }
  } else if (lemma_id == "vmono") {
    const Real left = ctx.real("-0.5");
    const Real y_lo = sqrt(ctx.real(3)) / 2L;
    // V(x + iy) >= V(-1/2 + iy) along each row of the domain.
    for (const auto& y : detail::linspace(y_lo, ctx.from_double(grid.y_max), grid.ny)) {
      Real v_edge = v_eval({left, y}, ctx);
      for (const auto& x : detail::linspace(left, ctx.real("0.5"), grid.nx)) {
        UHPoint t{x, y};
        if (!detail::in_closed_fd(t, ctx)) continue;
        rec.check("V(-1/2 + iy) <= V(x + iy)", t, v_edge, v_eval(t, ctx));
      }
    }
    // V strictly increasing on the half-line x = -1/2, y > sqrt(3)/2.
    std::vector<Real> ys = detail::linspace(y_lo + ctx.real("1e-4"), ctx.from_double(grid.y_max), n1d);
    Real prev = v_eval({left, ys[0]}, ctx);
    for (std::size_t k = 1; k < ys.size(); ++k) {
      Real cur = v_eval({left, ys[k]}, ctx);
      rec.check("V increasing on x = -1/2", UHPoint{left, ys[k]}, prev, cur, true);
      prev = std::move(cur);
    }
    // E2 changes sign on x = -1/2 exactly once, at rho.
    std::vector<Real> zeros = detail::e2_zeros_on_left_edge(grid.y_max, std::max(grid.ny, 2), ctx);
    rec.check("E2 has one sign change on x = -1/2", std::nullopt, ctx.real(static_cast<long>(zeros.size())),
              ctx.real(1));
    for (const auto& z : zeros)
      rec.check("E2 zero within 1e-6 of sqrt(3)/2", UHPoint{left, z}, abs(z - y_lo), ctx.real("1e-6"), true);
  } else if (lemma_id == "l64") {
    // V(tau) >= V(rho) + C(delta') outside B_delta
    const Real delta = ctx.from_double(grid.exclusion_delta);
    const Real c = c_of_delta_prime(delta_prime(delta, ctx), ctx);
    const UHPoint rho = rho_point(ctx);
    const Real v_rho = v_eval(rho, ctx);
    const Real lhs = v_rho + c;
    for (const auto& t : detail::fd_grid(grid, ctx)) {
      if (!delta.is_zero()) {
        Real d1 = hypot(t.x - rho.x, t.y - rho.y);
        Real d2 = hypot(t.x + rho.x, t.y - rho.y);
        if (d1 <= delta || d2 <= delta) continue;
      }
      rec.check("V(rho) + C(delta') <= V(tau)", t, lhs, v_eval(t, ctx));
    }
  } else if (lemma_id == "r61") {
    // x/12 - log(1 + x)/2 increasing on [5, 100] and > 1.323 from 37.84 on.
    std::vector<Real> xs = detail::linspace(ctx.real(5), ctx.real(100), n1d);
    Real prev = r61_value(xs[0]);
    for (std::size_t k = 1; k < xs.size(); ++k) {
      Real cur = r61_value(xs[k]);
      rec.check("increasing", std::nullopt, prev, cur, true);
      prev = std::move(cur);
    }
    const Real threshold = ctx.real("37.84");
    xs.push_back(threshold);
    for (const auto& x : xs)
      if (x >= threshold) rec.check("> 1.323 for x >= 37.84", std::nullopt, ctx.real("1.323"), r61_value(x), true);
  } else {
    throw UnknownLemma("unknown lemma id '" + lemma_id + "'");
  }
  return rec.finish();
}

// Numeric inequalities between pure constants used by the bounds above.
inline CertResult derived_constants_check(const PrecisionContext& ctx) {
  detail::Recorder rec("constants", ctx);
  const Real pi = const_pi(ctx);
  const Real sqrt3 = sqrt(ctx.real(3));
  const Real log1193 = log(ctx.real(1193));
  std::vector<CertEntry> entries;
  auto add = [&](std::string label, Real lhs, Real rhs) {
    entries.push_back({label, std::nullopt, lhs, rhs});
    rec.check(std::move(label), std::nullopt, std::move(lhs), std::move(rhs), true);
  };
  add("log 1193 < 7.09", log1193, ctx.real("7.09"));
  Real corner = exp(pi * 4L / sqrt3) + 1193L;
  add("e^(4 pi/sqrt 3) + 1193 < 2609", corner, ctx.real(2609));
  add("log(e^(4 pi/sqrt 3) + 1193) < pi sqrt 3 + log 1193", log(corner), pi * sqrt3 + log1193);
  Real delta_const = (1L / (1L - exp(-sqrt3 * pi)) - 1L) * 24L + log(pi * 2L) * 12L;
  add("24 (1/(1 - e^(-sqrt 3 pi)) - 1) + 12 log 2 pi < 22.16", delta_const, ctx.real("22.16"));
  Real combined = ctx.real("29.25") + ctx.real("0.41") * 6L - log(pi) * 6L;
  add("29.25 + 6 * 0.41 - 6 log pi < 24.85", combined, ctx.real("24.85"));
  CertResult r = rec.finish();
  r.entries = std::move(entries);
  return r;
}

}  // namespace faltings
