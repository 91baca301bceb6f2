#include <random>

#include "faltings/modular.hpp"
#include "support.hpp"

using namespace faltings;

namespace {

UHPoint pt(const PrecisionContext& ctx, const char* x, const char* y) { return {ctx.real(x), ctx.real(y)}; }

Complex tau_c(const UHPoint& t) { return {t.x, t.y}; }

double cdist(const Complex& a, const Complex& b) { return abs(a - b).to_double(); }

// Random points of the closed fundamental domain with y <= y_max.
std::vector<UHPoint> fd_samples(const PrecisionContext& ctx, int count, double y_max, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> ux(-0.5, 0.5), uy(0.0, 1.0);
  std::vector<UHPoint> out;
  while (static_cast<int>(out.size()) < count) {
    double x = ux(rng);
    double lo = std::sqrt(1 - x * x);
    double y = lo + (y_max - lo) * uy(rng);
    out.push_back({ctx.from_double(x), ctx.from_double(y)});
  }
  return out;
}

}  // namespace

TEST(ReduceFd, Examples) {
  PrecisionContext ctx(30);
  FDPoint a = reduce_fd(pt(ctx, "3", "2"), ctx);
  EXPECT_LT(dist(a.point.x, "0"), 1e-29);
  EXPECT_LT(dist(a.point.y, "2"), 1e-29);
  FDPoint b = reduce_fd(pt(ctx, "0", "0.5"), ctx);
  EXPECT_LT(dist(b.point.x, "0"), 1e-29);
  EXPECT_LT(dist(b.point.y, "2"), 1e-29);
  // x = 1/2 is identified with x = -1/2
  FDPoint c = reduce_fd(pt(ctx, "0.5", "1.3"), ctx);
  EXPECT_LT(dist(c.point.x, "-0.5"), 1e-29);
  // right half of the arc goes to the left half
  FDPoint d = reduce_fd(pt(ctx, "0.28", "0.96"), ctx);
  EXPECT_LT(dist(d.point.x, "-0.28"), 1e-28);
  EXPECT_LT(dist(d.point.y, "0.96"), 1e-28);
}

TEST(ReduceFd, MatrixCarriesInputToOutput) {
  PrecisionContext ctx(30);
  for (const char* y : {"0.01", "0.3", "0.77"}) {
    UHPoint t = pt(ctx, "0.3183", y);
    FDPoint r = reduce_fd(t, ctx);
    EXPECT_EQ(r.reduced_by.det(), 1);
    UHPoint back = act(r.reduced_by, t);
    EXPECT_LT(dist(back.x, r.point.x), 1e-25);
    EXPECT_LT(dist(back.y, r.point.y), 1e-25);
    EXPECT_LE(abs(r.point.x).to_double(), 0.5);
    EXPECT_GE((sqr(r.point.x) + sqr(r.point.y)).to_double(), 1 - 1e-25);
  }
}

TEST(ReduceFd, Errors) {
  PrecisionContext ctx(30);
  EXPECT_THROW(reduce_fd(pt(ctx, "0", "0"), ctx), OutOfRange);
  EXPECT_THROW(reduce_fd(pt(ctx, "0", "-1"), ctx), OutOfRange);
  EXPECT_THROW(reduce_fd(pt(ctx, "0.1", "1e-20"), ctx), PrecisionExhausted);
}

TEST(Mat2, OverflowIsReported) {
  Mat2 big{1L << 40, 0, 0, 1};
  EXPECT_THROW(big * big, PrecisionExhausted);
}

TEST(LogAbsDelta, FrozenValues) {
  PrecisionContext ctx(30);
  EXPECT_LT(dist(log_abs_delta(reduce_fd(pt(ctx, "0", "1"), ctx), ctx), "15.7263951109381142190"), 1e-19);
  EXPECT_LT(dist(log_abs_delta(reduce_fd(rho_point(ctx), ctx), ctx), "16.7164553584917977622"), 1e-19);
}

TEST(LogAbsDelta, ModularityUnderInversion) {
  // log|Delta(-1/tau)| = log|Delta(tau)| + 12 log|tau|
  PrecisionContext ctx(30);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ux(-0.5, 0.5), uy(0.8, 2.0);
  for (int k = 0; k < 20; ++k) {
    UHPoint t{ctx.from_double(ux(rng)), ctx.from_double(uy(rng))};
    UHPoint s = act(Mat2::invert(), t);
    Real lhs = log_abs_delta_at(s, ctx);
    Real rhs = log_abs_delta_at(t, ctx) + log(abs(tau_c(t))) * 12L;
    EXPECT_LT(dist(lhs, rhs), 1e-27);
  }
}

TEST(LogAbsDelta, SeriesDoublingStable) {
  PrecisionContext ctx(40);
  for (const UHPoint& t : {rho_point(ctx), pt(ctx, "0", "1"), pt(ctx, "0.25", "1.5")}) {
    Real a = log_abs_delta_series(t, ctx.series_terms());
    Real b = log_abs_delta_series(t, 2 * ctx.series_terms());
    EXPECT_LT(dist(a, b), 1e-45);
  }
}

TEST(JEval, SpecialValues) {
  PrecisionContext ctx(30);
  EXPECT_LT(cdist(j_eval(pt(ctx, "0", "1"), ctx), ctx.complex(1728)), 1e-24);
  EXPECT_LT(abs(j_eval(rho_point(ctx), ctx)).to_double(), 1e-24);
  EXPECT_LT(cdist(j_eval(pt(ctx, "0", "2"), ctx), ctx.complex(287496)), 1e-22);
  EXPECT_LT(cdist(j_eval({ctx.real(0), sqrt(ctx.real(2))}, ctx), ctx.complex(8000)), 1e-23);
  EXPECT_LT(cdist(j_eval({ctx.real("0.5"), sqrt(ctx.real(7)) / 2L}, ctx), ctx.complex(-3375)), 1e-23);
  // j((1 + sqrt(-11))/2) = -32768
  EXPECT_LT(cdist(j_eval({ctx.real("0.5"), sqrt(ctx.real(11)) / 2L}, ctx), ctx.complex(-32768)), 1e-22);
}

TEST(JEval, ModularAndConjugationSymmetry) {
  PrecisionContext ctx(30);
  for (const UHPoint& t : fd_samples(ctx, 20, 2.5, 11)) {
    Complex j = j_eval(t, ctx);
    Real scale = max(ctx.real(1), abs(j));
    Complex jt = j_eval({t.x + 1L, t.y}, ctx);
    Complex js = j_eval(act(Mat2::invert(), t), ctx);
    Complex jm = j_eval({-t.x, t.y}, ctx);
    EXPECT_LT((abs(jt - j) / scale).to_double(), 1e-26);
    EXPECT_LT((abs(js - j) / scale).to_double(), 1e-26);
    EXPECT_LT((abs(jm - conj(j)) / scale).to_double(), 1e-26);
  }
}

TEST(JEval, SeriesDoublingStable) {
  PrecisionContext a(30), b(30, 10, 2 * PrecisionContext(30).series_terms());
  for (const UHPoint& t : fd_samples(a, 10, 3.0, 5)) {
    Complex ja = j_eval(t, a), jb = j_eval(t, b);
    EXPECT_LT((abs(ja - jb) / max(a.real(1), abs(ja))).to_double(), 1e-30);
  }
}

TEST(E2, VanishesAtRho) {
  PrecisionContext ctx(30);
  EXPECT_LT(abs(e2_eval(rho_point(ctx), ctx)).to_double(), 1e-25);
}

TEST(E2, RealOnSymmetryLines) {
  PrecisionContext ctx(30);
  for (const char* x : {"-0.5", "0", "0.5"})
    for (const char* y : {"0.9", "1.3", "2.7"}) EXPECT_LT(abs(e2_eval(pt(ctx, x, y), ctx).im).to_double(), 1e-25);
}

TEST(E2, WeightTwoUnderInversion) {
  // E2*(-1/tau) = tau^2 E2*(tau)
  PrecisionContext ctx(30);
  for (const char* x : {"0.3", "-0.2", "0.45"}) {
    UHPoint t = pt(ctx, x, "1.2");
    Complex tau = tau_c(t);
    Complex lhs = e2_eval(act(Mat2::invert(), t), ctx);
    Complex rhs = tau * tau * e2_eval(t, ctx);
    EXPECT_LT(cdist(lhs, rhs), 1e-27);
  }
}

TEST(E2, DomainGuard) {
  PrecisionContext ctx(30);
  EXPECT_THROW(e2_eval(pt(ctx, "0", "0.4"), ctx), DomainTooLow);
}

TEST(V, FrozenValues) {
  PrecisionContext ctx(30);
  EXPECT_LT(dist(v_eval(rho_point(ctx), ctx), "-1.32111742842803791499"), 1e-19);
  EXPECT_LT(dist(v_eval(pt(ctx, "0", "1"), ctx), "-1.31053292591150951825"), 1e-19);
}

TEST(V, InvariantUnderSl2) {
  PrecisionContext ctx(30);
  for (const UHPoint& t : fd_samples(ctx, 10, 2.0, 3)) {
    Real v = v_eval(t, ctx);
    EXPECT_LT(dist(v_eval(act(Mat2::invert(), t), ctx), v), 1e-27);
    EXPECT_LT(dist(v_eval(act(Mat2::translate(3) * Mat2::invert(), t), ctx), v), 1e-27);
  }
}

TEST(InverseJ, ExactShortcuts) {
  PrecisionContext ctx(30);
  FDPoint r = inverse_j(ctx.complex(0), ctx);
  EXPECT_LT(dist(r.point.y, sqrt(ctx.real(3)) / 2L), 1e-29);
  FDPoint i = inverse_j(ctx.complex(1728), ctx);
  EXPECT_LT(dist(i.point.x, "0"), 1e-29);
  EXPECT_LT(dist(i.point.y, "1"), 1e-29);
}

TEST(InverseJ, HardTargets) {
  PrecisionContext ctx(30);
  std::vector<Complex> targets{ctx.complex(1), ctx.complex(-1), {ctx.real("1e-12"), ctx.real("3e-12")},
                               ctx.complex(1729), ctx.complex(1727), ctx.complex(-3375),
                               {ctx.real("1e15"), ctx.real("-2e15")}, ctx.complex(-1000000)};
  for (const Complex& j : targets) {
    FDPoint t = inverse_j(j, ctx);
    Complex back = j_eval(t.point, ctx);
    EXPECT_LT((abs(back - j) / max(ctx.real(1), abs(j))).to_double(), 1e-24) << j.re.str(10);
  }
}

TEST(InverseJ, RoundTripHundredSamples) {
  PrecisionContext ctx(30);
  const double tol = std::pow(10.0, -(ctx.digits() - 6));
  int n = 0;
  for (const UHPoint& t : fd_samples(ctx, 100, 3.0, 2024)) {
    FDPoint r = inverse_j(j_eval(t, ctx), ctx);
    EXPECT_LT(cdist(tau_c(r.point), tau_c(t)), tol) << t.x.str(10) << " " << t.y.str(10);
    ++n;
  }
  EXPECT_EQ(n, 100);
}
