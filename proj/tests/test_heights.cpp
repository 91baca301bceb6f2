#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "faltings/heights.hpp"
#include "faltings/polyparse.hpp"
#include "support.hpp"

using namespace faltings;

namespace {

std::vector<IntPolynomial> bundled_corpus() {
  std::ifstream in(FALTINGS_CORPUS);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_corpus(ss.str());
}

}  // namespace

TEST(Hmin, ClosedForm) {
  PrecisionContext ctx(50);
  EXPECT_LT(dist(hmin_closed(ctx), "-0.748752485503337827918"), 1e-21);
}

TEST(Hmin, AgreesWithModularKernel) {
  PrecisionContext ctx(50);
  Real v = v_eval(rho_point(ctx), ctx) + log(const_pi(ctx)) / 2L;
  EXPECT_LT(dist(hmin_closed(ctx), v), 1e-40);
}

TEST(WeilHeight, QuadraticFormulaOracle) {
  PrecisionContext ctx(40);
  // x^2 - x - 1: roots (1 +- sqrt 5)/2, h = log((1 + sqrt 5)/2) / 2
  WeilHeight w = weil_height(parse_poly("x^2 - x - 1"), ctx);
  Real golden = (1L + sqrt(ctx.real(5))) / 2L;
  EXPECT_LT(dist(w.total, log(golden) / 2L), 1e-38);
  EXPECT_LT(dist(w.finite, "0"), 1e-38);
  // 3x^2 - x - 1: roots (1 +- sqrt 13)/6 both inside the unit disk
  WeilHeight v = weil_height(parse_poly("3x^2 - x - 1"), ctx);
  EXPECT_LT(dist(v.total, log(ctx.real(3)) / 2L), 1e-38);
  EXPECT_LT(dist(v.arch, "0"), 1e-38);
}

TEST(WeilHeight, RationalValues) {
  PrecisionContext ctx(30);
  EXPECT_LT(dist(weil_height(parse_poly("x - 1728"), ctx).total, log(ctx.real(1728))), 1e-27);
  // 2x - 3 has root 3/2, h = log 3
  EXPECT_LT(dist(weil_height(parse_poly("2x - 3"), ctx).total, log(ctx.real(3))), 1e-28);
  EXPECT_LT(dist(weil_height(parse_poly("x"), ctx).total, "0"), 1e-28);
}

TEST(WeilHeight, InversionInvarianceOnCorpus) {
  PrecisionContext ctx(30);
  int checked = 0;
  for (const auto& p : bundled_corpus()) {
    if (p.coeffs().front() == 0) continue;
    IntPolynomial inv(p.poly().reversed());
    EXPECT_LT(dist(weil_height(p, ctx).total, weil_height(inv, ctx).total), 1e-26) << p.to_string();
    if (++checked == 20) break;
  }
  EXPECT_EQ(checked, 20);
}

TEST(WeilHeight, RootOrderIrrelevant) {
  PrecisionContext ctx(40);
  IntPolynomial p = parse_poly("x^10 + x^9 - x^7 - x^6 - x^5 - x^4 - x^3 + x + 1");
  std::vector<Complex> roots = roots_hp(p, ctx);
  WeilHeight a = detail::weil_from_roots(p.poly(), roots, ctx);
  std::mt19937 rng(1);
  std::shuffle(roots.begin(), roots.end(), rng);
  WeilHeight b = detail::weil_from_roots(p.poly(), roots, ctx);
  EXPECT_LT(dist(a.total, b.total), 1e-38);
  // Lehmer's number
  EXPECT_LT(dist(a.total * 10L, "0.162357612007738139432"), 1e-20);
}

TEST(Roots, ConjugatePairsAndOrder) {
  PrecisionContext ctx(30);
  std::vector<Complex> r = roots_hp(parse_poly("x^3 - 2"), ctx);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_TRUE(r[0].im.is_zero());
  EXPECT_LT(dist(r[0].re, cbrt(ctx.real(2))), 1e-29);
  EXPECT_GT(r[1].im, 0L);
  EXPECT_EQ(cmp(r[2].im, -r[1].im), 0);
  EXPECT_EQ(cmp(r[2].re, r[1].re), 0);
}

TEST(Roots, RejectsRepeatedFactors) {
  PrecisionContext ctx(30);
  EXPECT_THROW(roots_hp(parse_poly("(x - 1)^2 (x + 2)"), ctx), NotSquarefree);
}

TEST(Irreducibility, Verdicts) {
  PrecisionContext ctx(30);
  auto verdict = [&](const char* s) {
    IntPolynomial p = parse_poly(s);
    return check_irreducible(p.poly(), roots_hp(p, ctx), ctx).verdict;
  };
  // reducible modulo every prime, irreducible over Q
  EXPECT_EQ(verdict("x^4 + 1"), Irreducibility::Irreducible);
  EXPECT_EQ(verdict("x^4 - 10x^2 + 1"), Irreducibility::Irreducible);
  EXPECT_EQ(verdict("x^4 + 4"), Irreducibility::Reducible);
  EXPECT_EQ(verdict("(2x^2 + 1)(3x^2 + x + 1)"), Irreducibility::Reducible);
  EXPECT_EQ(verdict("phi(30)"), Irreducibility::Irreducible);
}

TEST(FaltingsStable, FrozenValues) {
  PrecisionContext ctx(40);
  EXPECT_LT(dist(faltings_stable(parse_poly("x"), ctx).faltings_stable, "-0.748752485503337827918"), 1e-20);
  EXPECT_LT(dist(faltings_stable(parse_poly("x - 1"), ctx).faltings_stable, "-0.748628177398873"), 1e-14);
  EXPECT_LT(dist(faltings_stable(parse_poly("x - 1728"), ctx).faltings_stable, "-0.738167982986809"), 1e-14);
}

TEST(FaltingsStable, ReportFields) {
  PrecisionContext ctx(30);
  HeightReport r = faltings_stable(parse_poly("x^2 + 1"), ctx);
  EXPECT_EQ(r.degree, 2);
  EXPECT_TRUE(r.is_integral_j);
  ASSERT_EQ(r.per_root.size(), 2u);
  // conjugate roots share V and sit at mirrored points
  EXPECT_EQ(cmp(r.per_root[0].v, r.per_root[1].v), 0);
  EXPECT_LT(dist(r.hmin_gap, r.faltings_stable - hmin_closed(ctx)), 1e-28);
  EXPECT_FALSE(faltings_stable(parse_poly("2x - 1"), ctx).is_integral_j);
}

TEST(FaltingsStable, ConjugatesMatchDirectInversion) {
  PrecisionContext ctx(30);
  HeightReport r = faltings_stable(parse_poly("x^2 - x + 5"), ctx);
  for (const auto& info : r.per_root) {
    Real v = v_at_reduced(inverse_j(info.root, ctx), ctx);
    EXPECT_LT(dist(v, info.v), 1e-26);
    EXPECT_LT(abs(j_eval(info.tau.point, ctx) - info.root).to_double(), 1e-24);
  }
}

TEST(FaltingsStable, DigitsIndependence) {
  PrecisionContext lo(15), hi(40);
  for (const char* s : {"x - 1", "x^2 + x + 1", "x^4 - x^3 - x^2 - x + 1", "3x^2 - x - 1"}) {
    IntPolynomial p = parse_poly(s);
    EXPECT_LT(dist(faltings_stable(p, lo).faltings_stable.at_precision(hi.bits()),
                   faltings_stable(p, hi).faltings_stable),
              1e-13)
        << s;
  }
}

TEST(FaltingsStable, Preconditions) {
  PrecisionContext ctx(30);
  EXPECT_THROW(faltings_stable(parse_poly("x^2 - 1"), ctx), Reducible);
  EXPECT_THROW(faltings_stable(parse_poly("x^2 (x + 1)"), ctx), NotSquarefree);
}

TEST(Prop54, Values) {
  PrecisionContext ctx(30);
  EXPECT_LT(dist(prop54_lower_bound(ctx.real("37.84"), ctx.real(0), ctx), "-0.74739198838"), 1e-10);
  EXPECT_LT(dist(prop54_lower_bound(log(ctx.real(1728)), ctx.real(0), ctx), "-2.51713576721"), 1e-10);
  EXPECT_LT(dist(prop54_lower_bound(ctx.real(0), ctx.real(1), ctx), "-1.071"), 1e-28);
  EXPECT_THROW(prop54_lower_bound(ctx.real(-1), ctx.real(0), ctx), NegativeInput);
  EXPECT_THROW(prop54_lower_bound(ctx.real(1), ctx.real(-1), ctx), NegativeInput);
}

TEST(Corpus, SandwichAndMinimum) {
  PrecisionContext ctx(40);
  std::vector<IntPolynomial> polys = bundled_corpus();
  ASSERT_GE(polys.size(), 20u);
  std::vector<ScanEntry> scan = scan_corpus(polys, ctx);
  ASSERT_EQ(scan.size(), polys.size());
  const Real hmin = hmin_closed(ctx);
  for (const auto& e : scan) {
    ASSERT_TRUE(e.report) << e.poly.to_string() << ": " << e.error;
    EXPECT_TRUE(silverman_sandwich_check(*e.report, ctx)) << e.poly.to_string();
    if (e.poly == parse_poly("x"))
      EXPECT_LT(dist(e.report->faltings_stable, hmin), 1e-35);
    else
      EXPECT_GT(e.report->faltings_stable, hmin) << e.poly.to_string();
  }
  EXPECT_EQ(scan[0].poly, parse_poly("x"));
  EXPECT_EQ(scan[1].poly, parse_poly("x - 1"));
  for (std::size_t k = 1; k < scan.size(); ++k)
    EXPECT_LE(scan[k - 1].report->faltings_stable, scan[k].report->faltings_stable);
}

TEST(Corpus, FailuresGoLast) {
  PrecisionContext ctx(20);
  std::vector<IntPolynomial> polys{parse_poly("x^2 - 1"), parse_poly("x - 1"), parse_poly("x")};
  std::vector<ScanEntry> scan = scan_corpus(polys, ctx);
  EXPECT_EQ(scan[0].poly, parse_poly("x"));
  EXPECT_EQ(scan[1].poly, parse_poly("x - 1"));
  EXPECT_FALSE(scan[2].report.has_value());
  EXPECT_NE(scan[2].error.find("Reducible"), std::string::npos);
}
