#include "faltings/construct.hpp"
#include "support.hpp"

using namespace faltings;

TEST(AutoP, ParityRule) {
  EXPECT_EQ(auto_p(1), 17);
  EXPECT_EQ(auto_p(2), 19);
  EXPECT_EQ(auto_p(99), 17);
  EXPECT_EQ(auto_p(100), 19);
  EXPECT_THROW(auto_p(0), OutOfRange);
}

TEST(Build, DegreeOne) {
  EisensteinResult r = build_eisenstein(1, 17);
  ASSERT_EQ(r.b.size(), 1u);
  EXPECT_EQ(r.b[0], 2);
  EXPECT_EQ(r.f_coeffs, (std::vector<BigInt>{17, 1}));
  EXPECT_TRUE(verify_eisenstein(r));
}

// Oracle for n = 1: psi(b) = b_1 = m, so a search over b_1 finds the unique
// solution of f(0) = p.
TEST(Build, DegreeOneBruteForce) {
  int found = 0;
  for (int b1 = -50; b1 <= 50; ++b1) {
    // f = (X - 1) + 9 b1
    if (-1 + 9 * b1 == 17) {
      EXPECT_EQ(b1, 2);
      ++found;
    }
  }
  EXPECT_EQ(found, 1);
}

// Oracle for n = 2, p = 19: brute force over b mod 19 for
// a_1 = -2 + 9 b_1 = 0 and psi(b) = -b_1 + 9 b_2 = m mod p.
TEST(Build, DegreeTwoBruteForce) {
  const int p = 19, m = 2;
  std::vector<std::pair<int, int>> sols;
  for (int b1 = 0; b1 < p; ++b1)
    for (int b2 = 0; b2 < p; ++b2)
      if (((-2 + 9 * b1) % p + p) % p == 0 && ((-b1 + 9 * b2 - m) % p + p) % p == 0) sols.emplace_back(b1, b2);
  ASSERT_EQ(sols.size(), 1u);
  EisensteinResult r = build_eisenstein(2, 19);
  EXPECT_EQ(detail::pmod(r.b[0], p), sols[0].first);
  EXPECT_EQ(detail::pmod(r.b[1], p), sols[0].second);
  EXPECT_EQ(r.b, (std::vector<BigInt>{34, 4}));
  EXPECT_EQ(r.f_coeffs, (std::vector<BigInt>{19, 304, 1}));
  EXPECT_TRUE(verify_eisenstein(r));
}

TEST(Build, PreconditionErrors) {
  EXPECT_THROW(build_eisenstein(2, 17), BadCongruence);
  EXPECT_THROW(build_eisenstein(1, 19), BadCongruence);
  EXPECT_THROW(build_eisenstein(1, 35), NotPrime);
  EXPECT_THROW(build_eisenstein(2, 1), NotPrime);
  EXPECT_THROW(build_eisenstein(0, 17), OutOfRange);
  EXPECT_THROW(build_eisenstein(EisensteinSpec{1, 17, 3}), BadCongruence);
}

TEST(Build, OtherPrimes) {
  // 37 = 1 mod 9, 53 = -1 mod 9, 73 = 1 mod 9
  for (auto [n, p] : std::vector<std::pair<int, int>>{{2, 37}, {4, 73}, {3, 53}, {7, 71}, {12, 109}}) {
    EisensteinResult r = build_eisenstein(n, p);
    EXPECT_TRUE(verify_eisenstein(r)) << n << " " << p;
  }
}

TEST(Build, AllDegreesUpToFifty) {
  for (int n = 1; n <= 50; ++n) {
    EisensteinResult r = build_eisenstein(n, auto_p(n));
    ASSERT_TRUE(verify_eisenstein(r)) << n;
    EXPECT_EQ(detail::psi(r.b), r.spec.m);
    EXPECT_EQ(Poly(r.f_coeffs).coeffs(), detail::shifted_form(r.b).coeffs());
  }
}

TEST(Verify, TamperingIsCaught) {
  EisensteinResult r = build_eisenstein(2, 19);
  EisensteinResult t = r;
  t.f_coeffs[1] += 1;
  EXPECT_FALSE(verify_eisenstein(t));
  t = r;
  t.b[1] += 19;
  EXPECT_FALSE(verify_eisenstein(t));
  t = r;
  t.spec.m += 1;
  EXPECT_FALSE(verify_eisenstein(t));
  t = r;
  t.b.pop_back();
  EXPECT_FALSE(verify_eisenstein(t));
}

TEST(Family, Heights) {
  PrecisionContext ctx(40);
  std::vector<FamilyEntry> fam = family_heights(10, ctx);
  ASSERT_EQ(fam.size(), 10u);
  EXPECT_LT(dist(fam[0].h0, "0.944404448"), 1e-9);
  const Real hmin = hmin_closed(ctx);
  for (const auto& e : fam) {
    EXPECT_EQ(e.p, auto_p(e.n));
    EXPECT_LT(dist(e.height - hmin, e.h0), 1e-38);
  }
  // decreasing along each parity class
  for (std::size_t k = 2; k < fam.size(); ++k) EXPECT_LT(fam[k].h0, fam[k - 2].h0);
  EXPECT_THROW(family_heights(0, ctx), OutOfRange);
}

TEST(Family, ExplicitPrimeOverride) {
  PrecisionContext ctx(40);
  FamilyEntry e = family_entry(100, 17, ctx);
  EXPECT_LT(dist(e.h0, "0.00944404448"), 1e-10);
  EXPECT_LT(dist(e.height - hmin_closed(ctx), "0.00944404448"), 1e-10);
  EXPECT_LT(dist(e.height, "-0.739308441"), 1e-8);
  // 17 is not 1 mod 9, so no Eisenstein polynomial of even degree exists at 17
  EXPECT_FALSE(e.constructible);
  EXPECT_TRUE(family_entry(100, 19, ctx).constructible);
}

TEST(Family, ApproachesMinimum) {
  PrecisionContext ctx(30);
  const Real hmin = hmin_closed(ctx);
  for (const char* eps_text : {"0.1", "0.01", "0.001"}) {
    Real eps = ctx.real(eps_text);
    int bound = static_cast<int>(std::ceil((log(ctx.real(19)) / (eps * 3L)).to_double()));
    int witness = 0;
    for (int n = 1; n <= bound && witness == 0; ++n)
      if (family_entry(n, auto_p(n), ctx).height - hmin < eps) witness = n;
    ASSERT_GT(witness, 0) << eps_text;
    EXPECT_TRUE(verify_eisenstein(build_eisenstein(witness, auto_p(witness)))) << witness;
  }
}
