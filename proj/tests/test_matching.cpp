#include <gtest/gtest.h>

#include <random>

#include "families.hpp"
#include "reference_forms.hpp"

using namespace kok;

namespace {

QuadSurd rat(long p, long q = 1) { return QuadSurd(Rational(p) / q); }
QuadSurd surd(long p, long q, long d) { return QuadSurd(Rational(0), Rational(p) / q, d); }

std::array<QuadSurd, 4> flagship_nu() { return {rat(8), rat(16), rat(8), rat(16)}; }
std::array<QuadSurd, 4> flagship_t() { return {surd(1, 14, 14), surd(2, 7, 14), surd(-1, 14, 14), surd(-2, 7, 14)}; }

// Column pairs in the order p12, p13, p14, p23, p24, p34.
constexpr std::array<std::array<int, 2>, 6> columns{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

}  // namespace

TEST(ExactMinors, FlagshipVanishExactly) {
  const auto lib = minors_affine<QuadSurd>(flagship_nu(), flagship_t());
  const auto ref = fam::ref_minors<QuadSurd>(flagship_nu(), flagship_t());
  for (int m = 0; m < 6; ++m) {
    EXPECT_TRUE(lib[m].is_zero()) << MinorVector::name(m) << " = " << lib[m];
    EXPECT_TRUE(ref[m].is_zero()) << MinorVector::name(m) << " = " << ref[m];
  }
}

TEST(ExactMinors, FlagshipFloating) {
  const double s = std::sqrt(14.0);
  const auto p = EllipticParams::from_t({8, 16, 8, 16}, {s / 14, 2 * s / 7, -s / 14, -2 * s / 7});
  EXPECT_LT(minors(p).max_normalized(), 1e-12);
}

// The library tables agree with the reference minors up to one fixed constant per minor,
// and the reference minors are the 2x2 determinants of N up to the same kind of constant.
TEST(ExactMinors, TablesMatchReferenceForms) {
  std::mt19937 rng(21);
  std::uniform_int_distribution<int> num(-40, 40), den(1, 9);
  std::array<std::optional<QuadSurd>, 6> ratio, det_ratio;
  for (int n = 0; n < 200; ++n) {
    std::array<QuadSurd, 4> nu, t;
    for (int i = 0; i < 4; ++i) {
      nu[i] = rat(num(rng), den(rng));
      t[i] = rat(num(rng), den(rng));
    }
    const auto lib = minors_affine<QuadSurd>(nu, t);
    const auto ref = fam::ref_minors<QuadSurd>(nu, t);
    const auto N = fam::ref_N<QuadSurd>(nu, t);
    for (int m = 0; m < 6; ++m) {
      const auto [i, j] = columns[m];
      const QuadSurd det = N[0][i] * N[1][j] - N[0][j] * N[1][i];
      if (ref[m].is_zero()) {
        EXPECT_TRUE(lib[m].is_zero());
        EXPECT_TRUE(det.is_zero());
        continue;
      }
      if (!ratio[m]) ratio[m] = lib[m] / ref[m];
      if (!det_ratio[m]) det_ratio[m] = det / ref[m];
      EXPECT_TRUE(lib[m] == *ratio[m] * ref[m]) << MinorVector::name(m);
      EXPECT_TRUE(det == *det_ratio[m] * ref[m]) << MinorVector::name(m);
    }
  }
  for (int m = 0; m < 6; ++m) {
    ASSERT_TRUE(ratio[m]);
    EXPECT_FALSE(ratio[m]->is_zero());
  }
}

// Criterion 5: with t = 0 all minors vanish iff nu1 nu3 = nu2 nu4, over a 10^4 rational grid.
TEST(PseudoPlanar, GridIff) {
  const std::array<QuadSurd, 10> vals{rat(-6), rat(-4), rat(-3, 2), rat(-1), rat(1, 2),
                                      rat(1),  rat(2),  rat(3),     rat(4),  rat(6)};
  const std::array<QuadSurd, 4> zero{rat(0), rat(0), rat(0), rat(0)};
  int points = 0, matched = 0, vanishing = 0;
  for (const auto& a : vals)
    for (const auto& b : vals)
      for (const auto& c : vals)
        for (const auto& d : vals) {
          const auto m = minors_affine<QuadSurd>({a, b, c, d}, zero);
          bool all = true;
          for (const auto& v : m) all = all && v.is_zero();
          const bool rel = a * c == b * d;
          ++points;
          matched += all == rel;
          vanishing += all;
        }
  EXPECT_EQ(points, 10000);
  EXPECT_EQ(matched, points);
  EXPECT_GT(vanishing, 100);
}

TEST(PseudoPlanar, Examples) {
  EXPECT_LT(minors(EllipticParams::from_t({2, 4, 6, 3}, {0, 0, 0, 0})).max_normalized(), 1e-15);
  EXPECT_GT(minors(EllipticParams::from_t({2, 4, 6, 5}, {0, 0, 0, 0})).max_normalized(), 1e-3);
}

TEST(LinearBranch, FlagshipValues) {
  const double s = std::sqrt(14.0);
  const auto p = linear_branch_params(16, 16, s / 14, -s / 14);
  const std::array<double, 4> nu{8, 16, 8, 16}, t{s / 14, 2 * s / 7, -s / 14, -2 * s / 7};
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(p.nu[i], nu[i], 1e-12);
    EXPECT_NEAR(p.t_value(i), t[i], 1e-12);
    EXPECT_EQ(p.lambda[i], -1);
    EXPECT_EQ(p.mu[i], -1);
  }
  const auto lb = linear_branch(p.nu, t[0], t[2]);
  EXPECT_NEAR(lb.t2, t[1], 1e-12);
  EXPECT_NEAR(lb.t4, t[3], 1e-12);
  EXPECT_NEAR(lb.p23, 0, 1e-9);
  EXPECT_NEAR(lb.p24, 0, 1e-9);
}

TEST(LinearBranch, RandomSeedsGiveVanishingMinors) {
  std::mt19937 rng(22);
  std::uniform_real_distribution<double> N(4.5, 30), T(0.1, 2);
  for (int n = 0; n < 200; ++n) {
    const double t1 = T(rng), t3 = -T(rng);
    const auto p = linear_branch_params(N(rng), N(rng), t1, t3);
    std::array<double, 4> t;
    for (int i = 0; i < 4; ++i) t[i] = p.t_value(i);
    const auto ref = fam::ref_minors<double>(p.nu, t);
    const auto mv = minors(p);
    for (int m = 0; m < 6; ++m) EXPECT_LT(std::abs(ref[m]) / std::max(1.0, mv.scale[m]), 1e-10);
  }
}

TEST(GenericBranch, PlugBack) {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> N(-15, 15), T(-3, 3);
  int built = 0;
  for (int n = 0; n < 2000 && built < 100; ++n) {
    const Nu4 nu{N(rng), N(rng), N(rng), N(rng)};
    const double t1 = T(rng);
    const auto s = generic_branch_t3_squared(nu, t1);
    if (!s) continue;
    const double t3 = std::sqrt(*s);
    double t2, t4;
    try {
      t2 = solve_t2(nu, t1, t3);
      t4 = solve_t4(nu, t1, t3);
    } catch (const Error&) {
      continue;
    }
    ++built;
    const auto ref = fam::ref_minors<double>(nu, {t1, t2, t3, t4});
    const auto mv = minors(EllipticParams::from_t(nu, {t1, t2, t3, t4}));
    for (int m = 0; m < 6; ++m) EXPECT_LT(std::abs(ref[m]) / std::max(1.0, mv.scale[m]), 1e-8) << m;
    EXPECT_LT(std::abs(generic_condition_residual(nu, t1, t2, t3)) / std::max(1.0, mv.scale[3]), 1e-8);
  }
  EXPECT_GT(built, 20);
}

TEST(GenericBranch, ParamsFromFile) {
  const auto p = generic_branch_params({7, 9, 11, 13}, 0.7);
  EXPECT_LT(minors(p).max_normalized(), 1e-10);
  // the branch lies on the first quartic factor
  const double a = generic_branch_residuals(p.nu, p.t_value(0), p.t_value(2)).first;
  EXPECT_LT(std::abs(a) / std::abs(generic_branch_coefficients(p.nu).first.c00), 1e-9);
}

TEST(SolveT, DegenerateDenominator) {
  // t1 = t3 = 0 with nu1 nu2 nu3 = 16 nu4 kills the t2 denominator
  EXPECT_THROW(solve_t2({2, 4, 2, 1}, 0, 0), Error);
}

// Criterion 9: the closed-form cell formula is inconsistent at the linear-branch seed.
TEST(CadCell, FlagshipSeedIsInconsistent) {
  const double s = std::sqrt(14.0);
  try {
    cad_cell_sample(16, 16, s / 14, -s / 14);
    FAIL() << "expected CellInconsistency";
  } catch (const CellInconsistency& e) {
    EXPECT_EQ(e.kind(), ErrorKind::cell_inconsistency);
    EXPECT_NEAR(e.formula.nu3, 16, 1e-9);
    EXPECT_NEAR(e.formula.nu1, 4, 1e-9);
    EXPECT_GT(e.formula.p24, 1e-3);
    EXPECT_NEAR(e.nu1_consistent, 8, 1e-9);
    EXPECT_NEAR(e.nu3_consistent, 8, 1e-9);
    const auto lb = linear_branch({e.nu1_consistent, 16, e.nu3_consistent, 16}, s / 14, -s / 14);
    EXPECT_NEAR(lb.p23, 0, 1e-8);
    EXPECT_NEAR(lb.p24, 0, 1e-8);
  }
  EXPECT_THROW(cad_cell_sample(3, 16, 0.5, -0.5), Error);
}

TEST(Existence, CaseLabels) {
  EXPECT_EQ(global_existence(fam::flagship()).case_label, 1);
  EXPECT_TRUE(global_existence(fam::flagship()).global_ok);
  for (int c = 1; c <= 5; ++c) {
    const auto fam_c = fam::case_family(c, 5, 100 + c);
    ASSERT_EQ(fam_c.size(), 5u) << "case " << c;
    for (const auto& d : fam_c) EXPECT_EQ(global_existence(d.params).case_label, c);
  }
}

TEST(Existence, LocalFailureIsReported) {
  auto p = fam::factor_pattern({3, 3, 3, 3}, {1, 1, 1, 1});
  const auto r = global_existence(p);
  EXPECT_FALSE(r.global_ok);
  EXPECT_FALSE(r.local_ok[0]);
  EXPECT_NE(r.note.find("no real configurations"), std::string::npos);
}

TEST(Existence, OppositeInequality) {
  // nu1 nu2 small relative to 16 sqrt(mu1 mu2) and t2 large: the inequality fails
  EXPECT_FALSE(global_existence(fam::opposite_mu(1, 1, 20, 2, 2)).global_ok);
  EXPECT_TRUE(global_existence(fam::opposite_mu(1, 1, 0.01, 2, 2)).case_label == 4);
}

TEST(Involutive, TableViolation) {
  EXPECT_EQ(involutive_table_violation(fam::flagship()), -1);
  auto p = fam::flagship();
  p.lambda[1] = 2;
  EXPECT_EQ(involutive_table_violation(p), 1);
}

// Criterion 10 (system part): the solver returns parameters on which the deltoid minors vanish.
TEST(Deltoid, SolverZeroes) {
  DeltoidParams b2{};
  b2.nu1 = 6;
  b2.xi2 = -3;
  b2.xi3 = 3;
  b2.F3 = 0.4;
  b2.t2 = 0.7;
  const auto s2 = solve_deltoid_system(DeltoidSystem::B2, b2, 1);
  EXPECT_LT(deltoid_minor_max(DeltoidSystem::B2, s2), 1e-10);
  DeltoidParams b1 = b2;
  b1.xi3 = -3;
  const auto s1 = solve_deltoid_system(DeltoidSystem::B1, b1, 1);
  EXPECT_LT(deltoid_minor_max(DeltoidSystem::B1, s1), 1e-10);
}

TEST(Deltoid, ReferenceExampleResidualIsFinite) {
  const auto r = deltoid_minors_B2(fam::reference_deltoid_params());
  for (double v : r) EXPECT_TRUE(std::isfinite(v));
}
