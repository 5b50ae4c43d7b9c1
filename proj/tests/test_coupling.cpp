#include <gtest/gtest.h>

#include <random>

#include "families.hpp"
#include "reference_forms.hpp"

using namespace kok;

using fam::ref_coupling_relation;
using fam::ref_j2;

TEST(Mobius, Examples) {
  EXPECT_NEAR(mobius(ProjectiveReal::zero(), ProjectiveReal::value(0.7)).to_double(), 0.7, 1e-15);
  EXPECT_NEAR(mobius(ProjectiveReal::value(1), ProjectiveReal::zero()).to_double(), 1, 1e-15);
  EXPECT_NEAR(mobius(ProjectiveReal::infinity(), ProjectiveReal::value(2)).to_double(), -0.5, 1e-15);
}

TEST(Mobius, AddsDihedralAngles) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> A(-pi, pi);
  for (int n = 0; n < 1000; ++n) {
    const double a = A(rng), b = A(rng);
    const auto F = ProjectiveReal::from_angle(b), x = ProjectiveReal::from_angle(a);
    EXPECT_LT(chordal(mobius(F, x), ProjectiveReal::from_angle(a + b)), 1e-13);
    EXPECT_LT(chordal(mobius_inverse(F, mobius(F, x)), x), 1e-13);
  }
}

TEST(Coupling, TFromF) {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> A(-1.5, 1.5);
  for (int n = 0; n < 200; ++n) {
    const double a = A(rng);
    const auto F = ProjectiveReal::from_angle(a);
    EXPECT_NEAR(t_of_F(F).to_double(), std::tan(a), 1e-9 * (1 + std::abs(std::tan(a))));
  }
  EXPECT_TRUE(t_of_F(ProjectiveReal::value(1)).is_infinite(1e-15));
  EXPECT_TRUE(t_of_F(ProjectiveReal::value(-1)).is_infinite(1e-15));
}

TEST(Involutive, Table) {
  EXPECT_TRUE(is_involutive(ProjectiveReal::zero(), 3, 3));
  EXPECT_FALSE(is_involutive(ProjectiveReal::zero(), 3, 2));
  EXPECT_TRUE(is_involutive(ProjectiveReal::value(0.4), -1, -1));
  EXPECT_FALSE(is_involutive(ProjectiveReal::value(0.4), -1, 2));
  EXPECT_TRUE(is_involutive(ProjectiveReal::infinity(), 2, 0.5));
  EXPECT_FALSE(is_involutive(ProjectiveReal::infinity(), 2, 2));
}

TEST(InducedInvolution, Examples) {
  EXPECT_NEAR(induced_involution(ProjectiveReal::zero(), 5, ProjectiveReal::value(2)).to_double(), 2.5, 1e-15);
  EXPECT_NEAR(induced_involution(ProjectiveReal::value(0.4), -1, ProjectiveReal::value(1)).to_double(), -1, 1e-14);
}

// Criterion 7: the induced involution is self-inverse and equals the lemma's formula.
TEST(Property, InducedInvolutionSelfInverse) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> A(-pi, pi), L(-4, 4);
  double worst = 0, formula = 0;
  for (int n = 0; n < 1000; ++n) {
    const auto F = ProjectiveReal::from_angle(A(rng));
    const double l = L(rng);
    const auto x = ProjectiveReal::from_angle(A(rng));
    worst = std::max(worst, chordal(induced_involution(F, l, induced_involution(F, l, x)), x));
    formula = std::max(formula, chordal(induced_involution(F, l, x), ref_j2(F.p(), F.q(), l, x)));
  }
  EXPECT_LT(worst, 1e-12);
  EXPECT_LT(formula, 1e-12);
}

// Criterion 7: the coupling relation vanishes identically in x2 under each row of the involutive table.
TEST(Property, CouplingRelationUnderInducedInvolution) {
  std::mt19937 rng(6);
  std::uniform_real_distribution<double> A(-pi, pi), L(-4, 4);
  double worst = 0;
  for (int n = 0; n < 1000; ++n) {
    const auto x = ProjectiveReal::from_angle(A(rng));
    const double l = L(rng);
    const auto F = ProjectiveReal::from_angle(A(rng));
    worst = std::max(worst, std::abs(ref_coupling_relation(0, 1, l, l, x)));                // F = 0, equal factors
    worst = std::max(worst, std::abs(ref_coupling_relation(F.p(), F.q(), -1, -1, x)));      // F finite, both -1
    worst = std::max(worst, std::abs(ref_coupling_relation(1, 0, 1 / l, l, x)) / (1 + std::abs(1 / l)));  // F infinite
  }
  EXPECT_LT(worst, 1e-12);
  // off the table the equation fails somewhere
  EXPECT_GT(std::abs(ref_coupling_relation(0.3, 1, -1, 2, ProjectiveReal::value(0.5))), 1e-3);
}

TEST(WTransform, Examples) {
  EXPECT_NEAR(w_transform(ProjectiveReal::value(7), ProjectiveReal::zero(), 1).to_double(), 7, 1e-14);
  const double t2 = 2 * std::sqrt(14.0) / 7;
  EXPECT_NEAR(w_transform(ProjectiveReal::value(1), ProjectiveReal::value(t2), 1).to_double(),
              (2 + 8 * std::sqrt(14.0) / 7) / (2 - 2 * std::sqrt(14.0) / 7), 1e-12);
}

// w + (-1)/w composed with the coupling equals the w transform when lambda = -1.
TEST(Property, WTransformMatchesMobiusRoute) {
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> A(-pi, pi);
  for (int n = 0; n < 1000; ++n) {
    const auto F = ProjectiveReal::from_angle(A(rng));
    const auto x = ProjectiveReal::from_angle(A(rng));
    const auto w = symmetric_coordinate(x, -1);
    const auto y = mobius(F, x);
    const auto w_next = symmetric_coordinate(y, -1);
    EXPECT_LT(chordal(w_transform(w, t_of_F(F), 1), w_next), 1e-9);
  }
  // t infinite, F = 1: the projective limit
  const auto F = ProjectiveReal::value(1);
  const auto x = ProjectiveReal::value(0.3);
  EXPECT_LT(chordal(w_transform(symmetric_coordinate(x, -1), t_of_F(F), 1),
                    symmetric_coordinate(mobius(F, x), -1)),
            1e-12);
}

TEST(Quotient, PseudoPlanarReduction) {
  QuotientEllipticElliptic e{-0.5, 3, -0.7, 2, ProjectiveReal::zero(), ProjectiveReal::zero(), 1};
  const double x1 = 1.7, x3 = -0.4;
  const double direct = (3 / (x1 - 0.5 / x1)) * (x3 - 0.7 / x3) - 2;
  const auto r = quotient_residual(e, ProjectiveReal::value(x1), ProjectiveReal::value(x3));
  EXPECT_NEAR(r.value / r.cleared, direct, 1e-12);
}

// Points of Z12 from the chain solve lie on the quotient curve.
TEST(Quotient, ChainPointsSatisfyQuotient) {
  const MeshDesign d = fam::flagship_design();
  const EllipticParams p = elliptic_params(d.linkage);
  QuotientEllipticElliptic e{p.mu[0], p.nu[0], p.mu[1], p.nu[1], d.linkage.F[1], d.linkage.F[2], p.k(1)};
  const Chain chain(d.linkage);
  int n = 0;
  for (double x1 : {3.0, 0.4, -2.0, 11.0}) {
    for (const auto& s : chain.all_states(ProjectiveReal::value(x1))) {
      const auto r = quotient_residual(e, s.x[0], s.x[2]);
      EXPECT_LT(std::abs(r.value) / (1 + std::abs(r.cleared)), 1e-9);
      ++n;
    }
  }
  EXPECT_GT(n, 0);
}
