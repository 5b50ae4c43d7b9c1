#include <gtest/gtest.h>

#include <random>

#include "families.hpp"

using namespace kok;
using oracle::BiquadraticPoly;

namespace {

// (u - r1)(u - r2)(v^2 + 1) in the coefficient layout of BiquadraticPoly.
BiquadraticPoly split(double r1, double r2) {
  const double U[3] = {r1 * r2, -(r1 + r2), 1}, V[3] = {1, 0, 1};
  BiquadraticPoly P;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) P.c[i][j] = U[i] * V[j];
  return P;
}

}  // namespace

TEST(Bricard, MatchesConfigPoly) {
  const SphericalQuad q{pi / 3, 1.1, pi / 4, pi / 5};
  const auto P = oracle::bricard(q.alpha, q.beta, q.gamma, q.delta);
  const auto c = config_poly(q);
  EXPECT_NEAR(P.c[2][2], c.c22, 1e-15);
  EXPECT_NEAR(P.c[2][0], c.c20, 1e-15);
  EXPECT_NEAR(P.c[0][2], c.c02, 1e-15);
  EXPECT_NEAR(P.c[1][1], 2 * c.c11, 1e-15);
  EXPECT_NEAR(P.c[0][0], c.c00, 1e-15);
}

TEST(Resultant, SharedRootTrivialCases) {
  std::mt19937 rng(51);
  std::uniform_real_distribution<double> A(-pi, pi);
  const auto disjoint = oracle::sylvester_resultant(split(1, 2), split(-1, 3));
  const auto shared = oracle::sylvester_resultant(split(1, 2), split(1, 3));
  for (int n = 0; n < 100; ++n) {
    const auto s = ProjectiveReal::from_angle(A(rng)), z = ProjectiveReal::from_angle(A(rng));
    EXPECT_GT(std::abs(disjoint(s, z)), 1e-6);
    EXPECT_LT(std::abs(shared(s, z)), 1e-14);
  }
}

TEST(Resultant, DegenerateLeadingCoefficients) {
  BiquadraticPoly P;
  P.c[0][0] = 1;
  EXPECT_THROW(oracle::Resultant(P, P), Error);
}

TEST(Compose, MatchesSubstitution) {
  const auto P = oracle::bricard(pi / 3, 1.1, pi / 4, 1.2);
  const auto Fu = ProjectiveReal::value(0.3), Fv = ProjectiveReal::value(-1.7);
  const auto C = oracle::compose(P, Fu, Fv);
  const auto x = ProjectiveReal::value(0.8), z = ProjectiveReal::value(-2.5);
  const auto u = mobius(Fu, x), v = mobius(Fv, z);
  // mobius keeps the homogeneous representative, so the values agree without rescaling
  const double lhs = C(x, z), rhs = P(u, v);
  EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, std::abs(lhs)));
}

// R12 and R34 vanish at the (x1, x3) pairs of closed chains, over 10^3 sampled driving values.
TEST(Resultant, VanishesOnChainPairs) {
  const MeshDesign d = fam::flagship_design();
  const oracle::Eliminations E(d.linkage);
  const Chain chain(d.linkage);
  std::mt19937 rng(52);
  std::uniform_real_distribution<double> A(-pi, pi);
  int checked = 0;
  double worst = 0;
  for (int n = 0; n < 1000; ++n) {
    for (const auto& s : chain.all_states(ProjectiveReal::from_angle(A(rng)))) {
      if (s.residual > 1e-10) continue;
      const double r12 = std::abs(E.R12(s.x[0], s.x[2])), r34 = std::abs(E.R34(s.x[0], s.x[2]));
      worst = std::max({worst, r12, r34});
      ++checked;
    }
  }
  EXPECT_GT(checked, 1000);
  EXPECT_LT(worst, 1e-10);
}

TEST(Score, CertifiedAndPerturbed) {
  const MeshDesign d = fam::flagship_design();
  const auto good = oracle::common_component_score(d.linkage);
  EXPECT_GT(good.samples, 20);
  EXPECT_GT(good.score, 0.99);
  const auto bad = oracle::common_component_score(fam::perturbed(d.linkage));
  EXPECT_LT(bad.score, 0.05);
}

TEST(BruteForce, ClosureAgreesWithChain) {
  const MeshDesign d = fam::flagship_design();
  std::mt19937 rng(53);
  std::uniform_real_distribution<double> A(-pi, pi);
  for (int n = 0; n < 100; ++n) {
    const auto x1 = ProjectiveReal::from_angle(A(rng));
    EXPECT_LT(oracle::brute_closure(d.linkage, x1), 1e-9);
  }
  // the perturbed residual dips below 1e-3 near phi in {0, pi/2, pi, -pi/2}; about 90% of the
  // circle stays open under the brute-force normalization
  const auto p = fam::perturbed(d.linkage);
  int open = 0;
  for (int k = 0; k < 1000; ++k)
    open += oracle::brute_closure(p, ProjectiveReal::from_angle(-pi + 2 * pi * (k + 0.5) / 1000)) > 1e-3;
  EXPECT_GT(open, 850);
}
