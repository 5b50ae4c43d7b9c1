#include <gtest/gtest.h>

#include <random>

#include "families.hpp"

using namespace kok;

namespace {

// Interior angle of the central quad at vertex i, from positions only.
double corner(const std::array<Vec3, 4>& A, int i) {
  const Vec3 u = A[(i + 3) % 4] - A[i], v = A[(i + 1) % 4] - A[i];
  return std::acos(std::clamp(u.dot(v) / (u.norm() * v.norm()), -1.0, 1.0));
}

}  // namespace

TEST(RecoverAngles, RightAngledSides) {
  const auto a = recover_quad_angles(-1, -1, 16);
  EXPECT_NEAR(a.alpha, pi / 2, 1e-12);
  EXPECT_NEAR(a.beta, pi / 2, 1e-12);
  EXPECT_NEAR(a.gamma, pi / 2, 1e-12);
  EXPECT_NEAR(a.delta, std::acos(0.25), 1e-12);
  EXPECT_NEAR(recover_quad_angles(-1, -1, 8).delta, pi / 3, 1e-12);
}

TEST(RecoverAngles, Errors) {
  EXPECT_THROW(recover_quad_angles(-1, -1, 0), Error);
  EXPECT_THROW(recover_quad_angles(-1, -1, 2), Error);  // cos delta = 2
}

// Recovered sides are orthodiagonal and give back the factors, checked through Bricard's polynomial.
TEST(RecoverAngles, RoundTrip) {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> L(-3, -0.1), N(4.5, 20), A(-pi, pi);
  for (int n = 0; n < 300; ++n) {
    const double l = L(rng), m = L(rng), nu = N(rng) * (n % 2 ? 1 : -1);
    AngleRecovery r;
    try {
      r = recover_quad_angles(l, m, nu);
    } catch (const Error&) {
      continue;
    }
    EXPECT_NEAR(std::cos(r.alpha) * std::cos(r.gamma), std::cos(r.beta) * std::cos(r.delta), 1e-12);
    const auto P = oracle::bricard(r.alpha, r.beta, r.gamma, r.delta);
    // (x2 + l/x2)(x1 + m/x1) = nu, solved for x2 by hand
    const double x1 = std::tan(A(rng) / 2), w = nu / (x1 + m / x1), disc = w * w - 4 * l;
    if (disc < 0) continue;
    for (double s : {-1.0, 1.0}) {
      const double x2 = (w + s * std::sqrt(disc)) / 2;
      EXPECT_LT(std::abs(P(x2, 1, x1, 1)) / (P.max_abs() * (1 + x2 * x2) * (1 + x1 * x1)), 1e-11);
    }
  }
}

TEST(Tetrahedron, Flagship) {
  const double d = std::acos(0.25);
  const auto c = build_central_tetrahedron({pi / 3, d, pi / 3, d});
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(c.tau[i], std::acos(1 / std::sqrt(5.0)), 1e-12);
  const std::array<double, 4> want{pi / 3, d, pi / 3, d};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(corner(c.A, i), want[i], 1e-12);
  EXPECT_NEAR((c.A[1] - c.A[0]).norm(), 1, 1e-12);
  EXPECT_NEAR((c.A[3] - c.A[0]).norm(), 1, 1e-12);
}

TEST(Tetrahedron, PlanarSquare) {
  const auto c = build_central_tetrahedron({pi / 2, pi / 2, pi / 2, pi / 2});
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(c.tau[i], 0, 1e-7);
  EXPECT_LT(c.residual, 1e-10);
}

TEST(Tetrahedron, Unrealizable) {
  EXPECT_THROW(build_central_tetrahedron({2.5, 2.5, 2.5, 2.5}), Error);
  EXPECT_THROW(build_central_tetrahedron({0.0, 1, 1, 1}), Error);
}

TEST(Tetrahedron, RandomSkewQuads) {
  std::mt19937 rng(32);
  std::uniform_real_distribution<double> U(0.4, 1.5);
  int built = 0;
  for (int n = 0; n < 100; ++n) {
    const std::array<double, 4> d{U(rng), U(rng), U(rng), U(rng)};
    CentralQuad c;
    try {
      c = build_central_tetrahedron(d);
    } catch (const Error&) {
      continue;
    }
    ++built;
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(corner(c.A, i), d[i], 1e-9);
  }
  EXPECT_GT(built, 50);
}

TEST(Zeta, FromTAndTau) {
  const double tau = std::acos(1 / std::sqrt(5.0)), t = std::sqrt(14.0) / 14;
  const auto z = recover_zeta(t, tau);
  EXPECT_NEAR(z.zeta, std::atan(t) - tau, 1e-15);
  EXPECT_NEAR(std::abs(wrap_angle(z.alternate - z.zeta)), pi, 1e-15);
  EXPECT_NEAR(recover_zeta(ProjectiveReal::infinity(), 0.3).zeta, pi / 2 - 0.3, 1e-15);
}

TEST(Assemble, Flagship) {
  AssemblyReport rep;
  const MeshDesign d = assemble_design(fam::flagship(), {}, &rep);
  const double dd = std::acos(0.25);
  const std::array<double, 4> delta{pi / 3, dd, pi / 3, dd};
  const double s = std::sqrt(14.0);
  const std::array<double, 4> t{s / 14, 2 * s / 7, -s / 14, -2 * s / 7};
  const double tau = std::acos(1 / std::sqrt(5.0));
  for (int i = 0; i < 4; ++i) {
    const auto& q = d.linkage.quads[i];
    EXPECT_NEAR(q.alpha, pi / 2, 1e-12);
    EXPECT_NEAR(q.beta, pi / 2, 1e-12);
    EXPECT_NEAR(q.gamma, pi / 2, 1e-12);
    EXPECT_NEAR(q.delta, delta[i], 1e-12);
    EXPECT_NEAR(d.tau[i], tau, 1e-12);
    EXPECT_NEAR(d.zeta[i], std::atan(t[i]) - tau, 1e-12);
  }
  EXPECT_EQ(rep.flip_mask, 0u);
  EXPECT_LT(rep.probe_residual, 1e-10);
  EXPECT_LT(rep.roundtrip, 1e-10);
  EXPECT_LT(check_invariants(d).max(), 1e-10);
}

TEST(Assemble, RejectsNonMatchingParameters) {
  auto p = fam::flagship();
  p.nu[0] += 0.5;
  try {
    assemble_design(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::precondition);
    EXPECT_NE(std::string(e.what()).find("not an OI match"), std::string::npos);
  }
  auto q = fam::flagship();
  q.lambda[1] = -2;
  EXPECT_THROW(assemble_design(q), Error);
}

TEST(Assemble, PseudoPlanarHasZetaMinusTau) {
  const MeshDesign d = assemble_design(fam::pseudo_planar({2, 4, 6, 3}));
  for (int i = 0; i < 4; ++i)
    EXPECT_NEAR(std::abs(wrap_angle(d.zeta[i] + d.tau[i])) * std::abs(std::abs(wrap_angle(d.zeta[i] + d.tau[i])) - pi),
                0, 1e-10);
}

TEST(Deltoid, LinkageShapes) {
  DeltoidParams q{};
  q.nu1 = 6;
  q.xi2 = -3;
  q.xi3 = 3;
  q.F3 = 0.4;
  q.t2 = 0.7;
  q = solve_deltoid_system(DeltoidSystem::B2, q, 1);
  const LinkageDesign l = deltoid_linkage(DeltoidSystem::B2, q);
  EXPECT_EQ(classify(l.quads[1]).kind, QuadKind::deltoid);
  EXPECT_EQ(classify(l.quads[2]).kind, QuadKind::antideltoid);
  EXPECT_EQ(classify(l.quads[0]).kind, QuadKind::elliptic);
  EXPECT_EQ(classify(l.quads[3]).kind, QuadKind::elliptic);
}
