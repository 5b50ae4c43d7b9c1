#pragma once

#include <array>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "kinematics.hpp"

namespace kok {

struct AngleRecovery {
  double alpha, beta, gamma, delta;
  SphericalQuad quad() const { return {alpha, beta, gamma, delta}; }
};

namespace detail {
// Side next to delta from its factor f = (tan d + tan x)/(tan d - tan x).
inline double side_from_factor(double f, double delta) {
  if (std::abs(f + 1.0) <= 1e-14) return pi / 2;
  const double a = std::atan(std::tan(delta) * (f - 1.0) / (f + 1.0));
  return a > 0 ? a : a + pi;
}
inline double checked_acos(double c, const char* what) {
  if (!(std::abs(c) < 1.0)) {
    std::ostringstream os;
    os << what << ": cosine " << c << " outside (-1, 1)";
    throw Error(ErrorKind::no_realization, os.str());
  }
  return std::acos(c);
}
}  // namespace detail

/// Sides of an elliptic orthodiagonal quad with the given involution factors.
inline AngleRecovery recover_quad_angles(double lambda, double mu, double nu) {
  if (nu == 0.0 || lambda == 0.0 || mu == 0.0) throw Error(ErrorKind::precondition, "factors must be nonzero");
  AngleRecovery r;
  r.delta = detail::checked_acos((lambda - 1.0) * (mu - 1.0) / nu, "delta");
  r.alpha = detail::side_from_factor(lambda, r.delta);
  r.gamma = detail::side_from_factor(mu, r.delta);
  r.beta = detail::checked_acos(std::cos(r.alpha) * std::cos(r.gamma) / std::cos(r.delta), "beta");
  const auto f = involution_factors(r.quad());
  if (f.cls.kind != QuadKind::elliptic || std::abs(*f.lambda - lambda) > 1e-10 * std::max(1.0, std::abs(lambda)) ||
      std::abs(*f.mu - mu) > 1e-10 * std::max(1.0, std::abs(mu)) ||
      std::abs(*f.nu - nu) > 1e-10 * std::max(1.0, std::abs(nu)))
    throw Error(ErrorKind::no_realization, "recovered angles do not reproduce the factors");
  return r;
}

/**
 * (Anti)deltoid with apices ab,gd from lambda and the apex-equation coefficient xi.
 * Deltoid: alpha = beta, gamma = delta. Antideltoid: beta = pi - alpha, gamma = pi - delta.
 */
inline AngleRecovery recover_deltoid_angles(double lambda, double xi, QuadKind kind) {
  const double xi_def = kind == QuadKind::antideltoid ? -xi : xi;
  AngleRecovery r;
  r.delta = detail::checked_acos((lambda - 1.0) / xi_def, "delta");
  r.alpha = detail::side_from_factor(lambda, r.delta);
  if (kind == QuadKind::antideltoid) {
    r.beta = pi - r.alpha;
    r.gamma = pi - r.delta;
  } else {
    r.beta = r.alpha;
    r.gamma = r.delta;
  }
  return r;
}

struct ZetaChoice {
  double zeta, alternate;
};

/// zeta = atan(t) - tau; the alternate differs by pi because t fixes tau + zeta only mod pi.
inline ZetaChoice recover_zeta(const ProjectiveReal& t, double tau) {
  const double at = t.is_infinite() ? pi / 2 : std::atan(t.to_double());
  const double z = wrap_angle(at - tau);
  return {z, wrap_angle(z + pi)};
}
inline ZetaChoice recover_zeta(double t, double tau) { return recover_zeta(ProjectiveReal::value(t), tau); }

// ---------------------------------------------------------------- parameter seeds

/// Linear branch: (nu1, nu3) from the closed-form solve, t2 = -nu2 t3/4, t4 = -nu4 t1/4.
inline EllipticParams linear_branch_params(double nu2, double nu4, double t1, double t3) {
  auto [nu1, nu3] = linear_branch_solve<double>(nu2, nu4, t1, t3);
  const auto lb = linear_branch({nu1, nu2, nu3, nu4}, t1, t3);
  return EllipticParams::from_t({nu1, nu2, nu3, nu4}, {t1, lb.t2, t3, lb.t4});
}

/// Generic branch: t3 from the left quartic factor (sign chosen by t3_sign), then t2 and t4.
inline EllipticParams generic_branch_params(const Nu4& nu, double t1, int t3_sign = 1) {
  const auto s = generic_branch_t3_squared(nu, t1);
  if (!s) throw Error(ErrorKind::no_solution, "left factor has no real t3 for this t1");
  const double t3 = t3_sign * std::sqrt(*s);
  return EllipticParams::from_t(nu, {t1, solve_t2(nu, t1, t3), t3, solve_t4(nu, t1, t3)});
}

// ---------------------------------------------------------------- assembly

struct AssemblyOptions {
  Lengths lengths;
  double probe_tol = 1e-6;
  bool require_existence = true;
};

struct AssemblyReport {
  unsigned flip_mask = 0;  // couplings moved to the alternate zeta
  double probe_residual = 0;
  double roundtrip = 0;  // factor and t mismatch after re-derivation
};

namespace detail {

inline double probe_closure(const MeshDesign& d) {
  try {
    TraceOptions o;
    o.frames = 3;
    o.accept = 1e-3;
    return trace_motion(d, o).max_closure;
  } catch (const Error&) {
    return std::numeric_limits<double>::infinity();
  }
}

inline double params_roundtrip(const EllipticParams& p, const LinkageDesign& l) {
  const EllipticParams q = elliptic_params(l);
  double m = 0;
  for (int i = 0; i < 4; ++i) {
    m = std::max({m, std::abs(q.nu[i] - p.nu[i]) / std::max(1.0, std::abs(p.nu[i])),
                  std::abs(q.lambda[i] - p.lambda[i]), std::abs(q.mu[i] - p.mu[i]), chordal(q.t(i), p.t(i))});
  }
  return m;
}

/// Try the couplings' alternate branch F -> -1/F until the closure probe passes.
inline MeshDesign probe_and_flip(const LinkageDesign& base, const Lengths& lengths, double tol,
                                 AssemblyReport* rep) {
  std::vector<int> flippable;
  for (int i = 0; i < 4; ++i)
    if (!base.F[i].is_zero(1e-14) && !base.F[i].is_infinite(1e-14)) flippable.push_back(i);
  const unsigned combos = 1u << flippable.size();
  std::vector<unsigned> order(combos);
  for (unsigned m = 0; m < combos; ++m) order[m] = m;
  std::stable_sort(order.begin(), order.end(),
                   [](unsigned a, unsigned b) { return __builtin_popcount(a) < __builtin_popcount(b); });
  std::ostringstream diag;
  for (unsigned m : order) {
    LinkageDesign l = base;
    unsigned mask = 0;
    for (std::size_t k = 0; k < flippable.size(); ++k)
      if (m >> k & 1u) {
        const int i = flippable[k];
        l.F[i] = ProjectiveReal(-l.F[i].q(), l.F[i].p());
        mask |= 1u << i;
      }
    MeshDesign d = make_mesh_design(l, lengths);
    const double r = probe_closure(d);
    if (r <= tol) {
      if (rep) {
        rep->flip_mask = mask;
        rep->probe_residual = r;
      }
      return d;
    }
    diag << " mask " << mask << ": " << r << ";";
  }
  throw Error(ErrorKind::assembly, "no zeta branch passes the closure probe:" + diag.str());
}

}  // namespace detail

/// Full mesh design from certified elliptic parameters.
inline MeshDesign assemble_design(const EllipticParams& p, const AssemblyOptions& opt = {},
                                  AssemblyReport* rep = nullptr) {
  if (int v = involutive_table_violation(p); v >= 0)
    throw Error(ErrorKind::precondition, "coupling " + std::to_string(v + 1) + " is not involutive");
  const MinorVector mv = minors(p);
  if (mv.max_normalized() > 1e-9) {
    std::ostringstream os;
    os << "parameters are not an OI match (largest normalized minor " << mv.max_normalized() << ")";
    throw Error(ErrorKind::precondition, os.str());
  }
  if (opt.require_existence) {
    const auto ex = global_existence(p);
    if (!ex.global_ok) throw Error(ErrorKind::precondition, "no real flexion: " + ex.note);
  }
  LinkageDesign l;
  for (int i = 0; i < 4; ++i) {
    l.quads[i] = recover_quad_angles(p.lambda[i], p.mu[i], p.nu[i]).quad();
    l.F[i] = p.F[i];
  }
  MeshDesign d = detail::probe_and_flip(l, opt.lengths, opt.probe_tol, rep);
  if (rep) rep->roundtrip = detail::params_roundtrip(p, d.linkage);
  return d;
}

// ---------------------------------------------------------------- two (anti)deltoids

enum class DeltoidSystem { B1, B2 };

inline std::array<double, 6> deltoid_minors(DeltoidSystem s, const DeltoidParams& q) {
  return s == DeltoidSystem::B1 ? deltoid_minors_B1(q) : deltoid_minors_B2(q);
}

inline double deltoid_minor_max(DeltoidSystem s, const DeltoidParams& q) {
  double m = 0;
  for (double v : deltoid_minors(s, q)) m = std::max(m, std::abs(v));
  return m;
}

/**
 * Linkage for the two-(anti)deltoid systems: Q1, Q4 elliptic with lambda = mu = -1,
 * Q2 a deltoid (pi/2, pi/2, d2, d2), Q3 a deltoid (B1) or antideltoid (pi/2, pi/2, pi - d3, d3) (B2).
 */
inline LinkageDesign deltoid_linkage(DeltoidSystem s, const DeltoidParams& q) {
  LinkageDesign l;
  const double d1 = detail::checked_acos(4.0 / q.nu1, "delta1");
  const double d2 = detail::checked_acos(-2.0 / q.xi2, "delta2");
  const double d3 = detail::checked_acos(s == DeltoidSystem::B1 ? -2.0 / q.xi3 : 2.0 / q.xi3, "delta3");
  const double d4 = detail::checked_acos(4.0 / q.nu4, "delta4");
  l.quads[0] = {pi / 2, pi / 2, pi / 2, d1};
  l.quads[1] = {pi / 2, pi / 2, d2, d2};
  l.quads[2] = s == DeltoidSystem::B1 ? SphericalQuad{pi / 2, pi / 2, d3, d3} : SphericalQuad{pi / 2, pi / 2, pi - d3, d3};
  l.quads[3] = {pi / 2, pi / 2, pi / 2, d4};
  l.F = {EllipticParams::F_principal(q.t1), EllipticParams::F_principal(q.t2), ProjectiveReal::value(q.F3),
         EllipticParams::F_principal(q.t4)};
  return l;
}

/**
 * With nu1, xi2, xi3, F3, t2 fixed, find (nu4, t1, t4) zeroing the six minors.
 * xi are apex-equation coefficients. Restarts are drawn from a seeded generator.
 */
inline DeltoidParams solve_deltoid_system(DeltoidSystem s, DeltoidParams q, unsigned seed = 1,
                                          int restarts = 60) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> U(-5.0, 5.0);
  // the four central angles must bound a skew quadrilateral
  auto realizable = [s](const DeltoidParams& c) {
    try {
      const LinkageDesign l = deltoid_linkage(s, c);
      build_central_tetrahedron({l.quads[0].delta, l.quads[1].delta, l.quads[2].delta, l.quads[3].delta});
      return true;
    } catch (const Error&) {
      return false;
    }
  };
  double best_r = std::numeric_limits<double>::infinity();
  for (int k = 0; k < restarts; ++k) {
    auto f = [&](const Eigen::VectorXd& z) {
      DeltoidParams c = q;
      c.nu4 = z[0];
      c.t1 = z[1];
      c.t4 = z[2];
      const auto m = deltoid_minors(s, c);
      const double scale = 1.0 + std::pow(z.cwiseAbs().maxCoeff(), 3);
      Eigen::VectorXd r(6);
      for (int i = 0; i < 6; ++i) r[i] = m[i] / scale;
      return r;
    };
    Eigen::VectorXd z0(3);
    z0 << U(rng), U(rng), U(rng);
    auto sol = levenberg_marquardt(f, z0, 1e-15, 400);
    DeltoidParams c = q;
    c.nu4 = sol.x[0];
    c.t1 = sol.x[1];
    c.t4 = sol.x[2];
    const double r = deltoid_minor_max(s, c);
    best_r = std::min(best_r, r);
    if (r < 1e-10 && std::abs(c.nu4) > 4.0 && realizable(c)) return c;
  }
  std::ostringstream os;
  os << "no admissible solution of the deltoid system (best minor " << best_r << ")";
  throw Error(ErrorKind::no_solution, os.str());
}

}  // namespace kok
