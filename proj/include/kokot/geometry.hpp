#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <optional>

#include "error.hpp"
#include "numeric.hpp"
#include "projective.hpp"

namespace kok {

using Vec3 = Eigen::Vector3d;

/// Vertices of the mesh around the central face. Index 0..3 holds A1..A4 etc.
struct MeshPoints {
  std::array<Vec3, 4> A{}, B{}, C{};
};

namespace geom {

inline int idx(int i) { return ((i - 1) % 4 + 4) % 4; }

inline double sign(double x) { return x >= 0.0 ? 1.0 : -1.0; }

inline double angle(const Vec3& u, const Vec3& v, double tol = 1e-14) {
  const double nu = u.norm(), nv = v.norm();
  if (nu <= tol || nv <= tol) throw Error(ErrorKind::degenerate, "degenerate face: zero cross product");
  // atan2 keeps full precision near 0 and pi, where acos loses half the digits
  return std::atan2(u.cross(v).norm(), u.dot(v));
}

inline double signed_angle(double orient, const Vec3& u, const Vec3& v) { return sign(orient) * angle(u, v); }

// Edge vectors with 1-based cyclic indices.
inline Vec3 a(const MeshPoints& p, int i) { return p.A[idx(i)] - p.A[idx(i - 1)]; }
inline Vec3 b(const MeshPoints& p, int i) { return p.A[idx(i)] - p.B[idx(i)]; }
inline Vec3 c(const MeshPoints& p, int i) { return p.C[idx(i)] - p.A[idx(i)]; }

/// Dihedral along a_i measured at its end A_i, on the B_i side.
inline double dih_at_end(const MeshPoints& p, int i) {
  const Vec3 n1 = a(p, i).cross(a(p, i + 1)), n2 = a(p, i).cross(b(p, i));
  return -signed_angle(n1.dot(b(p, i)), n1, n2);
}

/// Dihedral along a_i measured at its start A_{i-1}, on the C_{i-1} side.
inline double dih_at_start(const MeshPoints& p, int i) {
  const Vec3 n1 = a(p, i - 1).cross(a(p, i)), n2 = c(p, i - 1).cross(a(p, i));
  return signed_angle(n1.dot(c(p, i - 1)), n1, n2);
}

}  // namespace geom

/// Central-face dihedral tau_i along edge a_i.
inline double tau_angle(const MeshPoints& p, int i) {
  using namespace geom;
  const double o = i % 2 ? a(p, i).cross(a(p, i + 1)).dot(a(p, i + 2)) : a(p, i - 1).cross(a(p, i)).dot(a(p, i + 1));
  return signed_angle(o, a(p, i - 1).cross(a(p, i)), a(p, i).cross(a(p, i + 1)));
}

inline double zeta_angle(const MeshPoints& p, int i) {
  using namespace geom;
  const double o = i % 2 ? a(p, i).cross(b(p, i)).dot(c(p, i - 1)) : c(p, i - 1).cross(a(p, i)).dot(b(p, i));
  const double z = signed_angle(o, a(p, i).cross(b(p, i)), c(p, i - 1).cross(a(p, i)));
  return i % 2 ? z : -z;
}

inline double phi_angle(const MeshPoints& p, int i) {
  return i % 2 ? geom::dih_at_end(p, i) : geom::dih_at_start(p, i);
}

inline double psi_angle(const MeshPoints& p, int i) {
  return i % 2 ? geom::dih_at_start(p, i) : geom::dih_at_end(p, i);
}

/// The supplementary convention phi* = sign(phi) (pi - |phi|).
inline double phi_star(double phi) { return geom::sign(phi) * (pi - std::abs(phi)); }

struct OrientedDihedrals {
  std::array<double, 4> tau{}, zeta{}, phi{}, psi{};
};

inline OrientedDihedrals oriented_dihedrals(const MeshPoints& p) {
  OrientedDihedrals d;
  for (int i = 1; i <= 4; ++i) {
    d.tau[i - 1] = tau_angle(p, i);
    d.zeta[i - 1] = zeta_angle(p, i);
    d.phi[i - 1] = phi_angle(p, i);
    d.psi[i - 1] = psi_angle(p, i);
  }
  return d;
}

/// Planar angle of the central face at A_i.
inline double central_angle(const std::array<Vec3, 4>& A, int i) {
  using geom::idx;
  return geom::angle(A[idx(i - 1)] - A[idx(i)], A[idx(i + 1)] - A[idx(i)]);
}

// ---------------------------------------------------------------- central tetrahedron

struct CentralQuad {
  std::array<Vec3, 4> A{};
  std::array<double, 4> tau{};
  std::array<double, 2> legs{1.0, 1.0};  // |A1A2|, |A1A4|
  double residual = 0.0;                 // largest planar-angle error
};

namespace detail {

inline std::optional<CentralQuad> tetra_with_legs(const std::array<double, 4>& delta, double L0, double L1,
                                                  double tol) {
  CentralQuad out;
  out.legs = {L0, L1};
  out.A[0] = Vec3::Zero();
  out.A[1] = Vec3(L0, 0, 0);
  out.A[3] = L1 * Vec3(std::cos(delta[0]), std::sin(delta[0]), 0);
  auto residual = [&](const Eigen::VectorXd& X) {
    std::array<Vec3, 4> A = out.A;
    A[2] = X;
    Eigen::VectorXd r(3);
    try {
      for (int i = 2; i <= 4; ++i) r[i - 2] = central_angle(A, i) - delta[i - 1];
    } catch (const Error&) {
      r.setConstant(10.0);
    }
    return r;
  };
  const Vec3 base = out.A[1] + out.A[3];
  for (double z : {0.3, -0.3, 0.0, 0.8, -0.8}) {
    const Vec3 seed = base + Vec3(0, 0, z);
    auto sol = levenberg_marquardt(residual, Eigen::VectorXd(seed), 1e-16, 300);
    if (sol.residual > tol) continue;
    out.A[2] = sol.x;
    out.residual = sol.residual;
    return out;
  }
  return std::nullopt;
}

}  // namespace detail

/**
 * A1 at the origin, A2 on the x axis, A4 in the xy plane at angle delta1; A3 from a Newton
 * solve of the three remaining planar angles. The mirror image with tau1 >= 0 is kept.
 * If the requested legs admit no solution, other leg ratios are tried.
 */
inline CentralQuad build_central_tetrahedron(const std::array<double, 4>& delta,
                                             std::array<double, 2> legs = {1.0, 1.0}, double tol = 1e-11) {
  for (double d : delta)
    if (!(d > 0 && d < pi)) throw Error(ErrorKind::precondition, "central angle outside (0, pi)");
  std::optional<CentralQuad> q = detail::tetra_with_legs(delta, legs[0], legs[1], tol);
  for (double r : {0.9, 1.1, 0.75, 1.25, 0.6, 1.5, 0.5, 2.0, 0.35, 3.0}) {
    if (q) break;
    q = detail::tetra_with_legs(delta, legs[0], r * legs[1], tol);
  }
  if (!q) throw Error(ErrorKind::no_realization, "no central tetrahedron realizes the requested angles");
  MeshPoints mp;
  mp.A = q->A;
  if (tau_angle(mp, 1) < 0) {
    for (auto& v : mp.A) v.z() = -v.z();
    q->A = mp.A;
  }
  for (int i = 1; i <= 4; ++i) q->tau[i - 1] = tau_angle(mp, i);
  return *q;
}

// ---------------------------------------------------------------- spoke placement

namespace detail {

inline Vec3 perpendicular(const Vec3& e) {
  const Vec3 t = std::abs(e.z()) < 0.9 ? Vec3(0, 0, 1) : Vec3(1, 0, 0);
  return e.cross(t).cross(e).normalized();
}

// Put B_i (or C_i) at planar angle theta from the central edge, turned until the
// corresponding oriented dihedral equals target.
inline void place_spoke(MeshPoints& p, bool is_b, int i, double theta, double target, double length) {
  using geom::idx;
  const Vec3 Ai = p.A[idx(i)];
  const Vec3 e = ((is_b ? p.A[idx(i - 1)] : p.A[idx(i + 1)]) - Ai).normalized();
  const Vec3 r0 = perpendicular(e), r1 = e.cross(r0);
  auto set = [&](double s) {
    const Vec3 d = std::cos(theta) * e + std::sin(theta) * (std::cos(s) * r0 + std::sin(s) * r1);
    (is_b ? p.B : p.C)[idx(i)] = Ai + length * d;
  };
  auto measure = [&](double s) {
    set(s);
    return is_b ? geom::dih_at_end(p, i) : geom::dih_at_start(p, i + 1);
  };
  const double c0 = measure(0.0);
  const double sg = geom::sign(wrap_angle(measure(0.1) - c0));
  set(sg * wrap_angle(target - c0));
}

}  // namespace detail

/**
 * Spokes for given dihedrals. side[i] = (alpha_i, gamma_i) of the quad at A_i.
 * Odd i: B_i at gamma from A_{i-1} with phi_i, C_i at alpha from A_{i+1} with phi_{i+1}.
 * Even i: B_i at alpha with psi_i, C_i at gamma with psi_{i+1}.
 */
inline MeshPoints place_spokes(const std::array<Vec3, 4>& A, const std::array<std::array<double, 2>, 4>& side,
                               const std::array<double, 4>& phi, const std::array<double, 4>& psi,
                               const std::array<double, 4>& len_b, const std::array<double, 4>& len_c) {
  MeshPoints p;
  p.A = A;
  // provisional spokes so that every dihedral is defined while placing
  for (int k = 0; k < 4; ++k) {
    p.B[k] = A[k] + detail::perpendicular((A[(k + 3) % 4] - A[k]).normalized());
    p.C[k] = A[k] + detail::perpendicular((A[(k + 1) % 4] - A[k]).normalized());
  }
  for (int i = 1; i <= 4; ++i) {
    const int k = i - 1, n = i % 4;
    const double al = side[k][0], ga = side[k][1];
    if (i % 2) {
      detail::place_spoke(p, true, i, ga, phi[k], len_b[k]);
      detail::place_spoke(p, false, i, al, phi[n], len_c[k]);
    } else {
      detail::place_spoke(p, true, i, al, psi[k], len_b[k]);
      detail::place_spoke(p, false, i, ga, psi[n], len_c[k]);
    }
  }
  return p;
}

}  // namespace kok
