#pragma once

#include <cmath>
#include <optional>
#include <sstream>
#include <string>

#include "error.hpp"
#include "projective.hpp"

namespace kok {

/// Spherical quadrilateral given by its sides in cyclic order.
struct SphericalQuad {
  double alpha = pi / 2, beta = pi / 2, gamma = pi / 2, delta = pi / 2;

  void validate(double tol = 1e-12) const {
    for (double s : {alpha, beta, gamma, delta})
      if (!(s > 0.0 && s < pi)) throw Error(ErrorKind::precondition, "quad side outside (0, pi)");
    auto rt = [&](double s) { return std::abs(s - pi / 2) <= tol; };
    if (rt(alpha) && rt(beta) && rt(gamma) && rt(delta))
      throw Error(ErrorKind::precondition, "all four sides equal pi/2");
  }
};

/// Bricard polynomial c22 u^2 v^2 + c20 u^2 + c02 v^2 + 2 c11 u v + c00.
/// u sits at the vertex between alpha and delta, v between gamma and delta.
struct ConfigPolynomial {
  double c22 = 0, c20 = 0, c02 = 0, c11 = 0, c00 = 0;

  double eval(const ProjectiveReal& u, const ProjectiveReal& v) const {
    double up = u.p(), uq = u.q(), vp = v.p(), vq = v.q();
    return c22 * up * up * vp * vp + c20 * up * up * vq * vq + c02 * uq * uq * vp * vp +
           2.0 * c11 * up * uq * vp * vq + c00 * uq * uq * vq * vq;
  }
  double max_abs() const {
    return std::max({std::abs(c22), std::abs(c20), std::abs(c02), std::abs(c11), std::abs(c00)});
  }
};

inline ConfigPolynomial config_poly(const SphericalQuad& q) {
  const double a = q.alpha, b = q.beta, g = q.gamma, d = q.delta;
  ConfigPolynomial c;
  c.c22 = std::sin((a + b + g - d) / 2) * std::sin((a - b + g - d) / 2);
  c.c20 = std::sin((a - b - g - d) / 2) * std::sin((a + b - g - d) / 2);
  c.c02 = std::sin((a + b - g + d) / 2) * std::sin((a - b - g + d) / 2);
  c.c11 = -std::sin(a) * std::sin(g);
  c.c00 = std::sin((a - b + g + d) / 2) * std::sin((a + b + g + d) / 2);
  return c;
}

inline double orthodiagonal_residual(const SphericalQuad& q) {
  return std::cos(q.alpha) * std::cos(q.gamma) - std::cos(q.beta) * std::cos(q.delta);
}

inline bool is_orthodiagonal(const SphericalQuad& q, double tol = 1e-10) {
  return std::abs(orthodiagonal_residual(q)) <= tol;
}

/// The delta closing an orthodiagonal quad with the given alpha, beta, gamma.
inline double complete_orthodiagonal(double alpha, double beta, double gamma, double tol = 1e-14) {
  const double num = std::cos(alpha) * std::cos(gamma);
  const double cb = std::cos(beta);
  if (std::abs(cb) <= tol) {
    if (std::abs(num) <= tol) return pi / 2;
    throw Error(ErrorKind::inconsistent, "beta = pi/2 requires cos(alpha) cos(gamma) = 0");
  }
  const double cd = num / cb;
  if (!(std::abs(cd) < 1.0)) throw Error(ErrorKind::no_solution, "cos(delta) outside (-1, 1)");
  return std::acos(cd);
}

enum class QuadKind { elliptic, deltoid, antideltoid };

/// Which opposite vertices are apices: {alpha-beta, gamma-delta} or {alpha-delta, beta-gamma}.
enum class ApexPair { none, ab_gd, ad_bg };

struct QuadClass {
  QuadKind kind = QuadKind::elliptic;
  ApexPair apices = ApexPair::none;

  bool operator==(const QuadClass&) const = default;
  std::string str() const {
    std::string s = kind == QuadKind::elliptic ? "elliptic"
                    : kind == QuadKind::deltoid ? "deltoid"
                                                : "antideltoid";
    if (apices == ApexPair::ab_gd) s += "(apices ab,gd)";
    if (apices == ApexPair::ad_bg) s += "(apices ad,bg)";
    return s;
  }
};

namespace detail {
inline bool near_mod_2pi(double x, double tol) { return std::abs(wrap_angle(x)) <= tol; }
}  // namespace detail

inline QuadClass classify(const SphericalQuad& q, double tol = 1e-10) {
  if (!is_orthodiagonal(q, tol))
    throw Error(ErrorKind::precondition, "classify expects an orthodiagonal quad");
  const double a = q.alpha, b = q.beta, g = q.gamma, d = q.delta;
  auto eq = [&](double x, double y) { return std::abs(x - y) <= tol; };
  if (eq(a, b) && eq(g, d)) return {QuadKind::deltoid, ApexPair::ab_gd};
  if (eq(a, d) && eq(b, g)) return {QuadKind::deltoid, ApexPair::ad_bg};
  if (eq(a + b, pi) && eq(g + d, pi)) return {QuadKind::antideltoid, ApexPair::ab_gd};
  if (eq(a + d, pi) && eq(b + g, pi)) return {QuadKind::antideltoid, ApexPair::ad_bg};
  for (int s1 : {-1, 1})
    for (int s2 : {-1, 1})
      for (int s3 : {-1, 1})
        if (detail::near_mod_2pi(a + s1 * b + s2 * g + s3 * d, tol))
          throw Error(ErrorKind::classification, "signed side sum vanishes without a deltoid pattern");
  return {QuadKind::elliptic, ApexPair::none};
}

/**
 * Involution factors. lambda lives at vertex alpha-delta (first variable),
 * mu at vertex gamma-delta (second variable).
 *
 * For an (anti)deltoid, xi is the coefficient of the apex equation
 *   u + lambda/u = xi v^n   (apices ab,gd)
 *   v + mu/v = xi u^n       (apices ad,bg)
 * For antideltoids this is the negative of the textbook (factor - 1)/cos(delta).
 */
struct InvolutionFactors {
  QuadClass cls;
  std::optional<double> lambda, mu, nu, xi;
  int n = 1;
};

namespace detail {
inline bool is_right(double x, double tol) { return std::abs(x - pi / 2) <= tol; }

// sin(x + d)/sin(d - x) equals (tan d + tan x)/(tan d - tan x) but stays finite at pi/2.
inline double side_factor(double x, double d, double other1, double other2, double tol) {
  if (is_right(x, tol) && is_right(d, tol)) {
    const double c1 = std::cos(other1), c2 = std::cos(other2);
    return (c1 + c2) / (c1 - c2);
  }
  return std::sin(x + d) / std::sin(d - x);
}
}  // namespace detail

inline InvolutionFactors involution_factors(const SphericalQuad& q, double tol = 1e-10) {
  InvolutionFactors f;
  f.cls = classify(q, tol);
  const double a = q.alpha, b = q.beta, g = q.gamma, d = q.delta;
  const bool apex_ad = f.cls.apices == ApexPair::ad_bg;
  const bool apex_gd = f.cls.apices == ApexPair::ab_gd;
  if (!apex_ad) f.lambda = detail::side_factor(a, d, b, g, tol);
  if (!apex_gd) f.mu = detail::side_factor(g, d, b, a, tol);

  using detail::is_right;
  if (f.cls.kind == QuadKind::elliptic) {
    if (!is_right(d, tol)) {
      f.nu = (*f.lambda - 1.0) * (*f.mu - 1.0) / std::cos(d);
    } else if (is_right(g, tol)) {
      // 2 (mu - 1) tan(alpha) with mu from the cosine branch, simplified
      f.nu = 4.0 * std::sin(a) / (std::cos(b) - std::cos(a));
    } else {
      f.nu = 4.0 * std::sin(g) / (std::cos(b) - std::cos(g));
    }
    return f;
  }

  f.n = f.cls.kind == QuadKind::deltoid ? 1 : -1;
  double xi;
  if (apex_gd) {
    xi = !is_right(d, tol) ? (*f.lambda - 1.0) / std::cos(d) : 2.0 * std::tan(a);
  } else {
    xi = !is_right(d, tol) ? (*f.mu - 1.0) / std::cos(d) : 2.0 * std::tan(g);
  }
  f.xi = f.n == 1 ? xi : -xi;
  return f;
}

/// Symmetric coordinate x + c/x in homogeneous form.
inline ProjectiveReal symmetric_coordinate(const ProjectiveReal& x, double c) {
  return ProjectiveReal(x.p() * x.p() + c * x.q() * x.q(), x.p() * x.q());
}

/// Residual of the factored equation at (u, v) = (x2, x1), cleared of denominators.
inline double factored_residual(const InvolutionFactors& f, const ProjectiveReal& x2,
                                const ProjectiveReal& x1) {
  const double up = x2.p(), uq = x2.q(), vp = x1.p(), vq = x1.q();
  switch (f.cls.kind) {
    case QuadKind::elliptic:
      return (up * up + *f.lambda * uq * uq) * (vp * vp + *f.mu * vq * vq) -
             *f.nu * up * uq * vp * vq;
    default:
      break;
  }
  if (f.cls.apices == ApexPair::ab_gd) {
    const double s = up * up + *f.lambda * uq * uq;
    return f.n == 1 ? s * vq - *f.xi * up * uq * vp : s * vp - *f.xi * up * uq * vq;
  }
  const double s = vp * vp + *f.mu * vq * vq;
  return f.n == 1 ? s * uq - *f.xi * vp * vq * up : s * up - *f.xi * vp * vq * uq;
}

struct PartnerRoots {
  std::vector<ProjectiveReal> roots;
  bool double_root = false;
};

namespace detail {
// All x with x + c/x = w, w = (wp : wq).
inline PartnerRoots invert_symmetric(const ProjectiveReal& w, double c) {
  auto r = solve_homogeneous_quadratic(w.q(), -w.p(), c * w.q());
  if (r.identically_zero) throw Error(ErrorKind::degenerate, "partner equation vanishes identically");
  return {r.roots, r.double_root};
}
inline ProjectiveReal power(const ProjectiveReal& x, int n) { return n == 1 ? x : x.reciprocal(); }
inline ProjectiveReal scale(const ProjectiveReal& x, double k) { return ProjectiveReal(k * x.p(), x.q()); }
inline ProjectiveReal divide(double k, const ProjectiveReal& x) { return ProjectiveReal(k * x.q(), x.p()); }
}  // namespace detail

/// All real x2 with (x2, x1) on the configuration curve.
inline PartnerRoots solve_partner(const InvolutionFactors& f, const ProjectiveReal& x1) {
  using namespace detail;
  if (f.cls.kind == QuadKind::elliptic)
    return invert_symmetric(divide(*f.nu, symmetric_coordinate(x1, *f.mu)), *f.lambda);
  if (f.cls.apices == ApexPair::ab_gd)
    return invert_symmetric(scale(power(x1, f.n), *f.xi), *f.lambda);
  // v + mu/v = xi u^n, so u^n = w / xi
  ProjectiveReal w = symmetric_coordinate(x1, *f.mu);
  return {{power(ProjectiveReal(w.p(), *f.xi * w.q()), f.n)}, false};
}

/// All real x1 with (x2, x1) on the configuration curve.
inline PartnerRoots solve_partner_second(const InvolutionFactors& f, const ProjectiveReal& x2) {
  using namespace detail;
  if (f.cls.kind == QuadKind::elliptic)
    return invert_symmetric(divide(*f.nu, symmetric_coordinate(x2, *f.lambda)), *f.mu);
  if (f.cls.apices == ApexPair::ad_bg)
    return invert_symmetric(scale(power(x2, f.n), *f.xi), *f.mu);
  ProjectiveReal w = symmetric_coordinate(x2, *f.lambda);
  return {{power(ProjectiveReal(w.p(), *f.xi * w.q()), f.n)}, false};
}

/// Fold along a diagonal: i(x1) = mu/x1.
inline ProjectiveReal involution_i(const InvolutionFactors& f, const ProjectiveReal& x1) {
  if (!f.mu) throw Error(ErrorKind::precondition, "mu undefined at an apex");
  return detail::divide(*f.mu, x1);
}

/// Fold along the other diagonal: j(x2) = lambda/x2.
inline ProjectiveReal involution_j(const InvolutionFactors& f, const ProjectiveReal& x2) {
  if (!f.lambda) throw Error(ErrorKind::precondition, "lambda undefined at an apex");
  return detail::divide(*f.lambda, x2);
}

}  // namespace kok
