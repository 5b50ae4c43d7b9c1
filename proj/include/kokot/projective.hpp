#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace kok {

inline constexpr double pi = std::numbers::pi;

/// Wrap an angle into (-pi, pi].
inline double wrap_angle(double a) {
  double r = std::remainder(a, 2.0 * pi);
  if (r <= -pi) r += 2.0 * pi;
  return r;
}

/**
 * Point of the real projective line stored as a unit vector (p, q), value p/q.
 * The sign is canonical: q > 0, or q == 0 and p > 0.
 */
class ProjectiveReal {
 public:
  ProjectiveReal() : p_(0.0), q_(1.0) {}
  ProjectiveReal(double p, double q) { set(p, q); }

  static ProjectiveReal value(double x) {
    if (std::isinf(x)) return infinity();
    return ProjectiveReal(x, 1.0);
  }
  static ProjectiveReal infinity() { return ProjectiveReal(1.0, 0.0); }
  static ProjectiveReal zero() { return ProjectiveReal(0.0, 1.0); }

  /// Half-tangent point of an angle: x = tan(a/2), so a = pi lands on infinity.
  static ProjectiveReal from_angle(double a) {
    return ProjectiveReal(std::sin(a / 2.0), std::cos(a / 2.0));
  }

  double p() const { return p_; }
  double q() const { return q_; }

  /// Affine value, +inf at the point at infinity.
  double to_double() const {
    if (q_ == 0.0) return std::numeric_limits<double>::infinity();
    return p_ / q_;
  }
  /// Inverse of from_angle, result in (-pi, pi].
  double to_angle() const { return wrap_angle(2.0 * std::atan2(p_, q_)); }

  bool is_infinite(double tol = 0.0) const { return std::abs(q_) <= tol; }
  bool is_zero(double tol = 0.0) const { return std::abs(p_) <= tol; }

  ProjectiveReal negated() const { return ProjectiveReal(-p_, q_); }
  ProjectiveReal reciprocal() const { return ProjectiveReal(q_, p_); }

 private:
  void set(double p, double q) {
    double n = std::hypot(p, q);
    if (!(n > 0.0) || !std::isfinite(n)) {
      if (std::isinf(p) && std::isfinite(q)) { p_ = 1.0; q_ = 0.0; return; }
      p_ = std::numeric_limits<double>::quiet_NaN();
      q_ = p_;
      return;
    }
    p /= n;
    q /= n;
    if (q < 0.0 || (q == 0.0 && p < 0.0)) { p = -p; q = -q; }
    p_ = p;
    q_ = q;
  }
  double p_, q_;
};

/// Chordal distance: sine of the angle between the two representing lines.
inline double chordal(const ProjectiveReal& a, const ProjectiveReal& b) {
  return std::abs(a.p() * b.q() - a.q() * b.p());
}

/// 2x2 real matrix acting on the projective line by x -> (a x + b)/(c x + d).
struct Mobius {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  ProjectiveReal operator()(const ProjectiveReal& x) const {
    return ProjectiveReal(a * x.p() + b * x.q(), c * x.p() + d * x.q());
  }
  double det() const { return a * d - b * c; }
  Mobius inverse() const { return {d, -b, -c, a}; }
  Mobius operator*(const Mobius& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
};

/// Roots of a p^2 + b p q + c q^2 = 0 on the projective line.
struct QuadraticRoots {
  std::vector<ProjectiveReal> roots;
  bool double_root = false;
  bool identically_zero = false;
};

inline QuadraticRoots solve_homogeneous_quadratic(double a, double b, double c,
                                                  double double_tol = 1e-12) {
  QuadraticRoots out;
  double s = std::max({std::abs(a), std::abs(b), std::abs(c)});
  if (s == 0.0 || !std::isfinite(s)) {
    out.identically_zero = (s == 0.0);
    return out;
  }
  a /= s;
  b /= s;
  c /= s;
  double disc = b * b - 4.0 * a * c;
  if (disc < -double_tol) return out;
  if (disc <= double_tol) {
    out.double_root = true;
    // -b/(2a), written so that a vanishing a still gives a finite pair
    if (std::abs(a) >= std::abs(c))
      out.roots.emplace_back(-b, 2.0 * a);
    else
      out.roots.emplace_back(2.0 * c, -b);
    return out;
  }
  double sq = std::sqrt(disc);
  double h = -0.5 * (b + std::copysign(sq, b));
  out.roots.emplace_back(h, a);
  out.roots.emplace_back(c, h);
  return out;
}

}  // namespace kok
