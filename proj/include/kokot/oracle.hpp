#pragma once

// Verification paths that share no algebra with the main pipeline: the configuration
// polynomials are rebuilt from the side lengths here, and no factored form is used.

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <cmath>
#include <limits>
#include <vector>

#include "intervals.hpp"
#include "linkage.hpp"

namespace kok::oracle {

/// Homogeneous polynomial of bidegree (2, 2): sum c[i][j] up^i uq^(2-i) vp^j vq^(2-j).
struct BiquadraticPoly {
  std::array<std::array<double, 3>, 3> c{};

  double operator()(double up, double uq, double vp, double vq) const {
    const double U[3] = {uq * uq, up * uq, up * up}, V[3] = {vq * vq, vp * vq, vp * vp};
    double s = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) s += c[i][j] * U[i] * V[j];
    return s;
  }
  double operator()(const ProjectiveReal& u, const ProjectiveReal& v) const { return (*this)(u.p(), u.q(), v.p(), v.q()); }

  /// Coefficients (of up^2, up uq, uq^2) of the quadratic in u for fixed v.
  std::array<double, 3> in_u(const ProjectiveReal& v) const {
    const double V[3] = {v.q() * v.q(), v.p() * v.q(), v.p() * v.p()};
    std::array<double, 3> r{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r[2 - i] += c[i][j] * V[j];
    return r;
  }
  std::array<double, 3> in_v(const ProjectiveReal& u) const {
    const double U[3] = {u.q() * u.q(), u.p() * u.q(), u.p() * u.p()};
    std::array<double, 3> r{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r[2 - j] += c[i][j] * U[i];
    return r;
  }

  double max_abs() const {
    double m = 0;
    for (const auto& row : c)
      for (double x : row) m = std::max(m, std::abs(x));
    return m;
  }
  BiquadraticPoly normalized() const {
    BiquadraticPoly r = *this;
    const double m = max_abs();
    if (m > 0)
      for (auto& row : r.c)
        for (double& x : row) x /= m;
    return r;
  }
};

/// Bricard polynomial of a quad, u at the alpha-delta vertex and v at the gamma-delta vertex.
inline BiquadraticPoly bricard(double a, double b, double g, double d) {
  auto s = [](double x) { return std::sin(x / 2); };
  BiquadraticPoly P;
  P.c[2][2] = s(a + b + g - d) * s(a - b + g - d);
  P.c[2][0] = s(a - b - g - d) * s(a + b - g - d);
  P.c[0][2] = s(a + b - g + d) * s(a - b - g + d);
  P.c[1][1] = -2 * std::sin(a) * std::sin(g);
  P.c[0][0] = s(a - b + g + d) * s(a + b + g + d);
  return P;
}

namespace detail {
// Substitute (up, uq) = M (xp, xq) in each variable selected by which (bit 0: u, bit 1: v).
inline std::array<std::array<double, 3>, 3> quad_form_map(double a, double b, double c, double d) {
  // T[i][k]: coefficient of xp^k xq^(2-k) in (a xp + b xq)^i (c xp + d xq)^(2-i)
  std::array<std::array<double, 3>, 3> T{};
  const double P0[3] = {d * d, 2 * c * d, c * c};    // (c xp + d xq)^2
  const double P1[3] = {b * d, a * d + b * c, a * c};  // (a xp + b xq)(c xp + d xq)
  const double P2[3] = {b * b, 2 * a * b, a * a};    // (a xp + b xq)^2
  for (int k = 0; k < 3; ++k) {
    T[0][k] = P0[k];
    T[1][k] = P1[k];
    T[2][k] = P2[k];
  }
  return T;
}
}  // namespace detail

/// P(mob(Fu, x), mob(Fv, z)) with mob(F, x) = (x + F)/(1 - F x), as a polynomial in (x, z).
inline BiquadraticPoly compose(const BiquadraticPoly& P, const ProjectiveReal& Fu, const ProjectiveReal& Fv) {
  const auto Tu = detail::quad_form_map(Fu.q(), Fu.p(), -Fu.p(), Fu.q());
  const auto Tv = detail::quad_form_map(Fv.q(), Fv.p(), -Fv.p(), Fv.q());
  BiquadraticPoly R;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) R.c[k][l] += P.c[i][j] * Tu[i][k] * Tv[j][l];
  return R;
}

/// Swap the roles of the two variables.
inline BiquadraticPoly transpose(const BiquadraticPoly& P) {
  BiquadraticPoly R;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) R.c[j][i] = P.c[i][j];
  return R;
}

/// Sylvester determinant of two binary quadratics given as (up^2, up uq, uq^2) coefficients.
inline double sylvester2(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  Eigen::Matrix4d S;
  S << a[0], a[1], a[2], 0, 0, a[0], a[1], a[2], b[0], b[1], b[2], 0, 0, b[0], b[1], b[2];
  return S.fullPivLu().determinant();
}

/**
 * R(s, z) = res_u(P(u, s), Q(u, z)). Both polynomials carry the eliminated variable first.
 */
class Resultant {
 public:
  Resultant(const BiquadraticPoly& P, const BiquadraticPoly& Q) : P_(P.normalized()), Q_(Q.normalized()) {
    auto lead_zero = [](const BiquadraticPoly& X) {
      return std::abs(X.c[2][0]) + std::abs(X.c[2][1]) + std::abs(X.c[2][2]) == 0.0;
    };
    if (lead_zero(P_) && lead_zero(Q_)) throw Error(ErrorKind::degenerate, "both leading coefficients vanish");
  }
  double operator()(const ProjectiveReal& s, const ProjectiveReal& z) const {
    return sylvester2(P_.in_u(s), Q_.in_u(z));
  }

 private:
  BiquadraticPoly P_, Q_;
};

/// The four polynomials of a linkage and the two eliminations in (x1, x3).
struct Eliminations {
  std::array<BiquadraticPoly, 4> P;
  BiquadraticPoly P2c, P4c;  // P2(y2, y3) in (x2, x3) and P4(y4, y1) in (x4, x1)

  explicit Eliminations(const LinkageDesign& d) {
    for (int i = 0; i < 4; ++i) {
      const auto& q = d.quads[i];
      P[i] = bricard(q.alpha, q.beta, q.gamma, q.delta);
    }
    P2c = compose(P[1], d.F[1], d.F[2]);
    P4c = compose(P[3], d.F[3], d.F[0]);
  }
  /// res over x2 of P1(x2, x1) and P2(y2, y3).
  double R12(const ProjectiveReal& x1, const ProjectiveReal& x3) const { return Resultant(P[0], P2c)(x1, x3); }
  /// res over x4 of P3(x4, x3) and P4(y4, y1).
  double R34(const ProjectiveReal& x1, const ProjectiveReal& x3) const { return Resultant(P[2], P4c)(x3, x1); }
};

inline std::function<double(const ProjectiveReal&, const ProjectiveReal&)> sylvester_resultant(
    const BiquadraticPoly& P, const BiquadraticPoly& Q) {
  const Resultant R(P, Q);
  return [R](const ProjectiveReal& s, const ProjectiveReal& z) { return R(s, z); };
}

namespace detail {
// Golden-section minimum of f on [a, b].
template <class F>
double golden_min(F&& f, double a, double b, int iters = 80) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int k = 0; k < iters; ++k) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}
}  // namespace detail

struct ComponentScore {
  double score = 0;
  int samples = 0;  // zeros of R12 found
  int shared = 0;   // of those, zeros of R34 as well
};

/**
 * Along grid_size lines x1 = const, locate the zeros of R12 in x3 (local minima of |R12| that
 * reach round-off level) and count how many are also zeros of R34.
 * Zeros of the resultants are typically double, so minima are used instead of sign changes.
 */
inline ComponentScore common_component_score(const LinkageDesign& d, int grid_size = 40, int line_samples = 720,
                                             double tol = 1e-8) {
  const Eliminations E(d);
  ComponentScore out;
  std::vector<double> g(line_samples), h(line_samples);
  for (int k = 0; k < grid_size; ++k) {
    const ProjectiveReal x1 = ProjectiveReal::from_angle(-pi + 2 * pi * (k + 0.37) / grid_size);
    double gmax = 0, hmax = 0;
    for (int j = 0; j < line_samples; ++j) {
      const ProjectiveReal x3 = ProjectiveReal::from_angle(-pi + 2 * pi * j / line_samples);
      g[j] = std::abs(E.R12(x1, x3));
      h[j] = std::abs(E.R34(x1, x3));
      gmax = std::max(gmax, g[j]);
      hmax = std::max(hmax, h[j]);
    }
    if (gmax == 0.0) continue;  // R12 vanishes on the whole line
    for (int j = 0; j < line_samples; ++j) {
      const int jp = (j + line_samples - 1) % line_samples, jn = (j + 1) % line_samples;
      if (!(g[j] <= g[jp] && g[j] < g[jn])) continue;
      const double step = 2 * pi / line_samples;
      const double c = -pi + step * j;
      auto f = [&](double phi) { return std::abs(E.R12(x1, ProjectiveReal::from_angle(phi))); };
      const double phi = detail::golden_min(f, c - step, c + step);
      if (f(phi) > 1e-9 * gmax) continue;
      ++out.samples;
      if (std::abs(E.R34(x1, ProjectiveReal::from_angle(phi))) <= tol * std::max(hmax, 1e-300)) ++out.shared;
    }
  }
  out.score = out.samples ? static_cast<double>(out.shared) / out.samples : 0.0;
  return out;
}

// ---------------------------------------------------------------- brute-force chain

namespace detail {
inline std::vector<ProjectiveReal> quad_roots(const std::array<double, 3>& c) {
  // c[0] p^2 + c[1] p q + c[2] q^2 = 0
  const double m = std::max({std::abs(c[0]), std::abs(c[1]), std::abs(c[2])});
  if (m == 0) return {};
  const double a = c[0] / m, b = c[1] / m, cc = c[2] / m;
  const double disc = b * b - 4 * a * cc;
  if (disc < 0) return {};
  const double h = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  std::vector<ProjectiveReal> r;
  if (a != 0 || h != 0) r.emplace_back(h, a);
  if (h != 0 || cc != 0) r.emplace_back(cc, h);
  return r;
}
inline ProjectiveReal mob(const ProjectiveReal& F, const ProjectiveReal& x, bool inverse = false) {
  const double f = inverse ? -F.p() : F.p(), g = F.q();
  return ProjectiveReal(g * x.p() + f * x.q(), -f * x.p() + g * x.q());
}
inline double chart_eval(const BiquadraticPoly& P, const ProjectiveReal& u, const ProjectiveReal& v) {
  const double mu = std::max(std::abs(u.p()), std::abs(u.q())), mv = std::max(std::abs(v.p()), std::abs(v.q()));
  return std::abs(P(u.p() / mu, u.q() / mu, v.p() / mv, v.q() / mv)) / P.max_abs();
}
}  // namespace detail

/// Smallest closure over every root combination of the raw polynomials.
inline double brute_closure(const LinkageDesign& d, const ProjectiveReal& x1) {
  std::array<BiquadraticPoly, 4> P;
  for (int i = 0; i < 4; ++i) P[i] = bricard(d.quads[i].alpha, d.quads[i].beta, d.quads[i].gamma, d.quads[i].delta);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& x2 : detail::quad_roots(P[0].in_u(x1))) {
    const ProjectiveReal y2 = detail::mob(d.F[1], x2);
    for (const auto& y3 : detail::quad_roots(P[1].in_v(y2))) {
      const ProjectiveReal x3 = detail::mob(d.F[2], y3, true);
      for (const auto& x4 : detail::quad_roots(P[2].in_u(x3)))
        best = std::min(best, detail::chart_eval(P[3], detail::mob(d.F[3], x4), detail::mob(d.F[0], x1)));
    }
  }
  return best;
}

/// Dense scan of closure feasibility in x1 with bisection of each transition.
inline RealIntervalSet brute_force_interval(const LinkageDesign& d, int n = 4000, double closure_tol = 1e-7) {
  return scan_interval_set(
      [&](double phi) { return brute_closure(d, ProjectiveReal::from_angle(phi)) < closure_tol; }, n);
}

}  // namespace kok::oracle
