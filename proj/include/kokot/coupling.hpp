#pragma once

#include <cmath>
#include <optional>
#include <variant>

#include "spherical.hpp"

namespace kok {

/// tan-addition offset t = 2F/(1 - F^2) as a projective point; infinite iff F^2 = 1.
inline ProjectiveReal t_of_F(const ProjectiveReal& F) {
  const double f = F.p(), g = F.q();
  return ProjectiveReal(2.0 * f * g, g * g - f * f);
}

/// Scissors coupling across a mesh edge, y = (x + F)/(1 - F x).
struct Coupling {
  ProjectiveReal F;
  double k = 1.0;  // -lambda_next when F is infinite
  std::optional<double> tau, zeta;

  ProjectiveReal t() const { return t_of_F(F); }

  static Coupling make(const ProjectiveReal& F, double factor_next = 1.0, double tol = 1e-12) {
    Coupling c;
    c.F = F;
    if (F.is_infinite(tol)) c.k = -factor_next;
    return c;
  }
};

inline Mobius coupling_matrix(const ProjectiveReal& F) { return {F.q(), F.p(), -F.p(), F.q()}; }

inline ProjectiveReal mobius(const ProjectiveReal& F, const ProjectiveReal& x) {
  return coupling_matrix(F)(x);
}

inline ProjectiveReal mobius_inverse(const ProjectiveReal& F, const ProjectiveReal& y) {
  return coupling_matrix(F).inverse()(y);
}

/// Involutivity table: F = 0 equal factors, F finite nonzero both -1, F infinite reciprocal.
inline bool is_involutive(const ProjectiveReal& F, double lambda_prev, double lambda_next,
                          double tol = 1e-10) {
  auto close = [&](double a, double b) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); };
  if (F.is_zero(tol)) return close(lambda_prev, lambda_next);
  if (F.is_infinite(tol)) return close(lambda_prev * lambda_next, 1.0);
  return close(lambda_prev, -1.0) && close(lambda_next, -1.0);
}

/// The involution y -> lambda/y pulled back through the coupling.
inline Mobius induced_involution_matrix(const ProjectiveReal& F, double lambda) {
  const double f = F.p(), g = F.q();
  return {-(lambda + 1.0) * f * g, lambda * g * g - f * f, g * g - lambda * f * f, (lambda + 1.0) * f * g};
}

inline ProjectiveReal induced_involution(const ProjectiveReal& F, double lambda_next,
                                         const ProjectiveReal& x) {
  return induced_involution_matrix(F, lambda_next)(x);
}

/// w' = k (2w + 4t)/(2 - t w) as a Moebius matrix in w.
inline Mobius w_transform_matrix(const ProjectiveReal& t, double k) {
  return {2.0 * k * t.q(), 4.0 * k * t.p(), -t.p(), 2.0 * t.q()};
}

inline ProjectiveReal w_transform(const ProjectiveReal& w, const ProjectiveReal& t, double k) {
  return w_transform_matrix(t, k)(w);
}

/// Both quads elliptic: k N(x1)/D(x1) * (y3 + mu2/y3) = nu2.
struct QuotientEllipticElliptic {
  double mu1, nu1, mu2, nu2;
  ProjectiveReal F2, F3;
  double k2 = 1.0;
};

/// Elliptic then laterally coupled (anti)deltoid: k N(x1)/D(x1) = xi2 y3^n2.
struct QuotientEllipticDeltoid {
  double mu1, nu1, xi2;
  int n2 = 1;
  ProjectiveReal F2, F3;
  double k2 = 1.0;
};

/// Two laterally coupled (anti)deltoids.
struct QuotientDeltoidDeltoid {
  double xi1, xi2;
  int n1 = 1, n2 = 1;
  ProjectiveReal F2, F3;
  double k2 = 1.0;
};

using QuotientEquation = std::variant<QuotientEllipticElliptic, QuotientEllipticDeltoid, QuotientDeltoidDeltoid>;

struct QuotientResidual {
  double value = 0.0;        // polynomial residual after clearing denominators
  double cleared = 1.0;      // product of the cleared denominators at the point
  bool at_pole = false;
};

namespace detail {
// N and D of the left-hand factor, multiplied through by the homogenizing powers.
inline std::pair<double, double> coupled_ratio(const ProjectiveReal& F, double k, double nu1, double mu1,
                                               const ProjectiveReal& x) {
  const double f = F.p(), g = F.q(), xp = x.p(), xq = x.q();
  const double one_m = g * g - f * f;
  const double N = 4.0 * f * g * xp * xp + nu1 * one_m * xp * xq + 4.0 * f * g * mu1 * xq * xq;
  const double D = one_m * xp * xp - f * g * nu1 * xp * xq + mu1 * one_m * xq * xq;
  return {k * N, D};
}
}  // namespace detail

inline QuotientResidual quotient_residual(const QuotientEquation& eq, const ProjectiveReal& x1,
                                          const ProjectiveReal& x3, double pole_tol = 1e-14) {
  QuotientResidual r;
  std::visit(
      [&](const auto& e) {
        using E = std::decay_t<decltype(e)>;
        const ProjectiveReal y3 = mobius(e.F3, x3);
        double N, D;
        if constexpr (std::is_same_v<E, QuotientDeltoidDeltoid>) {
          const ProjectiveReal xn = e.n1 == 1 ? x1 : x1.reciprocal();
          const double f = e.F2.p(), g = e.F2.q(), one_m = g * g - f * f;
          N = e.k2 * (one_m * e.xi1 * xn.p() + 4.0 * f * g * xn.q());
          D = -f * g * e.xi1 * xn.p() + one_m * xn.q();
        } else {
          std::tie(N, D) = detail::coupled_ratio(e.F2, e.k2, e.nu1, e.mu1, x1);
        }
        if constexpr (std::is_same_v<E, QuotientEllipticElliptic>) {
          const double S = y3.p() * y3.p() + e.mu2 * y3.q() * y3.q();
          const double P = y3.p() * y3.q();
          r.value = N * S - e.nu2 * D * P;
          r.cleared = D * P;
        } else {
          const ProjectiveReal yn = e.n2 == 1 ? y3 : y3.reciprocal();
          r.value = N * yn.q() - e.xi2 * D * yn.p();
          r.cleared = D * yn.q();
        }
        r.at_pole = std::abs(r.cleared) <= pole_tol;
      },
      eq);
  return r;
}

}  // namespace kok
