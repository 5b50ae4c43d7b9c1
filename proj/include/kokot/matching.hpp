#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "coupling.hpp"
#include "exact.hpp"

namespace kok {

/**
 * Parameters of an elliptic OI linkage. Index 0..3 stands for quads and couplings 1..4.
 * F is kept next to t because t cannot tell F = 0 from F = infinity.
 */
struct EllipticParams {
  std::array<double, 4> nu{}, lambda{-1, -1, -1, -1}, mu{-1, -1, -1, -1};
  std::array<ProjectiveReal, 4> F{};

  ProjectiveReal t(int i) const { return t_of_F(F[i]); }
  double t_value(int i) const { return t(i).to_double(); }

  /// Multiplier of coupling i (0-based): minus the factor on its y side.
  double k(int i) const {
    if (!F[i].is_infinite(1e-12)) return 1.0;
    switch (i) {
      case 0: return -mu[3];
      case 1: return -lambda[1];
      case 2: return -mu[1];
      default: return -lambda[3];
    }
  }
  /// nu with the coupling multipliers folded in, as they enter the matching matrix.
  std::array<double, 4> effective_nu() const {
    return {nu[0], nu[1] / (k(1) * k(2)), nu[2], nu[3] / (k(3) * k(0))};
  }

  /// Plain (nu, t) parameters with every coupling finite and lambda = mu = -1 unless t vanishes.
  static EllipticParams from_t(const std::array<double, 4>& nu, const std::array<double, 4>& t) {
    EllipticParams p;
    p.nu = nu;
    for (int i = 0; i < 4; ++i) p.F[i] = F_principal(t[i]);
    return p;
  }

  /// F = tan(arctan(t)/2), the branch with tau + zeta in (-pi/2, pi/2].
  static ProjectiveReal F_principal(double t) {
    if (std::isinf(t)) return ProjectiveReal(1.0, 1.0);
    return ProjectiveReal::from_angle(std::atan(t));
  }
};

struct MinorVector {
  std::array<double, 6> p{};
  std::array<double, 6> scale{};  // largest monomial contribution of each minor

  double normalized(int i) const { return scale[i] > 0 ? std::abs(p[i]) / scale[i] : std::abs(p[i]); }
  double max_normalized() const {
    double m = 0;
    for (int i = 0; i < 6; ++i) m = std::max(m, normalized(i));
    return m;
  }
  static const char* name(int i) {
    static const char* n[] = {"p12", "p13", "p14", "p23", "p24", "p34"};
    return n[i];
  }
};

namespace detail {

struct MinorTerm {
  int coef;
  std::array<int, 4> e;  // powers of nu1..nu4
  unsigned mask;         // bit k set: t_{k+1} present
};

// The six minors, each multilinear in t1..t4.
inline const std::array<std::vector<MinorTerm>, 6>& minor_tables() {
  static const std::array<std::vector<MinorTerm>, 6> tables = {{
      {{16, {0, 0, 0, 1}, 0b0111}, {4, {0, 0, 1, 1}, 0b1011}, {1, {0, 1, 1, 1}, 0b1101},
       {64, {0, 0, 0, 0}, 0b1110}, {-4, {0, 1, 0, 1}, 0b0001}, {-16, {0, 0, 1, 0}, 0b0010},
       {-4, {0, 1, 1, 0}, 0b0100}, {-16, {0, 1, 0, 0}, 0b1000}},
      {{1, {1, 1, 0, 1}, 0b0111}, {64, {0, 0, 0, 0}, 0b1011}, {16, {0, 1, 0, 0}, 0b1101},
       {4, {1, 1, 0, 0}, 0b1110}, {-4, {1, 0, 0, 1}, 0b0001}, {-16, {0, 0, 0, 1}, 0b0010},
       {-4, {0, 1, 0, 1}, 0b0100}, {-16, {1, 0, 0, 0}, 0b1000}},
      {{16, {0, 0, 1, 0}, 0b0011}, {-1, {1, 1, 0, 1}, 0b0011}, {4, {0, 1, 1, 0}, 0b0101},
       {-4, {1, 0, 0, 1}, 0b0101}, {4, {0, 0, 1, 1}, 0b1010}, {-4, {1, 1, 0, 0}, 0b1010},
       {1, {0, 1, 1, 1}, 0b1100}, {-16, {1, 0, 0, 0}, 0b1100}},
      {{256, {0, 0, 0, 0}, 0b1111}, {-1, {1, 1, 1, 1}, 0b1111}, {4, {1, 0, 1, 1}, 0b1001},
       {-64, {0, 1, 0, 0}, 0b1001}, {4, {1, 1, 1, 0}, 0b0110}, {-64, {0, 0, 0, 1}, 0b0110},
       {16, {0, 1, 0, 1}, 0b0000}, {-16, {1, 0, 1, 0}, 0b0000}},
      {{64, {0, 0, 1, 0}, 0b0111}, {1, {1, 1, 1, 1}, 0b1011}, {4, {1, 0, 1, 1}, 0b1101},
       {16, {0, 0, 1, 1}, 0b1110}, {-16, {0, 1, 1, 0}, 0b0001}, {-4, {1, 1, 1, 0}, 0b0010},
       {-16, {1, 0, 1, 0}, 0b0100}, {-4, {0, 1, 1, 1}, 0b1000}},
      {{4, {1, 1, 1, 0}, 0b0111}, {16, {1, 1, 0, 0}, 0b1011}, {64, {1, 0, 0, 0}, 0b1101},
       {1, {1, 1, 1, 1}, 0b1110}, {-16, {1, 0, 1, 0}, 0b0001}, {-4, {1, 1, 0, 1}, 0b0010},
       {-16, {1, 0, 0, 1}, 0b0100}, {-4, {1, 0, 1, 1}, 0b1000}},
  }};
  return tables;
}

template <class T>
T ipow(const T& x, int n) {
  T r(1);
  for (int i = 0; i < n; ++i) r = r * x;
  return r;
}

}  // namespace detail

/// Minors with homogeneous t_k = ta_k : tb_k. Returns the values and the largest monomial sizes.
template <class T>
std::array<T, 6> minors_homogeneous(const std::array<T, 4>& nu, const std::array<T, 4>& ta,
                                    const std::array<T, 4>& tb, std::array<double, 6>* scale = nullptr) {
  std::array<T, 6> out;
  const auto& tabs = detail::minor_tables();
  for (int m = 0; m < 6; ++m) {
    T sum(0);
    double big = 0.0;
    for (const auto& term : tabs[m]) {
      T v(term.coef);
      for (int j = 0; j < 4; ++j) v = v * detail::ipow(nu[j], term.e[j]);
      for (int j = 0; j < 4; ++j) v = v * ((term.mask >> j) & 1u ? ta[j] : tb[j]);
      sum = sum + v;
      big = std::max(big, std::abs(to_double(v)));
    }
    out[m] = sum;
    if (scale) (*scale)[m] = big;
  }
  return out;
}

/// Affine evaluation, the path used for exact arithmetic.
template <class T>
std::array<T, 6> minors_affine(const std::array<T, 4>& nu, const std::array<T, 4>& t) {
  return minors_homogeneous<T>(nu, t, {T(1), T(1), T(1), T(1)});
}

inline MinorVector minors(const EllipticParams& p) {
  const auto nu = p.effective_nu();
  std::array<double, 4> ta, tb;
  for (int i = 0; i < 4; ++i) {
    ta[i] = p.t(i).p();
    tb[i] = p.t(i).q();
  }
  MinorVector mv;
  mv.p = minors_homogeneous<double>(nu, ta, tb, &mv.scale);
  return mv;
}

/// Matrix N with homogeneous t; each row carries the factor tb of its own two t's.
template <class T>
std::array<std::array<T, 4>, 2> matrix_N_homogeneous(const std::array<T, 4>& nu, const std::array<T, 4>& ta,
                                                     const std::array<T, 4>& tb) {
  const T &n1 = nu[0], &n2 = nu[1], &n3 = nu[2], &n4 = nu[3];
  const T &a1 = ta[0], &a2 = ta[1], &a3 = ta[2], &a4 = ta[3];
  const T &b1 = tb[0], &b2 = tb[1], &b3 = tb[2], &b4 = tb[3];
  std::array<std::array<T, 4>, 2> N;
  N[0] = {T(2) * (T(4) * a2 * b3 + n2 * a3 * b2), T(4) * (T(4) * a2 * a3 - n2 * b2 * b3),
          n1 * (T(4) * b2 * b3 - n2 * a2 * a3), T(2) * n1 * (n2 * a2 * b3 + T(4) * a3 * b2)};
  N[1] = {T(2) * (n4 * a1 * b4 + T(4) * a4 * b1), n3 * (T(4) * b1 * b4 - n4 * a1 * a4),
          T(4) * (T(4) * a1 * a4 - n4 * b1 * b4), T(2) * n3 * (T(4) * a1 * b4 + n4 * a4 * b1)};
  return N;
}

inline std::array<std::array<double, 4>, 2> matrix_N(const EllipticParams& p) {
  std::array<double, 4> ta, tb;
  for (int i = 0; i < 4; ++i) {
    ta[i] = p.t(i).p();
    tb[i] = p.t(i).q();
  }
  return matrix_N_homogeneous<double>(p.effective_nu(), ta, tb);
}

/// Constant c_ij with p_ij = c_ij * det(columns i, j of N).
inline constexpr std::array<double, 6> minor_det_factor = {-0.5, 0.5, 0.25, 1.0, 0.5, -0.5};

inline bool is_oi_match(const EllipticParams& p, double tol = 1e-9) {
  return minors(p).max_normalized() <= tol;
}

/// Index (0-based coupling) of the first failing row of the involutive table, or -1.
inline int involutive_table_violation(const EllipticParams& p, double tol = 1e-10) {
  // coupling 1 joins mu4 (y side) and mu1, 2 joins lambda1 and lambda2,
  // 3 joins mu3 (x side) and mu2, 4 joins lambda3 and lambda4
  if (!is_involutive(p.F[0], p.mu[0], p.mu[3], tol)) return 0;
  if (!is_involutive(p.F[1], p.lambda[0], p.lambda[1], tol)) return 1;
  if (!is_involutive(p.F[2], p.mu[2], p.mu[1], tol)) return 2;
  if (!is_involutive(p.F[3], p.lambda[2], p.lambda[3], tol)) return 3;
  return -1;
}

// ---------------------------------------------------------------- generic branch

using Nu4 = std::array<double, 4>;

/// Common-root condition of p12 and p13 in t4.
inline double generic_condition_residual(const Nu4& nu, double t1, double t2, double t3) {
  const double n1 = nu[0], n2 = nu[1], n3 = nu[2], n4 = nu[3];
  return n4 * (n1 * n2 * n3 * n4 - 256) * t1 * t1 * t2 * t3 + 4 * n4 * (16 * n2 - n1 * n3 * n4) * t1 * t1 +
         16 * n3 * (16 - n4 * n4) * t1 * t2 + 4 * n2 * n3 * (16 - n4 * n4) * t1 * t3 +
         16 * (n1 * n2 * n3 - 16 * n4) * t2 * t3 + 64 * (n2 * n4 - n1 * n3);
}

inline double solve_t2(const Nu4& nu, double t1, double t3, double tol = 1e-12) {
  const double n1 = nu[0], n2 = nu[1], n3 = nu[2], n4 = nu[3];
  const double num = n4 * (n1 * n3 * n4 - 16 * n2) * t1 * t1 + n2 * n3 * (n4 * n4 - 16) * t1 * t3 +
                     16 * (n1 * n3 - n2 * n4);
  const double den = n4 * (n1 * n2 * n3 * n4 - 256) * t1 * t1 * t3 + 16 * n3 * (16 - n4 * n4) * t1 +
                     16 * (n1 * n2 * n3 - 16 * n4) * t3;
  const double sc = std::abs(n4 * (n1 * n2 * n3 * n4 - 256) * t1 * t1 * t3) +
                    std::abs(16 * n3 * (16 - n4 * n4) * t1) + std::abs(16 * (n1 * n2 * n3 - 16 * n4) * t3);
  if (std::abs(den) <= tol * std::max(sc, 1.0))
    throw Error(ErrorKind::degenerate, "t2 denominator vanishes, use the linear branch");
  return 4 * num / den;
}

inline double solve_t4(const Nu4& nu, double t1, double t3, double tol = 1e-12) {
  const double n1 = nu[0], n2 = nu[1], n3 = nu[2], n4 = nu[3];
  const double num = (n1 * n2 * n2 * n4 - 16 * n1 * n4) * t1 * t3 + (n1 * n2 * n2 * n3 - 16 * n2 * n4) * t3 * t3 -
                     16 * n2 * n4 + 16 * n1 * n3;
  const double d1 = (n1 * n2 * n2 * n3 * n4 - 256 * n2) * t1 * t3 * t3;
  const double d2 = (16 * n1 * n3 * n4 - 256 * n2) * t1;
  const double d3 = (256 * n1 - 16 * n1 * n2 * n2) * t3;
  const double den = d1 + d2 + d3;
  if (std::abs(den) <= tol * std::max(std::abs(d1) + std::abs(d2) + std::abs(d3), 1.0))
    throw Error(ErrorKind::degenerate, "t4 denominator vanishes, use the linear branch");
  return 4 * num / den;
}

struct QuarticCoefficients {
  double c22, c20, c02, c00;
  double eval(double t1, double t3) const {
    return c22 * t1 * t1 * t3 * t3 + c20 * t1 * t1 + c02 * t3 * t3 + c00;
  }
};

/// The left (a) and right (b) factor of the eliminated system.
inline std::pair<QuarticCoefficients, QuarticCoefficients> generic_branch_coefficients(const Nu4& nu) {
  const double n1 = nu[0], n2 = nu[1], n3 = nu[2], n4 = nu[3];
  QuarticCoefficients a{(n1 * n2 * n3 * n4 - 256) * (n1 * n4 - n2 * n3),
                        (n1 * n3 * n4 - 16 * n2) * (n1 * n2 * n4 - 16 * n3),
                        (16 * n1 - n2 * n3 * n4) * (n1 * n2 * n3 - 16 * n4),
                        16 * (n1 * n3 - n2 * n4) * (n1 * n2 - n3 * n4)};
  QuarticCoefficients b{n2 * n4 * (n1 * n2 * n3 * n4 - 256), 16 * n4 * (n1 * n3 * n4 - 16 * n2),
                        16 * n2 * (n1 * n2 * n3 - 16 * n4), 256 * (n1 * n3 - n2 * n4)};
  return {a, b};
}

inline std::pair<double, double> generic_branch_residuals(const Nu4& nu, double t1, double t3) {
  auto [a, b] = generic_branch_coefficients(nu);
  return {a.eval(t1, t3), b.eval(t1, t3)};
}

/// t3^2 on the left factor for a fixed t1, when it is a positive real.
inline std::optional<double> generic_branch_t3_squared(const Nu4& nu, double t1) {
  auto a = generic_branch_coefficients(nu).first;
  const double den = a.c22 * t1 * t1 + a.c02;
  if (den == 0.0) return std::nullopt;
  const double s = -(a.c20 * t1 * t1 + a.c00) / den;
  if (!(s > 0.0) || !std::isfinite(s)) return std::nullopt;
  return s;
}

// ---------------------------------------------------------------- linear branch

struct LinearBranch {
  double t2, t4, p23, p24;
};

inline LinearBranch linear_branch(const Nu4& nu, double t1, double t3) {
  const double n1 = nu[0], n2 = nu[1], n3 = nu[2], n4 = nu[3];
  LinearBranch r;
  r.t2 = -n2 * t3 / 4;
  r.t4 = -n4 * t1 / 4;
  const double s1 = t1 * t1, s3 = t3 * t3;
  r.p23 = n2 * n4 * (n1 * n2 * n3 * n4 - 256) * s1 * s3 + 16 * n4 * (n1 * n3 * n4 - 16 * n2) * s1 +
          16 * n2 * (n1 * n2 * n3 - 16 * n4) * s3 + 256 * (n1 * n3 - n2 * n4);
  r.p24 = n1 * n4 * n4 * (n2 * n2 - 16) * s1 * t3 + 16 * n2 * (n4 * n4 - 16) * t1 * s3 +
          16 * n2 * (n4 * n4 - 16) * t1 + 16 * n1 * (n2 * n2 - 16) * t3;
  return r;
}

/// (nu1, nu3) zeroing both linear-branch equations for given nu2, nu4, t1, t3.
template <class T>
std::pair<T, T> linear_branch_solve(const T& nu2, const T& nu4, const T& t1, const T& t3) {
  const T one(1), s16(16), s256(256);
  const T A = nu4 * nu4 * t1 * t1 + s16;
  const T B = nu2 * nu2 * t3 * t3 + s16;
  const T den1 = (nu2 * nu2 - s16) * t3 * A;
  const T nu1 = (T(0) - s16 * nu2 * (nu4 * nu4 - s16) * t1 * (t3 * t3 + one)) / den1;
  const T prod = s256 * nu2 * nu4 * (t1 * t1 + one) * (t3 * t3 + one) / (A * B);
  return {nu1, prod / nu1};
}

struct CellSample {
  double nu1, nu3;
  double p23, p24;  // plug-back residuals, normalized
};

/// Failure of the closed-form cell formula, with the minors-consistent values attached.
class CellInconsistency : public Error {
 public:
  CellInconsistency(const CellSample& formula, double nu1_ok, double nu3_ok, const std::string& msg)
      : Error(ErrorKind::cell_inconsistency, msg), formula(formula), nu1_consistent(nu1_ok), nu3_consistent(nu3_ok) {}
  CellSample formula;
  double nu1_consistent, nu3_consistent;
};

inline double linear_branch_normalized(const Nu4& nu, double t1, double t3, bool which24) {
  const double n1 = nu[0], n2 = nu[1], n3 = nu[2], n4 = nu[3];
  const double s1 = t1 * t1, s3 = t3 * t3;
  double sc;
  if (!which24)
    sc = std::max({std::abs(n2 * n4 * n1 * n2 * n3 * n4 * s1 * s3), std::abs(256 * n2 * n4 * s1 * s3),
                   std::abs(16 * n4 * n1 * n3 * n4 * s1), std::abs(256 * n4 * n2 * s1),
                   std::abs(16 * n2 * n1 * n2 * n3 * s3), std::abs(256 * n2 * n4 * s3), std::abs(256 * n1 * n3),
                   std::abs(256 * n2 * n4)});
  else
    sc = std::max({std::abs(n1 * n4 * n4 * (n2 * n2 - 16) * s1 * t3), std::abs(16 * n2 * (n4 * n4 - 16) * t1 * s3),
                   std::abs(16 * n2 * (n4 * n4 - 16) * t1), std::abs(16 * n1 * (n2 * n2 - 16) * t3)});
  auto lb = linear_branch(nu, t1, t3);
  return std::abs(which24 ? lb.p24 : lb.p23) / std::max(sc, 1e-300);
}

/// The closed-form cell, accepted only after plugging back into the linear-branch system.
inline CellSample cad_cell_sample(double nu2, double nu4, double t1, double t3, double tol = 1e-9) {
  if (!(t1 > 0 && t3 < 0 && nu2 > 4 && nu4 > 4))
    throw Error(ErrorKind::precondition, "cell requires t1 > 0, t3 < 0, nu2 > 4, nu4 > 4");
  CellSample s;
  s.nu3 = -16 * nu4 * (t1 * t1 + 1) / ((nu4 * nu4 - 16) * t1 * t3);
  s.nu1 = 256 * nu2 * nu4 * (t1 * t1 + 1) * (t3 * t3 + 1) /
          (s.nu3 * (nu4 * nu4 * t1 * t1 + 16) * (nu2 * nu2 * t3 * t3 + 16));
  const Nu4 nu{s.nu1, nu2, s.nu3, nu4};
  s.p23 = linear_branch_normalized(nu, t1, t3, false);
  s.p24 = linear_branch_normalized(nu, t1, t3, true);
  if (s.p23 > tol || s.p24 > tol) {
    auto [n1, n3] = linear_branch_solve<double>(nu2, nu4, t1, t3);
    std::ostringstream os;
    os.precision(12);
    os << "cell formula gives (nu1, nu3) = (" << s.nu1 << ", " << s.nu3 << ") with residuals p23 = " << s.p23
       << ", p24 = " << s.p24 << "; the linear-branch equations are solved by (" << n1 << ", " << n3 << ")";
    throw CellInconsistency(s, n1, n3, os.str());
  }
  return s;
}

// ---------------------------------------------------------------- existence

inline bool local_existence(double lambda, double mu, double nu) {
  if (lambda < 0 || mu < 0) return true;
  return nu * nu / (lambda * mu) > 16.0;
}

struct ExistenceReport {
  std::array<bool, 4> local_ok{};
  std::array<bool, 4> positive_set{};  // sign sets L1..L4
  int case_label = 1;
  bool global_ok = false;
  std::string note;
};

/// Sign-pattern case analysis over the cyclic sets L1 = {mu4, mu1}, L2 = {lambda1, lambda2},
/// L3 = {mu2, mu3}, L4 = {lambda3, lambda4}.
inline ExistenceReport global_existence(const EllipticParams& p) {
  ExistenceReport r;
  for (int i = 0; i < 4; ++i) r.local_ok[i] = local_existence(p.lambda[i], p.mu[i], p.nu[i]);
  r.positive_set = {p.mu[0] > 0, p.lambda[0] > 0, p.mu[1] > 0, p.lambda[2] > 0};
  int npos = 0;
  for (bool b : r.positive_set) npos += b;
  const auto& L = r.positive_set;
  bool case_ok = true;
  if (npos == 0) {
    r.case_label = 1;
  } else if (npos == 1) {
    r.case_label = 2;
  } else if (npos == 2 && ((L[0] && L[2]) || (L[1] && L[3]))) {
    r.case_label = 4;
    if (L[0]) {
      const double t2 = p.t_value(1);
      const double lhs = 16 * std::sqrt(p.mu[0] * p.mu[1]) - std::abs(p.nu[0] * p.nu[1]);
      const double rhs = (4 * std::abs(p.nu[1]) * std::sqrt(p.mu[0]) + 4 * std::abs(p.nu[0]) * std::sqrt(p.mu[1]));
      case_ok = t2 == 0.0 || (std::isinf(t2) ? lhs < 0 : lhs < rhs / std::abs(t2));
      if (!case_ok) r.note = "mu > 0 pattern violates the t2 inequality";
    } else {
      const double t3 = p.t_value(2);
      const double lhs = 16 * std::sqrt(p.lambda[1] * p.lambda[2]) - std::abs(p.nu[1] * p.nu[2]);
      const double rhs =
          (4 * std::abs(p.nu[2]) * std::sqrt(p.lambda[1]) + 4 * std::abs(p.nu[1]) * std::sqrt(p.lambda[2]));
      case_ok = t3 == 0.0 || (std::isinf(t3) ? lhs < 0 : lhs < rhs / std::abs(t3));
      if (!case_ok) r.note = "lambda > 0 pattern violates the t3 inequality";
    }
  } else if (npos == 2) {
    r.case_label = 3;
  } else {
    r.case_label = 5;
  }
  bool all_local = true;
  for (int i = 0; i < 4; ++i)
    if (!r.local_ok[i]) {
      all_local = false;
      if (r.note.empty()) r.note = "quad " + std::to_string(i + 1) + " has no real configurations";
    }
  r.global_ok = all_local && case_ok;
  return r;
}

inline const char* case_name(int c) {
  switch (c) {
    case 1: return "all-negative";
    case 2: return "one-positive";
    case 3: return "adjacent-positive";
    case 4: return "opposite-positive";
    default: return "three-or-more-positive";
  }
}

// ---------------------------------------------------------------- two (anti)deltoids

/// Parameters of the systems with (anti)deltoids Q2, Q3 frontally coupled through F3.
struct DeltoidParams {
  double nu1, xi2, xi3, nu4, t1, t2, F3, t4;
};

/// Both quads deltoids (or both antideltoids, after F3 -> -F3 by the caller).
inline std::array<double, 6> deltoid_minors_B1(const DeltoidParams& q) {
  const double n1 = q.nu1, x2 = q.xi2, x3 = q.xi3, n4 = q.nu4, t1 = q.t1, t2 = q.t2, F3 = q.F3, t4 = q.t4;
  return {-2 * x3 * n4 * t1 * t2 * t4 + 2 * x2 * n4 * t1 + 8 * x3 * t2 + 8 * x2 * t4 +
              F3 * (4 * n4 * t1 * t2 + x2 * x3 * n4 * t1 * t4 + 16 * t2 * t4 - 4 * x2 * x3),
          x3 * (-n1 * x2 * n4 * t1 * t2 * t4 + 16 * x2 * t1 + 4 * n1 * x2 * t2 + 4 * x2 * n4 * t4 +
                F3 * (32 * t1 * t2 + 2 * n1 * n4 * t1 * t4 + 8 * n4 * t2 * t4 - 8 * n1)),
          2 * (16 * x2 - n1 * x3 * n4) * t1 * t4 + 8 * (n1 * x3 - x2 * n4) +
              F3 * ((64 - n1 * x2 * x3 * n4) * t1 * t2 * t4 + 4 * (n1 * x2 * x3 - 4 * n4) * t2),
          (n1 * x2 * n4 - 16 * x3) * t1 * t2 + 4 * (n1 * x2 - x3 * n4) * t2 * t4 +
              F3 * (2 * (4 * x2 * x3 - n1 * n4) * t1 + 2 * (x2 * x3 * n4 - 4 * n1) * t4),
          -64 * t1 * t2 * t4 + 4 * n1 * n4 * t1 + 16 * n4 * t2 + 16 * n1 * t4 +
              F3 * (2 * n1 * x2 * n4 * t1 * t2 + 32 * x2 * t1 * t4 + 8 * n1 * x2 * t2 * t4 - 8 * x2 * n4),
          n1 * (-8 * x2 * t1 * t2 * t4 + 8 * x3 * t1 + 2 * x2 * n4 * t2 + 2 * x3 * n4 * t4 +
                F3 * (4 * x2 * x3 * t1 * t2 + 16 * t1 * t4 + x2 * x3 * n4 * t2 * t4 - 4 * n4))};
}

/// Q2 a deltoid and Q3 an antideltoid.
inline std::array<double, 6> deltoid_minors_B2(const DeltoidParams& q) {
  const double n1 = q.nu1, x2 = q.xi2, x3 = q.xi3, n4 = q.nu4, t1 = q.t1, t2 = q.t2, F3 = q.F3, t4 = q.t4;
  return {2 * x3 * n4 * t1 * t2 * F3 * t4 - 4 * n4 * t1 * t2 + 2 * x2 * n4 * t1 * F3 + x2 * x3 * n4 * t1 * t4 -
              8 * x3 * t2 * F3 - 16 * t2 * t4 + 8 * x2 * F3 * t4 - 4 * x2 * x3,
          32 * t1 * t2 * F3 * t4 + n1 * x2 * n4 * t1 * t2 - 2 * n1 * n4 * t1 * F3 + 16 * x2 * t1 * t4 -
              8 * n4 * t2 * F3 + 4 * n1 * x2 * t2 * t4 - 8 * n1 * F3 * t4 - 4 * x2 * n4,
          (n1 * x2 * n4 + 16 * x3) * t1 * t2 * F3 + 4 * (n1 * x2 + x3 * n4) * t2 * F3 * t4 +
              2 * (n1 * n4 + 4 * x2 * x3) * t1 + 2 * (4 * n1 + x2 * x3 * n4) * t4,
          (n1 * x2 * x3 * n4 + 64) * t1 * t2 * t4 - 2 * (16 * x2 + n1 * x3 * n4) * t1 * F3 * t4 -
              4 * (4 * n4 + n1 * x2 * x3) * t2 + 8 * (x2 * n4 + n1 * x3) * F3,
          x3 * (n1 * x2 * n4 * t1 * t2 * F3 * t4 + 32 * t1 * t2 - 16 * x2 * t1 * F3 + 2 * n1 * n4 * t1 * t4 -
                4 * n1 * x2 * t2 * F3 + 8 * n4 * t2 * t4 - 4 * x2 * n4 * F3 * t4 - 8 * n1),
          n1 * (8 * x2 * t1 * t2 * F3 * t4 - 4 * x2 * x3 * t1 * t2 + 8 * x3 * t1 * F3 + 16 * t1 * t4 -
                2 * x2 * n4 * t2 * F3 - x2 * x3 * n4 * t2 * t4 + 2 * x3 * n4 * F3 * t4 - 4 * n4)};
}

}  // namespace kok
