#pragma once

#include <array>
#include <string>

#include "matching.hpp"

namespace kok {

/**
 * The abstract mechanism: four spherical images and four couplings.
 * Quad i couples to quad i+1 through coupling i+1 (cyclic, 1-based), and the
 * configuration equations are P1(x2, x1), P2(y2, y3), P3(x4, x3), P4(y4, y1)
 * with y_i = (x_i + F_i)/(1 - F_i x_i).
 */
struct LinkageDesign {
  std::array<SphericalQuad, 4> quads{};
  std::array<ProjectiveReal, 4> F{};
};

struct LinkageAnalysis {
  std::array<InvolutionFactors, 4> factors;
  std::array<double, 4> k{1, 1, 1, 1};

  bool all_elliptic() const {
    for (const auto& f : factors)
      if (f.cls.kind != QuadKind::elliptic) return false;
    return true;
  }
};

inline LinkageAnalysis analyze(const LinkageDesign& d, double tol = 1e-10) {
  LinkageAnalysis a;
  for (int i = 0; i < 4; ++i) {
    d.quads[i].validate();
    a.factors[i] = involution_factors(d.quads[i], tol);
  }
  // y side of coupling 1..4: mu4, lambda2, mu2, lambda4
  const std::array<std::optional<double>, 4> yside = {a.factors[3].mu, a.factors[1].lambda, a.factors[1].mu,
                                                      a.factors[3].lambda};
  for (int i = 0; i < 4; ++i)
    if (d.F[i].is_infinite(1e-12) && yside[i]) a.k[i] = -*yside[i];
  return a;
}

/// Matching parameters of an all-elliptic linkage.
inline EllipticParams elliptic_params(const LinkageDesign& d, const LinkageAnalysis& a) {
  if (!a.all_elliptic()) throw Error(ErrorKind::precondition, "linkage has non-elliptic quads");
  EllipticParams p;
  for (int i = 0; i < 4; ++i) {
    p.nu[i] = *a.factors[i].nu;
    p.lambda[i] = *a.factors[i].lambda;
    p.mu[i] = *a.factors[i].mu;
    p.F[i] = d.F[i];
  }
  return p;
}

inline EllipticParams elliptic_params(const LinkageDesign& d) { return elliptic_params(d, analyze(d)); }

}  // namespace kok
