#pragma once

#include <array>
#include <map>
#include <string>

#include "geometry.hpp"
#include "linkage.hpp"

namespace kok {

struct Lengths {
  std::array<double, 2> legs{1.0, 1.0};  // |A1A2| and |A1A4| requested for the central solve
  std::array<double, 4> spoke_b{1, 1, 1, 1}, spoke_c{1, 1, 1, 1};
};

/**
 * Euclidean realization: the linkage plus the central face and the spokes.
 * tau comes from the central face, zeta = 2 atan(F) - tau.
 */
struct MeshDesign {
  LinkageDesign linkage;
  Lengths lengths;
  CentralQuad central;
  std::array<double, 4> tau{}, zeta{};
  std::map<std::string, std::string> metadata;

  std::array<double, 4> delta() const {
    return {linkage.quads[0].delta, linkage.quads[1].delta, linkage.quads[2].delta, linkage.quads[3].delta};
  }
};

/// The coupling angle tau + zeta = 2 atan(F), in (-pi, pi].
inline double coupling_angle(const ProjectiveReal& F) { return F.to_angle(); }

inline MeshDesign make_mesh_design(const LinkageDesign& linkage, const Lengths& lengths = {}) {
  MeshDesign d;
  d.linkage = linkage;
  d.lengths = lengths;
  for (const auto& q : linkage.quads) q.validate();
  d.central = build_central_tetrahedron(d.delta(), lengths.legs);
  d.tau = d.central.tau;
  for (int i = 0; i < 4; ++i) d.zeta[i] = wrap_angle(coupling_angle(linkage.F[i]) - d.tau[i]);
  return d;
}

/// Largest violation of the MeshDesign invariants.
struct DesignInvariants {
  double orthodiagonal = 0, coupling = 0, central = 0;
  double max() const { return std::max({orthodiagonal, coupling, central}); }
};

inline DesignInvariants check_invariants(const MeshDesign& d) {
  DesignInvariants r;
  for (int i = 0; i < 4; ++i) {
    r.orthodiagonal = std::max(r.orthodiagonal, std::abs(orthodiagonal_residual(d.linkage.quads[i])));
    const ProjectiveReal F = ProjectiveReal::from_angle(d.tau[i] + d.zeta[i]);
    r.coupling = std::max(r.coupling, chordal(F, d.linkage.F[i]));
    r.central = std::max(r.central, std::abs(central_angle(d.central.A, i + 1) - d.linkage.quads[i].delta));
  }
  return r;
}

}  // namespace kok
