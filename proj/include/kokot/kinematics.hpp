#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <vector>

#include "design.hpp"
#include "intervals.hpp"

namespace kok {

/// One configuration of the four coupled spherical linkages.
struct ChainState {
  std::array<ProjectiveReal, 4> x{}, y{};
  std::array<int, 3> branch{};  // root index chosen at quads 1, 2, 3
  double residual = std::numeric_limits<double>::infinity();
};

namespace detail {
// Max-norm chart of a projective point, so that evaluation stays O(1) at infinity.
inline std::pair<double, double> max_chart(const ProjectiveReal& x) {
  const double m = std::max(std::abs(x.p()), std::abs(x.q()));
  return {x.p() / m, x.q() / m};
}
}  // namespace detail

/// |P(u, v)| in max-norm charts divided by the largest coefficient.
inline double normalized_poly_residual(const ConfigPolynomial& c, const ProjectiveReal& u, const ProjectiveReal& v) {
  auto [up, uq] = detail::max_chart(u);
  auto [vp, vq] = detail::max_chart(v);
  const double r = c.c22 * up * up * vp * vp + c.c20 * up * up * vq * vq + c.c02 * uq * uq * vp * vp +
                   2.0 * c.c11 * up * uq * vp * vq + c.c00 * uq * uq * vq * vq;
  return std::abs(r) / c.max_abs();
}

/// Precomputed data for repeated chain solves.
class Chain {
 public:
  explicit Chain(const LinkageDesign& d) : design_(d), analysis_(analyze(d)) {
    for (int i = 0; i < 4; ++i) poly_[i] = config_poly(d.quads[i]);
  }

  const LinkageDesign& design() const { return design_; }
  const LinkageAnalysis& analysis() const { return analysis_; }
  const ConfigPolynomial& poly(int i) const { return poly_[i]; }

  /// Every real chain through x1; empty when some stage has no real root.
  std::vector<ChainState> all_states(const ProjectiveReal& x1) const {
    std::vector<ChainState> out;
    const auto& f = analysis_.factors;
    const auto& F = design_.F;
    const auto r1 = solve_partner(f[0], x1).roots;
    for (int b1 = 0; b1 < static_cast<int>(r1.size()); ++b1) {
      const ProjectiveReal y2 = mobius(F[1], r1[b1]);
      const auto r2 = solve_partner_second(f[1], y2).roots;
      for (int b2 = 0; b2 < static_cast<int>(r2.size()); ++b2) {
        const ProjectiveReal x3 = mobius_inverse(F[2], r2[b2]);
        const auto r3 = solve_partner(f[2], x3).roots;
        for (int b3 = 0; b3 < static_cast<int>(r3.size()); ++b3) {
          ChainState s;
          s.x = {x1, r1[b1], x3, r3[b3]};
          for (int i = 0; i < 4; ++i) s.y[i] = mobius(F[i], s.x[i]);
          s.branch = {b1, b2, b3};
          s.residual = normalized_poly_residual(poly_[3], s.y[3], s.y[0]);
          out.push_back(s);
        }
      }
    }
    return out;
  }

  /// The chain with the given root indices; throws out_of_interval naming the stage without roots.
  ChainState solve(const ProjectiveReal& x1, const std::array<int, 3>& branch) const {
    const auto& f = analysis_.factors;
    const auto& F = design_.F;
    auto pick = [&](const PartnerRoots& r, int stage) {
      if (r.roots.empty()) {
        std::ostringstream os;
        os << "no real root at quad " << stage << " for x1 = " << x1.to_double();
        throw Error(ErrorKind::out_of_interval, os.str());
      }
      return r.roots[std::min<int>(branch[stage - 1], static_cast<int>(r.roots.size()) - 1)];
    };
    ChainState s;
    s.branch = branch;
    s.x[0] = x1;
    s.x[1] = pick(solve_partner(f[0], x1), 1);
    const ProjectiveReal y3 = pick(solve_partner_second(f[1], mobius(F[1], s.x[1])), 2);
    s.x[2] = mobius_inverse(F[2], y3);
    s.x[3] = pick(solve_partner(f[2], s.x[2]), 3);
    for (int i = 0; i < 4; ++i) s.y[i] = mobius(F[i], s.x[i]);
    s.residual = normalized_poly_residual(poly_[3], s.y[3], s.y[0]);
    return s;
  }

  /// Smallest closure residual over all branches, +inf outside the real motion set.
  double closure_residual(const ProjectiveReal& x1) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : all_states(x1)) best = std::min(best, s.residual);
    return best;
  }

  /// Residuals of all four configuration polynomials at a state.
  std::array<double, 4> poly_residuals(const ChainState& s) const {
    return {normalized_poly_residual(poly_[0], s.x[1], s.x[0]), normalized_poly_residual(poly_[1], s.y[1], s.y[2]),
            normalized_poly_residual(poly_[2], s.x[3], s.x[2]), normalized_poly_residual(poly_[3], s.y[3], s.y[0])};
  }

 private:
  LinkageDesign design_;
  LinkageAnalysis analysis_;
  std::array<ConfigPolynomial, 4> poly_;
};

inline ChainState chain_solve(const LinkageDesign& d, const ProjectiveReal& x1, const std::array<int, 3>& branch) {
  return Chain(d).solve(x1, branch);
}

inline double closure_residual(const LinkageDesign& d, const ProjectiveReal& x1) {
  return Chain(d).closure_residual(x1);
}

// ---------------------------------------------------------------- admissible interval

namespace detail {

struct StageCondition {
  Mobius map;    // w1 -> stage coordinate
  double bound;  // |w| >= 2 sqrt(bound)
};

inline Mobius reciprocal_scale(double nu) { return {0.0, nu, 1.0, 0.0}; }

inline bool condition_holds(const StageCondition& c, const ProjectiveReal& w1, double tol) {
  const ProjectiveReal w = c.map(w1);
  return w.p() * w.p() - 4.0 * c.bound * w.q() * w.q() >= -tol;
}

inline std::vector<StageCondition> stage_conditions(const Chain& chain) {
  const auto& d = chain.design();
  const auto& a = chain.analysis();
  std::array<double, 4> nu, lam, mu;
  for (int i = 0; i < 4; ++i) {
    nu[i] = *a.factors[i].nu;
    lam[i] = *a.factors[i].lambda;
    mu[i] = *a.factors[i].mu;
  }
  const Mobius m2 = reciprocal_scale(nu[0]);
  const Mobius m2p = w_transform_matrix(t_of_F(d.F[1]), a.k[1]) * m2;
  const Mobius m3p = reciprocal_scale(nu[1]) * m2p;
  const Mobius m3 = w_transform_matrix(t_of_F(d.F[2]), a.k[2]).inverse() * m3p;
  const Mobius m4 = reciprocal_scale(nu[2]) * m3;
  std::vector<StageCondition> out;
  if (lam[0] > 0) out.push_back({m2, lam[0]});
  if (mu[1] > 0) out.push_back({m3p, mu[1]});
  if (lam[2] > 0) out.push_back({m4, lam[2]});
  return out;
}

}  // namespace detail

/**
 * Real motion set in x1 for an elliptic design, from the stage conditions |w| >= 2 sqrt(factor)
 * carried back to w1 = x1 + mu1/x1 by the Moebius maps of the chain.
 * Designs with (anti)deltoids fall back to a dense scan of chain existence.
 */
inline RealIntervalSet admissible_interval(const LinkageDesign& d, int fallback_samples = 4000) {
  const Chain chain(d);
  if (!chain.analysis().all_elliptic()) {
    return scan_interval_set(
        [&](double phi) { return !chain.all_states(ProjectiveReal::from_angle(phi)).empty(); }, fallback_samples);
  }
  const auto conds = detail::stage_conditions(chain);
  const double mu1 = *chain.analysis().factors[0].mu;
  auto feasible = [&](double phi) {
    const ProjectiveReal w1 = symmetric_coordinate(ProjectiveReal::from_angle(phi), mu1);
    for (const auto& c : conds)
      if (!detail::condition_holds(c, w1, 0.0)) return false;
    return true;
  };
  std::vector<double> cuts = {0.0, pi};
  if (mu1 > 0) {
    cuts.push_back(2 * std::atan(std::sqrt(mu1)));
    cuts.push_back(-2 * std::atan(std::sqrt(mu1)));
  }
  for (const auto& c : conds) {
    const Mobius inv = c.map.inverse();
    for (double s : {-1.0, 1.0}) {
      const ProjectiveReal w1 = inv(ProjectiveReal(s * 2.0 * std::sqrt(c.bound), 1.0));
      // x^2 - w1 x + mu1 = 0
      for (const auto& x : solve_homogeneous_quadratic(w1.q(), -w1.p(), mu1 * w1.q()).roots)
        cuts.push_back(x.to_angle());
    }
  }
  for (auto& c : cuts) c = wrap_angle(c);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(), [](double a, double b) { return std::abs(a - b) < 1e-15; }),
             cuts.end());
  std::vector<Arc> arcs;
  const int n = static_cast<int>(cuts.size());
  for (int k = 0; k < n; ++k) {
    const double a = cuts[k];
    double b = cuts[(k + 1) % n];
    if (k + 1 == n) b += 2 * pi;
    if (b - a <= 0) continue;
    if (feasible(0.5 * (a + b))) arcs.push_back(Arc{a, b - a});
  }
  return RealIntervalSet::from_arcs(arcs);
}

// ---------------------------------------------------------------- frames

struct MotionFrame {
  ChainState state;
  std::array<double, 4> phi{}, psi{}, phi_star{};
  MeshPoints points;
  std::array<double, 4> corner_deviation{};
  std::array<double, 4> poly_residual{};
  double closure = 0;         // normalized residual of the fourth polynomial
  double max_corner = 0;      // largest corner-angle deviation
  double dihedral_identity = 0;  // max |psi - phi - tau - zeta| mod 2 pi, from the positions
  double embed_error = 0;     // max deviation of measured phi, psi from the state
};

inline double angle_gap(double a, double b) { return std::abs(wrap_angle(a - b)); }

inline MotionFrame embed(const MeshDesign& d, const Chain& chain, const ChainState& s) {
  MotionFrame f;
  f.state = s;
  for (int i = 0; i < 4; ++i) {
    f.phi[i] = s.x[i].to_angle();
    f.psi[i] = s.y[i].to_angle();
    f.phi_star[i] = phi_star(f.phi[i]);
  }
  std::array<std::array<double, 2>, 4> side;
  for (int i = 0; i < 4; ++i) side[i] = {d.linkage.quads[i].alpha, d.linkage.quads[i].gamma};
  f.points = place_spokes(d.central.A, side, f.phi, f.psi, d.lengths.spoke_b, d.lengths.spoke_c);
  const OrientedDihedrals od = oriented_dihedrals(f.points);
  for (int i = 0; i < 4; ++i) {
    const auto& P = f.points;
    f.corner_deviation[i] = std::abs(geom::angle(P.B[i] - P.A[i], P.C[i] - P.A[i]) - d.linkage.quads[i].beta);
    f.max_corner = std::max(f.max_corner, f.corner_deviation[i]);
    f.dihedral_identity =
        std::max(f.dihedral_identity, angle_gap(od.psi[i], od.phi[i] + od.tau[i] + od.zeta[i]));
    f.embed_error = std::max({f.embed_error, angle_gap(od.phi[i], f.phi[i]), angle_gap(od.psi[i], f.psi[i])});
  }
  f.poly_residual = chain.poly_residuals(s);
  f.closure = s.residual;
  return f;
}

inline MotionFrame embed(const MeshDesign& d, const ChainState& s) { return embed(d, Chain(d.linkage), s); }

// ---------------------------------------------------------------- tracing

struct TraceOptions {
  int frames = 200;
  std::optional<double> seed_phi;  // driving angle of frame 0
  double accept = 1e-6;            // closure needed to follow a branch
  double jump = 0.25;              // chordal jump that triggers step halving
  double min_step = 1e-9;
};

struct Trace {
  std::vector<MotionFrame> frames;
  Arc arc;
  double max_closure = 0, max_corner = 0, max_identity = 0, max_poly = 0;
};

namespace detail {

inline double state_distance(const ChainState& a, const ChainState& b) {
  double d = 0;
  for (int i = 1; i < 4; ++i) d = std::max(d, chordal(a.x[i], b.x[i]));
  return d;
}

inline std::optional<ChainState> nearest_closing(const Chain& chain, double phi, const ChainState* prev,
                                                 double accept) {
  std::optional<ChainState> best;
  double best_key = std::numeric_limits<double>::infinity();
  for (const auto& s : chain.all_states(ProjectiveReal::from_angle(phi))) {
    if (!(s.residual <= accept)) continue;
    const double key = prev ? state_distance(s, *prev) : s.residual;
    if (key < best_key) {
      best_key = key;
      best = s;
    }
  }
  return best;
}

}  // namespace detail

/**
 * Frames along one arc of the real motion set, starting at the seed and following the branch
 * nearest to the previous frame. A large jump is resolved by halving the step.
 */
inline Trace trace_motion(const MeshDesign& d, const TraceOptions& opt = {}) {
  const Chain chain(d.linkage);
  const RealIntervalSet set = admissible_interval(d.linkage);
  if (set.empty()) throw Error(ErrorKind::out_of_interval, "empty real motion set");
  Trace tr;
  int arc_index = set.longest();
  if (opt.seed_phi) {
    arc_index = -1;
    for (int i = 0; i < static_cast<int>(set.arcs().size()); ++i)
      if (set.arcs()[i].contains(*opt.seed_phi)) arc_index = i;
    if (arc_index < 0) throw Error(ErrorKind::out_of_interval, "seed outside the real motion set");
  }
  tr.arc = set.arcs()[arc_index];
  const int n = std::max(1, opt.frames);
  double phi0, step;
  if (tr.arc.full()) {
    phi0 = opt.seed_phi.value_or(2 * std::atan(3.0));
    step = 2 * pi / n;
  } else {
    const double margin = 1e-3 * tr.arc.length;
    const double inner_end = tr.arc.start + tr.arc.length - margin;
    if (opt.seed_phi) {
      double off = *opt.seed_phi - tr.arc.start;
      off -= 2 * pi * std::floor(off / (2 * pi));
      phi0 = tr.arc.start + off;
    } else {
      phi0 = tr.arc.start + margin;
    }
    step = n > 1 ? (inner_end - phi0) / (n - 1) : 0.0;
  }

  std::optional<ChainState> cur = detail::nearest_closing(chain, phi0, nullptr, opt.accept);
  if (!cur) {
    std::ostringstream os;
    os << "no closing branch at phi1 = " << phi0 << " (closure " << chain.closure_residual(ProjectiveReal::from_angle(phi0))
       << ")";
    throw Error(ErrorKind::trace, os.str());
  }

  // advance from phi_a (state s) to phi_b, halving on jumps
  std::function<ChainState(double, double, const ChainState&, int)> advance =
      [&](double a, double b, const ChainState& s, int depth) -> ChainState {
    auto next = detail::nearest_closing(chain, b, &s, opt.accept);
    if (next && detail::state_distance(*next, s) <= opt.jump) return *next;
    if (std::abs(b - a) <= opt.min_step || depth > 40) {
      std::ostringstream os;
      os << "branch lost at phi1 = " << b;
      if (!next) os << " (no closing branch, closure " << chain.closure_residual(ProjectiveReal::from_angle(b)) << ")";
      throw Error(ErrorKind::trace, os.str());
    }
    const double m = 0.5 * (a + b);
    const ChainState mid = advance(a, m, s, depth + 1);
    return advance(m, b, mid, depth + 1);
  };

  double phi = phi0;
  for (int k = 0; k < n; ++k) {
    if (k > 0) {
      cur = advance(phi, phi + step, *cur, 0);
      phi += step;
    }
    MotionFrame f = embed(d, chain, *cur);
    tr.max_closure = std::max(tr.max_closure, f.closure);
    tr.max_corner = std::max(tr.max_corner, f.max_corner);
    tr.max_identity = std::max(tr.max_identity, f.dihedral_identity);
    for (double r : f.poly_residual) tr.max_poly = std::max(tr.max_poly, r);
    tr.frames.push_back(std::move(f));
  }
  return tr;
}

// ---------------------------------------------------------------- geometric properties

struct PropertyReport {
  double orthogonality = 0;                 // max |cos| between the two diagonal planes at a vertex
  std::array<double, 4> edge_angle{};       // diagonal-plane angle across edge a_{i+1}, first frame
  std::array<double, 4> edge_angle_spread{};  // its variation over the frames
  double max_spread = 0;
};

namespace detail {
inline Vec3 plane_normal(const Vec3& p, const Vec3& q, const Vec3& r) { return (q - p).cross(r - p).normalized(); }
}  // namespace detail

/// Angle between planes [B_i, A_i, A_{i+1}] and [A_i, A_{i+1}, C_{i+1}] (0-based i).
inline double diagonal_plane_angle(const MeshPoints& P, int i) {
  const int n = (i + 1) % 4;
  const Vec3 e = P.A[n] - P.A[i];
  const Vec3 n1 = e.cross(P.B[i] - P.A[i]);
  const Vec3 n2 = e.cross(P.C[n] - P.A[n]);
  return std::atan2(n1.cross(n2).dot(e.normalized()), n1.dot(n2));
}

inline PropertyReport geometric_property_check(const std::vector<MotionFrame>& frames) {
  PropertyReport r;
  std::array<double, 4> lo, hi;
  lo.fill(std::numeric_limits<double>::infinity());
  hi.fill(-std::numeric_limits<double>::infinity());
  for (const auto& f : frames) {
    const auto& P = f.points;
    for (int i = 0; i < 4; ++i) {
      const int prev = (i + 3) % 4, next = (i + 1) % 4;
      const Vec3 n1 = detail::plane_normal(P.A[i], P.B[i], P.A[next]);
      const Vec3 n2 = detail::plane_normal(P.A[i], P.C[i], P.A[prev]);
      r.orthogonality = std::max(r.orthogonality, std::abs(n1.dot(n2)));
      // planes are unoriented, so the angle is compared modulo pi
      double a = diagonal_plane_angle(P, i);
      if (&f != &frames.front()) a = r.edge_angle[i] + std::remainder(a - r.edge_angle[i], pi);
      else r.edge_angle[i] = a;
      lo[i] = std::min(lo[i], a);
      hi[i] = std::max(hi[i], a);
    }
  }
  for (int i = 0; i < 4; ++i) {
    r.edge_angle_spread[i] = frames.empty() ? 0.0 : hi[i] - lo[i];
    r.max_spread = std::max(r.max_spread, r.edge_angle_spread[i]);
  }
  return r;
}

/**
 * Largest gap, modulo pi, between the plane angle across a_{i+1} and zeta_{i+1}. With the
 * orientation used here the angle equals -zeta on edges a_2, a_4 and +zeta on a_3, a_1.
 */
inline double edge_angle_zeta_gap(const PropertyReport& r, const std::array<double, 4>& zeta) {
  double g = 0;
  for (int i = 0; i < 4; ++i) {
    const double z = i % 2 ? zeta[(i + 1) % 4] : -zeta[(i + 1) % 4];
    double d = std::fmod(r.edge_angle[i] - z, pi);
    if (d > pi / 2) d -= pi;
    if (d < -pi / 2) d += pi;
    g = std::max(g, std::abs(d));
  }
  return g;
}

}  // namespace kok
