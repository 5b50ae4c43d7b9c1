#pragma once

#include <string>
#include <vector>

#include "design_io.hpp"
#include "oracle.hpp"

namespace kok {

/// Exit codes of the command-line tool.
enum ExitCode : int { exit_ok = 0, exit_failed = 2, exit_parse = 64 };

struct CheckOptions {
  int probe_frames = 32;
  double minor_tol = 1e-9;
  double probe_tol = 1e-8;
  bool oracle_score = true;
};

struct CheckReport {
  io::json doc;  // machine-readable report
  bool certified = false;
  std::string verdict;
  std::optional<Trace> probe;
};

namespace detail {

inline io::json arcs_json(const RealIntervalSet& s) {
  io::json a = io::json::array();
  for (const auto& arc : s.arcs()) a.push_back({{"start", arc.start}, {"length", arc.length}});
  return a;
}

inline io::json frame_json(const MotionFrame& f) {
  io::json j;
  j["x1"] = format_decimal(f.state.x[0].to_double());
  j["phi"] = f.phi;
  j["psi"] = f.psi;
  j["phi_star"] = f.phi_star;
  j["closure_residual"] = f.closure;
  j["max_corner_deviation"] = f.max_corner;
  return j;
}

inline io::json finite_or_null(double v) { return std::isfinite(v) ? io::json(v) : io::json(nullptr); }

}  // namespace detail

/**
 * Certification of a mesh design: orthodiagonality, classification, involutive table,
 * matching minors, existence, and a short probe trace. Stops at the first failing stage.
 */
inline CheckReport check_design(const MeshDesign& d, const CheckOptions& opt = {}) {
  using io::json;
  CheckReport rep;
  json& j = rep.doc;
  j["format"] = "kokotsakis-report/1";
  auto fail = [&](const std::string& stage, const std::string& why) {
    rep.certified = false;
    rep.verdict = why;
    j["failed_stage"] = stage;
    j["certified"] = false;
    j["verdict"] = why;
    return rep;
  };

  json quads = json::array();
  bool ortho = true;
  for (int i = 0; i < 4; ++i) {
    const auto& q = d.linkage.quads[i];
    const double r = orthodiagonal_residual(q);
    json e{{"orthodiagonal_residual", r}};
    if (!is_orthodiagonal(q)) ortho = false;
    else e["class"] = classify(q).str();
    quads.push_back(e);
  }
  j["quads"] = quads;
  if (!ortho) return fail("orthodiagonal", "not orthodiagonal");

  const LinkageAnalysis an = analyze(d.linkage);
  for (int i = 0; i < 4; ++i) {
    const auto& f = an.factors[i];
    json& e = j["quads"][i];
    if (f.lambda) e["lambda"] = *f.lambda;
    if (f.mu) e["mu"] = *f.mu;
    if (f.nu) e["nu"] = *f.nu;
    if (f.xi) e["xi"] = *f.xi;
  }
  json cpl = json::array();
  for (int i = 0; i < 4; ++i) {
    const ProjectiveReal t = t_of_F(d.linkage.F[i]);
    cpl.push_back({{"F", detail::finite_or_null(d.linkage.F[i].to_double())},
                   {"t", detail::finite_or_null(t.to_double())},
                   {"tau", d.tau[i]},
                   {"zeta", d.zeta[i]}});
  }
  j["couplings"] = cpl;

  std::string type = "elliptic";
  int case_label = 0;
  if (an.all_elliptic()) {
    const EllipticParams p = elliptic_params(d.linkage, an);
    if (int v = involutive_table_violation(p); v >= 0)
      return fail("involutive", "coupling " + std::to_string(v + 1) + " is not involutive");
    const MinorVector mv = minors(p);
    json mj = json::object();
    int first = -1;
    for (int m = 0; m < 6; ++m) {
      mj[MinorVector::name(m)] = {{"value", mv.p[m]}, {"normalized", mv.normalized(m)}};
      if (first < 0 && mv.normalized(m) > opt.minor_tol) first = m;
    }
    j["minors"] = mj;
    j["max_normalized_minor"] = mv.max_normalized();
    if (first >= 0) {
      j["first_failing_minor"] = MinorVector::name(first);
      std::ostringstream os;
      os << "not OI: minor " << MinorVector::name(first) << " = " << mv.normalized(first)
         << " (normalized) exceeds " << opt.minor_tol;
      return fail("minors", os.str());
    }
    const ExistenceReport ex = global_existence(p);
    case_label = ex.case_label;
    j["existence"] = {{"local", ex.local_ok},
                      {"case", ex.case_label},
                      {"case_name", case_name(ex.case_label)},
                      {"global", ex.global_ok},
                      {"note", ex.note}};
    if (!ex.global_ok) return fail("existence", "elliptic OI, case: " + std::string(case_name(case_label)) +
                                                    ", no real flexion (" + ex.note + ")");
  } else {
    type = "deltoid";
  }

  const RealIntervalSet I = admissible_interval(d.linkage);
  j["interval"] = {{"arcs", detail::arcs_json(I)}, {"measure", I.measure()}};
  if (I.empty()) return fail("interval", "empty admissible interval");

  try {
    TraceOptions to;
    to.frames = opt.probe_frames;
    rep.probe = trace_motion(d, to);
  } catch (const Error& e) {
    return fail("probe", std::string("probe trace failed: ") + e.what());
  }
  const Trace& tr = *rep.probe;
  j["probe"] = {{"frames", tr.frames.size()},
                {"max_closure_residual", tr.max_closure},
                {"max_corner_deviation", tr.max_corner},
                {"max_dihedral_identity", tr.max_identity},
                {"frame0", detail::frame_json(tr.frames.front())}};
  if (opt.oracle_score) {
    const auto sc = oracle::common_component_score(d.linkage);
    j["oracle"] = {{"common_component_score", sc.score}, {"samples", sc.samples}};
  }
  if (tr.max_closure > opt.probe_tol || tr.max_corner > opt.probe_tol)
    return fail("probe", "probe trace does not close");

  rep.certified = true;
  rep.verdict = type == "elliptic" ? "elliptic OI, case: " + std::string(case_name(case_label)) + ", flexible"
                                   : "OI with (anti)deltoids, flexible by probe trace";
  j["certified"] = true;
  j["verdict"] = rep.verdict;
  return rep;
}

// ---------------------------------------------------------------- synthesis from a params file

struct SynthesisResult {
  MeshDesign design;
  io::json metadata;
};

inline SynthesisResult synthesize(const io::ParamsFile& pf) {
  using io::param_scalar;
  SynthesisResult out;
  out.metadata = {{"branch", pf.branch}};
  AssemblyOptions ao;
  ao.lengths = pf.lengths;
  AssemblyReport ar;
  auto param_list = [&](const char* key) { return io::param_array(pf, key); };
  if (pf.branch == "linear") {
    const auto p = linear_branch_params(param_scalar(pf, "nu2"), param_scalar(pf, "nu4"), param_scalar(pf, "t1"),
                                        param_scalar(pf, "t3"));
    out.design = assemble_design(p, ao, &ar);
  } else if (pf.branch == "generic") {
    int sign = 1;
    if (pf.raw.contains("t3_sign")) sign = param_scalar(pf, "t3_sign") < 0 ? -1 : 1;
    const auto p = generic_branch_params(param_list("nu"), param_scalar(pf, "t1"), sign);
    out.design = assemble_design(p, ao, &ar);
  } else if (pf.branch == "explicit") {
    EllipticParams p = EllipticParams::from_t(param_list("nu"), param_list("t"));
    if (pf.raw.contains("F")) {
      const auto F = param_list("F");
      for (int i = 0; i < 4; ++i) p.F[i] = ProjectiveReal::value(F[i]);
    }
    if (pf.raw.contains("lambda")) p.lambda = param_list("lambda");
    if (pf.raw.contains("mu")) p.mu = param_list("mu");
    out.design = assemble_design(p, ao, &ar);
  } else if (pf.branch == "deltoid-B1" || pf.branch == "deltoid-B2") {
    const DeltoidSystem s = pf.branch == "deltoid-B1" ? DeltoidSystem::B1 : DeltoidSystem::B2;
    DeltoidParams q{};
    q.nu1 = param_scalar(pf, "nu1");
    q.xi2 = param_scalar(pf, "xi2");
    q.xi3 = param_scalar(pf, "xi3");
    q.F3 = param_scalar(pf, "F3");
    q.t2 = param_scalar(pf, "t2");
    const unsigned seed = pf.raw.contains("seed") ? static_cast<unsigned>(param_scalar(pf, "seed")) : 1u;
    q = solve_deltoid_system(s, q, seed);
    out.design = detail::probe_and_flip(deltoid_linkage(s, q), ao.lengths, ao.probe_tol, &ar);
    out.metadata["nu4"] = format_decimal(q.nu4);
    out.metadata["t1"] = format_decimal(q.t1);
    out.metadata["t4"] = format_decimal(q.t4);
  } else {
    throw Error(ErrorKind::parse, "params.branch: unknown branch '" + pf.branch + "'");
  }
  if (ar.flip_mask) out.metadata["flip_mask"] = ar.flip_mask;
  if (pf.raw.contains("metadata") && pf.raw["metadata"].is_object())
    for (const auto& [k, v] : pf.raw["metadata"].items()) out.metadata[k] = v;
  return out;
}

/// Canonical design document for a synthesis result.
inline io::DesignDocument synthesis_document(const SynthesisResult& r) {
  io::DesignDocument doc = io::to_document(r.design);
  doc.metadata = r.metadata;
  return doc;
}

}  // namespace kok
