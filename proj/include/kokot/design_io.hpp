#pragma once

#include <array>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "expression.hpp"
#include "kinematics.hpp"
#include "synthesis.hpp"

namespace kok::io {

using json = nlohmann::ordered_json;

inline constexpr const char* design_format = "kokotsakis-design/1";

struct CouplingEntry {
  std::optional<Scalar> F, t, tau, zeta;
};

/**
 * The design file as written: every scalar keeps its text so that emit -> parse -> emit is
 * byte-identical.
 */
struct DesignDocument {
  std::array<std::array<Scalar, 4>, 4> quads{};  // alpha, beta, gamma, delta per quad
  std::array<CouplingEntry, 4> couplings{};
  std::optional<std::array<Scalar, 2>> legs;
  std::optional<std::array<Scalar, 4>> spoke_b, spoke_c;
  json metadata = json::object();
};

namespace detail {

inline Scalar scalar_from(const json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return Scalar::parse(j.get<std::string>());
    } catch (const Error& e) {
      throw Error(ErrorKind::parse, where + ": " + e.what());
    }
  }
  if (j.is_number()) return {j.get<double>(), format_decimal(j.get<double>())};
  throw Error(ErrorKind::parse, where + ": expected a number or an expression string");
}

template <std::size_t N>
std::array<Scalar, N> scalar_array(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != N)
    throw Error(ErrorKind::parse, where + ": expected an array of " + std::to_string(N) + " values");
  std::array<Scalar, N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = scalar_from(j[i], where + "[" + std::to_string(i) + "]");
  return out;
}

template <std::size_t N>
json scalar_json(const std::array<Scalar, N>& a) {
  json j = json::array();
  for (const auto& s : a) j.push_back(s.text);
  return j;
}

inline const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::parse, where + ": missing \"" + key + "\"");
  return j.at(key);
}

}  // namespace detail

inline DesignDocument parse_design_json(const json& j) {
  using namespace detail;
  DesignDocument d;
  if (!j.is_object()) throw Error(ErrorKind::parse, "design: top level must be an object");
  if (j.contains("format") && j["format"] != design_format)
    throw Error(ErrorKind::parse, "design: unsupported format tag");
  const json& quads = require(j, "quads", "design");
  if (!quads.is_array() || quads.size() != 4) throw Error(ErrorKind::parse, "quads: expected four entries");
  static const char* names[] = {"alpha", "beta", "gamma", "delta"};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      const std::string where = "quads[" + std::to_string(i) + "]";
      d.quads[i][k] = scalar_from(require(quads[i], names[k], where), where + "." + names[k]);
    }
  const json& cpl = require(j, "couplings", "design");
  if (!cpl.is_array() || cpl.size() != 4) throw Error(ErrorKind::parse, "couplings: expected four entries");
  for (int i = 0; i < 4; ++i) {
    const std::string where = "couplings[" + std::to_string(i) + "]";
    const json& c = cpl[i];
    if (!c.is_object()) throw Error(ErrorKind::parse, where + ": expected an object");
    auto opt = [&](const char* key) -> std::optional<Scalar> {
      if (!c.contains(key)) return std::nullopt;
      return scalar_from(c[key], where + "." + key);
    };
    d.couplings[i] = {opt("F"), opt("t"), opt("tau"), opt("zeta")};
    if (!d.couplings[i].F && !d.couplings[i].t) throw Error(ErrorKind::parse, where + ": needs \"F\" or \"t\"");
  }
  if (j.contains("lengths")) {
    const json& L = j["lengths"];
    if (!L.is_object()) throw Error(ErrorKind::parse, "lengths: expected an object");
    if (L.contains("legs")) d.legs = scalar_array<2>(L["legs"], "lengths.legs");
    if (L.contains("spoke_b")) d.spoke_b = scalar_array<4>(L["spoke_b"], "lengths.spoke_b");
    if (L.contains("spoke_c")) d.spoke_c = scalar_array<4>(L["spoke_c"], "lengths.spoke_c");
  }
  if (j.contains("metadata")) d.metadata = j["metadata"];
  return d;
}

inline DesignDocument parse_design(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::parse, std::string("design: invalid JSON: ") + e.what());
  }
  return parse_design_json(j);
}

inline DesignDocument read_design(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::parse, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_design(ss.str());
}

inline json design_json(const DesignDocument& d) {
  json j;
  j["format"] = design_format;
  json quads = json::array();
  static const char* names[] = {"alpha", "beta", "gamma", "delta"};
  for (const auto& q : d.quads) {
    json e;
    for (int k = 0; k < 4; ++k) e[names[k]] = q[k].text;
    quads.push_back(e);
  }
  j["quads"] = quads;
  json cpl = json::array();
  for (const auto& c : d.couplings) {
    json e = json::object();
    if (c.F) e["F"] = c.F->text;
    if (c.t) e["t"] = c.t->text;
    if (c.tau) e["tau"] = c.tau->text;
    if (c.zeta) e["zeta"] = c.zeta->text;
    cpl.push_back(e);
  }
  j["couplings"] = cpl;
  if (d.legs || d.spoke_b || d.spoke_c) {
    json L = json::object();
    if (d.legs) L["legs"] = detail::scalar_json(*d.legs);
    if (d.spoke_b) L["spoke_b"] = detail::scalar_json(*d.spoke_b);
    if (d.spoke_c) L["spoke_c"] = detail::scalar_json(*d.spoke_c);
    j["lengths"] = L;
  }
  j["metadata"] = d.metadata;
  return j;
}

inline std::string emit_design(const DesignDocument& d) { return design_json(d).dump(2) + "\n"; }

// ---------------------------------------------------------------- document <-> design

inline LinkageDesign to_linkage(const DesignDocument& doc) {
  LinkageDesign l;
  for (int i = 0; i < 4; ++i) {
    const auto& q = doc.quads[i];
    l.quads[i] = {q[0].value, q[1].value, q[2].value, q[3].value};
    const auto& c = doc.couplings[i];
    if (c.F) {
      l.F[i] = ProjectiveReal::value(c.F->value);
      if (c.t && chordal(t_of_F(l.F[i]), ProjectiveReal::value(c.t->value)) > 1e-10)
        throw Error(ErrorKind::inconsistent, "coupling " + std::to_string(i + 1) + ": F and t disagree");
    } else {
      l.F[i] = EllipticParams::F_principal(c.t->value);
    }
  }
  return l;
}

/// MeshDesign from a document; stored tau and zeta must agree with the rebuilt geometry.
inline MeshDesign to_mesh_design(const DesignDocument& doc, double tol = 1e-9) {
  Lengths len;
  if (doc.legs) len.legs = {(*doc.legs)[0].value, (*doc.legs)[1].value};
  for (int i = 0; i < 4; ++i) {
    if (doc.spoke_b) len.spoke_b[i] = (*doc.spoke_b)[i].value;
    if (doc.spoke_c) len.spoke_c[i] = (*doc.spoke_c)[i].value;
  }
  MeshDesign d = make_mesh_design(to_linkage(doc), len);
  for (int i = 0; i < 4; ++i) {
    const auto& c = doc.couplings[i];
    if (c.tau && angle_gap(c.tau->value, d.tau[i]) > tol)
      throw Error(ErrorKind::inconsistent, "coupling " + std::to_string(i + 1) + ": tau disagrees with the central face");
    if (c.zeta && angle_gap(c.zeta->value, d.zeta[i]) > tol)
      throw Error(ErrorKind::inconsistent, "coupling " + std::to_string(i + 1) + ": zeta disagrees with F and tau");
  }
  for (const auto& [k, v] : doc.metadata.items()) d.metadata[k] = v.is_string() ? v.get<std::string>() : v.dump();
  return d;
}

/// Canonical document of a design, with closed forms where they are recognized.
inline DesignDocument to_document(const MeshDesign& d) {
  DesignDocument doc;
  for (int i = 0; i < 4; ++i) {
    const auto& q = d.linkage.quads[i];
    doc.quads[i] = {Scalar::of(q.alpha), Scalar::of(q.beta), Scalar::of(q.gamma), Scalar::of(q.delta)};
    CouplingEntry c;
    const ProjectiveReal& F = d.linkage.F[i];
    const ProjectiveReal t = t_of_F(F);
    const bool principal = !t.is_infinite(1e-15) && chordal(EllipticParams::F_principal(t.to_double()), F) < 1e-14;
    if (principal) c.t = Scalar::of(t.to_double());
    else c.F = Scalar::of(F.to_double());
    c.tau = Scalar::of(d.tau[i]);
    c.zeta = Scalar::of(d.zeta[i]);
    // zeta = atan(t) - tau in closed form when both pieces have one
    if (principal && c.zeta->text.find_first_not_of("-0123456789.e+") == std::string::npos) {
      const bool t_cf = c.t->text != format_decimal(c.t->value);
      const bool tau_cf = c.tau->text != format_decimal(c.tau->value);
      if (t_cf && tau_cf) {
        const std::string text = "atan(" + c.t->text + ") - " + c.tau->text;
        if (std::abs(ExpressionParser::evaluate(text) - d.zeta[i]) <= 1e-14) c.zeta = Scalar{d.zeta[i], text};
      }
    }
    doc.couplings[i] = c;
  }
  const bool unit_legs = d.lengths.legs == std::array<double, 2>{1.0, 1.0};
  const std::array<double, 4> ones{1, 1, 1, 1};
  if (!unit_legs) doc.legs = std::array<Scalar, 2>{Scalar::of(d.lengths.legs[0]), Scalar::of(d.lengths.legs[1])};
  auto arr4 = [](const std::array<double, 4>& a) {
    return std::array<Scalar, 4>{Scalar::of(a[0]), Scalar::of(a[1]), Scalar::of(a[2]), Scalar::of(a[3])};
  };
  if (d.lengths.spoke_b != ones) doc.spoke_b = arr4(d.lengths.spoke_b);
  if (d.lengths.spoke_c != ones) doc.spoke_c = arr4(d.lengths.spoke_c);
  for (const auto& [k, v] : d.metadata) doc.metadata[k] = v;
  return doc;
}

// ---------------------------------------------------------------- parameters file

struct ParamsFile {
  std::string branch;  // linear, generic, explicit, deltoid-B1, deltoid-B2
  json raw;
  Lengths lengths;
};

inline ParamsFile parse_params(const std::string& text) {
  ParamsFile p;
  try {
    p.raw = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::parse, std::string("params: invalid JSON: ") + e.what());
  }
  if (!p.raw.is_object()) throw Error(ErrorKind::parse, "params: top level must be an object");
  const json& b = detail::require(p.raw, "branch", "params");
  if (!b.is_string()) throw Error(ErrorKind::parse, "params.branch: expected a string");
  p.branch = b.get<std::string>();
  if (p.raw.contains("lengths")) {
    const json& L = p.raw["lengths"];
    if (L.contains("legs")) {
      auto a = detail::scalar_array<2>(L["legs"], "lengths.legs");
      p.lengths.legs = {a[0].value, a[1].value};
    }
    for (const char* key : {"spoke_b", "spoke_c"})
      if (L.contains(key)) {
        auto a = detail::scalar_array<4>(L[key], std::string("lengths.") + key);
        auto& dst = std::string(key) == "spoke_b" ? p.lengths.spoke_b : p.lengths.spoke_c;
        for (int i = 0; i < 4; ++i) dst[i] = a[i].value;
      }
  }
  return p;
}

inline double param_scalar(const ParamsFile& p, const char* key) {
  return detail::scalar_from(detail::require(p.raw, key, "params"), std::string("params.") + key).value;
}

inline std::array<double, 4> param_array(const ParamsFile& p, const char* key) {
  const auto a = detail::scalar_array<4>(detail::require(p.raw, key, "params"), std::string("params.") + key);
  return {a[0].value, a[1].value, a[2].value, a[3].value};
}

// ---------------------------------------------------------------- exports

/**
 * One frame as Wavefront OBJ. Vertices: A1..A4 (1-4), B1..B4 (5-8), C1..C4 (9-12).
 * Faces: the central quad, the side quads [A_i, A_{i+1}, B_{i+1}, C_i], the corner
 * triangles [A_i, B_i, C_i]. With triangulate, quads are split along A2A4 and A_i B_{i+1}.
 */
inline std::string frame_obj(const MotionFrame& f, bool triangulate = false) {
  std::ostringstream os;
  os << "# kokotsakis frame\n";
  // adding 0.0 turns -0 into 0
  auto vert = [&](const Vec3& v) {
    os << "v " << format_decimal(v.x() + 0.0) << ' ' << format_decimal(v.y() + 0.0) << ' ' << format_decimal(v.z() + 0.0) << '\n';
  };
  for (const auto& v : f.points.A) vert(v);
  for (const auto& v : f.points.B) vert(v);
  for (const auto& v : f.points.C) vert(v);
  auto A = [](int i) { return (i - 1) % 4 + 1; };
  auto B = [](int i) { return 4 + (i - 1) % 4 + 1; };
  auto C = [](int i) { return 8 + (i - 1) % 4 + 1; };
  if (triangulate) os << "f 1 2 4\nf 2 3 4\n";
  else os << "f 1 2 3 4\n";
  for (int i = 1; i <= 4; ++i) {
    if (triangulate)
      os << "f " << A(i) << ' ' << A(i + 1) << ' ' << B(i + 1) << "\nf " << A(i) << ' ' << B(i + 1) << ' ' << C(i)
         << '\n';
    else
      os << "f " << A(i) << ' ' << A(i + 1) << ' ' << B(i + 1) << ' ' << C(i) << '\n';
  }
  for (int i = 1; i <= 4; ++i) os << "f " << A(i) << ' ' << B(i) << ' ' << C(i) << '\n';
  return os.str();
}

inline const char* csv_header =
    "index,x1,phi1,phi2,phi3,phi4,psi1,psi2,psi3,psi4,closure_residual,max_corner_deviation\n";

inline std::string frame_csv_row(int index, const MotionFrame& f) {
  std::ostringstream os;
  os << index << ',' << format_decimal(f.state.x[0].to_double());
  for (double v : f.phi) os << ',' << format_decimal(v);
  for (double v : f.psi) os << ',' << format_decimal(v);
  os << ',' << format_decimal(f.closure) << ',' << format_decimal(f.max_corner) << '\n';
  return os.str();
}

}  // namespace kok::io
