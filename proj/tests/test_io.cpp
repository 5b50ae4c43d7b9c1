#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include <kokot/report.hpp>

#include "families.hpp"

using namespace kok;

namespace {

std::string data(const std::string& name) { return std::string(KOKOT_DATA_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

ErrorKind parse_error_kind(const std::string& text) {
  try {
    io::to_mesh_design(io::parse_design(text));
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::precondition;
}

}  // namespace

TEST(Expression, ClosedForms) {
  EXPECT_NEAR(ExpressionParser::evaluate("pi/3"), pi / 3, 1e-16);
  EXPECT_NEAR(ExpressionParser::evaluate("acos(1/4)"), std::acos(0.25), 1e-16);
  EXPECT_NEAR(ExpressionParser::evaluate("2*sqrt(14)/7"), 2 * std::sqrt(14.0) / 7, 1e-15);
  EXPECT_NEAR(ExpressionParser::evaluate("atan(-sqrt(14)/14) - acos(sqrt(5)/5)"),
              std::atan(-std::sqrt(14.0) / 14) - std::acos(std::sqrt(5.0) / 5), 1e-15);
  EXPECT_NEAR(ExpressionParser::evaluate("-1.5e-3"), -1.5e-3, 1e-18);
  EXPECT_THROW(ExpressionParser::evaluate("pi/"), Error);
  EXPECT_THROW(ExpressionParser::evaluate("foo(1)"), Error);
  EXPECT_THROW(ExpressionParser::evaluate("1 2"), Error);
}

TEST(Expression, RecognizesClosedForms) {
  EXPECT_EQ(Scalar::of(pi / 3).text, "pi/3");
  EXPECT_EQ(Scalar::of(std::sqrt(14.0) / 14).text, "sqrt(14)/14");
  EXPECT_EQ(Scalar::of(0.123456789).text, format_decimal(0.123456789));
  EXPECT_EQ(ExpressionParser::evaluate(format_decimal(0.1 + 0.2)), 0.1 + 0.2);
}

TEST(Design, RoundTripIsByteIdentical) {
  for (const char* name : {"flagship.json", "pseudo_planar.json", "generic.json", "deltoid_b1.json", "deltoid_b2.json"}) {
    const std::string text = slurp(data(name));
    ASSERT_FALSE(text.empty()) << name;
    const auto doc = io::parse_design(text);
    EXPECT_EQ(io::emit_design(doc), text) << name;
  }
}

TEST(Design, FlagshipValues) {
  const MeshDesign d = io::to_mesh_design(io::read_design(data("flagship.json")));
  const MeshDesign ref = fam::flagship_design();
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(d.linkage.quads[i].delta, ref.linkage.quads[i].delta, 1e-15);
    EXPECT_LT(chordal(d.linkage.F[i], ref.linkage.F[i]), 1e-15);
    EXPECT_NEAR(d.tau[i], ref.tau[i], 1e-12);
    EXPECT_NEAR(d.zeta[i], ref.zeta[i], 1e-12);
  }
}

TEST(Design, ParseErrors) {
  EXPECT_THROW(io::parse_design(slurp(data("malformed.json"))), Error);
  EXPECT_EQ(parse_error_kind("{"), ErrorKind::parse);
  EXPECT_EQ(parse_error_kind(R"({"format": "kokotsakis-design/1", "quads": []})"), ErrorKind::parse);
  std::string text = slurp(data("flagship.json"));
  text.replace(text.find("\"pi/3\""), 6, "\"pi/\"");
  EXPECT_EQ(parse_error_kind(text), ErrorKind::parse);
  // wrong format tag
  std::string tag = slurp(data("flagship.json"));
  tag.replace(tag.find("kokotsakis-design/1"), 19, "kokotsakis-design/9");
  EXPECT_EQ(parse_error_kind(tag), ErrorKind::parse);
}

TEST(Design, InconsistentStoredTau) {
  std::string text = slurp(data("flagship.json"));
  const auto at = text.find("acos(sqrt(5)/5)");
  text.replace(at, 15, "acos(sqrt(5)/4)");
  EXPECT_EQ(parse_error_kind(text), ErrorKind::inconsistent);
}

// Criterion 2: the params file reproduces the stored design and the expected angles.
TEST(Synthesize, FlagshipRoundTrip) {
  const auto pf = io::parse_params(slurp(data("params_flagship.json")));
  const auto r = synthesize(pf);
  EXPECT_EQ(io::emit_design(synthesis_document(r)), slurp(data("flagship.json")));
  const double tau = std::acos(1 / std::sqrt(5.0));
  const double s = std::sqrt(14.0);
  const std::array<double, 4> t{s / 14, 2 * s / 7, -s / 14, -2 * s / 7};
  const std::array<double, 4> delta{pi / 3, std::acos(0.25), pi / 3, std::acos(0.25)};
  for (int i = 0; i < 4; ++i) {
    const auto& q = r.design.linkage.quads[i];
    EXPECT_NEAR(q.alpha, pi / 2, 1e-9);
    EXPECT_NEAR(q.beta, pi / 2, 1e-9);
    EXPECT_NEAR(q.gamma, pi / 2, 1e-9);
    EXPECT_NEAR(q.delta, delta[i], 1e-9);
    EXPECT_NEAR(r.design.tau[i], tau, 1e-9);
    EXPECT_NEAR(r.design.zeta[i], std::atan(t[i]) - tau, 1e-9);
  }
}

TEST(Synthesize, AllParamsFilesReproduceData) {
  const std::array<std::pair<const char*, const char*>, 4> pairs{{{"params_pseudo_planar.json", "pseudo_planar.json"},
                                                                  {"params_generic.json", "generic.json"},
                                                                  {"params_deltoid_b1.json", "deltoid_b1.json"},
                                                                  {"params_deltoid_b2.json", "deltoid_b2.json"}}};
  for (const auto& [params, design] : pairs) {
    const auto r = synthesize(io::parse_params(slurp(data(params))));
    EXPECT_EQ(io::emit_design(synthesis_document(r)), slurp(data(design))) << params;
  }
}

TEST(Synthesize, UnknownBranch) {
  try {
    synthesize(io::parse_params(R"({"branch": "nope"})"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::parse);
  }
}

TEST(Check, Verdicts) {
  const auto good = check_design(io::to_mesh_design(io::read_design(data("flagship.json"))));
  EXPECT_TRUE(good.certified);
  EXPECT_EQ(good.verdict, "elliptic OI, case: all-negative, flexible");
  EXPECT_EQ(good.doc["format"], "kokotsakis-report/1");
  EXPECT_GT(good.doc["oracle"]["common_component_score"].get<double>(), 0.99);

  const auto bad = check_design(io::to_mesh_design(io::read_design(data("flagship_perturbed.json"))));
  EXPECT_FALSE(bad.certified);
  EXPECT_EQ(bad.doc["failed_stage"], "minors");
  EXPECT_EQ(bad.doc["first_failing_minor"], "p23");
  EXPECT_GT(bad.doc["max_normalized_minor"].get<double>(), 1e-3);

  const auto del = check_design(io::to_mesh_design(io::read_design(data("deltoid_b2.json"))));
  EXPECT_TRUE(del.certified);
  EXPECT_EQ(del.verdict, "OI with (anti)deltoids, flexible by probe trace");
}

TEST(Export, ObjLayout) {
  const Trace tr = trace_motion(fam::flagship_design(), {.frames = 1});
  const auto obj = lines(io::frame_obj(tr.frames[0]));
  int v = 0, f = 0;
  for (const auto& l : obj) {
    v += l.rfind("v ", 0) == 0;
    f += l.rfind("f ", 0) == 0;
  }
  EXPECT_EQ(v, 12);
  EXPECT_EQ(f, 9);  // central quad, four side quads, four corner triangles
  const auto tri = lines(io::frame_obj(tr.frames[0], true));
  int ft = 0;
  for (const auto& l : tri) ft += l.rfind("f ", 0) == 0;
  EXPECT_EQ(ft, 14);
}

TEST(Export, CsvRow) {
  const Trace tr = trace_motion(fam::flagship_design(), {.frames = 3});
  const std::string row = io::frame_csv_row(2, tr.frames[2]);
  int commas = 0;
  for (char c : row) commas += c == ',';
  int header_commas = 0;
  for (const char* c = io::csv_header; *c; ++c) header_commas += *c == ',';
  EXPECT_EQ(commas, header_commas);
  EXPECT_EQ(row.substr(0, 2), "2,");
}

// The first trace frame equals the probe frame recorded by check.
TEST(Check, ProbeFrameMatchesTrace) {
  const MeshDesign d = io::to_mesh_design(io::read_design(data("flagship.json")));
  const auto rep = check_design(d);
  const Trace tr = trace_motion(d, {.frames = 1});
  EXPECT_EQ(rep.doc["probe"]["frame0"]["x1"], format_decimal(tr.frames[0].state.x[0].to_double()));
  EXPECT_NEAR(rep.doc["probe"]["frame0"]["phi"][0].get<double>(), tr.frames[0].phi[0], 1e-15);
}
