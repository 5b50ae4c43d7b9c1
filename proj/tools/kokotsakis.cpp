// Command-line front end: check, synthesize, trace.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include <kokot/report.hpp>

namespace fs = std::filesystem;
using namespace kok;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::parse, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
}

// Parse errors map to 64, everything else the library throws is a failed certification.
template <class F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::parse ? exit_parse : exit_failed;
  }
}

int cmd_check(const std::string& path, bool pretty) {
  return guarded([&] {
    const MeshDesign d = io::to_mesh_design(io::parse_design(slurp(path)));
    CheckReport rep = check_design(d);
    rep.doc["design"] = path;
    std::cout << rep.doc.dump(pretty ? 2 : -1) << '\n';
    std::cerr << rep.verdict << '\n';
    return rep.certified ? exit_ok : exit_failed;
  });
}

int cmd_synthesize(const std::string& path, const std::string& out) {
  return guarded([&] {
    const io::ParamsFile pf = io::parse_params(slurp(path));
    const std::string text = io::emit_design(synthesis_document(synthesize(pf)));
    if (out.empty()) std::cout << text;
    else write_file(out, text);
    return exit_ok;
  });
}

struct TraceArgs {
  std::string design;
  int frames = 200;
  std::string obj_dir, csv;
  std::optional<double> seed;
  bool triangulate = false;
};

int cmd_trace(const TraceArgs& a) {
  return guarded([&] {
    const MeshDesign d = io::to_mesh_design(io::parse_design(slurp(a.design)));
    // refuse designs that do not certify, before anything is written
    CheckOptions co;
    co.oracle_score = false;
    const CheckReport rep = check_design(d, co);
    if (!rep.certified) {
      std::cerr << "not flexible: " << rep.verdict << '\n';
      std::cout << rep.doc.dump(2) << '\n';
      return exit_failed;
    }
    TraceOptions to;
    to.frames = a.frames;
    to.seed_phi = a.seed;
    const Trace tr = trace_motion(d, to);
    if (tr.max_closure > 1e-8 || tr.max_corner > 1e-8) {
      std::cerr << "trace does not close: residual " << tr.max_closure << '\n';
      return exit_failed;
    }
    if (!a.obj_dir.empty()) {
      fs::create_directories(a.obj_dir);
      const int n = static_cast<int>(tr.frames.size());
      const int width = std::max<int>(4, static_cast<int>(std::to_string(n).size()));
      for (int k = 0; k < n; ++k) {
        std::string idx = std::to_string(k);
        idx.insert(0, width - idx.size(), '0');
        write_file(fs::path(a.obj_dir) / ("frame_" + idx + ".obj"), io::frame_obj(tr.frames[k], a.triangulate));
      }
    }
    if (!a.csv.empty()) {
      std::string text = io::csv_header;
      for (std::size_t k = 0; k < tr.frames.size(); ++k) text += io::frame_csv_row(static_cast<int>(k), tr.frames[k]);
      write_file(a.csv, text);
    }
    std::cerr << tr.frames.size() << " frames, max closure residual " << tr.max_closure
              << ", max corner deviation " << tr.max_corner << '\n';
    return exit_ok;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flexible skew Kokotsakis meshes of orthodiagonal involutive type"};
  app.require_subcommand(1);

  std::string check_path;
  bool pretty = false;
  auto* check = app.add_subcommand("check", "certify a design file; exit 0 when flexible");
  check->add_option("design", check_path, "design JSON")->required();
  check->add_flag("--pretty", pretty, "indent the JSON report");

  std::string params_path, out_path;
  auto* synth = app.add_subcommand("synthesize", "build a design file from branch parameters");
  synth->add_option("params", params_path, "params JSON")->required();
  synth->add_option("-o,--output", out_path, "output design file (default stdout)");

  TraceArgs ta;
  double seed = 0;
  auto* trace = app.add_subcommand("trace", "trace the motion and export frames");
  trace->add_option("design", ta.design, "design JSON")->required();
  trace->add_option("--frames", ta.frames, "number of frames")->check(CLI::PositiveNumber);
  trace->add_option("--obj", ta.obj_dir, "directory for one OBJ per frame");
  trace->add_option("--csv", ta.csv, "CSV file with angles and residuals");
  auto* seed_opt = trace->add_option("--seed", seed, "driving angle phi1 of frame 0 (radians)");
  trace->add_flag("--triangulate", ta.triangulate, "split quads along their stored diagonals");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_parse;
  }
  if (*check) return cmd_check(check_path, pretty);
  if (*synth) return cmd_synthesize(params_path, out_path);
  if (*seed_opt) ta.seed = seed;
  return cmd_trace(ta);
}
