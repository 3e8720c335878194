// cubic27: cubic surfaces through six plane points, their 27 lines, and a
// printable test shape with its measurement reference.
//
// Exit codes:
//   0  success
//   1  internal error
//   2  invalid input (arguments, points file, volume, shell parameters)
//   3  points not in general position
//   4  plane or line census failed (input too degenerate)
//   5  empty mesh
//   6  cannot write output

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cubic/mesher.hpp"
#include "cubic/metrology.hpp"
#include "cubic/surface.hpp"
#include "cubic/surface_json.hpp"
#include "json.hpp"

namespace {

using namespace cubic;
using nlohmann::ordered_json;

enum Exit { kOk = 0, kInternal = 1, kInput = 2, kPosition = 3, kCensus = 4, kEmpty = 5, kOutput = 6 };

struct Config {
  std::string preset;
  std::string points_file;
  bool affine = false;
  bool json = false;
  std::string volume = "6";
  std::optional<double> thickness;
  std::optional<double> cyl_radius;
  int resolution = 128;
  std::string format = "stl-binary";
  std::string out = ".";
  bool all_distances = false;
  bool no_highlight = false;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

PointSet load_points(const Config& cfg) {
  if (!cfg.preset.empty() && !cfg.points_file.empty()) throw InputError("use either --preset or --points, not both");
  if (!cfg.preset.empty()) {
    if (cfg.preset != "clebsch") throw InputError("unknown preset \"" + cfg.preset + "\"");
    return clebsch_preset();
  }
  if (cfg.points_file.empty()) throw InputError("no points given; use --preset clebsch or --points FILE");
  std::ifstream in(cfg.points_file);
  if (!in) throw InputError("cannot open points file " + cfg.points_file);
  std::vector<PlanePoint> pts;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      pts.push_back(parse_plane_point(line));
    } catch (const Error& e) {
      throw InputError(cfg.points_file + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (pts.size() != 6) throw InputError("expected 6 points, found " + std::to_string(pts.size()));
  PointSet set;
  std::copy(pts.begin(), pts.end(), set.begin());
  return set;
}

BuildVolume parse_volume(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.size() != 1 && parts.size() != 3) throw InputError("--volume expects R or R1,R2,R3");
  BuildVolume v;
  for (std::size_t i = 0; i < 3; ++i) v.r[i] = parse_rational(parts[parts.size() == 1 ? 0 : i]);
  v.validate();
  return v;
}

ordered_json exact(const Vector& v) {
  ordered_json out = ordered_json::array();
  for (const auto& x : v) out.push_back(x.to_string());
  return out;
}

std::string vec_string(const Vector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].to_string();
  return s + ")";
}

std::string proj_string(const Vector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " : " : "") + v[i].to_string();
  return s + ")";
}

void warn_invisible(const Surface& s) {
  const auto& inv = s.model.chart.invisible_lines;
  if (inv.empty()) return;
  std::cerr << "warning: " << inv.size() << " line(s) at infinity in the affine chart:";
  for (auto i : inv) std::cerr << " L" << i + 1;
  std::cerr << "\n";
}

int cmd_cubic(const Config& cfg) {
  Surface s = compute_surface(load_points(cfg));
  const auto& m = s.model;
  if (cfg.json) {
    ordered_json doc;
    doc["a"] = exact(Vector(m.a.begin(), m.a.end()));
    doc["pivot"] = {m.elimination.pivot.first, m.elimination.pivot.second};
    doc["F"] = m.elimination.F_raw.to_string();
    doc["F_normalized"] = m.elimination.F.to_string();
    if (cfg.affine) doc["f_affine"] = m.chart.f.to_string();
    std::cout << doc.dump(2) << "\n";
    return kOk;
  }
  std::cout << (cfg.affine ? m.chart.f.to_string() : m.elimination.F_raw.to_string()) << "\n";
  return kOk;
}

int cmd_lines(const Config& cfg) {
  Surface s = compute_surface(load_points(cfg));
  if (cfg.affine && !cfg.json) warn_invisible(s);
  if (cfg.json) {
    ordered_json arr = ordered_json::array();
    for (std::size_t i = 0; i < s.lines.size(); ++i) {
      const auto& l = s.lines[i];
      ordered_json jl = {{"id", i + 1}};
      if (cfg.affine) {
        jl["visible"] = l.visible;
        if (l.visible) {
          jl["implicit"] = {l.implicit_affine[0].to_string(), l.implicit_affine[1].to_string()};
          jl["base"] = exact(l.base);
          jl["direction"] = exact(l.direction);
        }
      } else {
        jl["implicit"] = {l.implicit_p3[0].to_string(), l.implicit_p3[1].to_string()};
        jl["span"] = {exact(l.span_p3[0]), exact(l.span_p3[1])};
      }
      arr.push_back(jl);
    }
    ordered_json doc = {{"lines", arr}, {"eckardt_count", s.eckardt.size()}};
    std::cout << doc.dump(2) << "\n";
    return kOk;
  }
  for (std::size_t i = 0; i < s.lines.size(); ++i) {
    const auto& l = s.lines[i];
    std::cout << "L[" << i + 1 << "]:\n";
    if (cfg.affine) {
      if (!l.visible) {
        std::cout << "  at infinity\n";
        continue;
      }
      std::cout << "  _[1] = " << l.implicit_affine[0].to_string() << "\n";
      std::cout << "  _[2] = " << l.implicit_affine[1].to_string() << "\n";
      auto p = l.parametrization();
      std::cout << "  s -> (" << p[0].to_string() << ", " << p[1].to_string() << ", " << p[2].to_string() << ")\n";
    } else {
      std::cout << "  _[1] = " << l.implicit_p3[0].to_string() << "\n";
      std::cout << "  _[2] = " << l.implicit_p3[1].to_string() << "\n";
      std::cout << "  (s : t) -> s*" << proj_string(l.span_p3[0]) << " + t*" << proj_string(l.span_p3[1]) << "\n";
    }
  }
  std::cout << s.lines.size() << " lines, " << s.eckardt.size() << " Eckardt points\n";
  return kOk;
}

int cmd_eckardt(const Config& cfg) {
  Surface s = compute_surface(load_points(cfg));
  if (cfg.json) {
    ordered_json arr = ordered_json::array();
    for (const auto& e : s.eckardt) {
      ordered_json je = {{"p3", exact(e.p3)},
                         {"lines", {e.lines[0] + 1, e.lines[1] + 1, e.lines[2] + 1}},
                         {"visible", e.visible}};
      if (e.visible) {
        je["affine"] = exact(e.affine);
      } else {
        je["at_infinity"] = exact(e.at_infinity);
      }
      arr.push_back(je);
    }
    std::cout << ordered_json{{"eckardt_points", arr}}.dump(2) << "\n";
    return kOk;
  }
  for (std::size_t i = 0; i < s.eckardt.size(); ++i) {
    const auto& e = s.eckardt[i];
    std::cout << "E[" << i + 1 << "]: ";
    if (cfg.affine) {
      std::cout << (e.visible ? vec_string(e.affine) : "at infinity " + proj_string(e.at_infinity));
    } else {
      std::cout << proj_string(e.p3);
    }
    std::cout << "  lines L" << e.lines[0] + 1 << " L" << e.lines[1] + 1 << " L" << e.lines[2] + 1 << "\n";
  }
  std::cout << s.eckardt.size() << " Eckardt points\n";
  return kOk;
}

int cmd_artifact(const Config& cfg) {
  const auto start = std::chrono::steady_clock::now();
  BuildVolume volume = parse_volume(cfg.volume);
  MeshFormat format = parse_mesh_format(cfg.format);
  Surface s = compute_surface(load_points(cfg));
  if (!cfg.json) warn_invisible(s);
  MeasurementReport report = build_report(s, volume, cfg.all_distances);

  Box box = Box::centered({volume.r[0].get_d(), volume.r[1].get_d(), volume.r[2].get_d()});
  ShellSpec spec = ShellSpec::defaults(box, cfg.resolution);
  if (cfg.thickness) {
    spec.half_thickness = *cfg.thickness / 2;
    spec.cylinder_radius = 2 * spec.half_thickness;
  }
  if (cfg.cyl_radius) spec.cylinder_radius = *cfg.cyl_radius;
  if (cfg.no_highlight) spec.highlight = HighlightMode::None;
  spec.validate();

  std::vector<RealLine> lines;
  for (const auto& l : report.lines) {
    lines.push_back(RealLine{{l.base[0].to_double(), l.base[1].to_double(), l.base[2].to_double()},
                             {l.direction[0].to_double(), l.direction[1].to_double(), l.direction[2].to_double()}});
  }
  ShapeField field(report.f, lines, spec);
  TriangleMesh mesh = contour(field);
  MeshReport quality = mesh_report(mesh, &field, spec);

  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cfg.out, ec);
  if (ec) throw Error(ErrorCode::IoFailure, "cannot create " + cfg.out + ": " + ec.message());
  const fs::path dir(cfg.out);
  const std::string mesh_path = (dir / ("cubic27" + std::string(mesh_format_extension(format)))).string();
  const std::size_t bytes = write_mesh(mesh, format, mesh_path);
  auto write_text = [](const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + p.string());
  };
  write_text(dir / "report.json", report.to_json() + "\n");
  write_text(dir / "report.txt", report.to_text());
  write_text(dir / "mesh_report.json", quality.to_json() + "\n");
  write_text(dir / "surface.json", surface_to_json(s) + "\n");
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (cfg.json) {
    ordered_json doc = {{"mesh", mesh_path},
                        {"mesh_bytes", bytes},
                        {"triangles", quality.triangle_count},
                        {"watertight", quality.watertight},
                        {"lines", report.lines.size()},
                        {"intersections", report.intersections.size()},
                        {"eckardt", report.eckardt_records.size()},
                        {"seconds", seconds}};
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "mesh        " << mesh_path << " (" << quality.triangle_count << " triangles, " << bytes
              << " bytes, " << (quality.watertight ? "watertight" : "NOT watertight") << ")\n";
    std::cout << "report      " << (dir / "report.json").string() << ", " << (dir / "report.txt").string() << "\n";
    std::cout << "quality     " << (dir / "mesh_report.json").string() << "\n";
    std::cout << "lines       " << report.lines.size() << " visible, " << report.intersections.size()
              << " intersections, " << report.eckardt_records.size() << " Eckardt\n";
    std::cout << "shell       half thickness " << spec.half_thickness << ", cylinder radius " << spec.cylinder_radius
              << ", resolution " << spec.resolution << "\n";
  }
  return kOk;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::NonPositiveRadicand:
    case ErrorCode::FieldTooLarge:
    case ErrorCode::NonPositiveExtent:
    case ErrorCode::InvalidShellSpec:
    case ErrorCode::DivisionByZero: return kInput;
    case ErrorCode::NotInGeneralPosition: return kPosition;
    case ErrorCode::PlaneCountMismatch:
    case ErrorCode::LineCountMismatch:
    case ErrorCode::DegenerateLinearSystem: return kCensus;
    case ErrorCode::EmptyMesh: return kEmpty;
    case ErrorCode::IoFailure: return kOutput;
    default: return kInternal;
  }
}

void add_source_options(CLI::App* cmd, Config& cfg) {
  cmd->add_option("--preset", cfg.preset, "built-in point set (clebsch)");
  cmd->add_option("--points", cfg.points_file, "file with six lines \"a : b : c\"");
  cmd->add_flag("--json", cfg.json, "print only a JSON document");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cubic surfaces through six points, their 27 lines, and printable test shapes"};
  app.require_subcommand(1);
  Config cfg;

  auto* cubic = app.add_subcommand("cubic", "equation of the cubic in P^3 (or the affine chart)");
  add_source_options(cubic, cfg);
  cubic->add_flag("--affine", cfg.affine, "affine equation f(y1,y2,y3)");

  auto* lines = app.add_subcommand("lines", "the 27 lines, implicit and parametric");
  add_source_options(lines, cfg);
  lines->add_flag("--affine", cfg.affine, "lines in the affine chart");

  auto* eckardt = app.add_subcommand("eckardt", "Eckardt points");
  add_source_options(eckardt, cfg);
  eckardt->add_flag("--affine", cfg.affine, "affine coordinates");

  auto* artifact = app.add_subcommand("artifact", "mesh plus measurement report");
  add_source_options(artifact, cfg);
  artifact->add_option("--volume", cfg.volume, "half extents R or R1,R2,R3 (default 6)");
  artifact->add_option("--thickness", cfg.thickness, "full shell thickness (default 2% of the shortest box side)");
  artifact->add_option("--cyl-radius", cfg.cyl_radius, "line highlight radius (default the shell thickness)");
  artifact->add_option("--resolution", cfg.resolution, "grid cells per axis, at least 16")->check(CLI::Range(16, 1024));
  artifact->add_option("--format", cfg.format, "stl-binary, stl-ascii or obj");
  artifact->add_option("--out", cfg.out, "output directory");
  artifact->add_flag("--all-distances", cfg.all_distances, "also report distances between unconnected points");
  artifact->add_flag("--no-highlight", cfg.no_highlight, "no line cylinders");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (cubic->parsed()) return cmd_cubic(cfg);
    if (lines->parsed()) return cmd_lines(cfg);
    if (eckardt->parsed()) return cmd_eckardt(cfg);
    if (artifact->parsed()) return cmd_artifact(cfg);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
