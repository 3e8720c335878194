#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cubic/mesher.hpp"
#include "cubic/metrology.hpp"
#include "support.hpp"

using namespace cubic;
using cubic::testing::Gen;
using cubic::testing::norm;
using cubic::testing::RayCaster;

namespace {

const Surface& clebsch() {
  static const Surface s = compute_surface(clebsch_preset());
  return s;
}

std::vector<RealLine> real_lines(const Surface& s) {
  std::vector<RealLine> out;
  for (const auto& l : s.lines) {
    out.push_back(RealLine{{l.base[0].to_double(), l.base[1].to_double(), l.base[2].to_double()},
                           {l.direction[0].to_double(), l.direction[1].to_double(), l.direction[2].to_double()}});
  }
  return out;
}

ShellSpec clebsch_spec(int resolution = 64) { return ShellSpec::defaults(Box::centered({6, 6, 6}), resolution); }

ShapeField clebsch_field(const ShellSpec& spec) { return ShapeField(clebsch().model.chart.f, real_lines(clebsch()), spec); }

const TriangleMesh& clebsch_mesh() {
  static const TriangleMesh m = contour(clebsch_field(clebsch_spec()));
  return m;
}

ShellSpec sphere_spec(int resolution) {
  ShellSpec spec;
  spec.box = Box::centered({2, 2, 2});
  spec.resolution = resolution;
  spec.highlight = HighlightMode::None;
  return spec;
}

double sphere(const Vec3& p) { return norm(p) - 1; }

std::string bytes(const TriangleMesh& m, MeshFormat f) {
  std::ostringstream os;
  write_mesh(m, f, os);
  return os.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "cubic27_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

TriangleMesh one_triangle() {
  TriangleMesh m;
  m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  m.triangles = {{0, 1, 2}};
  return m;
}

double max_sphere_residual(const TriangleMesh& m) {
  double r = 0;
  for (const auto& v : m.vertices) r = std::max(r, std::abs(sphere(v)));
  return r;
}

}  // namespace

TEST(ShapeField, OnTheSurfaceAwayFromLines) {
  auto spec = clebsch_spec();
  auto field = clebsch_field(spec);
  RealPoly f(clebsch().model.chart.f);
  Gen gen(11);
  int checked = 0;
  for (int attempt = 0; attempt < 10000 && checked < 20; ++attempt) {
    // bisect f between the origin (f = 1) and a random far point with f < 0
    Vec3 dir{gen.real(-1, 1), gen.real(-1, 1), gen.real(-1, 1)};
    Vec3 far{5 * dir[0], 5 * dir[1], 5 * dir[2]};
    if (f(far) >= 0) continue;
    double lo = 0, hi = 1;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      Vec3 p{mid * far[0], mid * far[1], mid * far[2]};
      (f(p) > 0 ? lo : hi) = mid;
    }
    Vec3 p{lo * far[0], lo * far[1], lo * far[2]};
    if (field.cylinders(p) < spec.cylinder_radius) continue;  // two radii from every line
    EXPECT_NEAR(field(p), -spec.half_thickness, 1e-9);
    ++checked;
  }
  EXPECT_EQ(checked, 20);
}

TEST(ShapeField, OnALine) {
  auto spec = clebsch_spec();
  auto field = clebsch_field(spec);
  for (double s : {-3.0, -0.5, 0.0, 2.0}) {
    Vec3 p{s, 0, 1};  // the line (s, 0, 1)
    EXPECT_LE(field(p), -spec.cylinder_radius + 1e-12);
  }
}

TEST(ShapeField, FarAway) {
  auto field = clebsch_field(clebsch_spec());
  EXPECT_GT(field({0, 0, 20}), 0);
}

TEST(ShellSpec, DefaultsAndValidation) {
  auto spec = clebsch_spec(128);
  EXPECT_DOUBLE_EQ(spec.half_thickness, 0.12);
  EXPECT_DOUBLE_EQ(spec.cylinder_radius, 0.24);
  EXPECT_NO_THROW(spec.validate());
  auto bad = spec;
  bad.resolution = 8;
  EXPECT_THROW(bad.validate(), Error);
  bad = spec;
  bad.cylinder_radius = 0.1;
  EXPECT_THROW(bad.validate(), Error);
  bad = spec;
  bad.highlight = HighlightMode::Thinning;
  EXPECT_THROW(bad.validate(), Error);
}

TEST(Contour, Sphere) {
  auto spec = sphere_spec(64);
  auto mesh = contour(sphere, spec);
  auto rep = mesh_report(mesh, nullptr, spec);
  EXPECT_TRUE(rep.watertight);
  EXPECT_EQ(rep.degenerate_triangles, 0u);
  for (const auto& v : mesh.vertices) EXPECT_NEAR(norm(v), 1.0, spec.cell_diagonal());
  // outward orientation: the signed volume is positive and near 4/3 pi
  double volume = 0;
  for (const auto& t : mesh.triangles) {
    const auto &a = mesh.vertices[t[0]], &b = mesh.vertices[t[1]], &c = mesh.vertices[t[2]];
    volume += (a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
               a[2] * (b[0] * c[1] - b[1] * c[0])) / 6;
  }
  EXPECT_NEAR(volume, 4.0 / 3.0 * std::numbers::pi, 0.05);
}

TEST(Contour, SphereConverges) {
  const double coarse = max_sphere_residual(contour(sphere, sphere_spec(32)));
  const double fine = max_sphere_residual(contour(sphere, sphere_spec(64)));
  EXPECT_GE(coarse / fine, 1.5) << coarse << " vs " << fine;
}

TEST(Contour, ClippedByTheBox) {
  // a half space fills the box on one side; the caps must close it
  auto spec = sphere_spec(16);
  auto mesh = contour([](const Vec3& p) { return p[2] - 0.3; }, spec);
  EXPECT_TRUE(mesh_report(mesh, nullptr, spec).watertight);
}

TEST(Contour, EmptyField) {
  auto spec = sphere_spec(16);
  try {
    contour([](const Vec3&) { return 1.0; }, spec);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyMesh);
  }
}

TEST(Contour, ClebschInvariants) {
  auto spec = clebsch_spec();
  auto field = clebsch_field(spec);
  const auto& mesh = clebsch_mesh();
  auto rep = mesh_report(mesh, &field, spec);
  ASSERT_FALSE(mesh.triangles.empty());
  EXPECT_TRUE(rep.watertight);
  EXPECT_EQ(rep.degenerate_triangles, 0u);
  EXPECT_GT(rep.shell_vertices, 0u);
  EXPECT_LE(rep.max_shell_residual, 2 * spec.cell_diagonal());
  const double slack = spec.cell_diagonal();
  for (const auto& v : mesh.vertices) EXPECT_LE(spec.box.sdf(v), slack);
}

TEST(Contour, ThreadCountDoesNotChangeOutput) {
  auto spec = clebsch_spec(32);
  spec.threads = 1;
  auto one = bytes(contour(clebsch_field(spec)), MeshFormat::StlBinary);
  spec.threads = 4;
  auto four = bytes(contour(clebsch_field(spec)), MeshFormat::StlBinary);
  EXPECT_EQ(one, four);
}

TEST(Contour, Deterministic) {
  auto again = contour(clebsch_field(clebsch_spec()));
  EXPECT_EQ(bytes(again, MeshFormat::StlBinary), bytes(clebsch_mesh(), MeshFormat::StlBinary));
}

TEST(WriteMesh, OneTriangleBinarySize) {
  auto m = one_triangle();
  EXPECT_EQ(bytes(m, MeshFormat::StlBinary).size(), 134u);
  auto path = scratch("one.stl").string();
  EXPECT_EQ(write_mesh(m, MeshFormat::StlBinary, path), 134u);
  EXPECT_EQ(std::filesystem::file_size(path), 134u);
}

TEST(WriteMesh, RoundTrips) {
  auto spec = sphere_spec(16);
  auto mesh = contour(sphere, spec);
  for (auto fmt : {MeshFormat::StlBinary, MeshFormat::StlAscii, MeshFormat::Obj}) {
    auto path = scratch(std::string("sphere") + std::to_string(static_cast<int>(fmt)) +
                        std::string(mesh_format_extension(fmt)))
                    .string();
    write_mesh(mesh, fmt, path);
    auto back = fmt == MeshFormat::Obj ? read_obj(path) : read_stl(path);
    ASSERT_EQ(back.triangles.size(), mesh.triangles.size());
    ASSERT_EQ(back.vertices.size(), mesh.vertices.size());
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
      for (std::size_t k = 0; k < 3; ++k) {
        const auto& a = mesh.vertices[mesh.triangles[t][k]];
        const auto& b = back.vertices[back.triangles[t][k]];
        for (std::size_t c = 0; c < 3; ++c) ASSERT_NEAR(a[c], b[c], 1e-6);
      }
    }
    EXPECT_TRUE(mesh_report(back, nullptr, spec).watertight);
  }
}

TEST(WriteMesh, Formats) {
  EXPECT_EQ(parse_mesh_format("stl-binary"), MeshFormat::StlBinary);
  EXPECT_EQ(parse_mesh_format("stl-ascii"), MeshFormat::StlAscii);
  EXPECT_EQ(parse_mesh_format("obj"), MeshFormat::Obj);
  EXPECT_THROW(parse_mesh_format("ply"), Error);
  auto ascii = bytes(one_triangle(), MeshFormat::StlAscii);
  EXPECT_EQ(ascii.rfind("solid cubic27\n", 0), 0u);
  EXPECT_NE(ascii.find("facet normal 0 0 1"), std::string::npos);
}

TEST(MeshReport, DeletedTriangleIsReported) {
  auto spec = sphere_spec(16);
  auto mesh = contour(sphere, spec);
  EXPECT_TRUE(mesh_report(mesh, nullptr, spec).watertight);
  const auto removed = mesh.triangles.back();
  mesh.triangles.pop_back();
  auto rep = mesh_report(mesh, nullptr, spec);
  EXPECT_FALSE(rep.watertight);
  ASSERT_EQ(rep.open_edges.size(), 3u);
  for (std::size_t k = 0; k < 3; ++k) {
    auto e = std::minmax(removed[k], removed[(k + 1) % 3]);
    EXPECT_NE(std::find(rep.open_edges.begin(), rep.open_edges.end(), std::make_pair(e.first, e.second)),
              rep.open_edges.end());
  }
  EXPECT_NE(rep.to_json().find("\"watertight\": false"), std::string::npos);
}

// ---------------------------------------------------------------------------
// properties

namespace {

void check_ray_parity(const TriangleMesh& mesh, const std::function<double(const Vec3&)>& solid, const ShellSpec& spec,
                      std::uint64_t seed, int want_inside) {
  RayCaster rays(mesh);
  Gen gen(seed);
  const double delta = spec.cell_diagonal();
  int tested = 0, inside = 0;
  while (tested < 1000) {
    Vec3 p;
    for (std::size_t i = 0; i < 3; ++i) p[i] = gen.real(spec.box.lo[i], spec.box.hi[i]);
    const double v = std::max(solid(p), spec.box.sdf(p));
    // half the points are drawn near the surface so both signs are exercised
    if (std::abs(v) <= delta || (tested % 2 == 0 && std::abs(v) > 4 * delta)) continue;
    ++tested;
    inside += v < 0;
    ASSERT_EQ(rays.inside(p), v < 0) << "at (" << p[0] << ", " << p[1] << ", " << p[2] << "), field " << v;
  }
  EXPECT_GE(inside, want_inside);
}

}  // namespace

TEST(MeshProperty, RayParitySphere) {
  auto spec = sphere_spec(32);
  check_ray_parity(contour(sphere, spec), sphere, spec, 1, 50);
}

TEST(MeshProperty, RayParityClebschDefaults) {
  auto spec = clebsch_spec();
  auto field = clebsch_field(spec);
  check_ray_parity(clebsch_mesh(), [&](const Vec3& p) { return field(p); }, spec, 2, 0);
}

TEST(MeshProperty, RayParityClebschThick) {
  // vanes thicker than a cell so that points inside the solid exist outside the band
  auto spec = clebsch_spec(48);
  spec.half_thickness = 0.6;
  spec.cylinder_radius = 1.0;
  auto field = clebsch_field(spec);
  check_ray_parity(contour(field), [&](const Vec3& p) { return field(p); }, spec, 3, 50);
}

TEST(MeshProperty, HighlightVisibility) {
  auto spec = clebsch_spec();
  const auto& mesh = clebsch_mesh();
  const double r = spec.cylinder_radius, diag = spec.cell_diagonal();
  const double margin = r + 2 * diag;
  for (const auto& line : real_lines(clebsch())) {
    // parameter range of the line inside the shrunken box
    double t0 = -1e9, t1 = 1e9;
    for (std::size_t i = 0; i < 3; ++i) {
      const double lo = spec.box.lo[i] + margin, hi = spec.box.hi[i] - margin;
      if (line.direction[i] == 0) continue;
      double a = (lo - line.base[i]) / line.direction[i], b = (hi - line.base[i]) / line.direction[i];
      if (a > b) std::swap(a, b);
      t0 = std::max(t0, a);
      t1 = std::min(t1, b);
    }
    ASSERT_LT(t0, t1);
    for (int k = 0; k < 20; ++k) {
      const double t = t0 + (t1 - t0) * (k + 0.5) / 20;
      Vec3 p{line.base[0] + t * line.direction[0], line.base[1] + t * line.direction[1],
             line.base[2] + t * line.direction[2]};
      double best = std::numeric_limits<double>::infinity();
      for (const auto& tri : mesh.triangles) {
        const auto &a = mesh.vertices[tri[0]], &b = mesh.vertices[tri[1]], &c = mesh.vertices[tri[2]];
        bool far = false;
        for (std::size_t i = 0; i < 3 && !far; ++i) {
          far = std::min({a[i], b[i], c[i]}) > p[i] + best || std::max({a[i], b[i], c[i]}) < p[i] - best;
        }
        if (!far) best = std::min(best, cubic::testing::point_triangle_distance(p, a, b, c));
      }
      EXPECT_NEAR(best, r, diag) << "line through (" << line.base[0] << ", " << line.base[1] << ", " << line.base[2]
                                 << ") at t = " << t;
    }
  }
}
