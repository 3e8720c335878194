#pragma once

// Printable solid from the affine cubic: a thin shell around f = 0 united
// with cylinders around the lines, clipped to the build box and contoured on
// a uniform grid.

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "cubic/polyring.hpp"

namespace cubic {

using Vec3 = std::array<double, 3>;

struct Box {
  Vec3 lo{-6, -6, -6};
  Vec3 hi{6, 6, 6};

  static Box centered(const Vec3& half_extents) {
    return Box{{-half_extents[0], -half_extents[1], -half_extents[2]}, half_extents};
  }
  /// Signed distance (max norm), negative inside.
  double sdf(const Vec3& p) const;
};

/// Thinning and Perforation are reserved and rejected by validate().
enum class HighlightMode { Cylinders, None, Thinning, Perforation };

struct ShellSpec {
  double half_thickness = 0.12;
  double cylinder_radius = 0.24;
  HighlightMode highlight = HighlightMode::Cylinders;
  int resolution = 128;  // cells per axis
  Box box;
  unsigned threads = 0;  // sampling workers, 0 for one per core

  /// Half thickness 1% of the shortest box side, cylinder radius twice that.
  static ShellSpec defaults(const Box& box, int resolution = 128);
  /// Throws InvalidShellSpec.
  void validate() const;
  Vec3 cell_size() const;
  double cell_diagonal() const;
};

struct RealLine {
  Vec3 base;
  Vec3 direction;  // normalized on construction of the field
};

/// The solid's implicit description; negative inside.
class ShapeField {
 public:
  ShapeField(const MultiPoly& f, std::vector<RealLine> lines, const ShellSpec& spec);

  /// |f| / max(|grad f|, 1e-8) - half_thickness
  double shell(const Vec3& p) const;
  /// Distance to the nearest highlighted line minus the radius; +inf without lines.
  double cylinders(const Vec3& p) const;
  double operator()(const Vec3& p) const { return std::min(shell(p), cylinders(p)); }

  const ShellSpec& spec() const noexcept { return spec_; }
  const std::vector<RealLine>& lines() const noexcept { return lines_; }

 private:
  RealPoly f_;
  std::vector<RealLine> lines_;
  ShellSpec spec_;
};

inline double shape_field(const Vec3& p, const ShapeField& field) { return field(p); }

struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<std::uint32_t, 3>> triangles;  // counter-clockwise seen from outside
  std::map<std::string, std::string> provenance;

  Vec3 normal(std::size_t t) const;  // unit, zero for degenerate triangles
  double area(std::size_t t) const;
};

/// Contours {field = 0} clipped to spec.box. Throws EmptyMesh.
TriangleMesh contour(const std::function<double(const Vec3&)>& field, const ShellSpec& spec);
TriangleMesh contour(const ShapeField& field);

enum class MeshFormat { StlBinary, StlAscii, Obj };
MeshFormat parse_mesh_format(std::string_view name);
std::string_view mesh_format_extension(MeshFormat format);

/// Returns the number of bytes written. Throws IoFailure.
std::size_t write_mesh(const TriangleMesh& mesh, MeshFormat format, std::ostream& out);
std::size_t write_mesh(const TriangleMesh& mesh, MeshFormat format, const std::string& path);

/// Binary or ASCII STL; coincident vertices are merged. Throws IoFailure or ParseError.
TriangleMesh read_stl(const std::string& path);
TriangleMesh read_obj(const std::string& path);

struct MeshReport {
  bool watertight = false;
  std::size_t triangle_count = 0;
  std::size_t vertex_count = 0;
  std::size_t degenerate_triangles = 0;  // area <= 1e-12
  std::vector<std::pair<std::uint32_t, std::uint32_t>> open_edges;  // edges not shared by exactly 2 triangles
  std::size_t shell_vertices = 0;
  double max_shell_residual = 0.0;
  double cell_diagonal = 0.0;
  Box bounds;

  std::string to_json(int indent = 2) const;
};

/// Edge census and, when a field is given, the shell residual over vertices
/// where the shell term is the active one.
MeshReport mesh_report(const TriangleMesh& mesh, const ShapeField* field, const ShellSpec& spec);

}  // namespace cubic
