#pragma once

// Cubic surface through the blowup of six plane points: coefficient vector,
// equations in P^5 and P^3, tritangent planes, the 27 lines, Eckardt points
// and the affine chart used for printing.
//
// Points are numbered 1..6 in every public signature; coordinates x0..x5 and
// the coefficients a0..a5 are 0-based. Point P_{i+1} belongs to index i.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cubic/linalg.hpp"
#include "cubic/polyring.hpp"

namespace cubic {

struct PlanePoint {
  std::array<FieldElement, 3> coords;

  /// Scaled so the first nonzero coordinate is 1.
  PlanePoint canonical() const;
  std::string to_string() const;
};

/// Parses "a : b : c" with exact expressions.
PlanePoint parse_plane_point(std::string_view text);

using PointSet = std::array<PlanePoint, 6>;

VariableList plane_variables();   // t0 t1 t2
VariableList p5_variables();      // x0 .. x5
VariableList p3_variables();      // x0 .. x3
VariableList affine_variables();  // y1 y2 y3

struct GeneralPositionReport {
  std::vector<std::array<int, 3>> collinear;  // 1-based triples
  bool on_conic = false;

  bool ok() const { return collinear.empty() && !on_conic; }
  std::string describe() const;
};

GeneralPositionReport check_general_position(const PointSet& points);

/// det(P_i, P_j, P_k), 1-based.
FieldElement point_det(const PointSet& points, int i, int j, int k);

/// l_{i,j}(t) = det(P_i, P_j, t).
LinearForm line_through(int i, int j, const PointSet& points);

std::array<MultiPoly, 6> blowup_map(const PointSet& points);

/// |i,j;k,l;m,n| = d(i,j,m) d(k,l,n) - d(i,j,n) d(k,l,m).
FieldElement triple_bracket(int i, int j, int k, int l, int m, int n, const PointSet& points);

/// The skew-symmetric 6x6 matrix of brackets.
Matrix bracket_matrix(const PointSet& points);

using Coefficients = std::array<FieldElement, 6>;

/// Row sums of bracket_matrix, unscaled.
Coefficients coefficient_vector_raw(const PointSet& points);
/// Divided by the first nonzero entry; rational vectors become primitive integer vectors.
Coefficients normalize_coefficients(const Coefficients& raw);
Coefficients coefficient_vector(const PointSet& points);

struct P5Equations {
  MultiPoly cubic;     // x0^3 + ... + x5^3
  MultiPoly sum;       // x0 + ... + x5
  MultiPoly weighted;  // a0 x0 + ... + a5 x5
};

P5Equations cubic_in_p5(const Coefficients& a);

struct Elimination {
  std::pair<int, int> pivot;       // eliminated coordinates, i < j
  std::array<int, 4> kept;         // remaining coordinates in order
  Matrix embedding;                // 6x4, P^3 coordinates -> P^5 coordinates
  MultiPoly F_raw;                 // cubic after substitution
  MultiPoly F;                     // F_raw.normalized()

  Vector lift(const Vector& p3) const { return multiply(embedding, p3); }
  Vector project(const Vector& p5) const;
};

/// Throws DegenerateLinearSystem if all a_i coincide.
Elimination eliminate_to_p3(const Coefficients& a);

struct TritangentPlane {
  LinearForm form;                 // in x0..x3, first nonzero coefficient 1
  std::optional<std::pair<int, int>> pair;  // set for the planes x_i + x_j
  std::vector<std::size_t> lines;  // indices into the line list
  bool eckardt = false;            // its three lines are concurrent
};

/// d_2 of the plane formula, from the six points.
FieldElement plane_determinant(const PointSet& points);

/// The 45 planes, pair planes first in lexicographic pair order, then the
/// remaining 30 sorted canonically. Throws PlaneCountMismatch.
std::vector<TritangentPlane> tritangent_planes(const PointSet& points, const Coefficients& raw_a,
                                               const Elimination& elim);

/// The fixed change of coordinates x = M y on P^3.
struct ChartTransform {
  Matrix forward;  // x = forward * y
  Matrix inverse;  // y = inverse * x
};
ChartTransform affine_transform();

struct SurfaceLine {
  std::array<LinearForm, 2> implicit_p3;  // reduced row echelon rows
  std::array<Vector, 2> span_p3;          // two points spanning the line
  std::vector<std::size_t> parent_planes;

  bool visible = false;                   // meets the affine chart y0 != 0
  std::array<LinearForm, 2> implicit_affine;
  Vector base;                            // affine point at s = 0
  Vector direction;                       // direction[param_axis] == 1
  std::size_t param_axis = 0;

  /// base + s * direction as polynomials in s.
  std::array<MultiPoly, 3> parametrization() const;
};

/// Intersects all plane pairs, keeps lines on F, sorts them by their parent
/// planes and fills the incidences. Throws LineCountMismatch.
std::vector<SurfaceLine> lines_on_cubic(const Elimination& elim, std::vector<TritangentPlane>& planes);

struct EckardtPoint {
  Vector p3;                       // first nonzero coordinate 1
  std::size_t plane = 0;
  std::array<std::size_t, 3> lines{};
  bool visible = false;
  Vector affine;                   // y1 y2 y3 when visible
  Vector at_infinity;              // y0..y3 when not visible
};

std::vector<EckardtPoint> eckardt_points(const std::vector<SurfaceLine>& lines,
                                         std::vector<TritangentPlane>& planes, const ChartTransform& chart);

struct AffineChart {
  MultiPoly f_raw;  // F(M (1, y1, y2, y3))
  MultiPoly f;      // f_raw scaled to constant term 1 (normalized if it has none)
  std::vector<std::size_t> invisible_lines;
};

/// Fills the affine data of every line; lines at infinity are listed, not thrown.
AffineChart to_affine_chart(const Elimination& elim, std::vector<SurfaceLine>& lines, const ChartTransform& chart);

/// P1=(0:1:-g), P2=(g:0:1), P3=(1:g:0), P4=(1:-g:0), P5=(0:1:g), P6=(-g:0:1), g=(1+sqrt(5))/2.
PointSet clebsch_preset();

struct SurfaceModel {
  PointSet points;
  std::array<MultiPoly, 6> phi;
  Coefficients a_raw;
  Coefficients a;
  P5Equations p5;
  Elimination elimination;
  ChartTransform transform;
  AffineChart chart;
};

struct Surface {
  SurfaceModel model;
  std::vector<TritangentPlane> planes;
  std::vector<SurfaceLine> lines;
  std::vector<EckardtPoint> eckardt;
};

/// Runs the whole pipeline. Throws NotInGeneralPosition with the report text.
Surface compute_surface(const PointSet& points);

/// Projective equality of coordinate vectors.
bool projectively_equal(const Vector& a, const Vector& b);
/// Scaled so the first nonzero entry is 1.
Vector normalize_projective(Vector v);

}  // namespace cubic
