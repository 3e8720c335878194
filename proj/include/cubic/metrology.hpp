#pragma once

// Reference measurements for a printed test shape: where the lines cross,
// the angles between them there, and distances along the lines, all in the
// caller's build units.

#include <array>
#include <string>
#include <vector>

#include "cubic/surface.hpp"

namespace cubic {

/// Half extents of the box [-r1,r1] x [-r2,r2] x [-r3,r3]. The unscaled
/// model lives in [-6,6]^3.
struct BuildVolume {
  std::array<Rational, 3> r{Rational(6), Rational(6), Rational(6)};

  static BuildVolume cube(const Rational& half_extent) { return BuildVolume{{half_extent, half_extent, half_extent}}; }
  /// Throws NonPositiveExtent.
  void validate() const;
  /// r_i / 6, the factor applied to coordinate i.
  Rational factor(std::size_t i) const { return r[i] / 6; }
  bool is_identity() const { return r[0] == 6 && r[1] == 6 && r[2] == 6; }
};

struct AffineLine {
  std::size_t index = 0;  // position in the surface's line list
  std::array<LinearForm, 2> implicit;
  Vector base;
  Vector direction;
};

struct IntersectionRecord {
  Vector point;                  // exact affine coordinates
  std::array<double, 3> approx{};
  std::vector<std::size_t> lines;  // all concurring line indices, ascending
  bool is_eckardt = false;        // three lines concur
};

/// Visible lines of the surface, unscaled.
std::vector<AffineLine> affine_lines(const Surface& surface);

/// Merged pairwise intersections; skew and parallel pairs produce nothing.
std::vector<IntersectionRecord> intersection_graph(const std::vector<AffineLine>& lines);

/// Acute angle in degrees between two directions; 0 for parallel ones.
double angle_between(const Vector& dir_a, const Vector& dir_b);
inline double angle_between(const AffineLine& a, const AffineLine& b) { return angle_between(a.direction, b.direction); }

struct Distance {
  double length = 0.0;
  std::vector<std::size_t> shared_lines;
  bool line_connected() const { return !shared_lines.empty(); }
};

Distance distance_between(const IntersectionRecord& a, const IntersectionRecord& b);

Vector scale_point(const Vector& p, const BuildVolume& volume);
AffineLine scale_line(const AffineLine& line, const BuildVolume& volume);
/// y_i -> y_i * 6 / r_i.
MultiPoly scale_polynomial(const MultiPoly& p, const BuildVolume& volume);
IntersectionRecord scale_record(const IntersectionRecord& rec, const BuildVolume& volume);

struct AngleEntry {
  std::size_t record = 0;
  std::size_t line_a = 0, line_b = 0;
  double degrees = 0.0;
};

struct DistanceEntry {
  std::size_t record_a = 0, record_b = 0;
  Distance distance;
};

struct MeasurementReport {
  BuildVolume volume;
  MultiPoly f;                              // scaled affine cubic
  std::vector<AffineLine> lines;            // scaled
  std::vector<std::size_t> excluded_lines;  // at infinity, not measurable
  std::vector<IntersectionRecord> intersections;  // scaled, inside the build volume
  std::vector<IntersectionRecord> outside;        // scaled, beyond the build volume
  std::vector<AngleEntry> angles;
  std::vector<DistanceEntry> distances;
  std::vector<std::size_t> eckardt_records;

  std::string to_json(int indent = 2) const;
  std::string to_text() const;
};

/// Angles and distances are measured only at intersections inside the
/// volume. all_pairs also lists distances between points that share no line.
MeasurementReport build_report(const Surface& surface, const BuildVolume& volume, bool all_pairs = false);

/// Shortest decimal form of x at the given number of significant digits.
std::string format_sig(double x, int digits);
double round_sig(double x, int digits);

}  // namespace cubic
