#include "cubic/metrology.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>

#include "json.hpp"

namespace cubic {

namespace {

constexpr int kReportDigits = 12;

struct VectorLess {
  bool operator()(const Vector& a, const Vector& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), CanonicalLess{});
  }
};

std::array<double, 3> approx(const Vector& p) { return {p[0].to_double(), p[1].to_double(), p[2].to_double()}; }

}  // namespace

void BuildVolume::validate() const {
  for (std::size_t i = 0; i < 3; ++i) {
    if (r[i] <= 0) {
      throw Error(ErrorCode::NonPositiveExtent, "half extent r" + std::to_string(i + 1) + " = " +
                                                    rational_to_string(r[i]) + " is not positive");
    }
  }
}

std::string format_sig(double x, int digits) {
  if (x == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

double round_sig(double x, int digits) { return std::stod(format_sig(x, digits)); }

std::vector<AffineLine> affine_lines(const Surface& surface) {
  std::vector<AffineLine> out;
  for (std::size_t i = 0; i < surface.lines.size(); ++i) {
    const auto& l = surface.lines[i];
    if (!l.visible) continue;
    out.push_back(AffineLine{i, l.implicit_affine, l.base, l.direction});
  }
  return out;
}

std::vector<IntersectionRecord> intersection_graph(const std::vector<AffineLine>& lines) {
  std::map<Vector, std::vector<std::size_t>, VectorLess> points;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const auto& a = lines[i];
      const auto& b = lines[j];
      // base_a + s dir_a = base_b + t dir_b
      Matrix m(3, Vector(3));
      for (std::size_t k = 0; k < 3; ++k) {
        m[k][0] = a.direction[k];
        m[k][1] = -b.direction[k];
        m[k][2] = b.base[k] - a.base[k];
      }
      RrefResult r = rref(m);
      if (r.pivots.size() != 2 || r.pivots[1] != 1) continue;  // parallel, or skew when column 2 pivots
      const FieldElement& s = r.reduced[0][2];
      Vector p(3);
      for (std::size_t k = 0; k < 3; ++k) p[k] = (a.base[k] + s * a.direction[k]).simplified();
      auto& members = points[p];
      members.push_back(a.index);
      members.push_back(b.index);
    }
  }
  std::vector<IntersectionRecord> out;
  for (auto& [p, members] : points) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    IntersectionRecord rec;
    rec.point = p;
    rec.approx = approx(p);
    rec.lines = members;
    rec.is_eckardt = members.size() == 3;
    out.push_back(std::move(rec));
  }
  std::sort(out.begin(), out.end(),
            [](const IntersectionRecord& a, const IntersectionRecord& b) { return a.lines < b.lines; });
  return out;
}

double angle_between(const Vector& a, const Vector& b) {
  FieldElement d = dot(a, b);
  FieldElement cross2 = dot(a, a) * dot(b, b) - d * d;  // |a x b|^2
  const double s = std::sqrt(std::max(0.0, cross2.to_double()));
  const double c = std::abs(d.to_double());
  return std::atan2(s, c) * 180.0 / std::numbers::pi;
}

Distance distance_between(const IntersectionRecord& a, const IntersectionRecord& b) {
  Distance out;
  FieldElement d2;
  for (std::size_t k = 0; k < 3; ++k) {
    FieldElement diff = a.point[k] - b.point[k];
    d2 += diff * diff;
  }
  out.length = std::sqrt(d2.to_double());
  std::set_intersection(a.lines.begin(), a.lines.end(), b.lines.begin(), b.lines.end(),
                        std::back_inserter(out.shared_lines));
  return out;
}

Vector scale_point(const Vector& p, const BuildVolume& volume) {
  Vector out(3);
  for (std::size_t i = 0; i < 3; ++i) out[i] = p[i] * FieldElement(volume.factor(i));
  return out;
}

MultiPoly scale_polynomial(const MultiPoly& p, const BuildVolume& volume) {
  if (volume.is_identity()) return p;
  std::vector<MultiPoly> repl;
  for (std::size_t i = 0; i < 3; ++i) {
    repl.push_back(MultiPoly::variable(p.variable_list(), i) * FieldElement(Rational(1) / volume.factor(i)));
  }
  return substitute(p, repl);
}

AffineLine scale_line(const AffineLine& line, const BuildVolume& volume) {
  AffineLine out = line;
  out.base = scale_point(line.base, volume);
  out.direction = scale_point(line.direction, volume);
  for (std::size_t k = 0; k < 2; ++k) out.implicit[k] = LinearForm(scale_polynomial(line.implicit[k].poly(), volume));
  return out;
}

IntersectionRecord scale_record(const IntersectionRecord& rec, const BuildVolume& volume) {
  IntersectionRecord out = rec;
  out.point = scale_point(rec.point, volume);
  out.approx = approx(out.point);
  return out;
}

MeasurementReport build_report(const Surface& surface, const BuildVolume& volume, bool all_pairs) {
  volume.validate();
  MeasurementReport rep;
  rep.volume = volume;
  rep.f = scale_polynomial(surface.model.chart.f, volume);
  auto lines = affine_lines(surface);
  rep.excluded_lines = surface.model.chart.invisible_lines;
  auto records = intersection_graph(lines);
  for (const auto& l : lines) rep.lines.push_back(scale_line(l, volume));
  for (const auto& r : records) {
    // the unscaled model fills [-6,6]^3
    const bool inside = std::all_of(r.point.begin(), r.point.end(),
                                    [](const FieldElement& c) { return (c.abs() - FieldElement(6)).sign() <= 0; });
    (inside ? rep.intersections : rep.outside).push_back(scale_record(r, volume));
  }

  std::map<std::size_t, const AffineLine*> by_index;
  for (const auto& l : rep.lines) by_index[l.index] = &l;
  for (std::size_t r = 0; r < rep.intersections.size(); ++r) {
    const auto& rec = rep.intersections[r];
    if (rec.is_eckardt) rep.eckardt_records.push_back(r);
    for (std::size_t i = 0; i < rec.lines.size(); ++i) {
      for (std::size_t j = i + 1; j < rec.lines.size(); ++j) {
        const auto* a = by_index.at(rec.lines[i]);
        const auto* b = by_index.at(rec.lines[j]);
        rep.angles.push_back(AngleEntry{r, a->index, b->index, angle_between(*a, *b)});
      }
    }
  }
  for (std::size_t i = 0; i < rep.intersections.size(); ++i) {
    for (std::size_t j = i + 1; j < rep.intersections.size(); ++j) {
      Distance d = distance_between(rep.intersections[i], rep.intersections[j]);
      if (all_pairs || d.line_connected()) rep.distances.push_back(DistanceEntry{i, j, std::move(d)});
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

using nlohmann::ordered_json;

ordered_json exact_vector(const Vector& v) {
  ordered_json out = ordered_json::array();
  for (const auto& x : v) out.push_back(x.to_string());
  return out;
}

ordered_json float_vector(const Vector& v) {
  ordered_json out = ordered_json::array();
  for (const auto& x : v) out.push_back(round_sig(x.to_double(), kReportDigits));
  return out;
}

}  // namespace

std::string MeasurementReport::to_json(int indent) const {
  ordered_json doc;
  doc["schema"] = "cubic27.measurement-report";
  doc["schema_version"] = 1;
  doc["build_volume"] = {{"half_extents", {rational_to_string(volume.r[0]), rational_to_string(volume.r[1]),
                                           rational_to_string(volume.r[2])}}};
  doc["affine_cubic"] = f.to_string();
  ordered_json jl = ordered_json::array();
  for (const auto& l : lines) {
    jl.push_back({{"line", l.index + 1},
                  {"implicit", {l.implicit[0].to_string(), l.implicit[1].to_string()}},
                  {"base", exact_vector(l.base)},
                  {"direction", exact_vector(l.direction)},
                  {"base_float", float_vector(l.base)},
                  {"direction_float", float_vector(l.direction)}});
  }
  doc["lines"] = jl;
  ordered_json ex = ordered_json::array();
  for (auto i : excluded_lines) ex.push_back(i + 1);
  doc["lines_at_infinity"] = ex;
  ordered_json ji = ordered_json::array();
  for (std::size_t r = 0; r < intersections.size(); ++r) {
    const auto& rec = intersections[r];
    ordered_json lines_json = ordered_json::array();
    for (auto i : rec.lines) lines_json.push_back(i + 1);
    ji.push_back({{"id", r + 1},
                  {"point", exact_vector(rec.point)},
                  {"point_float", float_vector(rec.point)},
                  {"lines", lines_json},
                  {"eckardt", rec.is_eckardt}});
  }
  doc["intersections"] = ji;
  ordered_json jo = ordered_json::array();
  for (const auto& rec : outside) {
    ordered_json lines_json = ordered_json::array();
    for (auto i : rec.lines) lines_json.push_back(i + 1);
    jo.push_back({{"point", exact_vector(rec.point)}, {"point_float", float_vector(rec.point)}, {"lines", lines_json}});
  }
  doc["intersections_outside_volume"] = jo;
  ordered_json ja = ordered_json::array();
  for (const auto& a : angles) {
    ja.push_back({{"intersection", a.record + 1},
                  {"lines", {a.line_a + 1, a.line_b + 1}},
                  {"degrees", round_sig(a.degrees, kReportDigits)}});
  }
  doc["angles"] = ja;
  ordered_json jd = ordered_json::array();
  for (const auto& d : distances) {
    ordered_json shared = ordered_json::array();
    for (auto i : d.distance.shared_lines) shared.push_back(i + 1);
    jd.push_back({{"intersections", {d.record_a + 1, d.record_b + 1}},
                  {"length", round_sig(d.distance.length, kReportDigits)},
                  {"shared_lines", shared}});
  }
  doc["distances"] = jd;
  ordered_json je = ordered_json::array();
  for (auto r : eckardt_records) je.push_back(r + 1);
  doc["eckardt_intersections"] = je;
  return doc.dump(indent);
}

std::string MeasurementReport::to_text() const {
  std::ostringstream os;
  auto fmt = [](double x) { return format_sig(x, kReportDigits); };
  os << "Build volume: [-" << rational_to_string(volume.r[0]) << "," << rational_to_string(volume.r[0]) << "] x [-"
     << rational_to_string(volume.r[1]) << "," << rational_to_string(volume.r[1]) << "] x [-"
     << rational_to_string(volume.r[2]) << "," << rational_to_string(volume.r[2]) << "]\n";
  os << "Affine cubic: " << f.to_string() << " = 0\n\n";
  os << "Lines (" << lines.size() << " visible";
  if (!excluded_lines.empty()) os << ", " << excluded_lines.size() << " at infinity";
  os << ")\n";
  for (const auto& l : lines) {
    os << "  L" << l.index + 1 << "  <" << l.implicit[0].to_string() << ", " << l.implicit[1].to_string() << ">  s -> (";
    for (std::size_t k = 0; k < 3; ++k) {
      if (k) os << ", ";
      os << fmt(l.base[k].to_double()) << " + " << fmt(l.direction[k].to_double()) << "*s";
    }
    os << ")\n";
  }
  os << "\nIntersections (" << intersections.size() << ", " << eckardt_records.size() << " Eckardt)\n";
  for (std::size_t r = 0; r < intersections.size(); ++r) {
    const auto& rec = intersections[r];
    os << "  I" << r + 1 << "  (" << fmt(rec.approx[0]) << ", " << fmt(rec.approx[1]) << ", " << fmt(rec.approx[2])
       << ")  lines";
    for (auto i : rec.lines) os << " L" << i + 1;
    if (rec.is_eckardt) os << "  [Eckardt]";
    os << "\n";
  }
  if (!outside.empty()) os << "  (" << outside.size() << " more outside the build volume)\n";
  os << "\nAngles (degrees)\n";
  for (const auto& a : angles) {
    os << "  I" << a.record + 1 << "  L" << a.line_a + 1 << " / L" << a.line_b + 1 << "  " << fmt(a.degrees) << "\n";
  }
  os << "\nDistances\n";
  for (const auto& d : distances) {
    os << "  I" << d.record_a + 1 << " - I" << d.record_b + 1 << "  " << fmt(d.distance.length);
    if (d.distance.line_connected()) {
      os << "  along";
      for (auto i : d.distance.shared_lines) os << " L" << i + 1;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace cubic
