#include "cubic/surface_json.hpp"

#include <cstdio>
#include <string>

#include "json.hpp"

namespace cubic {

namespace {

using nlohmann::ordered_json;

double round15(const FieldElement& x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x.to_double());
  return std::stod(buf);
}

template <class Range>
ordered_json exact(const Range& v) {
  ordered_json out = ordered_json::array();
  for (const auto& x : v) out.push_back(x.to_string());
  return out;
}

template <class Range>
ordered_json floats(const Range& v) {
  ordered_json out = ordered_json::array();
  for (const auto& x : v) out.push_back(round15(x));
  return out;
}

ordered_json matrix(const Matrix& m) {
  ordered_json out = ordered_json::array();
  for (const auto& row : m) out.push_back(exact(row));
  return out;
}

}  // namespace

std::string surface_to_json(const Surface& s, int indent) {
  const SurfaceModel& m = s.model;
  ordered_json doc;
  doc["schema"] = "cubic27.surface";
  doc["schema_version"] = 1;

  ordered_json pts = ordered_json::array();
  for (const auto& p : m.points) pts.push_back(exact(p.coords));
  doc["points"] = pts;
  ordered_json phi = ordered_json::array();
  for (const auto& p : m.phi) phi.push_back(p.to_string());
  doc["phi"] = phi;
  doc["a_raw"] = exact(m.a_raw);
  doc["a"] = exact(m.a);
  doc["p5_equations"] = {m.p5.cubic.to_string(), m.p5.sum.to_string(), m.p5.weighted.to_string()};
  doc["pivot"] = {m.elimination.pivot.first, m.elimination.pivot.second};
  doc["F"] = m.elimination.F_raw.to_string();
  doc["F_normalized"] = m.elimination.F.to_string();
  doc["transform"] = {{"forward", matrix(m.transform.forward)}, {"inverse", matrix(m.transform.inverse)}};
  doc["f_affine"] = m.chart.f.to_string();

  ordered_json planes = ordered_json::array();
  for (const auto& p : s.planes) {
    ordered_json lines = ordered_json::array();
    for (auto l : p.lines) lines.push_back(l + 1);
    ordered_json jp = {{"form", p.form.to_string()}, {"lines", lines}, {"eckardt", p.eckardt}};
    if (p.pair) jp["pair"] = {p.pair->first, p.pair->second};
    planes.push_back(jp);
  }
  doc["tritangent_planes"] = planes;

  ordered_json lines = ordered_json::array();
  for (std::size_t i = 0; i < s.lines.size(); ++i) {
    const auto& l = s.lines[i];
    ordered_json parents = ordered_json::array();
    for (auto p : l.parent_planes) parents.push_back(p + 1);
    ordered_json jl = {{"id", i + 1},
                       {"implicit_p3", {l.implicit_p3[0].to_string(), l.implicit_p3[1].to_string()}},
                       {"span_p3", {exact(l.span_p3[0]), exact(l.span_p3[1])}},
                       {"planes", parents},
                       {"visible", l.visible}};
    if (l.visible) {
      jl["implicit_affine"] = {l.implicit_affine[0].to_string(), l.implicit_affine[1].to_string()};
      jl["base"] = exact(l.base);
      jl["direction"] = exact(l.direction);
      jl["base_float"] = floats(l.base);
      jl["direction_float"] = floats(l.direction);
      jl["parameter_axis"] = "y" + std::to_string(l.param_axis + 1);
    }
    lines.push_back(jl);
  }
  doc["lines"] = lines;

  ordered_json eck = ordered_json::array();
  for (const auto& e : s.eckardt) {
    ordered_json je = {{"p3", exact(e.p3)},
                       {"plane", e.plane + 1},
                       {"lines", {e.lines[0] + 1, e.lines[1] + 1, e.lines[2] + 1}},
                       {"visible", e.visible}};
    if (e.visible) {
      je["affine"] = exact(e.affine);
      je["affine_float"] = floats(e.affine);
    } else {
      je["at_infinity"] = exact(e.at_infinity);
    }
    eck.push_back(je);
  }
  doc["eckardt_points"] = eck;
  return doc.dump(indent);
}

}  // namespace cubic
