#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "cubic/metrology.hpp"
#include "support.hpp"

using namespace cubic;
using cubic::testing::Gen;

namespace {

FieldElement num(const char* text) { return FieldElement::parse(text); }

Vector vec(std::initializer_list<const char*> xs) {
  Vector v;
  for (auto x : xs) v.push_back(num(x));
  return v;
}

const Surface& clebsch() {
  static const Surface s = compute_surface(clebsch_preset());
  return s;
}

const MeasurementReport& unit_report() {
  static const MeasurementReport r = build_report(clebsch(), BuildVolume{});
  return r;
}

// Dot-product oracle, independent of the library's atan2 form.
double oracle_angle(const Vector& a, const Vector& b) {
  long double ab = 0, aa = 0, bb = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    const long double x = a[k].to_double(), y = b[k].to_double();
    ab += x * y;
    aa += x * x;
    bb += y * y;
  }
  long double c = std::fabs(ab) / std::sqrt(aa * bb);
  if (c > 1) c = 1;
  return static_cast<double>(std::acos(c) * 180.0L / std::numbers::pi_v<long double>);
}

const IntersectionRecord* record_at(const MeasurementReport& rep, const Vector& p) {
  for (const auto& r : rep.intersections) {
    if (r.point == p) return &r;
  }
  return nullptr;
}

std::set<std::vector<std::size_t>> incidence(const MeasurementReport& rep) {
  std::set<std::vector<std::size_t>> out;
  for (const auto& r : rep.intersections) out.insert(r.lines);
  for (const auto& r : rep.outside) out.insert(r.lines);
  return out;
}

}  // namespace

TEST(Intersections, EckardtPointAtZeroZeroOne) {
  auto lines = affine_lines(clebsch());
  auto graph = intersection_graph(lines);
  const IntersectionRecord* hit = nullptr;
  for (const auto& r : graph) {
    if (r.point == vec({"0", "0", "1"})) hit = &r;
  }
  ASSERT_NE(hit, nullptr);
  EXPECT_TRUE(hit->is_eckardt);
  ASSERT_EQ(hit->lines.size(), 3u);
  std::vector<Vector> dirs;
  for (auto i : hit->lines) dirs.push_back(clebsch().lines[i].direction);
  // the lines (s,0,1), ((1/c)s-1/c,0,s) and (-(1/c)s+1/c,0,s) of the table, up to scaling of the direction
  auto parallel = [](const Vector& a, const Vector& b) {
    return (a[1] * b[2] - a[2] * b[1]).is_zero() && (a[2] * b[0] - a[0] * b[2]).is_zero() &&
           (a[0] * b[1] - a[1] * b[0]).is_zero();
  };
  for (const auto& want : {vec({"1", "0", "0"}), vec({"1/sqrt(2)", "0", "1"}), vec({"-1/sqrt(2)", "0", "1"})}) {
    EXPECT_EQ(std::count_if(dirs.begin(), dirs.end(), [&](const Vector& d) { return parallel(d, want); }), 1);
  }
}

TEST(Intersections, ParallelLinesDoNotMeet) {
  auto lines = affine_lines(clebsch());
  std::size_t a = lines.size(), b = lines.size();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].base == vec({"0", "0", "1"}) && lines[i].direction == vec({"1", "0", "0"})) a = i;
    if (lines[i].base == vec({"0", "sqrt(2)", "1"}) && lines[i].direction == vec({"1", "0", "0"})) b = i;
  }
  ASSERT_LT(a, lines.size());
  ASSERT_LT(b, lines.size());
  auto graph = intersection_graph({lines[a], lines[b]});
  EXPECT_TRUE(graph.empty());
}

TEST(Intersections, SevenEckardtRecords) {
  EXPECT_EQ(unit_report().eckardt_records.size(), 7u);
  EXPECT_EQ(unit_report().lines.size(), 27u);
  for (auto r : unit_report().eckardt_records) EXPECT_EQ(unit_report().intersections[r].lines.size(), 3u);
}

TEST(Intersections, PointsLieOnTheCubic) {
  const auto& f = clebsch().model.chart.f;
  auto graph = intersection_graph(affine_lines(clebsch()));
  // 27 lines each meeting 10 others, Eckardt triples merged; three Eckardt points are at infinity
  EXPECT_EQ(graph.size(), 112u);
  for (const auto& r : graph) EXPECT_TRUE(evaluate(f, r.point).is_zero());
}

TEST(Angle, Oracles) {
  const auto a = vec({"1", "0", "0"});
  const auto b = vec({"1/sqrt(2)", "0", "1"});
  const auto c = vec({"-1/sqrt(2)", "0", "1"});
  EXPECT_NEAR(angle_between(b, b), 0.0, 1e-12);
  EXPECT_NEAR(angle_between(a, b), 54.735610317, 1e-9);
  EXPECT_NEAR(angle_between(a, b), std::acos(1 / std::sqrt(3.0)) * 180 / std::numbers::pi, 1e-9);
  EXPECT_NEAR(angle_between(b, c), 70.528779366, 1e-9);
  EXPECT_NEAR(angle_between(b, c), std::acos(1.0 / 3) * 180 / std::numbers::pi, 1e-9);
  // acute representative
  EXPECT_NEAR(angle_between(a, vec({"-1", "0", "0"})), 0.0, 1e-12);
}

TEST(Angle, ReportAtZeroZeroOne) {
  const auto& rep = unit_report();
  auto* rec = record_at(rep, vec({"0", "0", "1"}));
  ASSERT_NE(rec, nullptr);
  std::multiset<long> degrees;
  for (const auto& a : rep.angles) {
    if (&rep.intersections[a.record] == rec) degrees.insert(std::lround(a.degrees * 1e6));
  }
  EXPECT_EQ(degrees, (std::multiset<long>{54735610, 54735610, 70528779}));
}

TEST(Angle, ReportMatchesDotProductOracle) {
  const auto& rep = unit_report();
  std::map<std::size_t, const AffineLine*> by_index;
  for (const auto& l : rep.lines) by_index[l.index] = &l;
  ASSERT_FALSE(rep.angles.empty());
  for (const auto& a : rep.angles) {
    EXPECT_NEAR(a.degrees, oracle_angle(by_index[a.line_a]->direction, by_index[a.line_b]->direction), 1e-9);
  }
}

TEST(Distance, AlongLineFifteen) {
  IntersectionRecord p, q;
  p.point = vec({"0", "0", "1"});
  q.point = vec({"2/sqrt(2)", "0", "-1"});
  p.lines = {12, 14};
  q.lines = {4, 14};
  auto d = distance_between(p, q);
  EXPECT_NEAR(d.length, std::sqrt(6.0), 1e-9);
  EXPECT_NEAR(d.length, 2.449489743, 1e-9);
  EXPECT_EQ(d.shared_lines, (std::vector<std::size_t>{14}));
  EXPECT_NEAR(distance_between(p, p).length, 0.0, 1e-15);

  auto big = BuildVolume::cube(12);
  EXPECT_NEAR(distance_between(scale_record(p, big), scale_record(q, big)).length, 2 * std::sqrt(6.0), 1e-9);
}

TEST(Distance, ClebschReportEntry) {
  const auto& rep = unit_report();
  auto* p = record_at(rep, vec({"0", "0", "1"}));
  auto* q = record_at(rep, vec({"sqrt(2)", "0", "-1"}));
  ASSERT_NE(p, nullptr);
  ASSERT_NE(q, nullptr);
  auto d = distance_between(*p, *q);
  EXPECT_TRUE(d.line_connected());
  EXPECT_NEAR(d.length, std::sqrt(6.0), 1e-9);
}

TEST(Distance, SymmetryAndTriangleInequality) {
  const auto& rep = unit_report();
  const auto& pts = rep.intersections;
  for (const auto& d : rep.distances) {
    const auto& a = pts[d.record_a];
    const auto& b = pts[d.record_b];
    EXPECT_DOUBLE_EQ(distance_between(a, b).length, distance_between(b, a).length);
  }
  // triples of points on a common line
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      auto ij = distance_between(pts[i], pts[j]);
      if (!ij.line_connected()) continue;
      for (std::size_t k = j + 1; k < pts.size(); ++k) {
        auto ik = distance_between(pts[i], pts[k]);
        auto jk = distance_between(pts[j], pts[k]);
        if (!ik.line_connected() || !jk.line_connected()) continue;
        EXPECT_LE(ij.length, ik.length + jk.length + 1e-12);
        EXPECT_LE(ik.length, ij.length + jk.length + 1e-12);
        EXPECT_LE(jk.length, ij.length + ik.length + 1e-12);
      }
    }
  }
}

TEST(Scaling, IdentityAtSix) {
  BuildVolume v;
  EXPECT_TRUE(v.is_identity());
  auto p = vec({"0", "0", "1"});
  EXPECT_EQ(scale_point(p, v), p);
  EXPECT_EQ(scale_polynomial(clebsch().model.chart.f, v), clebsch().model.chart.f);
  EXPECT_EQ(unit_report().f, clebsch().model.chart.f);
}

TEST(Scaling, UniformTen) {
  EXPECT_EQ(scale_point(vec({"0", "0", "1"}), BuildVolume::cube(60)), vec({"0", "0", "10"}));
}

TEST(Scaling, Anisotropic) {
  BuildVolume v{{Rational(6), Rational(6), Rational(12)}};
  AffineLine line;
  line.base = vec({"0", "0", "1"});
  line.direction = vec({"1", "0", "0"});
  auto vars = affine_variables();
  line.implicit = {LinearForm(parse_poly("y3-1", vars)), LinearForm(parse_poly("y2", vars))};
  auto scaled = scale_line(line, v);
  EXPECT_EQ(scaled.base, vec({"0", "0", "2"}));
  for (const char* s : {"0", "1", "-7/3", "sqrt(5)"}) {
    Vector p{num(s), num("0"), num("2")};
    for (const auto& f : scaled.implicit) EXPECT_TRUE(evaluate(f.poly(), p).is_zero());
  }
  // the scaled cubic vanishes on scaled points
  auto f = scale_polynomial(clebsch().model.chart.f, v);
  EXPECT_TRUE(evaluate(f, vec({"0", "0", "2"})).is_zero());
  EXPECT_TRUE(evaluate(f, vec({"sqrt(2)", "0", "-2"})).is_zero());
}

TEST(Scaling, InvalidVolume) {
  BuildVolume v{{Rational(6), Rational(0), Rational(6)}};
  try {
    build_report(clebsch(), v);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonPositiveExtent);
  }
}

TEST(Scaling, PointsStayInsideTheVolume) {
  BuildVolume v{{Rational(60), Rational(60), Rational(120)}};
  auto rep = build_report(clebsch(), v);
  EXPECT_EQ(rep.intersections.size() + rep.outside.size(), 112u);
  for (const auto& r : rep.intersections) {
    for (std::size_t k = 0; k < 3; ++k) EXPECT_LE(std::abs(r.approx[k]), v.r[k].get_d() + 1e-12);
  }
  EXPECT_EQ(rep.eckardt_records.size(), 7u);
}

TEST(Report, Deterministic) {
  auto a = build_report(clebsch(), BuildVolume{}).to_json();
  auto b = build_report(compute_surface(clebsch_preset()), BuildVolume{}).to_json();
  EXPECT_EQ(a, b);
  EXPECT_EQ(build_report(clebsch(), BuildVolume{}).to_text(), unit_report().to_text());
  EXPECT_NE(a.find("\"schema\": \"cubic27.measurement-report\""), std::string::npos);
}

TEST(Report, AllPairsIsASuperset) {
  auto all = build_report(clebsch(), BuildVolume{}, true);
  const auto n = all.intersections.size();
  EXPECT_EQ(all.distances.size(), n * (n - 1) / 2);
  EXPECT_LT(unit_report().distances.size(), all.distances.size());
}

// ---------------------------------------------------------------------------
// properties

TEST(ScalingProperty, IncidenceIsPreserved) {
  Gen gen(606);
  const auto base = incidence(unit_report());
  for (int trial = 0; trial < 10; ++trial) {
    BuildVolume v{{Rational(gen.integer(1, 200), gen.integer(1, 7)), Rational(gen.integer(1, 200), gen.integer(1, 7)),
                   Rational(gen.integer(1, 200), gen.integer(1, 7))}};
    for (auto& r : v.r) r.canonicalize();
    EXPECT_EQ(incidence(build_report(clebsch(), v)), base);
  }
}

TEST(ScalingProperty, IsotropicKeepsAngles) {
  Gen gen(808);
  for (int trial = 0; trial < 5; ++trial) {
    Rational r(gen.integer(1, 500), gen.integer(1, 9));
    r.canonicalize();
    auto rep = build_report(clebsch(), BuildVolume::cube(r));
    ASSERT_EQ(rep.angles.size(), unit_report().angles.size());
    for (std::size_t i = 0; i < rep.angles.size(); ++i) {
      EXPECT_NEAR(rep.angles[i].degrees, unit_report().angles[i].degrees, 1e-9);
    }
  }
}

TEST(ScalingProperty, AnisotropicChangesSomeAngle) {
  auto rep = build_report(clebsch(), BuildVolume{{Rational(6), Rational(6), Rational(12)}});
  bool changed = false;
  for (std::size_t i = 0; i < std::min(rep.angles.size(), unit_report().angles.size()); ++i) {
    changed |= std::abs(rep.angles[i].degrees - unit_report().angles[i].degrees) > 1e-6;
  }
  EXPECT_TRUE(changed);
}

TEST(ScalingProperty, ScaledPointsOnScaledCubic) {
  BuildVolume v{{Rational(10), Rational(7, 2), Rational(30)}};
  auto rep = build_report(clebsch(), v);
  for (const auto& r : rep.intersections) EXPECT_TRUE(evaluate(rep.f, r.point).is_zero());
}

TEST(Format, SignificantDigits) {
  EXPECT_EQ(format_sig(70.52877936550931, 12), "70.5287793655");
  EXPECT_EQ(format_sig(0.0, 12), "0");
  EXPECT_DOUBLE_EQ(round_sig(2.449489742783178, 12), 2.44948974278);
}
