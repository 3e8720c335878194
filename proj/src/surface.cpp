#include "cubic/surface.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace cubic {

namespace {

// phi_r = sum over the five rows of l_{a,b} l_{c,d} l_{e,f}, points 1-based.
constexpr int kPhiTable[6][5][3][2] = {
    {{{2, 5}, {1, 3}, {4, 6}}, {{5, 1}, {4, 2}, {3, 6}}, {{1, 4}, {3, 5}, {2, 6}}, {{4, 3}, {2, 1}, {5, 6}},
     {{3, 2}, {5, 4}, {1, 6}}},
    {{{5, 3}, {1, 2}, {4, 6}}, {{1, 4}, {2, 3}, {5, 6}}, {{2, 5}, {3, 4}, {1, 6}}, {{3, 1}, {4, 5}, {2, 6}},
     {{4, 2}, {5, 1}, {3, 6}}},
    {{{5, 3}, {4, 1}, {2, 6}}, {{3, 4}, {2, 5}, {1, 6}}, {{4, 2}, {1, 3}, {5, 6}}, {{2, 1}, {5, 4}, {3, 6}},
     {{1, 5}, {3, 2}, {4, 6}}},
    {{{4, 5}, {3, 1}, {2, 6}}, {{5, 3}, {2, 4}, {1, 6}}, {{4, 1}, {2, 5}, {3, 6}}, {{3, 2}, {1, 5}, {4, 6}},
     {{2, 1}, {4, 3}, {5, 6}}},
    {{{3, 1}, {2, 4}, {5, 6}}, {{1, 2}, {5, 3}, {4, 6}}, {{2, 5}, {4, 1}, {3, 6}}, {{5, 4}, {3, 2}, {1, 6}},
     {{4, 3}, {1, 5}, {2, 6}}},
    {{{4, 2}, {3, 5}, {1, 6}}, {{2, 3}, {1, 4}, {5, 6}}, {{3, 1}, {5, 2}, {4, 6}}, {{1, 5}, {4, 3}, {2, 6}},
     {{5, 4}, {2, 1}, {3, 6}}},
};

// Upper triangle of the bracket matrix: row, column, bracket arguments.
struct BracketEntry {
  int row, col;
  int args[6];
};

constexpr BracketEntry kBrackets[15] = {
    {0, 1, {1, 5, 2, 4, 3, 6}}, {0, 2, {1, 4, 3, 5, 2, 6}}, {0, 3, {1, 2, 4, 3, 5, 6}},
    {0, 4, {2, 3, 4, 5, 1, 6}}, {0, 5, {1, 3, 5, 2, 4, 6}}, {1, 2, {2, 5, 3, 4, 1, 6}},
    {1, 3, {1, 3, 5, 4, 2, 6}}, {1, 4, {1, 2, 3, 5, 4, 6}}, {1, 5, {1, 4, 2, 3, 5, 6}},
    {2, 3, {1, 5, 3, 2, 4, 6}}, {2, 4, {1, 3, 2, 4, 5, 6}}, {2, 5, {1, 2, 4, 5, 3, 6}},
    {3, 4, {1, 4, 5, 2, 3, 6}}, {3, 5, {2, 4, 3, 5, 1, 6}}, {4, 5, {1, 5, 3, 4, 2, 6}},
};

void check_index(int i) {
  if (i < 1 || i > 6) throw Error(ErrorCode::DimensionMismatch, "point index " + std::to_string(i) + " not in 1..6");
}

std::array<FieldElement, 3> cross(const std::array<FieldElement, 3>& p, const std::array<FieldElement, 3>& q) {
  return {p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]};
}

bool lex_less(const Vector& a, const Vector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), CanonicalLess{});
}

struct VectorLess {
  bool operator()(const Vector& a, const Vector& b) const { return lex_less(a, b); }
};

Vector row_of(const LinearForm& form) { return form.coefficients(); }

bool vanishes(const Vector& form, const Vector& point) { return dot(form, point).is_zero(); }

}  // namespace

// ---------------------------------------------------------------------------

PlanePoint PlanePoint::canonical() const {
  Vector v(coords.begin(), coords.end());
  v = normalize_projective(std::move(v));
  return PlanePoint{{v[0], v[1], v[2]}};
}

std::string PlanePoint::to_string() const {
  return "(" + coords[0].to_string() + " : " + coords[1].to_string() + " : " + coords[2].to_string() + ")";
}

PlanePoint parse_plane_point(std::string_view text) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == ':') {
      parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  parts.push_back(current);
  if (parts.size() != 3) {
    throw Error(ErrorCode::ParseError, "expected three coordinates separated by ':' in \"" + std::string(text) + "\"");
  }
  PlanePoint p{{FieldElement::parse(parts[0]), FieldElement::parse(parts[1]), FieldElement::parse(parts[2])}};
  if (p.coords[0].is_zero() && p.coords[1].is_zero() && p.coords[2].is_zero()) {
    throw Error(ErrorCode::ParseError, "point (0 : 0 : 0) is not a projective point");
  }
  return p;
}

VariableList plane_variables() {
  static const VariableList vars = indexed_variables("t", 3);
  return vars;
}

VariableList p5_variables() {
  static const VariableList vars = indexed_variables("x", 6);
  return vars;
}

VariableList p3_variables() {
  static const VariableList vars = indexed_variables("x", 4);
  return vars;
}

VariableList affine_variables() {
  static const VariableList vars = indexed_variables("y", 3, 1);
  return vars;
}

// ---------------------------------------------------------------------------

std::string GeneralPositionReport::describe() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& t : collinear) {
    if (!first) os << "; ";
    first = false;
    os << "points " << t[0] << ", " << t[1] << ", " << t[2] << " are collinear";
  }
  if (on_conic) {
    if (!first) os << "; ";
    first = false;
    os << "the six points lie on a conic";
  }
  if (first) return "points are in general position";
  return os.str();
}

FieldElement point_det(const PointSet& points, int i, int j, int k) {
  check_index(i);
  check_index(j);
  check_index(k);
  auto c = cross(points[static_cast<std::size_t>(i - 1)].coords, points[static_cast<std::size_t>(j - 1)].coords);
  const auto& r = points[static_cast<std::size_t>(k - 1)].coords;
  return c[0] * r[0] + c[1] * r[1] + c[2] * r[2];
}

GeneralPositionReport check_general_position(const PointSet& points) {
  GeneralPositionReport report;
  for (int i = 1; i <= 6; ++i) {
    for (int j = i + 1; j <= 6; ++j) {
      for (int k = j + 1; k <= 6; ++k) {
        if (point_det(points, i, j, k).is_zero()) report.collinear.push_back({i, j, k});
      }
    }
  }
  Matrix conic;
  for (const auto& p : points) {
    const auto& [x, y, z] = p.coords;
    conic.push_back({x * x, x * y, x * z, y * y, y * z, z * z});
  }
  report.on_conic = determinant(conic).is_zero();
  return report;
}

LinearForm line_through(int i, int j, const PointSet& points) {
  check_index(i);
  check_index(j);
  if (i == j) throw Error(ErrorCode::IdenticalIndices, "line through P" + std::to_string(i) + " and itself");
  auto c = cross(points[static_cast<std::size_t>(i - 1)].coords, points[static_cast<std::size_t>(j - 1)].coords);
  return LinearForm(plane_variables(), std::span<const FieldElement>(c.data(), 3));
}

std::array<MultiPoly, 6> blowup_map(const PointSet& points) {
  std::map<std::pair<int, int>, MultiPoly> l;
  for (int i = 1; i <= 6; ++i) {
    for (int j = 1; j <= 6; ++j) {
      if (i != j) l.emplace(std::make_pair(i, j), line_through(i, j, points).poly());
    }
  }
  std::array<MultiPoly, 6> phi;
  for (std::size_t r = 0; r < 6; ++r) {
    MultiPoly acc(plane_variables());
    for (const auto& row : kPhiTable[r]) {
      acc += l.at({row[0][0], row[0][1]}) * l.at({row[1][0], row[1][1]}) * l.at({row[2][0], row[2][1]});
    }
    phi[r] = std::move(acc);
  }
  return phi;
}

FieldElement triple_bracket(int i, int j, int k, int l, int m, int n, const PointSet& points) {
  return point_det(points, i, j, m) * point_det(points, k, l, n) -
         point_det(points, i, j, n) * point_det(points, k, l, m);
}

Matrix bracket_matrix(const PointSet& points) {
  Matrix A(6, Vector(6));
  for (const auto& e : kBrackets) {
    FieldElement v = triple_bracket(e.args[0], e.args[1], e.args[2], e.args[3], e.args[4], e.args[5], points);
    A[static_cast<std::size_t>(e.col)][static_cast<std::size_t>(e.row)] = -v;
    A[static_cast<std::size_t>(e.row)][static_cast<std::size_t>(e.col)] = std::move(v);
  }
  return A;
}

Coefficients coefficient_vector_raw(const PointSet& points) {
  Matrix A = bracket_matrix(points);
  Coefficients a;
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) a[i] += A[i][j];
  }
  return a;
}

Coefficients normalize_coefficients(const Coefficients& raw) {
  Coefficients a = raw;
  auto first = std::find_if(a.begin(), a.end(), [](const FieldElement& x) { return !x.is_zero(); });
  if (first == a.end()) return a;
  FieldElement inv = first->inverse();
  for (auto& x : a) x = (x * inv).simplified();
  if (std::all_of(a.begin(), a.end(), [](const FieldElement& x) { return x.is_rational(); })) {
    Integer den = 1, num = 0;
    for (const auto& x : a) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.rational_part().get_den_mpz_t());
    for (const auto& x : a) mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), Rational(x.rational_part() * den).get_num_mpz_t());
    Rational factor(den, num);
    factor.canonicalize();
    for (auto& x : a) x = FieldElement(Rational(x.rational_part() * factor));
  }
  return a;
}

Coefficients coefficient_vector(const PointSet& points) {
  return normalize_coefficients(coefficient_vector_raw(points));
}

P5Equations cubic_in_p5(const Coefficients& a) {
  auto vars = p5_variables();
  P5Equations eq{MultiPoly(vars), MultiPoly(vars), MultiPoly(vars)};
  for (std::size_t i = 0; i < 6; ++i) {
    MultiPoly x = MultiPoly::variable(vars, i);
    eq.cubic += pow(x, 3);
    eq.sum += x;
    eq.weighted += x * a[i];
  }
  return eq;
}

// ---------------------------------------------------------------------------

Vector Elimination::project(const Vector& p5) const {
  Vector out;
  for (int k : kept) out.push_back(p5[static_cast<std::size_t>(k)]);
  return out;
}

Elimination eliminate_to_p3(const Coefficients& a) {
  Elimination out;
  // Lexicographically last pair (i, j) with a_i != a_j.
  bool found = false;
  for (int i = 0; i < 6; ++i) {
    for (int j = i + 1; j < 6; ++j) {
      if (!(a[static_cast<std::size_t>(i)] == a[static_cast<std::size_t>(j)])) {
        out.pivot = {i, j};
        found = true;
      }
    }
  }
  if (!found) {
    throw Error(ErrorCode::DegenerateLinearSystem, "all coefficients a_i are equal; the two hyperplanes coincide");
  }
  const auto [pi, pj] = out.pivot;
  std::size_t n = 0;
  for (int k = 0; k < 6; ++k) {
    if (k != pi && k != pj) out.kept[n++] = k;
  }
  // x_i + x_j = -R1, a_i x_i + a_j x_j = -R2 with R1, R2 over the kept coordinates.
  const FieldElement& ai = a[static_cast<std::size_t>(pi)];
  const FieldElement& aj = a[static_cast<std::size_t>(pj)];
  const FieldElement inv = (aj - ai).inverse();
  out.embedding = Matrix(6, Vector(4));
  for (std::size_t c = 0; c < 4; ++c) {
    const std::size_t k = static_cast<std::size_t>(out.kept[c]);
    out.embedding[k][c] = FieldElement(1);
    FieldElement xj = (ai - a[k]) * inv;  // x_j = (a_i R1 - R2) / (a_j - a_i)
    out.embedding[static_cast<std::size_t>(pj)][c] = xj;
    out.embedding[static_cast<std::size_t>(pi)][c] = FieldElement(-1) - xj;
  }
  auto vars = p3_variables();
  std::vector<MultiPoly> repl;
  for (std::size_t r = 0; r < 6; ++r) repl.push_back(MultiPoly::linear(vars, out.embedding[r]));
  out.F_raw = substitute(cubic_in_p5(a).cubic, repl);
  out.F = out.F_raw.normalized();
  return out;
}

// ---------------------------------------------------------------------------

FieldElement plane_determinant(const PointSet& P) {
  return point_det(P, 3, 4, 1) * point_det(P, 5, 6, 1) * point_det(P, 5, 3, 2) * point_det(P, 4, 6, 2) -
         point_det(P, 5, 3, 1) * point_det(P, 4, 6, 1) * point_det(P, 3, 4, 2) * point_det(P, 5, 6, 2);
}

namespace {

// Restriction of a P^5 form to the P^3 chart, first nonzero coefficient 1.
Vector reduce_form(const Vector& p5_form, const Elimination& elim) {
  Vector out(4);
  for (std::size_t c = 0; c < 4; ++c) {
    for (std::size_t r = 0; r < 6; ++r) out[c] += p5_form[r] * elim.embedding[r][c];
  }
  for (auto& x : out) x = x.simplified();
  return normalize_projective(std::move(out));
}

Vector pair_form(int i, int j) {
  Vector v(6);
  v[static_cast<std::size_t>(i)] = FieldElement(1);
  v[static_cast<std::size_t>(j)] = FieldElement(1);
  return v;
}

}  // namespace

std::vector<TritangentPlane> tritangent_planes(const PointSet& points, const Coefficients& a,
                                               const Elimination& elim) {
  auto vars = p3_variables();
  std::vector<TritangentPlane> planes;
  std::set<Vector, VectorLess> seen;
  for (int i = 0; i < 6; ++i) {
    for (int j = i + 1; j < 6; ++j) {
      Vector form = reduce_form(pair_form(i, j), elim);
      seen.insert(form);
      planes.push_back(TritangentPlane{LinearForm(vars, form), std::make_pair(i, j), {}, false});
    }
  }
  if (seen.size() != 15) throw Error(ErrorCode::PlaneCountMismatch, "planes x_i + x_j are not distinct");

  // m_{ij} = sigma_2(a) + 2 (a_i^2 + a_j^2 + a_i a_j); the plane determinant enters scaled by 36.
  FieldElement sigma2;
  for (std::size_t s = 0; s < 6; ++s) {
    for (std::size_t t = s + 1; t < 6; ++t) sigma2 += a[s] * a[t];
  }
  const FieldElement D = plane_determinant(points) * FieldElement(36);
  auto m = [&](int i, int j) {
    const auto& ai = a[static_cast<std::size_t>(i)];
    const auto& aj = a[static_cast<std::size_t>(j)];
    return sigma2 + FieldElement(2) * (ai * ai + aj * aj + ai * aj);
  };

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < 6; ++i) {
    for (int j = i + 1; j < 6; ++j) pairs.emplace_back(i, j);
  }
  auto disjoint = [](std::pair<int, int> p, std::pair<int, int> q) {
    return p.first != q.first && p.first != q.second && p.second != q.first && p.second != q.second;
  };
  std::set<Vector, VectorLess> extra;
  for (const auto& A : pairs) {
    for (const auto& B : pairs) {
      if (!disjoint(A, B)) continue;
      // The third pair of the cycle is determined; only (A, B) enters the form.
      Vector form(6);
      FieldElement ca = m(A.first, A.second) - D;
      FieldElement cb = -(m(B.first, B.second) + D);
      form[static_cast<std::size_t>(A.first)] += ca;
      form[static_cast<std::size_t>(A.second)] += ca;
      form[static_cast<std::size_t>(B.first)] += cb;
      form[static_cast<std::size_t>(B.second)] += cb;
      Vector reduced = reduce_form(form, elim);
      if (std::all_of(reduced.begin(), reduced.end(), [](const FieldElement& x) { return x.is_zero(); })) continue;
      if (!seen.count(reduced)) extra.insert(std::move(reduced));
    }
  }
  if (extra.size() != 30) {
    throw Error(ErrorCode::PlaneCountMismatch,
                "expected 30 further tritangent planes, found " + std::to_string(extra.size()));
  }
  for (const auto& form : extra) planes.push_back(TritangentPlane{LinearForm(vars, form), std::nullopt, {}, false});
  return planes;
}

// ---------------------------------------------------------------------------

ChartTransform affine_transform() {
  const FieldElement r2 = FieldElement::sqrt_of(2);
  const FieldElement one(1), zero(0);
  ChartTransform t;
  t.forward = {
      {one, -r2, zero, -one},
      {one, r2, zero, -one},
      {one, zero, r2, one},
      {-one, zero, r2, -one},
  };
  t.inverse = inverse(t.forward);
  return t;
}

std::array<MultiPoly, 3> SurfaceLine::parametrization() const {
  auto s = make_variables({"s"});
  std::array<MultiPoly, 3> out;
  for (std::size_t a = 0; a < 3; ++a) {
    out[a] = MultiPoly::constant(s, base[a]) + MultiPoly::variable(s, 0) * direction[a];
  }
  return out;
}

namespace {

// F vanishes on the span of u and v iff the binary cubic F(s u + t v) has
// four distinct roots.
bool line_on_cubic(const MultiPoly& F, const Vector& u, const Vector& v) {
  Vector sum(4), diff(4);
  for (std::size_t i = 0; i < 4; ++i) {
    sum[i] = u[i] + v[i];
    diff[i] = u[i] - v[i];
  }
  return evaluate(F, u).is_zero() && evaluate(F, v).is_zero() && evaluate(F, sum).is_zero() &&
         evaluate(F, diff).is_zero();
}

}  // namespace

std::vector<SurfaceLine> lines_on_cubic(const Elimination& elim, std::vector<TritangentPlane>& planes) {
  std::vector<Vector> forms;
  for (const auto& p : planes) forms.push_back(row_of(p.form));

  std::map<Vector, std::array<Vector, 2>, VectorLess> found;  // flattened RREF -> spanning points
  for (std::size_t p = 0; p < forms.size(); ++p) {
    for (std::size_t q = p + 1; q < forms.size(); ++q) {
      RrefResult r = rref({forms[p], forms[q]});
      if (r.pivots.size() != 2) continue;
      Vector key = r.reduced[0];
      key.insert(key.end(), r.reduced[1].begin(), r.reduced[1].end());
      if (found.count(key)) continue;
      auto basis = nullspace(r.reduced, 4);
      if (!line_on_cubic(elim.F, basis[0], basis[1])) continue;
      found.emplace(std::move(key), std::array<Vector, 2>{basis[0], basis[1]});
    }
  }
  if (found.size() != 27) {
    throw Error(ErrorCode::LineCountMismatch, "found " + std::to_string(found.size()) + " lines instead of 27");
  }

  auto vars = p3_variables();
  std::vector<SurfaceLine> lines;
  for (const auto& [key, span] : found) {
    SurfaceLine line;
    line.implicit_p3 = {LinearForm(vars, std::span<const FieldElement>(key.data(), 4)),
                        LinearForm(vars, std::span<const FieldElement>(key.data() + 4, 4))};
    line.span_p3 = span;
    for (std::size_t p = 0; p < forms.size(); ++p) {
      if (vanishes(forms[p], span[0]) && vanishes(forms[p], span[1])) line.parent_planes.push_back(p);
    }
    if (line.parent_planes.size() != 5) {
      throw Error(ErrorCode::LineCountMismatch,
                  "a line lies on " + std::to_string(line.parent_planes.size()) + " tritangent planes instead of 5");
    }
    lines.push_back(std::move(line));
  }
  std::stable_sort(lines.begin(), lines.end(),
                   [](const SurfaceLine& a, const SurfaceLine& b) { return a.parent_planes < b.parent_planes; });

  for (auto& p : planes) p.lines.clear();
  for (std::size_t l = 0; l < lines.size(); ++l) {
    for (auto p : lines[l].parent_planes) planes[p].lines.push_back(l);
  }
  for (const auto& p : planes) {
    if (p.lines.size() != 3) {
      throw Error(ErrorCode::PlaneCountMismatch,
                  "plane " + p.form.to_string() + " contains " + std::to_string(p.lines.size()) + " lines");
    }
  }
  return lines;
}

std::vector<EckardtPoint> eckardt_points(const std::vector<SurfaceLine>& lines, std::vector<TritangentPlane>& planes,
                                         const ChartTransform& chart) {
  std::vector<EckardtPoint> out;
  for (std::size_t p = 0; p < planes.size(); ++p) {
    auto& plane = planes[p];
    const auto& l0 = lines[plane.lines[0]];
    const auto& l1 = lines[plane.lines[1]];
    const auto& l2 = lines[plane.lines[2]];
    Matrix system = {row_of(l0.implicit_p3[0]), row_of(l0.implicit_p3[1]), row_of(l1.implicit_p3[0]),
                     row_of(l1.implicit_p3[1])};
    auto meet = nullspace(system, 4);
    plane.eckardt = false;
    if (meet.size() != 1) continue;
    const Vector& x = meet[0];
    if (!vanishes(row_of(l2.implicit_p3[0]), x) || !vanishes(row_of(l2.implicit_p3[1]), x)) continue;
    plane.eckardt = true;
    EckardtPoint e;
    e.p3 = normalize_projective(x);
    e.plane = p;
    e.lines = {plane.lines[0], plane.lines[1], plane.lines[2]};
    Vector y = multiply(chart.inverse, e.p3);
    if (!y[0].is_zero()) {
      e.visible = true;
      FieldElement inv = y[0].inverse();
      e.affine = {(y[1] * inv).simplified(), (y[2] * inv).simplified(), (y[3] * inv).simplified()};
    } else {
      e.at_infinity = normalize_projective(y);
    }
    out.push_back(std::move(e));
  }
  return out;
}

AffineChart to_affine_chart(const Elimination& elim, std::vector<SurfaceLine>& lines, const ChartTransform& chart) {
  AffineChart out;
  auto yvars = affine_variables();
  std::vector<MultiPoly> repl;
  for (std::size_t r = 0; r < 4; ++r) {
    Vector lin(chart.forward[r].begin() + 1, chart.forward[r].end());
    repl.push_back(MultiPoly::linear(yvars, lin, chart.forward[r][0]));
  }
  out.f_raw = substitute(elim.F_raw, repl);
  FieldElement c = out.f_raw.constant_term();
  out.f = c.is_zero() ? out.f_raw.normalized() : out.f_raw * c.inverse();

  for (std::size_t l = 0; l < lines.size(); ++l) {
    auto& line = lines[l];
    Vector U = multiply(chart.inverse, line.span_p3[0]);
    Vector V = multiply(chart.inverse, line.span_p3[1]);
    if (U[0].is_zero() && V[0].is_zero()) {
      line.visible = false;
      out.invisible_lines.push_back(l);
      continue;
    }
    line.visible = true;
    // Point at infinity of the line and one affine point.
    Vector w(4), base(3), dir(3);
    for (std::size_t i = 0; i < 4; ++i) w[i] = V[0] * U[i] - U[0] * V[i];
    const Vector& P = U[0].is_zero() ? V : U;
    FieldElement inv0 = P[0].inverse();
    for (std::size_t i = 0; i < 3; ++i) {
      base[i] = P[i + 1] * inv0;
      dir[i] = w[i + 1];
    }
    std::size_t k = 0;
    for (std::size_t i = 1; i < 3; ++i) {
      if (compare_abs(dir[i], dir[k]) >= 0) k = i;
    }
    FieldElement dinv = dir[k].inverse();
    for (auto& d : dir) d = (d * dinv).simplified();
    FieldElement shift = base[k];
    for (std::size_t i = 0; i < 3; ++i) base[i] = (base[i] - shift * dir[i]).simplified();
    line.param_axis = k;
    line.base = base;
    line.direction = dir;
    std::size_t n = 0;
    for (std::size_t a = 0; a < 3; ++a) {
      if (a == k) continue;
      Vector coeffs(3);
      coeffs[a] = FieldElement(1);
      coeffs[k] = -dir[a];
      line.implicit_affine[n++] = LinearForm(yvars, coeffs, -base[a]);
    }
  }
  return out;
}

PointSet clebsch_preset() {
  const FieldElement g = (FieldElement(1) + FieldElement::sqrt_of(5)) / FieldElement(2);
  const FieldElement zero(0), one(1);
  return PointSet{{
      PlanePoint{{zero, one, -g}},
      PlanePoint{{g, zero, one}},
      PlanePoint{{one, g, zero}},
      PlanePoint{{one, -g, zero}},
      PlanePoint{{zero, one, g}},
      PlanePoint{{-g, zero, one}},
  }};
}

Surface compute_surface(const PointSet& points) {
  GeneralPositionReport gp = check_general_position(points);
  if (!gp.ok()) throw Error(ErrorCode::NotInGeneralPosition, gp.describe());
  Surface s;
  SurfaceModel& m = s.model;
  m.points = points;
  m.phi = blowup_map(points);
  m.a_raw = coefficient_vector_raw(points);
  m.a = normalize_coefficients(m.a_raw);
  m.p5 = cubic_in_p5(m.a);
  m.elimination = eliminate_to_p3(m.a);
  m.transform = affine_transform();
  s.planes = tritangent_planes(points, m.a_raw, m.elimination);
  s.lines = lines_on_cubic(m.elimination, s.planes);
  m.chart = to_affine_chart(m.elimination, s.lines, m.transform);
  s.eckardt = eckardt_points(s.lines, s.planes, m.transform);
  return s;
}

bool projectively_equal(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) return false;
  auto nonzero = [](const Vector& v) {
    return std::any_of(v.begin(), v.end(), [](const FieldElement& x) { return !x.is_zero(); });
  };
  if (!nonzero(a) || !nonzero(b)) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if (!(a[i] * b[j] - a[j] * b[i]).is_zero()) return false;
    }
  }
  return true;
}

Vector normalize_projective(Vector v) {
  auto it = std::find_if(v.begin(), v.end(), [](const FieldElement& x) { return !x.is_zero(); });
  if (it == v.end()) return v;
  FieldElement inv = it->inverse();
  for (auto& x : v) x = (x * inv).simplified();
  return v;
}

}  // namespace cubic
