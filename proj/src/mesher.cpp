#include "cubic/mesher.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <thread>
#include <unordered_map>

namespace cubic {

namespace {

Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Vec3 cross3(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double norm3(const Vec3& a) { return std::sqrt(dot3(a, a)); }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

}  // namespace

double Box::sdf(const Vec3& p) const {
  double d = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < 3; ++i) {
    const double c = 0.5 * (lo[i] + hi[i]);
    const double r = 0.5 * (hi[i] - lo[i]);
    d = std::max(d, std::abs(p[i] - c) - r);
  }
  return d;
}

ShellSpec ShellSpec::defaults(const Box& box, int resolution) {
  ShellSpec s;
  s.box = box;
  s.resolution = resolution;
  double shortest = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < 3; ++i) shortest = std::min(shortest, box.hi[i] - box.lo[i]);
  s.half_thickness = 0.01 * shortest;
  s.cylinder_radius = 2.0 * s.half_thickness;
  return s;
}

void ShellSpec::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidShellSpec, msg); };
  if (!(half_thickness > 0)) fail("half thickness must be positive");
  if (resolution < 16) fail("resolution must be at least 16");
  for (std::size_t i = 0; i < 3; ++i) {
    if (!(box.hi[i] > box.lo[i])) fail("box is empty along axis " + std::to_string(i + 1));
  }
  switch (highlight) {
    case HighlightMode::Cylinders:
      if (!(cylinder_radius > 0)) fail("cylinder radius must be positive");
      if (!(cylinder_radius > half_thickness)) fail("cylinder radius must exceed the half thickness");
      break;
    case HighlightMode::None: break;
    case HighlightMode::Thinning:
    case HighlightMode::Perforation: fail("highlight mode is reserved and not implemented");
  }
}

Vec3 ShellSpec::cell_size() const {
  Vec3 h;
  for (std::size_t i = 0; i < 3; ++i) h[i] = (box.hi[i] - box.lo[i]) / resolution;
  return h;
}

double ShellSpec::cell_diagonal() const { return norm3(cell_size()); }

// ---------------------------------------------------------------------------

ShapeField::ShapeField(const MultiPoly& f, std::vector<RealLine> lines, const ShellSpec& spec)
    : f_(f), lines_(std::move(lines)), spec_(spec) {
  if (f.num_vars() != 3) throw Error(ErrorCode::DimensionMismatch, "shape field needs a polynomial in 3 variables");
  for (auto& l : lines_) {
    const double n = norm3(l.direction);
    if (n == 0) throw Error(ErrorCode::InvalidShellSpec, "line with zero direction");
    for (auto& d : l.direction) d /= n;
  }
}

double ShapeField::shell(const Vec3& p) const {
  double grad[3];
  const double v = f_.value_and_gradient(p, grad);
  const double g = std::sqrt(grad[0] * grad[0] + grad[1] * grad[1] + grad[2] * grad[2]);
  return std::abs(v) / std::max(g, 1e-8) - spec_.half_thickness;
}

double ShapeField::cylinders(const Vec3& p) const {
  double best = std::numeric_limits<double>::infinity();
  if (spec_.highlight != HighlightMode::Cylinders) return best;
  for (const auto& l : lines_) {
    Vec3 d = sub(p, l.base);
    const double along = dot3(d, l.direction);
    for (std::size_t i = 0; i < 3; ++i) d[i] -= along * l.direction[i];
    best = std::min(best, norm3(d));
  }
  return best - spec_.cylinder_radius;
}

// ---------------------------------------------------------------------------

Vec3 TriangleMesh::normal(std::size_t t) const {
  const auto& tri = triangles[t];
  Vec3 n = cross3(sub(vertices[tri[1]], vertices[tri[0]]), sub(vertices[tri[2]], vertices[tri[0]]));
  const double len = norm3(n);
  if (len == 0) return {0, 0, 0};
  return {n[0] / len, n[1] / len, n[2] / len};
}

double TriangleMesh::area(std::size_t t) const {
  const auto& tri = triangles[t];
  return 0.5 * norm3(cross3(sub(vertices[tri[1]], vertices[tri[0]]), sub(vertices[tri[2]], vertices[tri[0]])));
}

namespace {

// Kuhn split of the unit cube into six tetrahedra along the main diagonal;
// corners are bit masks (x = 1, y = 2, z = 4). Every tet edge joins a corner
// to a superset corner, so edges are keyed by (lower node, offset mask).
constexpr int kTets[6][4] = {
    {0, 1, 3, 7}, {0, 1, 5, 7}, {0, 2, 3, 7}, {0, 2, 6, 7}, {0, 4, 5, 7}, {0, 4, 6, 7},
};

class Contourer {
 public:
  Contourer(const std::function<double(const Vec3&)>& field, const ShellSpec& spec) : field_(field), spec_(spec) {
    n_ = static_cast<std::size_t>(spec.resolution) + 2;
    h_ = spec.cell_size();
  }

  TriangleMesh run() {
    sample();
    TriangleMesh mesh;
    for (std::size_t k = 0; k + 1 < n_; ++k) {
      for (std::size_t j = 0; j + 1 < n_; ++j) {
        for (std::size_t i = 0; i + 1 < n_; ++i) cell(i, j, k, mesh);
      }
    }
    if (mesh.triangles.empty()) {
      throw Error(ErrorCode::EmptyMesh, "the field has no sign change inside the box");
    }
    return mesh;
  }

 private:
  // Node a on axis i sits at lo + (a - 1/2) h, so the box faces fall midway
  // between nodes and the outermost layer lies outside the box.
  Vec3 position(std::size_t i, std::size_t j, std::size_t k) const {
    return {spec_.box.lo[0] + (static_cast<double>(i) - 0.5) * h_[0],
            spec_.box.lo[1] + (static_cast<double>(j) - 0.5) * h_[1],
            spec_.box.lo[2] + (static_cast<double>(k) - 0.5) * h_[2]};
  }

  std::size_t node(std::size_t i, std::size_t j, std::size_t k) const { return (k * n_ + j) * n_ + i; }

  void sample() {
    values_.assign(n_ * n_ * n_, 0.0);
    auto slab = [this](std::size_t k0, std::size_t k1) {
      for (std::size_t k = k0; k < k1; ++k) {
        for (std::size_t j = 0; j < n_; ++j) {
          for (std::size_t i = 0; i < n_; ++i) {
            Vec3 p = position(i, j, k);
            values_[node(i, j, k)] = std::max(field_(p), spec_.box.sdf(p));
          }
        }
      }
    };
    const unsigned wanted = spec_.threads ? spec_.threads : std::thread::hardware_concurrency();
    const std::size_t workers = std::clamp<std::size_t>(wanted, 1, 16);
    if (workers == 1) {
      slab(0, n_);
      return;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (n_ + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t k0 = w * chunk, k1 = std::min(n_, k0 + chunk);
      if (k0 < k1) pool.emplace_back(slab, k0, k1);
    }
    for (auto& t : pool) t.join();
  }

  std::uint32_t edge_vertex(const std::size_t corner_node[8], const Vec3 corner_pos[8],
                            const double corner_val[8], int in, int out, TriangleMesh& mesh) {
    const int lo = (in & out) == in ? in : out;
    const int hi = lo == in ? out : in;
    const std::uint64_t key = static_cast<std::uint64_t>(corner_node[lo]) * 8 + static_cast<std::uint64_t>(lo ^ hi);
    auto it = vertex_of_edge_.find(key);
    if (it != vertex_of_edge_.end()) return it->second;
    const double v0 = corner_val[in], v1 = corner_val[out];
    const double t = std::clamp(v0 / (v0 - v1), 1e-3, 0.999);
    const Vec3& a = corner_pos[in];
    const Vec3& b = corner_pos[out];
    mesh.vertices.push_back({a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]), a[2] + t * (b[2] - a[2])});
    const auto id = static_cast<std::uint32_t>(mesh.vertices.size() - 1);
    vertex_of_edge_.emplace(key, id);
    return id;
  }

  void cell(std::size_t i, std::size_t j, std::size_t k, TriangleMesh& mesh) {
    std::size_t corner_node[8];
    double corner_val[8];
    Vec3 corner_pos[8];
    int inside = 0;
    for (int c = 0; c < 8; ++c) {
      const std::size_t ci = i + (c & 1), cj = j + ((c >> 1) & 1), ck = k + ((c >> 2) & 1);
      corner_node[c] = node(ci, cj, ck);
      corner_val[c] = values_[corner_node[c]];
      inside += corner_val[c] < 0;
    }
    if (inside == 0 || inside == 8) return;
    for (int c = 0; c < 8; ++c) {
      corner_pos[c] = position(i + (c & 1), j + ((c >> 1) & 1), k + ((c >> 2) & 1));
    }
    for (const auto& tet : kTets) {
      int in[4], out[4], nin = 0, nout = 0;
      for (int v : tet) {
        if (corner_val[v] < 0) {
          in[nin++] = v;
        } else {
          out[nout++] = v;
        }
      }
      if (nin == 0 || nout == 0) continue;
      auto V = [&](int a, int b) { return edge_vertex(corner_node, corner_pos, corner_val, a, b, mesh); };
      // Each triangle vertex remembers its crossing edge so the triangle can
      // be turned to face from the inside corner towards the outside one.
      if (nin == 1) {
        emit(mesh, corner_pos, {V(in[0], out[0]), V(in[0], out[1]), V(in[0], out[2])},
             {in[0], in[0], in[0]}, {out[0], out[1], out[2]});
      } else if (nin == 3) {
        emit(mesh, corner_pos, {V(in[0], out[0]), V(in[1], out[0]), V(in[2], out[0])},
             {in[0], in[1], in[2]}, {out[0], out[0], out[0]});
      } else {
        const int a = in[0], b = in[1], c = out[0], d = out[1];
        const std::uint32_t ac = V(a, c), ad = V(a, d), bd = V(b, d), bc = V(b, c);
        emit(mesh, corner_pos, {ac, ad, bd}, {a, a, b}, {c, d, d});
        emit(mesh, corner_pos, {ac, bd, bc}, {a, b, b}, {c, d, c});
      }
    }
  }

  static void emit(TriangleMesh& mesh, const Vec3 corner_pos[8], std::array<std::uint32_t, 3> tri,
                   std::array<int, 3> ins, std::array<int, 3> outs) {
    Vec3 outward{0, 0, 0};
    for (std::size_t v = 0; v < 3; ++v) {
      Vec3 d = sub(corner_pos[outs[v]], corner_pos[ins[v]]);
      for (std::size_t c = 0; c < 3; ++c) outward[c] += d[c];
    }
    const auto& P = mesh.vertices;
    Vec3 n = cross3(sub(P[tri[1]], P[tri[0]]), sub(P[tri[2]], P[tri[0]]));
    if (dot3(n, outward) < 0) std::swap(tri[1], tri[2]);
    mesh.triangles.push_back(tri);
  }

  const std::function<double(const Vec3&)>& field_;
  const ShellSpec& spec_;
  std::size_t n_ = 0;
  Vec3 h_{};
  std::vector<double> values_;
  std::unordered_map<std::uint64_t, std::uint32_t> vertex_of_edge_;
};

}  // namespace

TriangleMesh contour(const std::function<double(const Vec3&)>& field, const ShellSpec& spec) {
  if (spec.resolution < 16) throw Error(ErrorCode::InvalidShellSpec, "resolution must be at least 16");
  Contourer c(field, spec);
  TriangleMesh mesh = c.run();
  mesh.provenance["resolution"] = std::to_string(spec.resolution);
  mesh.provenance["box"] = "[" + fmt(spec.box.lo[0]) + "," + fmt(spec.box.hi[0]) + "]x[" + fmt(spec.box.lo[1]) +
                           "," + fmt(spec.box.hi[1]) + "]x[" + fmt(spec.box.lo[2]) + "," + fmt(spec.box.hi[2]) + "]";
  return mesh;
}

TriangleMesh contour(const ShapeField& field) {
  field.spec().validate();
  std::function<double(const Vec3&)> fn = [&field](const Vec3& p) { return field(p); };
  TriangleMesh mesh = contour(fn, field.spec());
  mesh.provenance["half_thickness"] = fmt(field.spec().half_thickness);
  mesh.provenance["cylinder_radius"] =
      field.spec().highlight == HighlightMode::Cylinders ? fmt(field.spec().cylinder_radius) : "none";
  mesh.provenance["lines"] = std::to_string(field.lines().size());
  return mesh;
}

}  // namespace cubic
