#pragma once

// Shared generators and geometric helpers for the test binaries.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "cubic/mesher.hpp"
#include "cubic/surface.hpp"

namespace cubic::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  Rational rational(int max_num = 9, int max_den = 6) {
    Rational q(integer(-max_num, max_num), integer(1, max_den));
    q.canonicalize();
    return q;
  }

  /// Random element over the given tower with some coordinates left zero.
  FieldElement element(const FieldDescriptor& field) {
    std::vector<Rational> coords(field.dimension());
    for (auto& c : coords) c = integer(0, 2) == 0 ? Rational(0) : rational();
    return FieldElement(field, std::move(coords));
  }

  FieldElement nonzero(const FieldDescriptor& field) {
    for (;;) {
      FieldElement x = element(field);
      if (!x.is_zero()) return x;
    }
  }

  /// Sparse polynomial with up to `terms` terms of degree <= max_degree.
  MultiPoly poly(const VariableList& vars, const FieldDescriptor& field, int terms, int max_degree) {
    MultiPoly p(vars);
    for (int t = 0; t < terms; ++t) {
      Monomial m(vars->size());
      int budget = integer(0, max_degree);
      for (auto& e : m) {
        e = integer(0, budget);
        budget -= e;
      }
      p.add_term(m, element(field));
    }
    return p;
  }

  /// Six rational plane points with small integer coordinates in general position.
  PointSet general_position_points() {
    for (;;) {
      PointSet pts;
      for (auto& p : pts) {
        for (auto& c : p.coords) c = FieldElement(integer(-7, 7));
        if (p.coords[0].is_zero() && p.coords[1].is_zero() && p.coords[2].is_zero()) p.coords[2] = 1;
      }
      if (check_general_position(pts).ok()) return pts;
    }
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Inside test by counting crossings of the ray from p along +x. Edge
/// functions are evaluated with canonically ordered endpoints so that a ray
/// through a shared edge is counted once.
class RayCaster {
 public:
  explicit RayCaster(const TriangleMesh& mesh) : mesh_(mesh) {}

  bool inside(const Vec3& p) const {
    int crossings = 0;
    for (std::size_t t = 0; t < mesh_.triangles.size(); ++t) {
      const auto& tri = mesh_.triangles[t];
      const Vec3& a = mesh_.vertices[tri[0]];
      const Vec3& b = mesh_.vertices[tri[1]];
      const Vec3& c = mesh_.vertices[tri[2]];
      if (std::max({a[0], b[0], c[0]}) < p[0]) continue;
      const double e0 = edge(tri[1], tri[2], p);
      const double e1 = edge(tri[2], tri[0], p);
      const double e2 = edge(tri[0], tri[1], p);
      const bool pos = e0 > 0 && e1 > 0 && e2 > 0;
      const bool neg = e0 < 0 && e1 < 0 && e2 < 0;
      if (!pos && !neg) continue;
      // x of the hit point by barycentric interpolation in the yz projection
      const double w = e0 + e1 + e2;
      const double x = (e0 * a[0] + e1 * b[0] + e2 * c[0]) / w;
      if (x > p[0]) ++crossings;
    }
    return crossings % 2 == 1;
  }

 private:
  // Signed area of (u, v, p) in the yz plane, computed the same way for (u, v) and (v, u).
  double edge(std::uint32_t u, std::uint32_t v, const Vec3& p) const {
    const bool flip = u > v;
    const Vec3& s = mesh_.vertices[flip ? v : u];
    const Vec3& t = mesh_.vertices[flip ? u : v];
    const double d = (t[1] - s[1]) * (p[2] - s[2]) - (t[2] - s[2]) * (p[1] - s[1]);
    return flip ? -d : d;
  }

  const TriangleMesh& mesh_;
};

/// Distance from p to triangle t.
double point_triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);

inline double norm(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

}  // namespace cubic::testing
