#include "cubic/linalg.hpp"

#include <utility>

namespace cubic {

RrefResult rref(Matrix m) {
  RrefResult out;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    FieldElement inv = m[r][c].inverse();
    for (std::size_t k = c; k < cols; ++k) m[r][k] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      FieldElement f = m[i][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

std::vector<Vector> nullspace(const Matrix& m, std::size_t columns) {
  RrefResult r = rref(m);
  std::vector<bool> is_pivot(columns, false);
  for (auto c : r.pivots) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < columns; ++free) {
    if (is_pivot[free]) continue;
    Vector v(columns);
    v[free] = FieldElement(1);
    for (std::size_t row = 0; row < r.pivots.size(); ++row) v[r.pivots[row]] = -r.reduced[row][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

FieldElement determinant(Matrix m) {
  const std::size_t n = m.size();
  FieldElement det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c].is_zero()) ++p;
    if (p == n) return FieldElement();
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    FieldElement inv = m[c][c].inverse();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c].is_zero()) continue;
      FieldElement f = m[i][c] * inv;
      for (std::size_t k = c; k < n; ++k) m[i][k] -= f * m[c][k];
    }
  }
  return det;
}

Vector multiply(const Matrix& m, const Vector& v) {
  Vector out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = dot(m[i], v);
  return out;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size(), k = b.size(), p = k ? b[0].size() : 0;
  Matrix out(n, Vector(p));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      FieldElement acc;
      for (std::size_t l = 0; l < k; ++l) acc += a[i][l] * b[l][j];
      out[i][j] = acc;
    }
  }
  return out;
}

Matrix identity(std::size_t n) {
  Matrix out(n, Vector(n));
  for (std::size_t i = 0; i < n; ++i) out[i][i] = FieldElement(1);
  return out;
}

Matrix inverse(const Matrix& m) {
  const std::size_t n = m.size();
  Matrix aug(n);
  for (std::size_t i = 0; i < n; ++i) {
    aug[i] = m[i];
    for (std::size_t j = 0; j < n; ++j) aug[i].push_back(FieldElement(i == j ? 1 : 0));
  }
  RrefResult r = rref(std::move(aug));
  if (r.pivots.size() < n || r.pivots[n - 1] != n - 1) {
    throw Error(ErrorCode::DegenerateLinearSystem, "matrix is singular");
  }
  Matrix out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = Vector(r.reduced[i].begin() + static_cast<std::ptrdiff_t>(n), r.reduced[i].end());
  return out;
}

FieldElement dot(const Vector& a, const Vector& b) {
  FieldElement acc;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace cubic
