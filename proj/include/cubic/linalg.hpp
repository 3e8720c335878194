#pragma once

// Small dense exact linear algebra over FieldElement.

#include <vector>

#include "cubic/numfield.hpp"

namespace cubic {

using Vector = std::vector<FieldElement>;
using Matrix = std::vector<Vector>;  // row-major

struct RrefResult {
  Matrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Reduced row echelon form; pivot rows are scaled to a leading 1.
RrefResult rref(Matrix m);
std::size_t rank(const Matrix& m);
/// Basis of {v : m v = 0}, one vector per free column with that entry set to 1.
std::vector<Vector> nullspace(const Matrix& m, std::size_t columns);
FieldElement determinant(Matrix m);
Vector multiply(const Matrix& m, const Vector& v);
Matrix multiply(const Matrix& a, const Matrix& b);
Matrix identity(std::size_t n);
/// Throws DegenerateLinearSystem when singular.
Matrix inverse(const Matrix& m);
FieldElement dot(const Vector& a, const Vector& b);

}  // namespace cubic
