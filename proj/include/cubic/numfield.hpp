#pragma once

// Exact arithmetic in Q(sqrt(n_1), ..., sqrt(n_k)).
//
// An element is stored by its 2^k rational coordinates with respect to the
// basis of radical products sqrt(prod_{i in S} n_i), S a subset of the
// radicands, indexed by the bitmask of S. For the tower {2, 5} the basis is
// 1, sqrt(2), sqrt(5), sqrt(10). Radicands are square-free and independent
// modulo squares, which makes the coordinates unique.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "cubic/error.hpp"

namespace cubic {

using Rational = mpq_class;
using Integer = mpz_class;

inline constexpr std::size_t kMaxTowerHeight = 4;

class FieldDescriptor {
 public:
  /// The rationals.
  FieldDescriptor();

  /// Reduces every value to its square-free part, drops perfect squares and
  /// values already generated by smaller radicands, and sorts.
  static FieldDescriptor make(std::span<const std::int64_t> radicands);

  /// Smallest tower containing both.
  static FieldDescriptor join(const FieldDescriptor& a, const FieldDescriptor& b);

  const std::vector<std::int64_t>& radicands() const noexcept;
  std::size_t height() const noexcept { return radicands().size(); }
  std::size_t dimension() const noexcept { return std::size_t{1} << height(); }

  /// Product of the radicands selected by `mask`; the basis vector is its root.
  const Integer& basis_square(std::size_t mask) const;
  /// b_S * b_T = weight(S, T) * b_{S xor T}.
  const Integer& product_weight(std::size_t s, std::size_t t) const;

  bool contains(const FieldDescriptor& sub) const;

  friend bool operator==(const FieldDescriptor& a, const FieldDescriptor& b) noexcept;

  struct Impl;

 private:
  explicit FieldDescriptor(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
  friend class FieldElement;
};

FieldDescriptor make_field(std::span<const std::int64_t> radicands);
inline FieldDescriptor make_field(std::initializer_list<std::int64_t> radicands) {
  return make_field(std::span<const std::int64_t>(radicands.begin(), radicands.size()));
}

struct RealApprox {
  std::string decimal;  // rounded to the requested number of fractional digits
  double value = 0.0;
  double error_bound = 0.0;  // |decimal - exact| <= error_bound
};

class FieldElement {
 public:
  FieldElement();
  FieldElement(long long value);  // NOLINT(google-explicit-constructor)
  FieldElement(int value) : FieldElement(static_cast<long long>(value)) {}  // NOLINT
  FieldElement(const Rational& value);  // NOLINT(google-explicit-constructor)
  FieldElement(FieldDescriptor field, std::vector<Rational> coords);

  /// sqrt(value) for a non-negative rational; lands in Q(sqrt(squarefree part)).
  static FieldElement sqrt_of(const Rational& value);
  static FieldElement rational(long long num, long long den = 1);
  static FieldElement parse(std::string_view text);

  const FieldDescriptor& field() const noexcept { return field_; }
  std::span<const Rational> coords() const noexcept { return coords_; }

  bool is_zero() const noexcept;
  bool is_one() const noexcept;
  bool is_rational() const noexcept;
  /// Precondition: is_rational().
  const Rational& rational_part() const noexcept { return coords_[0]; }

  FieldElement promote(const FieldDescriptor& target) const;
  /// Same value over the smallest sub-tower of field() that holds it.
  FieldElement simplified() const;

  /// Flips the sign of sqrt(radicands()[index]).
  FieldElement conjugate(std::size_t index) const;
  FieldElement inverse() const;

  int sign() const;
  FieldElement abs() const { return sign() < 0 ? -*this : *this; }
  RealApprox to_real(int digits) const;
  double to_double() const;
  std::string to_string() const;

  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& other);
  FieldElement& operator-=(const FieldElement& other);
  FieldElement& operator*=(const FieldElement& other);
  FieldElement& operator/=(const FieldElement& other);

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);

  /// Value equality; elements from different towers compare after promotion.
  friend bool operator==(const FieldElement& a, const FieldElement& b);

 private:
  FieldDescriptor field_;
  std::vector<Rational> coords_;
};

enum class ArithOp { Add, Sub, Mul, Div };
FieldElement arith(const FieldElement& x, const FieldElement& y, ArithOp op);

/// Sign under the embedding with every sqrt positive.
int sign_of(const FieldElement& x);
RealApprox to_real(const FieldElement& x, int digits);

/// Total order on representations (not the numeric order); used for
/// deterministic sorting and map keys.
std::strong_ordering canonical_compare(const FieldElement& a, const FieldElement& b);

struct CanonicalLess {
  bool operator()(const FieldElement& a, const FieldElement& b) const {
    return canonical_compare(a, b) < 0;
  }
};

/// Numeric comparison helpers.
inline bool less_than(const FieldElement& a, const FieldElement& b) { return (a - b).sign() < 0; }
inline int compare_abs(const FieldElement& a, const FieldElement& b) { return (a.abs() - b.abs()).sign(); }

std::ostream& operator<<(std::ostream& os, const FieldElement& x);

/// Exact decimal or fraction literal such as "12", "-3/4" or "0.125".
Rational parse_rational(std::string_view text);
std::string rational_to_string(const Rational& value);

}  // namespace cubic
