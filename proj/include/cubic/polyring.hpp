#pragma once

// Sparse multivariate polynomials over FieldElement.
//
// Terms are kept in degree-reverse-lexicographic order (largest first), the
// default ordering of Singular's "dp" rings, so printed output lines up with
// Singular sessions term for term.

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cubic/numfield.hpp"

namespace cubic {

using Monomial = std::vector<int>;

/// Strict weak order placing the larger monomial first.
struct DegRevLexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

using VariableList = std::shared_ptr<const std::vector<std::string>>;

VariableList make_variables(std::vector<std::string> names);
/// prefix0 ... prefix{count-1}
VariableList indexed_variables(std::string_view prefix, std::size_t count, std::size_t first = 0);

class MultiPoly {
 public:
  using TermMap = std::map<Monomial, FieldElement, DegRevLexGreater>;

  MultiPoly();
  explicit MultiPoly(VariableList vars);

  static MultiPoly constant(VariableList vars, const FieldElement& c);
  static MultiPoly variable(VariableList vars, std::size_t index);
  /// sum_i coeffs[i] * var_i + c
  static MultiPoly linear(VariableList vars, std::span<const FieldElement> coeffs,
                          const FieldElement& c = FieldElement());

  const VariableList& variable_list() const noexcept { return vars_; }
  const std::vector<std::string>& variables() const noexcept { return *vars_; }
  std::size_t num_vars() const noexcept { return vars_->size(); }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  /// Adds c * monomial, dropping the term if the sum cancels.
  void add_term(const Monomial& m, const FieldElement& c);

  bool is_zero() const noexcept { return terms_.empty(); }
  /// -1 for the zero polynomial.
  int total_degree() const;
  std::optional<int> homogeneous_degree() const;
  FieldElement coefficient(const Monomial& m) const;
  FieldElement constant_term() const;
  const Monomial& leading_monomial() const;
  const FieldElement& leading_coefficient() const;

  /// Divided by the leading coefficient; zero stays zero.
  MultiPoly normalized() const;
  /// Same variables, coefficients over the given tower.
  MultiPoly promoted(const FieldDescriptor& field) const;

  /// Singular style, e.g. "-3*x0^2*x1-6*x0*x1*x2+1".
  std::string to_string() const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator-=(const MultiPoly& other);
  MultiPoly& operator*=(const MultiPoly& other);
  MultiPoly& operator*=(const FieldElement& c);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const FieldElement& c) { return a *= c; }
  friend MultiPoly operator*(const FieldElement& c, MultiPoly a) { return a *= c; }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

 private:
  void check_same_vars(const MultiPoly& other) const;

  VariableList vars_;
  TermMap terms_;
};

std::ostream& operator<<(std::ostream& os, const MultiPoly& p);

enum class PolyOp { Add, Sub, Mul };
MultiPoly poly_arith(const MultiPoly& p, const MultiPoly& q, PolyOp op);
MultiPoly scale(const MultiPoly& p, const FieldElement& c);
MultiPoly pow(const MultiPoly& p, unsigned e);

/// Replaces variable i by replacements[i]; all replacements share one variable list.
MultiPoly substitute(const MultiPoly& p, std::span<const MultiPoly> replacements);
/// Named form; every variable of p must be assigned.
MultiPoly substitute(const MultiPoly& p, const std::map<std::string, MultiPoly>& assignment);

FieldElement evaluate(const MultiPoly& p, std::span<const FieldElement> point);
std::vector<MultiPoly> gradient(const MultiPoly& p);
MultiPoly derivative(const MultiPoly& p, std::size_t var);
inline std::optional<int> homogeneous_degree(const MultiPoly& p) { return p.homogeneous_degree(); }

/// Equal up to a nonzero scalar.
bool proportional(const MultiPoly& p, const MultiPoly& q);

/// Parses the grammar of FieldElement::parse extended by the given variables.
MultiPoly parse_poly(std::string_view text, VariableList vars);

/// Degree <= 1 polynomial.
class LinearForm {
 public:
  LinearForm() = default;
  /// Throws NotLinear if p has degree above 1.
  explicit LinearForm(MultiPoly p);
  LinearForm(VariableList vars, std::span<const FieldElement> coeffs, const FieldElement& c = FieldElement());

  const MultiPoly& poly() const noexcept { return poly_; }
  std::vector<FieldElement> coefficients() const;
  FieldElement constant() const { return poly_.constant_term(); }
  std::string to_string() const { return poly_.to_string(); }

 private:
  MultiPoly poly_;
};

/// Floating copy of a polynomial for fast repeated evaluation. Coefficients
/// are rounded once at construction; results are approximate.
class RealPoly {
 public:
  RealPoly() = default;
  explicit RealPoly(const MultiPoly& p);

  std::size_t num_vars() const noexcept { return nvars_; }
  double operator()(std::span<const double> x) const;
  /// Value and gradient in one pass; grad must hold num_vars() entries.
  double value_and_gradient(std::span<const double> x, std::span<double> grad) const;

 private:
  struct Term {
    double coeff;
    std::vector<int> exps;
  };
  std::size_t nvars_ = 0;
  int max_degree_ = 0;
  std::vector<Term> terms_;
};

double evaluate_real(const RealPoly& p, std::span<const double> point);

}  // namespace cubic
