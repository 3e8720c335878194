#include "cubic/polyring.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>

#include "cubic/detail/expression_parser.hpp"

namespace cubic {

bool DegRevLexGreater::operator()(const Monomial& a, const Monomial& b) const {
  const int da = std::accumulate(a.begin(), a.end(), 0);
  const int db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da > db;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

VariableList make_variables(std::vector<std::string> names) {
  return std::make_shared<const std::vector<std::string>>(std::move(names));
}

VariableList indexed_variables(std::string_view prefix, std::size_t count, std::size_t first) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < count; ++i) names.push_back(std::string(prefix) + std::to_string(first + i));
  return make_variables(std::move(names));
}

namespace {

bool same_vars(const VariableList& a, const VariableList& b) { return a == b || *a == *b; }

}  // namespace

MultiPoly::MultiPoly() : vars_(make_variables({})) {}

MultiPoly::MultiPoly(VariableList vars) : vars_(std::move(vars)) {}

MultiPoly MultiPoly::constant(VariableList vars, const FieldElement& c) {
  MultiPoly p(std::move(vars));
  p.add_term(Monomial(p.num_vars(), 0), c);
  return p;
}

MultiPoly MultiPoly::variable(VariableList vars, std::size_t index) {
  MultiPoly p(std::move(vars));
  if (index >= p.num_vars()) throw Error(ErrorCode::VariableMismatch, "variable index out of range");
  Monomial m(p.num_vars(), 0);
  m[index] = 1;
  p.add_term(m, FieldElement(1));
  return p;
}

MultiPoly MultiPoly::linear(VariableList vars, std::span<const FieldElement> coeffs, const FieldElement& c) {
  MultiPoly p(std::move(vars));
  if (coeffs.size() != p.num_vars()) throw Error(ErrorCode::DimensionMismatch, "coefficient count");
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    Monomial m(p.num_vars(), 0);
    m[i] = 1;
    p.add_term(m, coeffs[i]);
  }
  p.add_term(Monomial(p.num_vars(), 0), c);
  return p;
}

void MultiPoly::add_term(const Monomial& m, const FieldElement& c) {
  if (m.size() != num_vars()) throw Error(ErrorCode::DimensionMismatch, "monomial length");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int MultiPoly::total_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, std::accumulate(m.begin(), m.end(), 0));
  return d;
}

std::optional<int> MultiPoly::homogeneous_degree() const {
  if (terms_.empty()) return std::nullopt;
  std::optional<int> d;
  for (const auto& [m, c] : terms_) {
    int dm = std::accumulate(m.begin(), m.end(), 0);
    if (d && *d != dm) return std::nullopt;
    d = dm;
  }
  return d;
}

FieldElement MultiPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? FieldElement() : it->second;
}

FieldElement MultiPoly::constant_term() const { return coefficient(Monomial(num_vars(), 0)); }

const Monomial& MultiPoly::leading_monomial() const {
  if (terms_.empty()) throw Error(ErrorCode::DivisionByZero, "zero polynomial has no leading term");
  return terms_.begin()->first;
}

const FieldElement& MultiPoly::leading_coefficient() const {
  if (terms_.empty()) throw Error(ErrorCode::DivisionByZero, "zero polynomial has no leading term");
  return terms_.begin()->second;
}

MultiPoly MultiPoly::normalized() const {
  if (terms_.empty()) return *this;
  FieldElement inv = leading_coefficient().inverse();
  MultiPoly out(vars_);
  for (const auto& [m, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), m, c * inv);
  return out;
}

MultiPoly MultiPoly::promoted(const FieldDescriptor& field) const {
  MultiPoly out(vars_);
  for (const auto& [m, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), m, c.promote(field));
  return out;
}

namespace {

std::string monomial_string(const Monomial& m, const std::vector<std::string>& vars) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += vars[i];
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out;
}

// Sign and unsigned text of a coefficient; sign is 0 when the text carries
// its own signs in parentheses.
std::pair<int, std::string> coefficient_string(const FieldElement& c) {
  std::size_t nonzero = 0, where = 0;
  for (std::size_t s = 0; s < c.coords().size(); ++s) {
    if (c.coords()[s] != 0) {
      ++nonzero;
      where = s;
    }
  }
  if (nonzero == 1) {
    const Rational& q = c.coords()[where];
    std::vector<Rational> mag(c.coords().size());
    mag[where] = abs(q);
    return {sgn(q), FieldElement(c.field(), std::move(mag)).to_string()};
  }
  return {0, "(" + c.to_string() + ")"};
}

}  // namespace

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    auto [sign, text] = coefficient_string(c);
    if (sign < 0) {
      out += '-';
    } else if (!first) {
      out += '+';
    }
    first = false;
    std::string mono = monomial_string(m, *vars_);
    if (mono.empty()) {
      out += text;
    } else if (text == "1") {
      out += mono;
    } else {
      out += text + "*" + mono;
    }
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.to_string(); }

void MultiPoly::check_same_vars(const MultiPoly& other) const {
  if (!same_vars(vars_, other.vars_)) {
    throw Error(ErrorCode::VariableMismatch, "polynomials use different variable lists");
  }
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  check_same_vars(other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) {
  check_same_vars(other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_same_vars(b);
  MultiPoly out(a.vars_);
  Monomial m(a.num_vars());
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& other) { return *this = *this * other; }

MultiPoly& MultiPoly::operator*=(const FieldElement& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coef] : terms_) coef *= c;
  return *this;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (!same_vars(a.vars_, b.vars_) || a.terms_.size() != b.terms_.size()) return false;
  auto ia = a.terms_.begin();
  for (auto ib = b.terms_.begin(); ib != b.terms_.end(); ++ia, ++ib) {
    if (ia->first != ib->first || !(ia->second == ib->second)) return false;
  }
  return true;
}

MultiPoly poly_arith(const MultiPoly& p, const MultiPoly& q, PolyOp op) {
  switch (op) {
    case PolyOp::Add: return p + q;
    case PolyOp::Sub: return p - q;
    case PolyOp::Mul: return p * q;
  }
  return p;
}

MultiPoly scale(const MultiPoly& p, const FieldElement& c) { return p * c; }

MultiPoly pow(const MultiPoly& p, unsigned e) {
  MultiPoly acc = MultiPoly::constant(p.variable_list(), FieldElement(1));
  MultiPoly base = p;
  while (e > 0) {
    if (e & 1u) acc *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return acc;
}

MultiPoly substitute(const MultiPoly& p, std::span<const MultiPoly> replacements) {
  if (replacements.size() != p.num_vars()) {
    throw Error(ErrorCode::VariableMismatch, "substitution needs one replacement per variable");
  }
  if (replacements.empty()) return p;
  const VariableList& target = replacements[0].variable_list();
  for (const auto& r : replacements) {
    if (!same_vars(r.variable_list(), target)) {
      throw Error(ErrorCode::VariableMismatch, "replacements use different variable lists");
    }
  }
  // powers[i][e] = replacements[i]^e, filled on demand
  std::vector<std::vector<MultiPoly>> powers(p.num_vars());
  auto power_of = [&](std::size_t i, int e) -> const MultiPoly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(MultiPoly::constant(target, FieldElement(1)));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * replacements[i]);
    return cache[static_cast<std::size_t>(e)];
  };
  MultiPoly out(target);
  for (const auto& [m, c] : p.terms()) {
    MultiPoly term = MultiPoly::constant(target, c);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] > 0) term *= power_of(i, m[i]);
    }
    out += term;
  }
  return out;
}

MultiPoly substitute(const MultiPoly& p, const std::map<std::string, MultiPoly>& assignment) {
  std::vector<MultiPoly> replacements;
  for (const auto& name : p.variables()) {
    auto it = assignment.find(name);
    if (it == assignment.end()) throw Error(ErrorCode::VariableMismatch, "no value for variable " + name);
    replacements.push_back(it->second);
  }
  return substitute(p, replacements);
}

FieldElement evaluate(const MultiPoly& p, std::span<const FieldElement> point) {
  if (point.size() != p.num_vars()) {
    throw Error(ErrorCode::DimensionMismatch, "point has " + std::to_string(point.size()) + " coordinates, expected " +
                                                  std::to_string(p.num_vars()));
  }
  const int deg = std::max(p.total_degree(), 0);
  std::vector<std::vector<FieldElement>> powers(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) {
    powers[i].push_back(FieldElement(1));
    for (int e = 1; e <= deg; ++e) powers[i].push_back(powers[i].back() * point[i]);
  }
  FieldElement acc;
  for (const auto& [m, c] : p.terms()) {
    FieldElement term = c;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] > 0) term *= powers[i][static_cast<std::size_t>(m[i])];
    }
    acc += term;
  }
  return acc;
}

MultiPoly derivative(const MultiPoly& p, std::size_t var) {
  if (var >= p.num_vars()) throw Error(ErrorCode::VariableMismatch, "variable index out of range");
  MultiPoly out(p.variable_list());
  for (const auto& [m, c] : p.terms()) {
    if (m[var] == 0) continue;
    Monomial d = m;
    d[var] -= 1;
    out.add_term(d, c * FieldElement(static_cast<long long>(m[var])));
  }
  return out;
}

std::vector<MultiPoly> gradient(const MultiPoly& p) {
  std::vector<MultiPoly> out;
  for (std::size_t i = 0; i < p.num_vars(); ++i) out.push_back(derivative(p, i));
  return out;
}

bool proportional(const MultiPoly& p, const MultiPoly& q) { return p.normalized() == q.normalized(); }

namespace {

struct PolyTraits {
  VariableList vars;

  MultiPoly constant(const FieldElement& c) const { return MultiPoly::constant(vars, c); }
  MultiPoly sqrt(const MultiPoly& v) const {
    if (v.total_degree() > 0) throw Error(ErrorCode::ParseError, "sqrt of a non-constant polynomial");
    FieldElement c = v.constant_term();
    if (!c.is_rational()) throw Error(ErrorCode::ParseError, "sqrt argument must be rational");
    return constant(FieldElement::sqrt_of(c.rational_part()));
  }
  MultiPoly identifier(std::string_view name) const {
    for (std::size_t i = 0; i < vars->size(); ++i) {
      if ((*vars)[i] == name) return MultiPoly::variable(vars, i);
    }
    throw Error(ErrorCode::ParseError, "unknown variable \"" + std::string(name) + "\"");
  }
  MultiPoly divide(const MultiPoly& a, const MultiPoly& b) const {
    if (b.total_degree() > 0) throw Error(ErrorCode::ParseError, "division by a non-constant polynomial");
    if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero");
    return a * b.constant_term().inverse();
  }
  MultiPoly power(const MultiPoly& base, unsigned e) const { return cubic::pow(base, e); }
};

}  // namespace

MultiPoly parse_poly(std::string_view text, VariableList vars) {
  PolyTraits traits{std::move(vars)};
  return detail::ExpressionParser<MultiPoly, PolyTraits>(text, traits).parse();
}

// ---------------------------------------------------------------------------

LinearForm::LinearForm(MultiPoly p) : poly_(std::move(p)) {
  if (poly_.total_degree() > 1) throw Error(ErrorCode::NotLinear, poly_.to_string() + " is not linear");
}

LinearForm::LinearForm(VariableList vars, std::span<const FieldElement> coeffs, const FieldElement& c)
    : poly_(MultiPoly::linear(std::move(vars), coeffs, c)) {}

std::vector<FieldElement> LinearForm::coefficients() const {
  std::vector<FieldElement> out;
  for (std::size_t i = 0; i < poly_.num_vars(); ++i) {
    Monomial m(poly_.num_vars(), 0);
    m[i] = 1;
    out.push_back(poly_.coefficient(m));
  }
  return out;
}

// ---------------------------------------------------------------------------

RealPoly::RealPoly(const MultiPoly& p) : nvars_(p.num_vars()), max_degree_(std::max(p.total_degree(), 0)) {
  for (const auto& [m, c] : p.terms()) terms_.push_back(Term{c.to_double(), m});
}

double RealPoly::operator()(std::span<const double> x) const {
  double acc = 0.0;
  for (const auto& t : terms_) {
    double v = t.coeff;
    for (std::size_t i = 0; i < nvars_; ++i) {
      for (int e = 0; e < t.exps[i]; ++e) v *= x[i];
    }
    acc += v;
  }
  return acc;
}

double RealPoly::value_and_gradient(std::span<const double> x, std::span<double> grad) const {
  std::fill(grad.begin(), grad.end(), 0.0);
  // pw[i * (d+1) + e] = x_i^e
  const std::size_t stride = static_cast<std::size_t>(max_degree_) + 1;
  std::vector<double> pw(nvars_ * stride);
  for (std::size_t i = 0; i < nvars_; ++i) {
    pw[i * stride] = 1.0;
    for (std::size_t e = 1; e < stride; ++e) pw[i * stride + e] = pw[i * stride + e - 1] * x[i];
  }
  double acc = 0.0;
  for (const auto& t : terms_) {
    double v = t.coeff;
    for (std::size_t i = 0; i < nvars_; ++i) v *= pw[i * stride + static_cast<std::size_t>(t.exps[i])];
    acc += v;
    for (std::size_t k = 0; k < nvars_; ++k) {
      const int ek = t.exps[k];
      if (ek == 0) continue;
      double g = t.coeff * ek;
      for (std::size_t i = 0; i < nvars_; ++i) {
        const int e = i == k ? ek - 1 : t.exps[i];
        g *= pw[i * stride + static_cast<std::size_t>(e)];
      }
      grad[k] += g;
    }
  }
  return acc;
}

double evaluate_real(const RealPoly& p, std::span<const double> point) { return p(point); }

}  // namespace cubic
