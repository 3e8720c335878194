#include "cubic/numfield.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <utility>

#include "cubic/detail/expression_parser.hpp"

namespace cubic {

namespace {

// Primes occurring to an odd power in n, ascending.
std::vector<std::int64_t> odd_primes(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; d <= n / d; ++d) {
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e % 2 == 1) out.push_back(d);
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::vector<std::int64_t> symmetric_difference(const std::vector<std::int64_t>& a,
                                               const std::vector<std::int64_t>& b) {
  std::vector<std::int64_t> out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::int64_t product(const std::vector<std::int64_t>& primes) {
  std::int64_t p = 1;
  for (auto q : primes) p *= q;
  return p;
}

}  // namespace

struct FieldDescriptor::Impl {
  std::vector<std::int64_t> radicands;
  std::vector<std::vector<std::int64_t>> prime_sets;  // per radicand
  std::vector<std::vector<std::int64_t>> mask_primes;  // square class of each basis vector
  std::vector<Integer> basis_squares;
  std::vector<Integer> weights;  // row-major dim x dim

  explicit Impl(std::vector<std::int64_t> rads) : radicands(std::move(rads)) {
    for (auto r : radicands) prime_sets.push_back(odd_primes(r));
    const std::size_t dim = std::size_t{1} << radicands.size();
    mask_primes.resize(dim);
    basis_squares.resize(dim);
    for (std::size_t mask = 0; mask < dim; ++mask) {
      Integer sq = 1;
      std::vector<std::int64_t> primes;
      for (std::size_t i = 0; i < radicands.size(); ++i) {
        if (mask & (std::size_t{1} << i)) {
          sq *= static_cast<long>(radicands[i]);
          primes = symmetric_difference(primes, prime_sets[i]);
        }
      }
      basis_squares[mask] = sq;
      mask_primes[mask] = std::move(primes);
    }
    weights.resize(dim * dim);
    for (std::size_t s = 0; s < dim; ++s) {
      for (std::size_t t = 0; t < dim; ++t) {
        Integer w = 1;
        for (std::size_t i = 0; i < radicands.size(); ++i) {
          if ((s & t) & (std::size_t{1} << i)) w *= static_cast<long>(radicands[i]);
        }
        weights[s * dim + t] = w;
      }
    }
  }

  // Basis index T and rational factor c with sqrt(m) = c * b_T, where
  // sqrt(m) has square class `primes` and square m.
  bool locate(const std::vector<std::int64_t>& primes, const Integer& m, std::size_t& mask,
              Rational& factor) const {
    for (std::size_t t = 0; t < mask_primes.size(); ++t) {
      if (mask_primes[t] == primes) {
        Integer prod = m * basis_squares[t];
        Integer root;
        mpz_sqrt(root.get_mpz_t(), prod.get_mpz_t());
        mask = t;
        factor = Rational(root, basis_squares[t]);
        factor.canonicalize();
        return true;
      }
    }
    return false;
  }
};

namespace {

using ImplPtr = std::shared_ptr<const FieldDescriptor::Impl>;

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

ImplPtr intern(const std::vector<std::int64_t>& radicands) {
  static std::map<std::vector<std::int64_t>, ImplPtr> registry;
  std::lock_guard lock(registry_mutex());
  auto it = registry.find(radicands);
  if (it != registry.end()) return it->second;
  auto impl = std::make_shared<const FieldDescriptor::Impl>(radicands);
  registry.emplace(radicands, impl);
  return impl;
}

struct Embedding {
  std::vector<std::size_t> target_mask;
  std::vector<Rational> factor;
};

// Maps each basis vector of `from` into `to`; cached per pair of towers.
const Embedding* embedding(const ImplPtr& from, const ImplPtr& to) {
  static std::map<std::pair<const void*, const void*>, std::unique_ptr<Embedding>> cache;
  static std::mutex m;
  std::lock_guard lock(m);
  auto key = std::make_pair(static_cast<const void*>(from.get()), static_cast<const void*>(to.get()));
  auto it = cache.find(key);
  if (it != cache.end()) return it->second.get();
  auto emb = std::make_unique<Embedding>();
  const std::size_t dim = from->basis_squares.size();
  emb->target_mask.resize(dim);
  emb->factor.resize(dim);
  for (std::size_t s = 0; s < dim; ++s) {
    if (!to->locate(from->mask_primes[s], from->basis_squares[s], emb->target_mask[s], emb->factor[s])) {
      emb->target_mask[s] = std::numeric_limits<std::size_t>::max();
    }
  }
  auto* raw = emb.get();
  cache.emplace(key, std::move(emb));
  return raw;
}

}  // namespace

FieldDescriptor::FieldDescriptor() : impl_(intern({})) {}

FieldDescriptor FieldDescriptor::make(std::span<const std::int64_t> radicands) {
  std::vector<std::int64_t> parts;
  for (auto r : radicands) {
    if (r <= 0) {
      throw Error(ErrorCode::NonPositiveRadicand, "radicand " + std::to_string(r) + " is not positive");
    }
    auto primes = odd_primes(r);
    if (!primes.empty()) parts.push_back(product(primes));
  }
  std::sort(parts.begin(), parts.end());
  parts.erase(std::unique(parts.begin(), parts.end()), parts.end());

  // Keep a value only if it is not a product (mod squares) of kept ones.
  std::vector<std::int64_t> kept;
  std::vector<std::vector<std::int64_t>> span{{}};
  for (auto p : parts) {
    auto primes = odd_primes(p);
    if (std::find(span.begin(), span.end(), primes) != span.end()) continue;
    kept.push_back(p);
    const std::size_t n = span.size();
    for (std::size_t i = 0; i < n; ++i) span.push_back(symmetric_difference(span[i], primes));
    if (kept.size() > kMaxTowerHeight) {
      throw Error(ErrorCode::FieldTooLarge,
                  "more than " + std::to_string(kMaxTowerHeight) + " independent square roots");
    }
  }
  return FieldDescriptor(intern(kept));
}

FieldDescriptor FieldDescriptor::join(const FieldDescriptor& a, const FieldDescriptor& b) {
  if (a.impl_ == b.impl_ || b.height() == 0) return a;
  if (a.height() == 0) return b;
  if (a.contains(b)) return a;
  if (b.contains(a)) return b;
  std::vector<std::int64_t> all = a.radicands();
  all.insert(all.end(), b.radicands().begin(), b.radicands().end());
  return make(all);
}

const std::vector<std::int64_t>& FieldDescriptor::radicands() const noexcept { return impl_->radicands; }

const Integer& FieldDescriptor::basis_square(std::size_t mask) const { return impl_->basis_squares.at(mask); }

const Integer& FieldDescriptor::product_weight(std::size_t s, std::size_t t) const {
  return impl_->weights.at(s * dimension() + t);
}

bool FieldDescriptor::contains(const FieldDescriptor& sub) const {
  if (impl_ == sub.impl_ || sub.height() == 0) return true;
  const Embedding* emb = embedding(sub.impl_, impl_);
  return std::none_of(emb->target_mask.begin(), emb->target_mask.end(),
                      [](std::size_t m) { return m == std::numeric_limits<std::size_t>::max(); });
}

bool operator==(const FieldDescriptor& a, const FieldDescriptor& b) noexcept { return a.impl_ == b.impl_; }

FieldDescriptor make_field(std::span<const std::int64_t> radicands) { return FieldDescriptor::make(radicands); }

// ---------------------------------------------------------------------------

Rational parse_rational(std::string_view text) {
  auto bad = [&] { throw Error(ErrorCode::ParseError, "invalid rational literal \"" + std::string(text) + "\""); };
  std::string s(text);
  if (s.empty()) bad();
  bool neg = false;
  std::size_t i = 0;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  std::string body = s.substr(i);
  Rational value;
  if (auto slash = body.find('/'); slash != std::string::npos) {
    std::string num = body.substr(0, slash), den = body.substr(slash + 1);
    if (num.empty() || den.empty() || num.find_first_not_of("0123456789") != std::string::npos ||
        den.find_first_not_of("0123456789") != std::string::npos)
      bad();
    Integer d(den, 10);
    if (d == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator in \"" + s + "\"");
    value = Rational(Integer(num, 10), d);
  } else {
    auto dot = body.find('.');
    std::string whole = body.substr(0, dot);
    std::string frac = dot == std::string::npos ? "" : body.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || whole.find_first_not_of("0123456789") != std::string::npos ||
        frac.find_first_not_of("0123456789") != std::string::npos)
      bad();
    Integer scale = 1;
    for (std::size_t k = 0; k < frac.size(); ++k) scale *= 10;
    Integer digits(whole + frac, 10);
    value = Rational(digits, scale);
  }
  value.canonicalize();
  return neg ? Rational(-value) : value;
}

std::string rational_to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

// ---------------------------------------------------------------------------

FieldElement::FieldElement() : coords_{Rational(0)} {}

FieldElement::FieldElement(long long value) : coords_{Rational(static_cast<long>(value))} {}

FieldElement::FieldElement(const Rational& value) : coords_{value} { coords_[0].canonicalize(); }

FieldElement::FieldElement(FieldDescriptor field, std::vector<Rational> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
  if (coords_.size() != field_.dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(field_.dimension()) +
                                                  " coordinates, got " + std::to_string(coords_.size()));
  }
  for (auto& c : coords_) c.canonicalize();
}

FieldElement FieldElement::rational(long long num, long long den) {
  if (den == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator");
  Rational q(static_cast<long>(num), static_cast<long>(den));
  q.canonicalize();
  return FieldElement(q);
}

FieldElement FieldElement::sqrt_of(const Rational& value) {
  if (value < 0) throw Error(ErrorCode::NonPositiveRadicand, "square root of negative number");
  if (value == 0) return FieldElement();
  // sqrt(p/q) = sqrt(p*q)/q
  Integer n = value.get_num() * value.get_den();
  if (!n.fits_slong_p()) throw Error(ErrorCode::FieldTooLarge, "radicand too large");
  std::int64_t rest = n.get_si();
  std::int64_t square_root = 1;
  for (std::int64_t d = 2; d <= rest / d; ++d) {
    while (rest % (d * d) == 0) {
      rest /= d * d;
      square_root *= d;
    }
  }
  Rational outer(static_cast<long>(square_root));
  outer /= value.get_den();
  if (rest == 1) return FieldElement(outer);
  FieldDescriptor field = make_field({rest});
  return FieldElement(field, {Rational(0), outer});
}

namespace {

struct ConstantTraits {
  FieldElement constant(const FieldElement& c) const { return c; }
  FieldElement sqrt(const FieldElement& v) const {
    if (!v.is_rational()) throw Error(ErrorCode::ParseError, "sqrt argument must be rational");
    return FieldElement::sqrt_of(v.rational_part());
  }
  FieldElement identifier(std::string_view name) const {
    throw Error(ErrorCode::ParseError, "unknown identifier \"" + std::string(name) + "\"");
  }
  FieldElement divide(const FieldElement& a, const FieldElement& b) const { return a / b; }
  FieldElement power(const FieldElement& base, unsigned e) const {
    FieldElement acc(1);
    for (unsigned i = 0; i < e; ++i) acc *= base;
    return acc;
  }
};

}  // namespace

FieldElement FieldElement::parse(std::string_view text) {
  ConstantTraits traits;
  return detail::ExpressionParser<FieldElement, ConstantTraits>(text, traits).parse();
}

bool FieldElement::is_zero() const noexcept {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return c == 0; });
}

bool FieldElement::is_one() const noexcept { return is_rational() && coords_[0] == 1; }

bool FieldElement::is_rational() const noexcept {
  return std::all_of(coords_.begin() + 1, coords_.end(), [](const Rational& c) { return c == 0; });
}

FieldElement FieldElement::promote(const FieldDescriptor& target) const {
  if (target == field_) return *this;
  std::vector<Rational> out(target.dimension());
  if (is_rational()) {
    out[0] = coords_[0];
    return FieldElement(target, std::move(out));
  }
  const Embedding* emb = embedding(field_.impl_, target.impl_);
  for (std::size_t s = 0; s < coords_.size(); ++s) {
    if (coords_[s] == 0) continue;
    if (emb->target_mask[s] == std::numeric_limits<std::size_t>::max()) {
      throw Error(ErrorCode::DimensionMismatch, "element " + to_string() + " does not lie in the target field");
    }
    out[emb->target_mask[s]] += coords_[s] * emb->factor[s];
  }
  return FieldElement(target, std::move(out));
}

FieldElement FieldElement::simplified() const {
  std::vector<std::int64_t> needed;
  for (std::size_t s = 1; s < coords_.size(); ++s) {
    if (coords_[s] != 0) needed.push_back(product(field_.impl_->mask_primes[s]));
  }
  return promote(make_field(needed));
}

FieldElement FieldElement::conjugate(std::size_t index) const {
  FieldElement out = *this;
  const std::size_t bit = std::size_t{1} << index;
  for (std::size_t s = 0; s < out.coords_.size(); ++s) {
    if (s & bit) out.coords_[s] = -out.coords_[s];
  }
  return out;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  if (is_rational()) return FieldElement(Rational(1) / coords_[0]).promote(field_);
  // Multiplying by the conjugate over each radicand descends one level of
  // the tower; after all of them the accumulated norm is rational.
  FieldElement norm = *this;
  FieldElement cofactor = FieldElement(1).promote(field_);
  for (std::size_t i = 0; i < field_.height(); ++i) {
    FieldElement c = norm.conjugate(i);
    cofactor *= c;
    norm *= c;
  }
  Rational inv = Rational(1) / norm.coords_[0];
  for (auto& c : cofactor.coords_) c *= inv;
  return cofactor;
}

FieldElement FieldElement::operator-() const {
  FieldElement out = *this;
  for (auto& c : out.coords_) c = -c;
  return out;
}

FieldElement& FieldElement::operator+=(const FieldElement& other) {
  if (!(field_ == other.field_)) {
    if (other.is_rational()) {
      coords_[0] += other.coords_[0];
      return *this;
    }
    FieldDescriptor target = FieldDescriptor::join(field_, other.field_);
    *this = promote(target);
    FieldElement rhs = other.promote(target);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += rhs.coords_[i];
    return *this;
  }
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& other) { return *this += -other; }

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  if (b.is_rational()) {
    FieldElement out = a;
    for (auto& c : out.coords_) c *= b.coords_[0];
    return out;
  }
  if (a.is_rational()) {
    FieldElement out = b;
    for (auto& c : out.coords_) c *= a.coords_[0];
    return out;
  }
  if (!(a.field_ == b.field_)) {
    FieldDescriptor target = FieldDescriptor::join(a.field_, b.field_);
    return a.promote(target) * b.promote(target);
  }
  const std::size_t dim = a.coords_.size();
  std::vector<Rational> out(dim);
  for (std::size_t s = 0; s < dim; ++s) {
    if (a.coords_[s] == 0) continue;
    for (std::size_t t = 0; t < dim; ++t) {
      if (b.coords_[t] == 0) continue;
      out[s ^ t] += a.coords_[s] * b.coords_[t] * a.field_.product_weight(s, t);
    }
  }
  return FieldElement(a.field_, std::move(out));
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero");
  return a * b.inverse();
}

FieldElement& FieldElement::operator*=(const FieldElement& other) { return *this = *this * other; }

FieldElement& FieldElement::operator/=(const FieldElement& other) { return *this = *this / other; }

bool operator==(const FieldElement& a, const FieldElement& b) {
  if (a.field_ == b.field_) return a.coords_ == b.coords_;
  return (a - b).is_zero();
}

FieldElement arith(const FieldElement& x, const FieldElement& y, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return x + y;
    case ArithOp::Sub: return x - y;
    case ArithOp::Mul: return x * y;
    case ArithOp::Div: return x / y;
  }
  return x;
}

// ---------------------------------------------------------------------------
// Interval evaluation.

namespace {

struct Interval {
  Rational lo, hi;
};

// Encloses x using sqrt(m) in [r, r+1] / 2^bits with r = isqrt(m * 4^bits).
Interval enclose(const FieldElement& x, unsigned long bits) {
  Interval acc{x.coords()[0], x.coords()[0]};
  const Integer denom = Integer(1) << bits;
  for (std::size_t s = 1; s < x.coords().size(); ++s) {
    const Rational& c = x.coords()[s];
    if (c == 0) continue;
    Integer scaled = x.field().basis_square(s) << (2 * bits);
    Integer r;
    mpz_sqrt(r.get_mpz_t(), scaled.get_mpz_t());
    Rational lo = c * Rational(r, denom);
    Rational hi = c * Rational(Integer(r + 1), denom);
    lo.canonicalize();
    hi.canonicalize();
    if (c < 0) std::swap(lo, hi);
    acc.lo += lo;
    acc.hi += hi;
  }
  return acc;
}

}  // namespace

int FieldElement::sign() const {
  if (is_zero()) return 0;
  if (is_rational()) return sgn(coords_[0]);
  for (unsigned long bits = 64;; bits *= 2) {
    Interval iv = enclose(*this, bits);
    if (iv.lo > 0) return 1;
    if (iv.hi < 0) return -1;
  }
}

RealApprox FieldElement::to_real(int digits) const {
  if (digits < 1) digits = 1;
  Integer ten_pow = 1;
  for (int i = 0; i < digits; ++i) ten_pow *= 10;
  const Rational half_ulp(Integer(1), Integer(2 * ten_pow));
  Rational mid;
  if (is_rational()) {
    mid = coords_[0];
  } else {
    for (unsigned long bits = 64;; bits *= 2) {
      Interval iv = enclose(*this, bits);
      if (iv.hi - iv.lo <= half_ulp) {
        mid = (iv.lo + iv.hi) / 2;
        break;
      }
    }
  }
  // Round half up on mid * 10^digits.
  Rational scaled = mid * ten_pow + Rational(1, 2);
  Integer rounded;
  mpz_fdiv_q(rounded.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  RealApprox out;
  Integer mag = ::abs(rounded);
  std::string digits_str = mag.get_str();
  if (digits_str.size() <= static_cast<std::size_t>(digits)) {
    digits_str.insert(0, static_cast<std::size_t>(digits) + 1 - digits_str.size(), '0');
  }
  std::string whole = digits_str.substr(0, digits_str.size() - digits);
  std::string frac = digits_str.substr(digits_str.size() - digits);
  out.decimal = (rounded < 0 ? "-" : "") + whole + "." + frac;
  out.value = Rational(rounded, ten_pow).get_d();
  out.error_bound = std::pow(10.0, -digits);
  return out;
}

double FieldElement::to_double() const {
  if (is_rational()) return coords_[0].get_d();
  for (unsigned long bits = 64;; bits *= 2) {
    Interval iv = enclose(*this, bits);
    if (sgn(iv.lo) == sgn(iv.hi) && sgn(iv.lo) != 0) {
      Rational width = iv.hi - iv.lo;
      Rational mag = ::abs(iv.lo);
      if (width * (Integer(1) << 60) <= mag) return Rational((iv.lo + iv.hi) / 2).get_d();
    }
  }
}

std::string FieldElement::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t s = 0; s < coords_.size(); ++s) {
    const Rational& c = coords_[s];
    if (c == 0) continue;
    Rational mag = ::abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    const bool integral = mag.get_den() == 1;
    std::string coef = integral ? rational_to_string(mag) : "(" + rational_to_string(mag) + ")";
    if (s == 0) {
      os << coef;
    } else if (mag == 1) {
      os << "sqrt(" << field_.basis_square(s).get_str() << ")";
    } else {
      os << coef << "*sqrt(" << field_.basis_square(s).get_str() << ")";
    }
  }
  if (first) return "0";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const FieldElement& x) { return os << x.to_string(); }

int sign_of(const FieldElement& x) { return x.sign(); }

RealApprox to_real(const FieldElement& x, int digits) { return x.to_real(digits); }

std::strong_ordering canonical_compare(const FieldElement& a, const FieldElement& b) {
  FieldDescriptor target = FieldDescriptor::join(a.field(), b.field());
  FieldElement pa = a.promote(target), pb = b.promote(target);
  for (std::size_t i = 0; i < pa.coords().size(); ++i) {
    int c = cmp(pa.coords()[i], pb.coords()[i]);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

}  // namespace cubic
