#pragma once

// Exact coefficient arithmetic: the rationals, prime fields F_p, and simple
// quotient fields K[t]/(f) over either of them, together with the univariate
// polynomial utilities the classification needs (irreducibility tests,
// enumeration of monic irreducibles, Laurent evaluation).

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "leavitt/errors.hpp"

namespace leavitt {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

inline std::string to_string(const Rational& q) { return q.str(); }

/// Either Q (p == 0) or F_p. Elements of F_p are integral Rationals in [0, p).
struct BaseField {
  std::uint64_t p = 0;

  bool is_rational() const { return p == 0; }
  bool operator==(const BaseField&) const = default;

  Rational canon(const Rational& x) const {
    if (p == 0) return x;
    const BigInt P = p;
    BigInt num = boost::multiprecision::numerator(x) % P;
    if (num < 0) num += P;
    BigInt den = boost::multiprecision::denominator(x) % P;
    if (den == 0) throw PreconditionError("denominator divisible by the characteristic");
    if (den != 1) num = (num * inverse_mod(den)) % P;
    return Rational(num);
  }

  Rational add(const Rational& a, const Rational& b) const { return canon(a + b); }
  Rational sub(const Rational& a, const Rational& b) const { return canon(a - b); }
  Rational mul(const Rational& a, const Rational& b) const { return canon(a * b); }
  Rational neg(const Rational& a) const { return canon(-a); }
  Rational inv(const Rational& a) const {
    if (a == 0) throw PreconditionError("division by zero");
    if (p == 0) return Rational(1) / a;
    return Rational(inverse_mod(boost::multiprecision::numerator(a)));
  }

  std::string name() const { return p == 0 ? "Q" : "F" + std::to_string(p); }

 private:
  BigInt inverse_mod(BigInt a) const {
    BigInt m = p, x0 = 0, x1 = 1;
    a %= m;
    if (a < 0) a += m;
    BigInt r0 = m, r1 = a;
    while (r1 != 0) {
      BigInt q = r0 / r1;
      std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
      std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
    }
    if (r0 != 1) throw PreconditionError("element not invertible");
    x0 %= m;
    if (x0 < 0) x0 += m;
    return x0;
  }
};

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Polynomials over a BaseField. Coefficient i belongs to t^i; trailing zeros
// are always trimmed, so the zero polynomial has an empty coefficient list
// and degree -1.

struct Poly {
  std::vector<Rational> coeffs;

  Poly() = default;
  explicit Poly(std::vector<Rational> c) : coeffs(std::move(c)) { trim(); }

  static Poly constant(const Rational& c) { return Poly({c}); }
  /// c * t^k
  static Poly monomial(std::size_t k, const Rational& c = 1) {
    std::vector<Rational> v(k + 1, Rational(0));
    v[k] = c;
    return Poly(std::move(v));
  }

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const { return coeffs.empty(); }
  const Rational& lead() const { return coeffs.back(); }
  Rational at(std::size_t i) const { return i < coeffs.size() ? coeffs[i] : Rational(0); }

  void trim() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  }

  bool operator==(const Poly&) const = default;
};

namespace poly {

inline Poly canon(const BaseField& k, Poly a) {
  for (auto& c : a.coeffs) c = k.canon(c);
  a.trim();
  return a;
}

inline Poly add(const BaseField& k, const Poly& a, const Poly& b) {
  std::vector<Rational> r(std::max(a.coeffs.size(), b.coeffs.size()), Rational(0));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = k.add(a.at(i), b.at(i));
  return Poly(std::move(r));
}

inline Poly neg(const BaseField& k, const Poly& a) {
  Poly r = a;
  for (auto& c : r.coeffs) c = k.neg(c);
  return r;
}

inline Poly sub(const BaseField& k, const Poly& a, const Poly& b) { return add(k, a, neg(k, b)); }

inline Poly scale(const BaseField& k, const Poly& a, const Rational& s) {
  Poly r = a;
  for (auto& c : r.coeffs) c = k.mul(c, s);
  r.trim();
  return r;
}

inline Poly mul(const BaseField& k, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> r(a.coeffs.size() + b.coeffs.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs.size(); ++j)
      r[i + j] = k.add(r[i + j], k.mul(a.coeffs[i], b.coeffs[j]));
  return Poly(std::move(r));
}

/// Euclidean division: returns (quotient, remainder).
inline std::pair<Poly, Poly> divmod(const BaseField& k, const Poly& a, const Poly& b) {
  if (b.is_zero()) throw PreconditionError("polynomial division by zero");
  Poly rem = a;
  if (a.degree() < b.degree()) return {Poly{}, rem};
  std::vector<Rational> q(a.degree() - b.degree() + 1, Rational(0));
  const Rational lead_inv = k.inv(b.lead());
  while (!rem.is_zero() && rem.degree() >= b.degree()) {
    const std::size_t shift = rem.degree() - b.degree();
    const Rational c = k.mul(rem.lead(), lead_inv);
    q[shift] = c;
    for (std::size_t i = 0; i < b.coeffs.size(); ++i)
      rem.coeffs[i + shift] = k.sub(rem.coeffs[i + shift], k.mul(c, b.coeffs[i]));
    rem.trim();
  }
  return {Poly(std::move(q)), rem};
}

inline Poly mod(const BaseField& k, const Poly& a, const Poly& b) { return divmod(k, a, b).second; }

inline Poly monic(const BaseField& k, const Poly& a) {
  if (a.is_zero()) return a;
  return scale(k, a, k.inv(a.lead()));
}

inline Poly gcd(const BaseField& k, Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = mod(k, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(k, a);
}

/// Inverse of a modulo m (requires gcd(a, m) = 1).
inline Poly inverse_mod(const BaseField& k, const Poly& a, const Poly& m) {
  Poly r0 = m, r1 = mod(k, a, m);
  Poly s0, s1 = Poly::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(k, r0, r1);
    Poly s = sub(k, s0, mul(k, q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.degree() != 0) throw PreconditionError("division by zero");
  return mod(k, scale(k, s0, k.inv(r0.lead())), m);
}

inline Rational eval(const BaseField& k, const Poly& f, const Rational& x) {
  Rational acc = 0;
  for (auto it = f.coeffs.rbegin(); it != f.coeffs.rend(); ++it) acc = k.add(k.mul(acc, x), *it);
  return acc;
}

/// True when f is (up to a unit) the polynomial t.
inline bool is_t(const Poly& f) { return f.degree() == 1 && f.coeffs[0] == 0; }

inline std::string format(const Poly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (int d = f.degree(); d >= 0; --d) {
    const Rational& c = f.coeffs[d];
    if (c == 0) continue;
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (!out.empty()) out += negative ? "-" : "+";
    else if (negative) out += "-";
    if (d == 0) {
      out += to_string(mag);
    } else {
      if (mag != 1) out += to_string(mag) + "*";
      out += d == 1 ? "t" : "t^" + std::to_string(d);
    }
  }
  return out;
}

namespace detail {

struct Cursor {
  std::string_view s;
  std::size_t i = 0;
  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  char peek() {
    skip();
    return i < s.size() ? s[i] : '\0';
  }
  bool done() {
    skip();
    return i >= s.size();
  }
  BigInt integer() {
    skip();
    const std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i) throw ParseError("expected integer at position " + std::to_string(start));
    return BigInt(std::string(s.substr(start, i - start)));
  }
};

}  // namespace detail

/// Parses "t^2+t+1", "2*t-1/2", "3t^3 - t". Coefficients are reduced into
/// the base field.
inline Poly parse(std::string_view text, const BaseField& k) {
  detail::Cursor cur{text};
  Poly acc;
  bool first = true;
  while (!cur.done()) {
    bool negative = false;
    if (cur.eat('+')) {
    } else if (cur.eat('-')) {
      negative = true;
    } else if (!first) {
      throw ParseError("expected '+' or '-' in polynomial \"" + std::string(text) + "\"");
    }
    first = false;
    Rational coeff = 1;
    bool have_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
      BigInt num = cur.integer();
      BigInt den = 1;
      if (cur.eat('/')) den = cur.integer();
      if (den == 0) throw ParseError("zero denominator in polynomial");
      coeff = Rational(num, den);
      have_coeff = true;
      cur.eat('*');
    }
    std::size_t power = 0;
    if (cur.eat('t')) {
      power = 1;
      if (cur.eat('^')) power = static_cast<std::size_t>(cur.integer());
    } else if (!have_coeff) {
      throw ParseError("malformed polynomial \"" + std::string(text) + "\"");
    }
    if (negative) coeff = -coeff;
    acc = add(k, acc, Poly::monomial(power, k.canon(coeff)));
  }
  if (first) throw ParseError("empty polynomial");
  return acc;
}

}  // namespace poly

// ---------------------------------------------------------------------------
// Fields and scalars.

class Field;
using FieldPtr = std::shared_ptr<const Field>;

inline bool is_irreducible(const Poly& f, const BaseField& base);

class Field {
 public:
  static FieldPtr rationals() { return FieldPtr(new Field(BaseField{0}, std::nullopt)); }

  static FieldPtr prime(std::uint64_t p) {
    if (!is_prime(p)) throw PreconditionError(std::to_string(p) + " is not prime");
    if (p >= (std::uint64_t{1} << 31)) throw PreconditionError("characteristic too large");
    return FieldPtr(new Field(BaseField{p}, std::nullopt));
  }

  /// K[t]/(f); f is made monic and must be irreducible, of degree >= 1 and
  /// different from t.
  static FieldPtr quotient(const BaseField& base, const Poly& f) {
    Poly m = poly::monic(base, poly::canon(base, f));
    if (m.degree() < 1) throw PreconditionError("modulus must have degree >= 1");
    if (poly::is_t(m)) throw PreconditionError("modulus must differ from t");
    if (!is_irreducible(m, base))
      throw PreconditionError("modulus " + poly::format(m) + " is reducible over " + base.name());
    return FieldPtr(new Field(base, std::move(m)));
  }

  static FieldPtr base_of(const BaseField& base) { return FieldPtr(new Field(base, std::nullopt)); }

  const BaseField& base() const { return base_; }
  bool is_quotient() const { return modulus_.has_value(); }
  const Poly& modulus() const { return *modulus_; }
  /// Dimension over the base field.
  std::size_t degree() const { return modulus_ ? static_cast<std::size_t>(modulus_->degree()) : 1; }

  std::string to_string() const {
    if (!modulus_) return base_.name();
    return base_.name() + "[t]/(" + poly::format(*modulus_) + ")";
  }

  bool operator==(const Field& o) const { return base_ == o.base_ && modulus_ == o.modulus_; }

 private:
  Field(BaseField b, std::optional<Poly> m) : base_(b), modulus_(std::move(m)) {}

  BaseField base_;
  std::optional<Poly> modulus_;
};

inline bool same_field(const FieldPtr& a, const FieldPtr& b) { return a == b || *a == *b; }

/// True when `sub` is `ext` itself or the base field of the quotient `ext`.
inline bool embeds_into(const FieldPtr& sub, const FieldPtr& ext) {
  if (same_field(sub, ext)) return true;
  return !sub->is_quotient() && ext->is_quotient() && sub->base() == ext->base();
}

/// An element of a Field, stored by its coordinates over the base field in
/// the power basis 1, t, ..., t^{d-1}. Always canonical: coordinates lie in
/// the base field's canonical range and quotient elements are reduced.
class Scalar {
 public:
  Scalar() = default;

  Scalar(FieldPtr f, const Poly& value) : field_(std::move(f)) {
    const BaseField& k = field_->base();
    Poly v = poly::canon(k, value);
    if (field_->is_quotient()) {
      v = poly::mod(k, v, field_->modulus());
    } else if (v.degree() > 0) {
      throw PreconditionError("non-constant value in " + field_->to_string());
    }
    coords_.assign(field_->degree(), Rational(0));
    for (std::size_t i = 0; i < v.coeffs.size(); ++i) coords_[i] = v.coeffs[i];
  }

  static Scalar from_rational(FieldPtr f, const Rational& q) { return Scalar(std::move(f), Poly::constant(q)); }
  static Scalar from_int(FieldPtr f, long long n) { return from_rational(std::move(f), Rational(n)); }
  static Scalar zero(FieldPtr f) { return from_int(std::move(f), 0); }
  static Scalar one(FieldPtr f) { return from_int(std::move(f), 1); }
  /// The class of t in a quotient field.
  static Scalar generator(FieldPtr f) {
    if (!f->is_quotient()) throw PreconditionError("generator requested in a non-quotient field");
    return Scalar(std::move(f), Poly::monomial(1));
  }

  const FieldPtr& field() const { return field_; }
  const std::vector<Rational>& coords() const { return coords_; }
  Poly as_poly() const { return Poly(coords_); }

  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return c == 0; });
  }
  bool is_one() const {
    if (coords_.empty() || coords_[0] != 1) return false;
    return std::all_of(coords_.begin() + 1, coords_.end(), [](const Rational& c) { return c == 0; });
  }

  Scalar operator+(const Scalar& o) const {
    check(o);
    Scalar r = *this;
    for (std::size_t i = 0; i < coords_.size(); ++i) r.coords_[i] = k().add(coords_[i], o.coords_[i]);
    return r;
  }
  Scalar operator-() const {
    Scalar r = *this;
    for (auto& c : r.coords_) c = k().neg(c);
    return r;
  }
  Scalar operator-(const Scalar& o) const { return *this + (-o); }
  Scalar operator*(const Scalar& o) const {
    check(o);
    if (!field_->is_quotient()) {
      Scalar r = *this;
      r.coords_[0] = k().mul(coords_[0], o.coords_[0]);
      return r;
    }
    return Scalar(field_, poly::mul(k(), as_poly(), o.as_poly()));
  }
  Scalar inverse() const {
    if (is_zero()) throw PreconditionError("division by zero");
    if (!field_->is_quotient()) return from_rational(field_, k().inv(coords_[0]));
    return Scalar(field_, poly::inverse_mod(k(), as_poly(), field_->modulus()));
  }
  Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  Scalar pow(long long e) const {
    Scalar base = e < 0 ? inverse() : *this;
    unsigned long long n = e < 0 ? static_cast<unsigned long long>(-(e + 1)) + 1 : static_cast<unsigned long long>(e);
    Scalar acc = one(field_);
    while (n) {
      if (n & 1) acc *= base;
      base *= base;
      n >>= 1;
    }
    return acc;
  }

  /// Image under the inclusion K -> K' (identity when the fields agree).
  Scalar embed(const FieldPtr& target) const {
    if (same_field(field_, target)) return *this;
    if (!embeds_into(field_, target))
      throw PreconditionError("cannot embed " + field_->to_string() + " into " + target->to_string());
    return from_rational(target, coords_[0]);
  }

  bool operator==(const Scalar& o) const { return same_field(field_, o.field_) && coords_ == o.coords_; }

  std::string to_string() const {
    if (!field_->is_quotient()) return leavitt::to_string(coords_[0]);
    return poly::format(as_poly());
  }

 private:
  const BaseField& k() const { return field_->base(); }
  void check(const Scalar& o) const {
    if (!same_field(field_, o.field_))
      throw PreconditionError("field mismatch: " + field_->to_string() + " vs " + o.field_->to_string());
  }

  FieldPtr field_;
  std::vector<Rational> coords_;
};

enum class ArithOp { Add, Mul, Neg, Inv };

inline Scalar arith(ArithOp op, const Scalar& a, const std::optional<Scalar>& b = std::nullopt) {
  switch (op) {
    case ArithOp::Add:
      if (!b) throw PreconditionError("add needs two operands");
      return a + *b;
    case ArithOp::Mul:
      if (!b) throw PreconditionError("mul needs two operands");
      return a * *b;
    case ArithOp::Neg:
      return -a;
    case ArithOp::Inv:
      return a.inverse();
  }
  throw PreconditionError("unknown operation");
}

/// Parses a scalar literal ("5/6", "3", "t+1") into `f`.
inline Scalar parse_scalar(std::string_view text, const FieldPtr& f) {
  return Scalar(f, poly::parse(text, f->base()));
}

/// Parses "Q", "F5", "F2[t]/(t^2+t+1)", "Q[t]/(t^2+1)".
inline FieldPtr parse_field(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  const auto bracket = s.find('[');
  const std::string head = s.substr(0, bracket);
  BaseField base;
  if (head == "Q") {
    base = BaseField{0};
  } else if (head.size() > 1 && head[0] == 'F' &&
             std::all_of(head.begin() + 1, head.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    base = BaseField{std::stoull(head.substr(1))};
    if (!is_prime(base.p)) throw ParseError(head.substr(1) + " is not prime");
  } else {
    throw ParseError("unknown field \"" + std::string(text) + "\"");
  }
  if (bracket == std::string::npos) return base.is_rational() ? Field::rationals() : Field::prime(base.p);
  const std::string tail = s.substr(bracket);
  if (tail.rfind("[t]/(", 0) != 0 || tail.back() != ')')
    throw ParseError("expected <base>[t]/(<poly>) in \"" + std::string(text) + "\"");
  return Field::quotient(base, poly::parse(tail.substr(5, tail.size() - 6), base));
}

// ---------------------------------------------------------------------------
// Irreducibility and enumeration.

/// All monic irreducible polynomials of degree <= max_deg over F_p, sorted by
/// degree and then by coefficients from the top down.
inline std::vector<Poly> enumerate_irreducibles(std::uint64_t p, std::size_t max_deg) {
  if (!is_prime(p)) throw PreconditionError(std::to_string(p) + " is not prime");
  const BaseField k{p};
  std::vector<Poly> found;
  for (std::size_t d = 1; d <= max_deg; ++d) {
    BigInt count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    if (count > 5'000'000) throw PreconditionError("enumeration too large");
    const auto n = static_cast<std::uint64_t>(count);
    for (std::uint64_t code = 0; code < n; ++code) {
      // code's base-p digits, most significant first, are c_{d-1} ... c_0
      std::vector<Rational> c(d + 1, Rational(0));
      c[d] = 1;
      std::uint64_t rest = code;
      for (std::size_t i = 0; i < d; ++i) {
        c[i] = static_cast<long long>(rest % p);
        rest /= p;
      }
      Poly f(std::move(c));
      const bool reducible = std::any_of(found.begin(), found.end(), [&](const Poly& g) {
        return 2 * g.degree() <= static_cast<int>(d) && poly::mod(k, f, g).is_zero();
      });
      if (!reducible) found.push_back(std::move(f));
    }
  }
  return found;
}

namespace detail {

inline std::vector<BigInt> positive_divisors(BigInt n) {
  if (n < 0) n = -n;
  if (n > BigInt(1'000'000'000'000LL)) throw CannotCertify("coefficient too large for the rational root test");
  std::vector<BigInt> out;
  for (BigInt d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  return out;
}

inline bool has_rational_root(const Poly& f) {
  BigInt lcm = 1;
  for (const auto& c : f.coeffs) {
    const BigInt den = boost::multiprecision::denominator(c);
    lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
  }
  std::vector<BigInt> a;
  for (const auto& c : f.coeffs) a.push_back(boost::multiprecision::numerator(c * Rational(lcm)));
  if (a.front() == 0) return true;
  const BaseField q{0};
  for (const auto& r : positive_divisors(a.front()))
    for (const auto& s : positive_divisors(a.back()))
      for (int sign : {1, -1})
        if (poly::eval(q, f, Rational(BigInt(sign) * r, s)) == 0) return true;
  return false;
}

}  // namespace detail

/// Exact over F_p (trial division by the monic irreducibles of degree up to
/// deg f / 2); over Q exact up to degree 3 via the rational root test.
inline bool is_irreducible(const Poly& f_in, const BaseField& base) {
  const Poly f = poly::canon(base, f_in);
  if (f.degree() < 1) throw PreconditionError("irreducibility needs degree >= 1");
  if (f.degree() == 1) return true;
  if (base.is_rational()) {
    if (f.degree() > 3) throw CannotCertify("cannot certify irreducibility over Q beyond degree 3");
    return !detail::has_rational_root(f);
  }
  for (const auto& g : enumerate_irreducibles(base.p, f.degree() / 2))
    if (poly::mod(base, f, g).is_zero()) return false;
  return true;
}

/// A Laurent polynomial t^offset * poly.
struct Laurent {
  Poly poly;
  long long offset = 0;
};

/// g(a) for g with coefficients in the base field of a's field.
inline Scalar eval(const Poly& g, const Scalar& a) {
  Scalar acc = Scalar::zero(a.field());
  for (auto it = g.coeffs.rbegin(); it != g.coeffs.rend(); ++it)
    acc = acc * a + Scalar::from_rational(a.field(), *it);
  return acc;
}

inline Scalar eval(const Laurent& g, const Scalar& a) {
  if (g.offset < 0 && a.is_zero()) throw PreconditionError("negative power of zero");
  return a.pow(g.offset) * eval(g.poly, a);
}

}  // namespace leavitt
