#pragma once

// The graph groupoid G_E restricted to one orbit, compact bisections
// Z(mu, nu), induced modules Ind_x(V) = K L_x (x)_{K G_x} V, and the
// restriction functor Res_x.
//
// An arrow (y, k, z) between two points of the class [x] is stored with
// both endpoints as ClassElements over the common base x. Elements of
// Ind_x(V) are finitely supported maps y -> V: the basis vector at y is
// t_y (x) v with t_y = (y, deg y, x) the canonical coset representative.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "leavitt/boundary.hpp"
#include "leavitt/errors.hpp"
#include "leavitt/field.hpp"
#include "leavitt/graph.hpp"
#include "leavitt/linalg.hpp"
#include "leavitt/lpa.hpp"

namespace leavitt {

class GroupoidElt {
 public:
  /// (range, k, source). k must equal deg(range) - deg(source), modulo the
  /// period for a rational base.
  GroupoidElt(ClassElement range, long long k, ClassElement source)
      : range_(std::move(range)), k_(k), source_(std::move(source)) {
    if (!(range_.base() == source_.base())) throw PreconditionError("arrow endpoints in different classes");
    Degree d = range_.degree();
    d.value -= source_.degree().value;
    if (!d.congruent(k_)) throw PreconditionError("degree " + std::to_string(k_) + " is not realizable");
  }

  /// The unit at y.
  static GroupoidElt unit(const ClassElement& y) { return {y, 0, y}; }
  /// t_y = (y, deg y, x).
  static GroupoidElt coset_rep(const ClassElement& y) {
    return {y, y.degree().value, ClassElement::of_base(y.base_ptr())};
  }

  const ClassElement& range() const { return range_; }
  const ClassElement& source() const { return source_; }
  long long degree() const { return k_; }

  bool operator==(const GroupoidElt& o) const {
    return range_ == o.range_ && k_ == o.k_ && source_ == o.source_;
  }

  std::string describe() const {
    return "(" + range_.describe() + ", " + std::to_string(k_) + ", " + source_.describe() + ")";
  }

 private:
  ClassElement range_;
  long long k_;
  ClassElement source_;
};

/// (x,k,y)(y,l,z) = (x,k+l,z).
inline GroupoidElt gpd_mul(const GroupoidElt& g, const GroupoidElt& h) {
  if (!(g.source() == h.range())) throw PreconditionError("middle mismatch in groupoid product");
  return {g.range(), g.degree() + h.degree(), h.source()};
}

inline GroupoidElt gpd_inv(const GroupoidElt& g) { return {g.source(), -g.degree(), g.range()}; }

/// Z(mu, nu) = {(mu z, |mu| - |nu|, nu z)}.
struct Bisection {
  FinPath mu;
  FinPath nu;

  Bisection(FinPath m, FinPath n) : mu(std::move(m)), nu(std::move(n)) {
    if (mu.range() != nu.range()) throw PreconditionError("bisection needs r(mu) = r(nu)");
  }
  long long degree() const { return static_cast<long long>(mu.length()) - static_cast<long long>(nu.length()); }
  bool operator==(const Bisection&) const = default;
};

/// The translate B t, defined when the range of t starts with nu;
/// nullopt otherwise.
inline std::optional<GroupoidElt> bisection_apply(const Bisection& b, const GroupoidElt& t) {
  auto z = t.range().strip(b.nu);
  if (!z) return std::nullopt;
  return GroupoidElt(z->prepend(b.mu), b.degree() + t.degree(), t.source());
}

/// The set product Z(a, b) Z(mu, nu) as one bisection, or nullopt if empty.
inline std::optional<Bisection> bisection_prod(const Bisection& b1, const Bisection& b2) {
  auto m = multiply_monomials(Monomial{b1.mu, b1.nu}, Monomial{b2.mu, b2.nu});
  if (!m) return std::nullopt;
  return Bisection(m->mu, m->nu);
}

// ---------------------------------------------------------------------------
// Coefficient modules over G_x.

/// The K-basis 1, t, ..., t^{d-1} of ext over k (just {1} when equal).
inline std::vector<Scalar> k_basis(const FieldPtr& ext, const FieldPtr& k) {
  if (same_field(ext, k)) return {Scalar::one(ext)};
  if (!embeds_into(k, ext)) throw PreconditionError(ext->to_string() + " is not an extension of " + k->to_string());
  std::vector<Scalar> out;
  for (std::size_t i = 0; i < ext->degree(); ++i) out.emplace_back(ext, Poly::monomial(i));
  return out;
}

/// Coordinates of s in k_basis(s.field(), k).
inline std::vector<Scalar> k_coords(const Scalar& s, const FieldPtr& k) {
  if (same_field(s.field(), k)) return {s};
  if (!embeds_into(k, s.field())) throw PreconditionError("field mismatch in coordinates");
  std::vector<Scalar> out;
  for (const auto& c : s.coords()) out.push_back(Scalar::from_rational(k, c));
  return out;
}

class CoeffModule {
 public:
  enum class Kind { TrivialK, TwistedLine, QuotientMod };

  static CoeffModule trivial(FieldPtr k) { return CoeffModule(Kind::TrivialK, k, k, std::nullopt, std::nullopt); }

  /// K'^{(a)}: the isotropy generator acts by a, with a in K or an extension K'.
  static CoeffModule twisted_line(FieldPtr k, const Scalar& a) {
    if (a.is_zero()) throw PreconditionError("twisted line needs a nonzero scalar");
    if (!same_field(a.field(), k) && !embeds_into(k, a.field()))
      throw PreconditionError("twist value is not in an extension of " + k->to_string());
    return CoeffModule(Kind::TwistedLine, k, a.field(), a, std::nullopt);
  }

  /// K[t, t^{-1}]/(f): realized as K' = K[t]/(f) with the generator acting by t.
  static CoeffModule quotient(FieldPtr k, const Poly& f) {
    if (k->is_quotient()) throw PreconditionError("quotient module needs a prime or rational base field");
    FieldPtr ext = Field::quotient(k->base(), poly::monic(k->base(), f));
    return CoeffModule(Kind::QuotientMod, k, ext, Scalar::generator(ext), f);
  }

  Kind kind() const { return kind_; }
  /// K, the field of the algebra acting.
  const FieldPtr& scalar_field() const { return k_; }
  /// K', where values of the module live.
  const FieldPtr& field() const { return ext_; }
  /// The action of the isotropy generator (absent for TrivialK).
  const std::optional<Scalar>& generator_value() const { return a_; }
  const std::optional<Poly>& modulus() const { return f_; }
  std::size_t dim() const { return same_field(k_, ext_) ? 1 : ext_->degree(); }

  std::string describe() const {
    switch (kind_) {
      case Kind::TrivialK:
        return "K";
      case Kind::TwistedLine:
        return "K^(" + a_->to_string() + ")";
      case Kind::QuotientMod:
        return "K[t,t^-1]/(" + poly::format(*f_) + ")";
    }
    return {};
  }

 private:
  CoeffModule(Kind kind, FieldPtr k, FieldPtr ext, std::optional<Scalar> a, std::optional<Poly> f)
      : kind_(kind), k_(std::move(k)), ext_(std::move(ext)), a_(std::move(a)), f_(std::move(f)) {}

  Kind kind_;
  FieldPtr k_, ext_;
  std::optional<Scalar> a_;
  std::optional<Poly> f_;
};

// ---------------------------------------------------------------------------

/// A finitely supported map from orbit points to coefficients. Zero
/// coefficients are never stored.
class PointVector {
 public:
  using Map = std::map<ClassElement, Scalar>;

  PointVector() = default;
  PointVector(const ClassElement& y, const Scalar& c) { add(y, c); }

  void add(const ClassElement& y, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(y);
    if (it == terms_.end()) {
      terms_.emplace(y, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  const Map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  std::optional<Scalar> coefficient(const ClassElement& y) const {
    auto it = terms_.find(y);
    if (it == terms_.end()) return std::nullopt;
    return it->second;
  }

  PointVector& operator+=(const PointVector& o) {
    for (const auto& [y, c] : o.terms_) add(y, c);
    return *this;
  }
  PointVector operator+(const PointVector& o) const {
    PointVector r = *this;
    return r += o;
  }
  PointVector scaled(const Scalar& s) const {
    PointVector r;
    for (const auto& [y, c] : terms_) r.add(y, c * s.embed(c.field()));
    return r;
  }
  PointVector operator-() const {
    PointVector r;
    for (const auto& [y, c] : terms_) r.add(y, -c);
    return r;
  }
  PointVector operator-(const PointVector& o) const { return *this + (-o); }

  bool operator==(const PointVector& o) const { return terms_ == o.terms_; }

  std::string describe() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [y, c] : terms_) s += (s.empty() ? "" : " + ") + ("(" + c.to_string() + ")*" + y.describe());
    return s;
  }

  nlohmann::json to_json() const {
    auto j = nlohmann::json::array();
    for (const auto& [y, c] : terms_) {
      auto t = y.to_json();
      t["coeff"] = c.to_string();
      j.push_back(std::move(t));
    }
    return j;
  }

 private:
  Map terms_;
};

/// Ind_x(V).
class InducedModule {
 public:
  InducedModule(PointPtr base, CoeffModule v) : base_(std::move(base)), v_(std::move(v)) {
    const bool cyclic = base_->is_rational();
    if (cyclic && v_.kind() == CoeffModule::Kind::TrivialK)
      throw PreconditionError("incompatible coefficient module: the isotropy group is cyclic, use a twisted line or quotient");
    if (!cyclic && v_.kind() != CoeffModule::Kind::TrivialK)
      throw PreconditionError("incompatible coefficient module: the isotropy group is trivial, use K");
  }

  const BoundaryPoint& base() const { return *base_; }
  const PointPtr& base_ptr() const { return base_; }
  const Digraph& graph() const { return base_->graph(); }
  const CoeffModule& coefficients() const { return v_; }
  const FieldPtr& scalar_field() const { return v_.scalar_field(); }
  const FieldPtr& coeff_field() const { return v_.field(); }

  /// t (x) v for an arbitrary arrow t in L_x, rewritten as t_y (x) gamma v.
  PointVector tensor(const GroupoidElt& t, const Scalar& v) const {
    if (!(t.source() == ClassElement::of_base(base_))) throw PreconditionError("arrow does not end at the base point");
    const long long surplus = t.degree() - t.range().degree().value;
    Scalar c = v.embed(coeff_field());
    if (surplus != 0) c *= v_.generator_value()->pow(surplus / static_cast<long long>(base_->period()));
    return PointVector(t.range(), c);
  }

  /// The Steinberg action of z (over K) through mu nu* <-> 1_{Z(mu, nu)}.
  PointVector act(const AlgebraElement& z, const PointVector& m) const {
    if (!same_field(z.field(), scalar_field()))
      throw PreconditionError("algebra over " + z.field()->to_string() + " acting on a module over " +
                              scalar_field()->to_string());
    PointVector out;
    for (const auto& [mono, c] : z.terms()) {
      const Bisection b(mono.mu, mono.nu);
      for (const auto& [y, v] : m.terms()) {
        auto t = bisection_apply(b, GroupoidElt::coset_rep(y));
        if (!t) continue;
        out += tensor(*t, c.embed(coeff_field()) * v);
      }
    }
    return out;
  }

  Orbit orbit(std::size_t depth = 8) const { return orbit_points(base_, depth); }

  /// K-dimension when the orbit is exhausted at `depth`.
  std::optional<std::size_t> dimension(std::size_t depth = 8) const {
    Orbit o = orbit(depth);
    if (!o.exhausted) return std::nullopt;
    return o.points.size() * v_.dim();
  }

  std::string describe() const { return "Ind_" + base_->describe() + "(" + v_.describe() + ")"; }

 private:
  PointPtr base_;
  CoeffModule v_;
};

inline InducedModule induce(const PointPtr& x, const CoeffModule& v) { return InducedModule(x, v); }

inline PointVector steinberg_act(const AlgebraElement& z, const PointVector& m, const InducedModule& w) {
  return w.act(z, m);
}

// ---------------------------------------------------------------------------
// Restriction.

struct Restriction {
  std::optional<ClassElement> point;  // x as an element of the module's class
  std::vector<PointVector> basis;     // x (x) (K-basis of the coefficients)
  /// Action of the isotropy generator on `basis` (column j = image of
  /// basis[j]); absent when the isotropy is trivial or the restriction is 0.
  std::optional<Mat> generator;
  bool certified = true;

  std::size_t dim() const { return basis.size(); }
};

/// The element rho d rho* generating G_x for x = rho d^inf (reduced form).
inline AlgebraElement isotropy_generator(const BoundaryPoint& x, const FieldPtr& k) {
  if (!x.is_rational()) throw PreconditionError("isotropy is trivial");
  GraphPtr g = x.graph_ptr();
  return monomial(g, k, compose(x.prefix(), x.cycle()), x.prefix());
}

/// Res_x(W) for a module with a point-indexed basis (induced or Chen type).
/// The intersection of the projections 1_{Z(mu,mu)} W over prefixes mu of x
/// consists of the vectors supported at x itself; x is located exactly in
/// W's class and the projections up to `depth` are re-checked by action.
template <class Module>
Restriction restrict(const Module& w, const BoundaryPoint& x, std::size_t depth = 8) {
  Restriction out;
  Located loc = locate(x, w.base_ptr(), depth);
  out.certified = loc.certified;
  if (!loc.element) return out;
  out.point = loc.element;
  const FieldPtr& k = w.scalar_field();
  const GraphPtr g = x.graph_ptr();
  for (const auto& b : k_basis(w.coeff_field(), k)) out.basis.emplace_back(*loc.element, b);

  const std::size_t limit = x.is_sink() ? std::min(depth, *x.length()) : depth;
  const auto prefix = x.expand(limit);
  for (std::size_t len = 0; len <= limit; ++len) {
    FinPath mu = g->path(std::span<const EdgeId>(prefix.data(), len), x.source());
    const AlgebraElement proj = monomial(g, k, mu, mu);
    for (const auto& b : out.basis)
      if (!(w.act(proj, b) == b)) throw std::logic_error("restriction: projection does not fix the located vector");
  }

  if (!x.is_rational()) return out;
  const AlgebraElement gen = isotropy_generator(x, k);
  const std::size_t d = out.basis.size();
  Mat m(d, Vec(d, Scalar::zero(k)));
  for (std::size_t j = 0; j < d; ++j) {
    PointVector img = w.act(gen, out.basis[j]);
    if (img.size() > 1 || (img.size() == 1 && !img.coefficient(*loc.element)))
      throw std::logic_error("restriction: isotropy generator leaves the fibre");
    if (img.is_zero()) continue;
    auto coords = k_coords(*img.coefficient(*loc.element), k);
    for (std::size_t i = 0; i < d; ++i) m[i][j] = coords[i];
  }
  out.generator = std::move(m);
  return out;
}

}  // namespace leavitt
