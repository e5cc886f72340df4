#pragma once

// Chen modules V^a_{[x]} (twisted or not), the AKR modules V^f realized as
// V^{t}_{[c^inf], K'} restricted to K, the explicit isomorphisms with
// induced modules, and mechanical equivariance checking.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "leavitt/boundary.hpp"
#include "leavitt/errors.hpp"
#include "leavitt/field.hpp"
#include "leavitt/groupoid.hpp"
#include "leavitt/linalg.hpp"
#include "leavitt/lpa.hpp"

namespace leavitt {

/// V^a_{[x], K'} viewed as a module over L_K(E) (K' = K unless restricted).
class ChenModule {
 public:
  /// The twist's field is K'; it must equal or extend k.
  ChenModule(PointPtr base, FieldPtr k, TwistParam twist) : base_(std::move(base)), k_(std::move(k)), twist_(std::move(twist)) {
    if (!same_field(k_, twist_.field()) && !embeds_into(k_, twist_.field()))
      throw PreconditionError("twist field does not extend " + k_->to_string());
  }

  static ChenModule untwisted(PointPtr base, FieldPtr k) {
    TwistParam a(k);
    return ChenModule(std::move(base), std::move(k), std::move(a));
  }

  /// V^f: x must be c^inf up to tail equivalence; the class of t sits on the
  /// first edge of the canonical cycle.
  static ChenModule quotient(PointPtr base, FieldPtr k, const Poly& f) {
    if (!base->is_rational()) throw PreconditionError("V^f needs a rational base point");
    if (k->is_quotient()) throw PreconditionError("V^f needs a prime or rational base field");
    FieldPtr ext = Field::quotient(k->base(), poly::monic(k->base(), f));
    TwistParam a(ext);
    a.set(canonical_rotation(base->graph(), base->cycle()).edge(0), Scalar::generator(ext));
    return ChenModule(std::move(base), std::move(k), std::move(a));
  }

  const BoundaryPoint& base() const { return *base_; }
  const PointPtr& base_ptr() const { return base_; }
  const Digraph& graph() const { return base_->graph(); }
  const FieldPtr& scalar_field() const { return k_; }
  const FieldPtr& coeff_field() const { return twist_.field(); }
  const TwistParam& twist() const { return twist_; }
  /// True for V^{...}_{K'}|_K with K' != K.
  bool restricted() const { return !same_field(k_, coeff_field()); }

  /// sigma_a(z).p with (mu nu*).p = mu p' if p = nu p', else 0.
  PointVector act(const AlgebraElement& z, const PointVector& m) const {
    if (!same_field(z.field(), k_))
      throw PreconditionError("algebra over " + z.field()->to_string() + " acting on a module over " + k_->to_string());
    const AlgebraElement tz = sigma_twist(twist_, z);
    PointVector out;
    for (const auto& [mono, c] : tz.terms())
      for (const auto& [y, v] : m.terms())
        if (auto rest = y.strip(mono.nu)) out.add(rest->prepend(mono.mu), c * v);
    return out;
  }

  Orbit orbit(std::size_t depth = 8) const { return orbit_points(base_, depth); }

  std::string describe() const {
    std::string s = "V_[" + base_->describe() + "]";
    if (!twist_.is_trivial()) s += "^a";
    if (restricted()) s += " over " + coeff_field()->to_string() + " restricted to " + k_->to_string();
    return s;
  }

 private:
  PointPtr base_;
  FieldPtr k_;
  TwistParam twist_;
};

inline PointVector chen_act(const AlgebraElement& z, const PointVector& m, const ChenModule& desc) {
  return desc.act(z, m);
}

/// a_c for the cycle of a rational base (independent of the rotation).
inline Scalar twist_invariant(const ChenModule& desc) {
  if (!desc.base().is_rational()) throw PreconditionError("twist invariant needs a rational base point");
  return path_weight(desc.twist(), desc.base().cycle());
}

/// theta(g) = g(a) on Laurent polynomials.
inline Scalar theta(const Laurent& g, const Scalar& a) {
  if (a.is_zero()) throw PreconditionError("theta needs a nonzero scalar");
  return eval(g, a);
}

namespace detail {

/// a_mu a_nu^{-1} for y = mu x', x = nu x'.
inline Scalar weight_ratio(const TwistParam& a, const ClassElement& y) {
  return path_weight(a, y.prefix()) / path_weight(a, y.base_prefix());
}

inline void require_same_class(const InducedModule& ind, const ChenModule& chen) {
  if (!(ind.base() == chen.base())) throw PreconditionError("modules are built on different base points");
  if (!same_field(ind.scalar_field(), chen.scalar_field()) || !same_field(ind.coeff_field(), chen.coeff_field()))
    throw PreconditionError("modules have different coefficient fields");
}

}  // namespace detail

/// Ind_x(K) -> V^a_{[x]}: t_y (x) k -> k a_mu a_nu^{-1} y (trivial isotropy).
inline PointVector phi_triv(const InducedModule& ind, const ChenModule& chen, const PointVector& m) {
  if (ind.base().is_rational()) throw PreconditionError("rational base: use phi_twist");
  detail::require_same_class(ind, chen);
  PointVector out;
  for (const auto& [y, v] : m.terms()) out.add(y, detail::weight_ratio(chen.twist(), y) * v);
  return out;
}

inline PointVector psi_triv(const InducedModule& ind, const ChenModule& chen, const PointVector& m) {
  if (ind.base().is_rational()) throw PreconditionError("rational base: use psi_twist");
  detail::require_same_class(ind, chen);
  PointVector out;
  for (const auto& [y, v] : m.terms()) out.add(y, v / detail::weight_ratio(chen.twist(), y));
  return out;
}

namespace detail {

inline void require_twist_match(const InducedModule& ind, const ChenModule& chen) {
  if (!ind.base().is_rational()) throw PreconditionError("non-rational base: use phi_triv");
  require_same_class(ind, chen);
  if (!(*ind.coefficients().generator_value() == twist_invariant(chen)))
    throw PreconditionError("coefficient module acts by " + ind.coefficients().generator_value()->to_string() +
                            " but a_c = " + twist_invariant(chen).to_string());
}

}  // namespace detail

/// Ind_{c^inf}(K'^{(a)}) -> V^a_{[c^inf]} with a = a_c: (y,m,x) (x) k' -> a_mu a_nu^{-1} k' y.
inline PointVector phi_twist(const InducedModule& ind, const ChenModule& chen, const PointVector& m) {
  detail::require_twist_match(ind, chen);
  PointVector out;
  for (const auto& [y, v] : m.terms()) out.add(y, detail::weight_ratio(chen.twist(), y) * v);
  return out;
}

inline PointVector psi_twist(const InducedModule& ind, const ChenModule& chen, const PointVector& m) {
  detail::require_twist_match(ind, chen);
  PointVector out;
  for (const auto& [y, v] : m.terms()) out.add(y, v / detail::weight_ratio(chen.twist(), y));
  return out;
}

// ---------------------------------------------------------------------------
// Equivariance.

/// Image of the basis vector (y, beta); nullopt means "not defined here".
using BasisMap = std::function<std::optional<PointVector>(const ClassElement&, const Scalar&)>;

struct Counterexample {
  std::string generator;
  ClassElement basis;
  Scalar coeff;
  PointVector expected;  // map(z . b)
  PointVector actual;    // z . map(b)

  nlohmann::json to_json() const {
    return {{"generator", generator},
            {"basis", basis.to_json()},
            {"coeff", coeff.to_string()},
            {"map_of_action", expected.to_json()},
            {"action_of_map", actual.to_json()}};
  }
};

struct HomVerdict {
  bool equivariant = true;
  std::size_t depth = 0;
  std::size_t checked = 0;  // (generator, basis vector) pairs
  std::optional<Counterexample> counterexample;

  nlohmann::json to_json() const {
    nlohmann::json j{{"equivariant", equivariant}, {"depth", depth}, {"checked", checked}};
    if (counterexample) j["counterexample"] = counterexample->to_json();
    return j;
  }
};

/// The generators v, e, e* of L_K(E) with printable names, in that order.
inline std::vector<std::pair<std::string, AlgebraElement>> algebra_generators(const GraphPtr& g, const FieldPtr& k) {
  std::vector<std::pair<std::string, AlgebraElement>> out;
  for (VertexId v = 0; v < static_cast<VertexId>(g->vertex_count()); ++v)
    out.emplace_back(g->vertex_name(v), vertex_element(g, k, v));
  for (EdgeId e = 0; e < static_cast<EdgeId>(g->edge_count()); ++e) out.emplace_back(g->edge_name(e), edge_element(g, k, e));
  for (EdgeId e = 0; e < static_cast<EdgeId>(g->edge_count()); ++e)
    out.emplace_back("~" + g->edge_name(e), ghost_element(g, k, e));
  return out;
}

inline PointVector apply_map(const BasisMap& map, const PointVector& m, const FieldPtr& k) {
  PointVector out;
  for (const auto& [y, c] : m.terms()) {
    const auto coords = k_coords(c, k);
    const auto basis = k_basis(c.field(), k);
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (coords[i].is_zero()) continue;
      auto img = map(y, basis[i]);
      if (!img) throw PreconditionError("map is undefined at " + y.describe());
      out += img->scaled(coords[i]);
    }
  }
  return out;
}

/// Checks map(z.b) = z.map(b) for the generators z and every basis vector b
/// of src with prefix length <= depth; stops at the first failure.
template <class Src, class Dst>
HomVerdict hom_check(const BasisMap& map, const Src& src, const Dst& dst, std::size_t depth = 8) {
  if (!same_field(src.scalar_field(), dst.scalar_field())) throw PreconditionError("modules over different fields");
  const FieldPtr& k = src.scalar_field();
  const auto gens = algebra_generators(src.base().graph_ptr(), k);
  HomVerdict verdict;
  verdict.depth = depth;
  const Orbit orbit = orbit_points(src.base_ptr(), depth);
  const auto betas = k_basis(src.coeff_field(), k);
  for (const auto& [name, z] : gens)
    for (const auto& y : orbit.points)
      for (const auto& beta : betas) {
        const PointVector b(y, beta);
        auto image = map(y, beta);
        if (!image) throw PreconditionError("map is undefined at " + y.describe());
        PointVector lhs = apply_map(map, src.act(z, b), k);
        PointVector rhs = dst.act(z, *image);
        ++verdict.checked;
        if (!(lhs == rhs)) {
          verdict.equivariant = false;
          verdict.counterexample = Counterexample{name, y, beta, std::move(lhs), std::move(rhs)};
          return verdict;
        }
      }
  return verdict;
}

/// A BasisMap from a whole-vector map (the maps above are K'-linear).
template <class F>
BasisMap basis_map(F f) {
  return [f](const ClassElement& y, const Scalar& beta) -> std::optional<PointVector> { return f(PointVector(y, beta)); };
}

// ---------------------------------------------------------------------------
// Simplicity probe.

struct Witness {
  std::optional<AlgebraElement> element;
  std::size_t degree = 0;  // search degree reached
};

/// Searches w with w.m = x (the base point), trying for N = 0, 1, ... a
/// monomial nu mu* that isolates one term of m (mu: the first N edges of a
/// support point no other support point shares), then corrects the
/// coefficient with a polynomial in the isotropy generator.
template <class Module>
Witness generator_witness(const Module& w, const PointVector& m, std::size_t depth = 8) {
  if (m.is_zero()) throw PreconditionError("generator_witness needs a nonzero element");
  const BoundaryPoint& x = w.base();
  const GraphPtr g = x.graph_ptr();
  const FieldPtr& k = w.scalar_field();
  const FieldPtr& ext = w.coeff_field();
  const ClassElement target = ClassElement::of_base(w.base_ptr());
  const PointVector goal(target, Scalar::one(ext));

  // Powers of the isotropy action on the fibre at x.
  std::vector<AlgebraElement> gamma_pows{vertex_element(g, k, x.source())};
  std::vector<Scalar> gamma_vals{Scalar::one(ext)};
  if (x.is_rational()) {
    const AlgebraElement gen = isotropy_generator(x, k);
    const Scalar val = *w.act(gen, goal).coefficient(target);
    for (std::size_t j = 1; j < k_basis(ext, k).size(); ++j) {
      gamma_pows.push_back(gamma_pows.back() * gen);
      gamma_vals.push_back(gamma_vals.back() * val);
    }
  }

  for (std::size_t n = 0; n <= depth + 2; ++n) {
    for (const auto& [y, c] : m.terms()) {
      if (y.prefix().length() > n) continue;
      if (x.is_sink() && n > y.prefix().length() + (*x.length() - y.shift())) continue;
      std::vector<EdgeId> head;
      for (std::size_t i = 0; i < n; ++i) head.push_back(*y.edge_at(i));
      const FinPath mu = g->path(head, y.source());
      bool unique = true;
      for (const auto& [y2, c2] : m.terms())
        if (!(y2 == y) && y2.strip(mu)) unique = false;
      if (!unique) continue;
      const FinPath nu = y.strip(mu)->base_prefix();
      const AlgebraElement w0 = monomial(g, k, nu, mu);
      const auto lam = w.act(w0, m).coefficient(target);
      if (!lam) continue;
      const Scalar tau = lam->inverse();
      // Solve sum_j g_j gamma_vals[j] = tau over K.
      const auto rhs = k_coords(tau, k);
      Mat a(rhs.size(), Vec(gamma_vals.size(), Scalar::zero(k)));
      for (std::size_t j = 0; j < gamma_vals.size(); ++j) {
        const auto col = k_coords(gamma_vals[j], k);
        for (std::size_t i = 0; i < col.size(); ++i) a[i][j] = col[i];
      }
      auto coeffs = solve(k, a, rhs);
      if (!coeffs) continue;
      AlgebraElement cand(g, k);
      for (std::size_t j = 0; j < coeffs->size(); ++j)
        if (!(*coeffs)[j].is_zero()) cand = cand + gamma_pows[j].scaled((*coeffs)[j]);
      cand = cand * w0;
      if (w.act(cand, m) == goal) return {cand, n};
    }
  }
  return {std::nullopt, depth + 2};
}

}  // namespace leavitt
