#pragma once

// Finite instance checks of the isomorphism statements: each function
// builds the modules involved, runs the maps on a truncated basis and
// reports one Claim per checked identity.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "leavitt/boundary.hpp"
#include "leavitt/chen.hpp"
#include "leavitt/classify.hpp"
#include "leavitt/field.hpp"
#include "leavitt/groupoid.hpp"
#include "leavitt/linalg.hpp"
#include "leavitt/lpa.hpp"

namespace leavitt {

struct Claim {
  std::string name;
  bool pass = true;
  bool skipped = false;
  nlohmann::json detail = nlohmann::json::object();

  nlohmann::json to_json() const {
    nlohmann::json j{{"claim", name}, {"pass", pass}};
    if (skipped) j["skipped"] = true;
    if (!detail.empty()) j["detail"] = detail;
    return j;
  }
};

struct SuiteReport {
  std::string suite;
  std::vector<Claim> claims;

  bool pass() const {
    return std::all_of(claims.begin(), claims.end(), [](const Claim& c) { return c.pass; });
  }
  void append(const SuiteReport& o) { claims.insert(claims.end(), o.claims.begin(), o.claims.end()); }

  nlohmann::json to_json() const {
    nlohmann::json c = nlohmann::json::array();
    for (const auto& claim : claims) c.push_back(claim.to_json());
    return {{"suite", suite}, {"pass", pass()}, {"claims", c}};
  }
};

namespace detail {

/// Checks f(g(b)) == b on every basis vector of `mod` up to depth.
template <class Module, class F, class G>
Claim roundtrip(std::string name, const Module& mod, std::size_t depth, F f, G g) {
  Claim c{std::move(name)};
  std::size_t n = 0;
  for (const auto& y : orbit_points(mod.base_ptr(), depth).points)
    for (const auto& beta : k_basis(mod.coeff_field(), mod.scalar_field())) {
      const PointVector b(y, beta);
      ++n;
      if (!(f(g(b)) == b)) {
        c.pass = false;
        c.detail = {{"basis", y.to_json()}, {"coeff", beta.to_string()}};
        return c;
      }
    }
  c.detail = {{"checked", n}};
  return c;
}

inline Claim from_verdict(std::string name, const HomVerdict& v) {
  Claim c{std::move(name), v.equivariant};
  c.detail = v.to_json();
  return c;
}

/// Every pair (mu, nu) with s(mu) = s(x), r(mu) = r(nu), |mu|, |nu| <= len.
inline std::vector<Monomial> monomials_from(const Digraph& g, VertexId start, std::size_t len) {
  std::vector<FinPath> from_start{FinPath::trivial(start)}, all;
  for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v) all.push_back(FinPath::trivial(v));
  for (std::size_t i = 0; i < all.size(); ++i)
    if (all[i].length() < len)
      for (EdgeId e : g.out_edges(all[i].range())) all.push_back(compose(all[i], g.edge_path(e)));
  for (std::size_t i = 0; i < from_start.size(); ++i)
    if (from_start[i].length() < len)
      for (EdgeId e : g.out_edges(from_start[i].range())) from_start.push_back(compose(from_start[i], g.edge_path(e)));
  std::vector<Monomial> out;
  for (const auto& mu : from_start)
    for (const auto& nu : all)
      if (mu.range() == nu.range()) out.push_back({mu, nu});
  return out;
}

/// The matrix of multiplication by s on K' in the K-basis 1, t, ...
inline Mat multiplication_matrix(const Scalar& s, const FieldPtr& k) {
  const auto basis = k_basis(s.field(), k);
  Mat m(basis.size(), Vec(basis.size(), Scalar::zero(k)));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const auto col = k_coords(s * basis[j], k);
    for (std::size_t i = 0; i < col.size(); ++i) m[i][j] = col[i];
  }
  return m;
}

inline nlohmann::json matrix_json(const Mat& m) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& row : m) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& c : row) r.push_back(c.to_string());
    j.push_back(r);
  }
  return j;
}

}  // namespace detail

/// Trivial isotropy: Ind_x(K) and V^a_{[x]} via phi_triv / psi_triv.
inline SuiteReport verify_triv(const PointPtr& x, const FieldPtr& k, const TwistParam& a, std::size_t depth = 8) {
  SuiteReport r{"triv"};
  const InducedModule ind = induce(x, CoeffModule::trivial(k));
  const ChenModule chen(x, k, a);
  const std::string tag = " [" + x->describe() + ", a=" + a.to_json(x->graph()).dump() + "]";
  auto phi = [&](const PointVector& m) { return phi_triv(ind, chen, m); };
  auto psi = [&](const PointVector& m) { return psi_triv(ind, chen, m); };
  r.claims.push_back(detail::roundtrip("psi o phi = id" + tag, ind, depth, psi, phi));
  r.claims.push_back(detail::roundtrip("phi o psi = id" + tag, chen, depth, phi, psi));
  r.claims.push_back(detail::from_verdict("phi equivariant" + tag, hom_check(basis_map(phi), ind, chen, depth)));
  r.claims.push_back(detail::from_verdict("psi equivariant" + tag, hom_check(basis_map(psi), chen, ind, depth)));
  return r;
}

/// Cyclic isotropy: Ind_{c^inf}(V) with V acting by a_c, against the Chen
/// module `chen` (twisted, or V^f when chen.restricted()).
inline SuiteReport verify_twist(const ChenModule& chen, std::size_t depth = 8, std::size_t eq_len = 4) {
  SuiteReport r{"twist"};
  const PointPtr& x = chen.base_ptr();
  const FieldPtr& k = chen.scalar_field();
  const Scalar ac = twist_invariant(chen);
  const InducedModule ind = induce(x, CoeffModule::twisted_line(k, ac));
  const std::string tag = " [" + x->describe() + ", a_c=" + ac.to_string() + " in " + ac.field()->to_string() + "]";
  auto phi = [&](const PointVector& m) { return phi_twist(ind, chen, m); };
  auto psi = [&](const PointVector& m) { return psi_twist(ind, chen, m); };
  r.claims.push_back(detail::roundtrip("psi o phi = id" + tag, ind, depth, psi, phi));
  r.claims.push_back(detail::roundtrip("phi o psi = id" + tag, chen, depth, phi, psi));
  r.claims.push_back(detail::from_verdict("phi equivariant" + tag, hom_check(basis_map(phi), ind, chen, depth)));
  r.claims.push_back(detail::from_verdict("psi equivariant" + tag, hom_check(basis_map(psi), chen, ind, depth)));

  // phi(1_{Z(mu,nu)} (x (x) k')) = (mu nu*) phi(x (x) k').
  Claim eq{"phi(Z(mu,nu) x) = (mu nu*) phi(x)" + tag};
  const ClassElement base = ClassElement::of_base(x);
  const GraphPtr g = x->graph_ptr();
  std::size_t n = 0;
  for (const auto& mono : detail::monomials_from(*g, x->source(), eq_len)) {
    const AlgebraElement z = monomial(g, k, mono.mu, mono.nu);
    for (const auto& beta : k_basis(ind.coeff_field(), k)) {
      const PointVector m(base, beta);
      ++n;
      if (!(phi(ind.act(z, m)) == chen.act(z, phi(m)))) {
        eq.pass = false;
        eq.detail = {{"monomial", z.to_string()}, {"coeff", beta.to_string()}};
        break;
      }
    }
    if (!eq.pass) break;
  }
  if (eq.pass) eq.detail = {{"checked", n}};
  r.claims.push_back(std::move(eq));
  return r;
}

/// Res_x Ind_x(V) = x (x) V with the isotropy generator acting as on V.
inline SuiteReport verify_res(const InducedModule& ind, std::size_t depth = 8) {
  SuiteReport r{"res"};
  const std::string tag = " [" + ind.describe() + "]";
  const Restriction res = restrict(ind, ind.base(), depth);
  Claim dim{"dim Res_x = dim V" + tag, res.dim() == ind.coefficients().dim()};
  dim.detail = {{"restriction_dim", res.dim()}, {"coeff_dim", ind.coefficients().dim()}};
  r.claims.push_back(std::move(dim));
  if (ind.base().is_rational()) {
    const Mat expected = detail::multiplication_matrix(*ind.coefficients().generator_value(), ind.scalar_field());
    Claim gen{"isotropy generator acts as on V" + tag, res.generator && *res.generator == expected};
    gen.detail = {{"expected", detail::matrix_json(expected)}};
    if (res.generator) gen.detail["actual"] = detail::matrix_json(*res.generator);
    r.claims.push_back(std::move(gen));
  } else {
    r.claims.push_back({"no isotropy action" + tag, !res.generator.has_value()});
  }
  return r;
}

/// V^a vs V^b on a rational class: an explicit isomorphism when a_c = b_c
/// (hom_check), distinct restriction eigenvalues otherwise; in both cases
/// the eigenvalue equals the twist invariant.
inline SuiteReport verify_cor2(const PointPtr& x, const FieldPtr& k, const TwistParam& a, const TwistParam& b,
                               std::size_t depth = 8) {
  SuiteReport r{"cor2"};
  const ChenModule va(x, k, a), vb(x, k, b);
  const Scalar ac = twist_invariant(va), bc = twist_invariant(vb);
  const std::string tag = " [" + x->describe() + ", a_c=" + ac.to_string() + ", b_c=" + bc.to_string() + "]";
  const Restriction ra = restrict(va, *x, depth), rb = restrict(vb, *x, depth);
  auto eigen = [&](const Restriction& res) -> std::optional<Scalar> {
    if (res.dim() != 1 || !res.generator) return std::nullopt;
    return (*res.generator)[0][0];
  };
  const auto ea = eigen(ra), eb = eigen(rb);
  Claim ev{"restriction eigenvalue = twist invariant" + tag,
           ea && eb && *ea == ac.embed(k) && *eb == bc.embed(k)};
  ev.detail = {{"a", ea ? ea->to_string() : "none"}, {"b", eb ? eb->to_string() : "none"}};
  r.claims.push_back(std::move(ev));
  if (ac == bc) {
    // y -> a_mu a_nu^{-1} b_nu b_mu^{-1} y, i.e. phi_b o psi_a.
    const InducedModule ind = induce(x, CoeffModule::twisted_line(k, ac));
    auto iso = [&](const PointVector& m) { return phi_twist(ind, vb, psi_twist(ind, va, m)); };
    r.claims.push_back(detail::from_verdict("equal invariants: V^a -> V^b equivariant" + tag,
                                            hom_check(basis_map(iso), va, vb, depth)));
  } else {
    r.claims.push_back({"distinct invariants: eigenvalues differ" + tag, ea && eb && !(*ea == *eb)});
  }
  return r;
}

/// theta on K[t, t^{-1}] and the isomorphism V^{t-a} = V^{a} (a = a_c on
/// the first edge of the cycle), for a rational base.
inline SuiteReport verify_theta(const PointPtr& x, const FieldPtr& k, const Scalar& a, std::size_t depth = 8) {
  SuiteReport r{"theta"};
  const BaseField& b = k->base();
  const std::string tag = " [a=" + a.to_string() + "]";
  const Poly t_minus_a = poly::canon(b, Poly({-a.coords()[0], Rational(1)}));
  r.claims.push_back({"theta(t-a) = 0" + tag, theta({t_minus_a, 0}, a).is_zero()});
  const Scalar target = Scalar::from_int(k, 7);
  const Poly g = poly::canon(b, Poly({target.coords()[0] - a.coords()[0], Rational(1)}));
  r.claims.push_back({"theta(t-b+a) = b" + tag, theta({g, 0}, a) == target});
  r.claims.push_back({"theta(t^-1) = a^-1" + tag, theta({Poly::constant(1), -1}, a) == a.inverse()});

  const ChenModule vf = ChenModule::quotient(x, k, t_minus_a);
  TwistParam ta(k);
  ta.set(canonical_rotation(x->graph(), x->cycle()).edge(0), a);
  const ChenModule va(x, k, ta);
  // k' y -> theta(k') y.
  BasisMap map = [&](const ClassElement& y, const Scalar& beta) -> std::optional<PointVector> {
    return PointVector(y, theta({beta.as_poly(), 0}, a));
  };
  r.claims.push_back(detail::from_verdict("V^{t-a} -> V^a through theta equivariant" + tag, hom_check(map, vf, va, depth)));
  if (a.is_one()) {
    const ChenModule plain = ChenModule::untwisted(x, k);
    BasisMap id = [](const ClassElement& y, const Scalar& beta) -> std::optional<PointVector> {
      return PointVector(y, beta);
    };
    r.claims.push_back(detail::from_verdict("V^(1) = V untwisted", hom_check(id, va, plain, depth)));
  }
  return r;
}

/// The distinct scalars 1, 2, 3, ... of k that are nonzero, up to `count`.
inline std::vector<Scalar> small_units(const FieldPtr& k, std::size_t count) {
  std::vector<Scalar> out;
  for (long long n = 1; n < 64 && out.size() < count; ++n) {
    Scalar s = Scalar::from_int(k, n);
    if (s.is_zero() || std::find(out.begin(), out.end(), s) != out.end()) continue;
    out.push_back(s);
  }
  return out;
}

}  // namespace leavitt
