#pragma once

// The catalog of spectral simple L_K(E)-modules: one Chen module per sink,
// one per cycle class, one V^f per cycle class and admissible irreducible f,
// and a symbolic row per strongly connected component that carries
// irrational boundary paths.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "leavitt/boundary.hpp"
#include "leavitt/chen.hpp"
#include "leavitt/errors.hpp"
#include "leavitt/field.hpp"
#include "leavitt/graph.hpp"
#include "leavitt/groupoid.hpp"
#include "leavitt/linalg.hpp"

namespace leavitt {

/// reach[u][v]: a path of length >= 1 leads from u to v.
inline std::vector<std::vector<bool>> reachability(const Digraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (VertexId s = 0; s < static_cast<VertexId>(n); ++s) {
    std::vector<VertexId> stack{s};
    while (!stack.empty()) {
      const VertexId u = stack.back();
      stack.pop_back();
      for (EdgeId e : g.out_edges(u))
        if (!reach[s][g.dst(e)]) {
          reach[s][g.dst(e)] = true;
          stack.push_back(g.dst(e));
        }
    }
  }
  return reach;
}

/// Strongly connected components containing at least one edge, each with
/// more internal edges than vertices, i.e. carrying two distinct cycles and
/// hence uncountably many irrational paths.
inline std::vector<std::vector<VertexId>> irrational_components(const Digraph& g) {
  const auto reach = reachability(g);
  const std::size_t n = g.vertex_count();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<VertexId>> out;
  for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) {
    if (seen[v] || !reach[v][v]) continue;
    std::vector<VertexId> comp;
    for (VertexId u = 0; u < static_cast<VertexId>(n); ++u)
      if (u == v || (reach[v][u] && reach[u][v])) {
        comp.push_back(u);
        seen[u] = true;
      }
    std::size_t internal = 0;
    for (VertexId u : comp)
      for (EdgeId e : g.out_edges(u))
        if (std::find(comp.begin(), comp.end(), g.dst(e)) != comp.end()) ++internal;
    if (internal > comp.size()) out.push_back(std::move(comp));
  }
  return out;
}

struct OrbitReps {
  std::vector<VertexId> sinks;
  std::vector<FinPath> cycles;  // canonical rotations
  std::vector<std::string> irrational_families;
};

inline std::string family_text(const Digraph& g, const std::vector<VertexId>& comp) {
  std::string s = "irrational paths eventually inside the component {";
  for (std::size_t i = 0; i < comp.size(); ++i) s += (i ? ", " : "") + g.vertex_name(comp[i]);
  return s + "}";
}

inline OrbitReps orbit_reps(const Digraph& g, std::size_t max_cycle_len) {
  OrbitReps r;
  r.sinks = g.sinks();
  r.cycles = simple_cycles(g, max_cycle_len);
  for (const auto& comp : irrational_components(g)) r.irrational_families.push_back(family_text(g, comp));
  return r;
}

struct FiniteDim {
  std::optional<bool> finite;      // nullopt: unknown at this depth
  std::optional<std::size_t> dim;  // set iff finite == true

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["finite_dim"] = finite ? nlohmann::json(*finite) : nlohmann::json("unknown");
    if (dim) j["dim"] = *dim;
    else j["dim"] = (finite && !*finite) ? nlohmann::json("inf") : nlohmann::json(nullptr);
    return j;
  }
};

/// Exact test for an infinite orbit of a sink or rational point: some
/// reduced prefix can be pumped, i.e. an allowed last edge starts at a
/// vertex reachable from a closed path.
inline bool orbit_is_infinite(const BoundaryPoint& x) {
  if (x.is_irrational()) return true;
  const Digraph& g = x.graph();
  const auto reach = reachability(g);
  const std::size_t n = g.vertex_count();
  auto pumpable = [&](VertexId u) {
    for (VertexId c = 0; c < static_cast<VertexId>(n); ++c)
      if (reach[c][c] && (c == u || reach[c][u])) return true;
    return false;
  };
  const std::size_t max_shift = x.is_sink() ? *x.length() : x.preperiod() + x.period() - 1;
  for (std::size_t k = 0; k <= max_shift; ++k) {
    std::vector<EdgeId> forbidden;
    if (k >= 1) forbidden.push_back(*x.edge_at(k - 1));
    if (x.is_rational() && k == x.preperiod()) forbidden.push_back(x.cycle().last_edge());
    for (EdgeId e : g.in_edges(x.vertex_at(k)))
      if (std::find(forbidden.begin(), forbidden.end(), e) == forbidden.end() && pumpable(g.src(e))) return true;
  }
  return false;
}

struct CatalogEntry {
  enum class Kind { SinkClass, RationalChen, RationalQuotient, IrrationalFamily };

  Kind kind;
  std::optional<VertexId> sink;
  std::optional<FinPath> cycle;
  std::optional<Poly> poly;
  std::string family;
  FiniteDim report;
  nlohmann::json noniso_witness;

  /// The base point of a non-family entry.
  PointPtr base_point(const GraphPtr& g) const {
    if (sink) return share(BoundaryPoint::sink(g, FinPath::trivial(*sink)));
    if (cycle) return share(BoundaryPoint::rational(g, FinPath::trivial(cycle->source()), *cycle));
    throw PreconditionError("irrational families have no single base point");
  }

  /// The module the entry stands for (not for families).
  ChenModule module(const GraphPtr& g, const FieldPtr& k) const {
    if (kind == Kind::RationalQuotient) return ChenModule::quotient(base_point(g), k, *poly);
    return ChenModule::untwisted(base_point(g), k);
  }

  std::size_t fibre_dim() const { return poly ? static_cast<std::size_t>(poly->degree()) : 1; }

  std::string kind_name() const {
    switch (kind) {
      case Kind::SinkClass:
        return "sink";
      case Kind::RationalChen:
        return "rational_chen";
      case Kind::RationalQuotient:
        return "rational_quotient";
      case Kind::IrrationalFamily:
        return "irrational_family";
    }
    return {};
  }

  nlohmann::json to_json(const Digraph& g) const {
    nlohmann::json data;
    if (sink) data["sink"] = g.vertex_name(*sink);
    if (cycle) data["cycle"] = g.path_json(*cycle);
    if (poly) data["poly"] = poly::format(*poly);
    if (kind == Kind::IrrationalFamily) data["family"] = family;
    nlohmann::json j{{"kind", kind_name()}, {"data", data}};
    j.update(report.to_json());
    j["noniso_witness"] = noniso_witness;
    return j;
  }
};

inline FiniteDim finite_dim_report(const CatalogEntry& entry, const GraphPtr& g, std::size_t depth = 8) {
  if (entry.kind == CatalogEntry::Kind::IrrationalFamily) return {false, std::nullopt};
  const PointPtr x = entry.base_point(g);
  const Orbit o = orbit_points(x, depth);
  if (o.exhausted) return {true, o.points.size() * entry.fibre_dim()};
  if (orbit_is_infinite(*x)) return {false, std::nullopt};
  return {std::nullopt, std::nullopt};
}

/// The admissible irreducibles: monic, f != t, f != t - 1.
inline std::vector<Poly> quotient_polys(const FieldPtr& k, std::size_t max_deg, const std::vector<Poly>& supplied) {
  if (k->is_quotient()) throw PreconditionError("catalog enumeration needs Q or a prime field, not " + k->to_string());
  const BaseField& b = k->base();
  std::vector<Poly> cands;
  if (b.is_rational()) {
    for (const auto& f : supplied) {
      if (f.degree() < 1) throw PreconditionError("supplied polynomial must have degree >= 1");
      if (static_cast<std::size_t>(f.degree()) > max_deg) continue;
      if (!is_irreducible(f, b)) throw PreconditionError("supplied polynomial " + poly::format(f) + " is reducible");
      cands.push_back(poly::monic(b, f));
    }
  } else {
    cands = enumerate_irreducibles(b.p, max_deg);
    for (const auto& f : supplied)
      if (!is_irreducible(f, b)) throw PreconditionError("supplied polynomial " + poly::format(f) + " is reducible");
  }
  const Poly t = Poly::monomial(1);
  const Poly t1 = poly::canon(b, Poly({Rational(-1), Rational(1)}));
  std::vector<Poly> out;
  for (auto& f : cands)
    if (!(f.coeffs == t.coeffs) && !(f.coeffs == t1.coeffs) &&
        std::none_of(out.begin(), out.end(), [&](const Poly& h) { return h.coeffs == f.coeffs; }))
      out.push_back(f);
  std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& c) {
    if (a.degree() != c.degree()) return a.degree() < c.degree();
    return std::lexicographical_compare(a.coeffs.rbegin(), a.coeffs.rend(), c.coeffs.rbegin(), c.coeffs.rend());
  });
  return out;
}

struct Catalog {
  std::string label = "spectral simple modules";
  FieldPtr field;
  std::vector<CatalogEntry> entries;

  nlohmann::json to_json(const Digraph& g) const {
    nlohmann::json e = nlohmann::json::array();
    for (const auto& entry : entries) e.push_back(entry.to_json(g));
    return {{"label", label}, {"field", field->to_string()}, {"entries", e}};
  }
};

/// Non-isomorphism data for every entry: the K-dimension of its
/// restriction at each catalog base point, and at its own base point the
/// annihilating polynomial of the isotropy generator. Two entries with
/// different profiles or different polynomials are not isomorphic.
inline void attach_witnesses(Catalog& cat, const GraphPtr& g, std::size_t depth) {
  std::vector<PointPtr> bases;
  for (const auto& e : cat.entries)
    if (e.kind != CatalogEntry::Kind::IrrationalFamily) bases.push_back(e.base_point(g));
  for (auto& e : cat.entries) {
    if (e.kind == CatalogEntry::Kind::IrrationalFamily) {
      e.noniso_witness = {{"note", "restriction at any rational or sink point is zero"}};
      continue;
    }
    const ChenModule m = e.module(g, cat.field);
    nlohmann::json profile = nlohmann::json::array();
    std::set<std::string> seen;
    for (const auto& b : bases) {
      const std::string key = b->describe();
      if (!seen.insert(key).second) continue;
      profile.push_back({{"point", key}, {"dim", restrict(m, *b, depth).dim()}});
    }
    const Restriction own = restrict(m, m.base(), depth);
    nlohmann::json w{{"base_point", m.base().to_json()}, {"restriction_dim", own.dim()}, {"restriction_profile", profile}};
    if (own.generator) {
      Vec e1(own.dim(), Scalar::zero(cat.field));
      e1[0] = Scalar::one(cat.field);
      w["generator_annihilator"] = format_coeffs(krylov_annihilator(cat.field, *own.generator, e1));
    }
    e.noniso_witness = std::move(w);
  }
}

/// Over a prime field every admissible irreducible of degree <= max_deg is
/// listed; over Q only the supplied polynomials (degree <= 3, certified).
inline Catalog catalog(const GraphPtr& g, const FieldPtr& k, std::size_t max_deg, std::size_t max_cycle_len,
                       const std::vector<Poly>& supplied = {}, std::size_t depth = 8) {
  Catalog cat;
  cat.field = k;
  const auto polys = quotient_polys(k, max_deg, supplied);
  const OrbitReps reps = orbit_reps(*g, max_cycle_len);
  for (VertexId w : reps.sinks) {
    CatalogEntry e{CatalogEntry::Kind::SinkClass, w, std::nullopt, std::nullopt, {}, {}, {}};
    cat.entries.push_back(std::move(e));
  }
  for (const auto& c : reps.cycles) {
    cat.entries.push_back({CatalogEntry::Kind::RationalChen, std::nullopt, c, std::nullopt, {}, {}, {}});
    for (const auto& f : polys)
      cat.entries.push_back({CatalogEntry::Kind::RationalQuotient, std::nullopt, c, f, {}, {}, {}});
  }
  for (const auto& text : reps.irrational_families)
    cat.entries.push_back({CatalogEntry::Kind::IrrationalFamily, std::nullopt, std::nullopt, std::nullopt, text, {}, {}});
  for (auto& e : cat.entries) e.report = finite_dim_report(e, g, depth);
  attach_witnesses(cat, g, depth);
  return cat;
}

}  // namespace leavitt
