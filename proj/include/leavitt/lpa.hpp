#pragma once

// Elements of the Leavitt path algebra L_K(E) in normal form.
//
// Every element is a finite K-combination of monomials mu nu* with
// r(mu) = r(nu). Products are computed with the monomial rule
//   (a b*)(c d*) = a c' d*     if c = b c'
//                = a (d b')*   if b = c b'
//                = 0           otherwise
// and the result is rewritten with the Cuntz-Krieger relation
//   mu' g (nu' g)* -> mu' nu'* - sum_{e != g, s(e) = s(g)} mu' e (nu' e)*
// where g is the special (least-id) out-edge of a regular vertex. Monomials
// whose mu and nu both end in the same special edge never survive, which
// gives a unique normal form.

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "leavitt/errors.hpp"
#include "leavitt/field.hpp"
#include "leavitt/graph.hpp"

namespace leavitt {

struct Monomial {
  FinPath mu;
  FinPath nu;

  /// Order by (|mu|, mu, |nu|, nu).
  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

  long long degree() const { return static_cast<long long>(mu.length()) - static_cast<long long>(nu.length()); }
};

/// The product of two monomials before normalization, or nullopt for 0.
inline std::optional<Monomial> multiply_monomials(const Monomial& a, const Monomial& b) {
  if (b.mu.starts_with(a.nu)) return Monomial{compose(a.mu, b.mu.drop_front(a.nu.length())), b.nu};
  if (a.nu.starts_with(b.mu)) return Monomial{a.mu, compose(b.nu, a.nu.drop_front(b.mu.length()))};
  return std::nullopt;
}

class AlgebraElement {
 public:
  using Terms = std::map<Monomial, Scalar>;

  AlgebraElement(GraphPtr g, FieldPtr k) : g_(std::move(g)), k_(std::move(k)) {}

  /// Normalizes an arbitrary term map.
  AlgebraElement(GraphPtr g, FieldPtr k, const Terms& raw) : AlgebraElement(std::move(g), std::move(k)) {
    std::vector<std::pair<Monomial, Scalar>> work(raw.begin(), raw.end());
    normalize(std::move(work));
  }

  const Digraph& graph() const { return *g_; }
  const GraphPtr& graph_ptr() const { return g_; }
  const FieldPtr& field() const { return k_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  AlgebraElement operator+(const AlgebraElement& o) const {
    check(o);
    AlgebraElement r = *this;
    for (const auto& [m, c] : o.terms_) r.accumulate(m, c);
    return r;
  }
  AlgebraElement operator-() const { return scaled(-Scalar::one(k_)); }
  AlgebraElement operator-(const AlgebraElement& o) const { return *this + (-o); }

  AlgebraElement operator*(const AlgebraElement& o) const {
    check(o);
    Terms acc;
    for (const auto& [m1, c1] : terms_)
      for (const auto& [m2, c2] : o.terms_)
        if (auto m = multiply_monomials(m1, m2)) add_into(acc, *m, c1 * c2);
    return AlgebraElement(g_, k_, acc);
  }

  AlgebraElement scaled(const Scalar& s) const {
    AlgebraElement r(g_, k_);
    if (s.is_zero()) return r;
    const Scalar t = s.embed(k_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, c * t);
    return r;
  }

  /// The involution mu nu* -> nu mu* (coefficients fixed).
  AlgebraElement star() const {
    AlgebraElement r(g_, k_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(Monomial{m.nu, m.mu}, c);
    return r;
  }

  /// The same element with coefficients pushed into an extension field.
  AlgebraElement extend_scalars(const FieldPtr& ext) const {
    AlgebraElement r(g_, ext);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, c.embed(ext));
    return r;
  }

  bool operator==(const AlgebraElement& o) const { return same_field(k_, o.k_) && terms_ == o.terms_; }

  /// Canonical text: terms in monomial order joined by " + " / " - ".
  std::string to_string() const;

  nlohmann::json to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [m, c] : terms_)
      terms.push_back({{"coeff", c.to_string()}, {"mu", g_->path_json(m.mu)}, {"nu", g_->path_json(m.nu)},
                       {"source", g_->vertex_name(m.mu.source())}});
    return {{"nf", to_string()}, {"terms", terms}};
  }

 private:
  static void add_into(Terms& acc, const Monomial& m, const Scalar& c) {
    auto it = acc.find(m);
    if (it == acc.end()) acc.emplace(m, c);
    else it->second += c;
  }

  void accumulate(const Monomial& m, const Scalar& c) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      if (!c.is_zero()) terms_.emplace(m, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  bool violates(const Monomial& m) const {
    if (m.mu.is_trivial() || m.nu.is_trivial()) return false;
    const EdgeId e = m.mu.last_edge();
    return e == m.nu.last_edge() && e == g_->special_edge(g_->src(e));
  }

  void normalize(std::vector<std::pair<Monomial, Scalar>> work) {
    while (!work.empty()) {
      auto [m, c] = std::move(work.back());
      work.pop_back();
      if (c.is_zero()) continue;
      if (!violates(m)) {
        accumulate(m, c);
        continue;
      }
      const EdgeId special = m.mu.last_edge();
      const FinPath mu = m.mu.drop_back(), nu = m.nu.drop_back();
      work.emplace_back(Monomial{mu, nu}, c);
      for (EdgeId e : g_->out_edges(g_->src(special))) {
        if (e == special) continue;
        const FinPath step = g_->edge_path(e);
        work.emplace_back(Monomial{compose(mu, step), compose(nu, step)}, -c);
      }
    }
  }

  void check(const AlgebraElement& o) const {
    if (g_ != o.g_) throw PreconditionError("elements over different graphs");
    if (!same_field(k_, o.k_)) throw PreconditionError("elements over different fields");
  }

  friend AlgebraElement reduce(const AlgebraElement&);

  GraphPtr g_;
  FieldPtr k_;
  Terms terms_;
};

/// Normal form (elements built through the public API already are).
inline AlgebraElement reduce(const AlgebraElement& x) { return AlgebraElement(x.g_, x.k_, x.terms_); }

inline AlgebraElement monomial(const GraphPtr& g, const FieldPtr& k, const FinPath& mu, const FinPath& nu,
                               std::optional<Scalar> coeff = std::nullopt) {
  if (mu.range() != nu.range()) throw PreconditionError("monomial needs r(mu) = r(nu)");
  AlgebraElement::Terms t;
  t.emplace(Monomial{mu, nu}, coeff ? coeff->embed(k) : Scalar::one(k));
  return AlgebraElement(g, k, t);
}

inline AlgebraElement vertex_element(const GraphPtr& g, const FieldPtr& k, VertexId v) {
  return monomial(g, k, FinPath::trivial(v), FinPath::trivial(v));
}
inline AlgebraElement edge_element(const GraphPtr& g, const FieldPtr& k, EdgeId e) {
  return monomial(g, k, g->edge_path(e), FinPath::trivial(g->dst(e)));
}
inline AlgebraElement ghost_element(const GraphPtr& g, const FieldPtr& k, EdgeId e) {
  return monomial(g, k, FinPath::trivial(g->dst(e)), g->edge_path(e));
}
/// The path mu as an element (nu trivial).
inline AlgebraElement path_element(const GraphPtr& g, const FieldPtr& k, const FinPath& mu) {
  return monomial(g, k, mu, FinPath::trivial(mu.range()));
}

/// The identity sum_v v (the graph is finite).
inline AlgebraElement one(const GraphPtr& g, const FieldPtr& k) {
  AlgebraElement::Terms t;
  for (VertexId v = 0; v < static_cast<VertexId>(g->vertex_count()); ++v)
    t.emplace(Monomial{FinPath::trivial(v), FinPath::trivial(v)}, Scalar::one(k));
  return AlgebraElement(g, k, t);
}

/// (mu nu*)(gamma delta*) in normal form.
inline AlgebraElement mono_mul(const GraphPtr& g, const FieldPtr& k, const Monomial& a, const Monomial& b) {
  AlgebraElement::Terms t;
  if (auto m = multiply_monomials(a, b)) t.emplace(*m, Scalar::one(k));
  return AlgebraElement(g, k, t);
}

inline AlgebraElement star(const AlgebraElement& x) { return x.star(); }

// ---------------------------------------------------------------------------
// Twists.

/// Edge weights a = (a_e) with values in a field K' (default 1).
class TwistParam {
 public:
  explicit TwistParam(FieldPtr k) : k_(std::move(k)) {}

  static TwistParam trivial(FieldPtr k) { return TwistParam(std::move(k)); }

  TwistParam& set(EdgeId e, const Scalar& a) {
    if (a.is_zero()) throw PreconditionError("twist values must be nonzero");
    w_.insert_or_assign(e, a.embed(k_));
    return *this;
  }

  const FieldPtr& field() const { return k_; }
  Scalar weight(EdgeId e) const {
    auto it = w_.find(e);
    return it == w_.end() ? Scalar::one(k_) : it->second;
  }
  bool is_trivial() const {
    return std::all_of(w_.begin(), w_.end(), [](const auto& kv) { return kv.second.is_one(); });
  }

  /// Pointwise product (the twist of sigma_a o sigma_b).
  TwistParam operator*(const TwistParam& o) const {
    TwistParam r(k_);
    for (const auto& [e, a] : w_) r.set(e, a * o.weight(e));
    for (const auto& [e, b] : o.w_)
      if (!w_.count(e)) r.set(e, b);
    return r;
  }

  nlohmann::json to_json(const Digraph& g) const {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [e, a] : w_) j[g.edge_name(e)] = a.to_string();
    return j;
  }

 private:
  FieldPtr k_;
  std::map<EdgeId, Scalar> w_;
};

/// {"e": "2", "f": "1/3"} with values parsed in k.
inline TwistParam parse_twist(const Digraph& g, const FieldPtr& k, const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("twist JSON must be an object");
  TwistParam a(k);
  for (const auto& [id, v] : j.items()) {
    const std::string text = v.is_string() ? v.get<std::string>() : v.dump();
    a.set(g.edge(id), parse_scalar(text, k));
  }
  return a;
}

/// a_q = a_{e_1} ... a_{e_n}; 1 for a trivial path.
inline Scalar path_weight(const TwistParam& a, const FinPath& q) {
  Scalar w = Scalar::one(a.field());
  for (EdgeId e : q.edges()) w *= a.weight(e);
  return w;
}

inline bool q_stable(const TwistParam& a, const FinPath& q) { return path_weight(a, q).is_one(); }

/// sigma_a(mu nu*) = a_mu a_nu^{-1} mu nu*. The result lives over the field
/// of the twist (x is extended to it first).
inline AlgebraElement sigma_twist(const TwistParam& a, const AlgebraElement& x) {
  AlgebraElement::Terms t;
  for (const auto& [m, c] : x.terms())
    t.emplace(m, c.embed(a.field()) * path_weight(a, m.mu) / path_weight(a, m.nu));
  return AlgebraElement(x.graph_ptr(), a.field(), t);
}

// ---------------------------------------------------------------------------
// Text form. A monomial mu nu* with nu = f_1...f_k prints as
// "e1.e2.~f_k.....~f_1"; a vertex prints as its id.

inline std::string format_monomial(const Digraph& g, const Monomial& m) {
  if (m.mu.is_trivial() && m.nu.is_trivial()) return g.vertex_name(m.mu.source());
  std::string s;
  for (EdgeId e : m.mu.edges()) s += (s.empty() ? "" : ".") + g.edge_name(e);
  for (auto it = m.nu.edges().rbegin(); it != m.nu.edges().rend(); ++it) s += (s.empty() ? "~" : ".~") + g.edge_name(*it);
  return s;
}

inline std::string AlgebraElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    const std::string mono = format_monomial(*g_, m);
    bool negative = false;
    std::string coeff;
    if (k_->is_quotient()) {
      if (!c.is_one()) coeff = "(" + c.to_string() + ")*";
    } else {
      Rational r = c.coords()[0];
      if (r < 0) {
        negative = true;
        r = -r;
      }
      if (r != 1) coeff = leavitt::to_string(r) + "*";
    }
    if (out.empty()) out = negative ? "-" : "";
    else out += negative ? " - " : " + ";
    out += coeff + mono;
  }
  return out;
}

namespace detail {

class ElementParser {
 public:
  ElementParser(GraphPtr g, FieldPtr k, std::string_view text) : g_(std::move(g)), k_(std::move(k)), s_(text) {}

  AlgebraElement parse() {
    AlgebraElement x = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected character");
    return x;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError(why + " at position " + std::to_string(i_) + " in \"" + std::string(s_) + "\"");
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  char peek() {
    skip();
    return i_ < s_.size() ? s_[i_] : '\0';
  }

  AlgebraElement expr() {
    AlgebraElement acc(g_, k_);
    bool negative = eat('-');
    if (!negative) eat('+');
    acc = negative ? -term() : term();
    while (true) {
      if (eat('+')) acc = acc + term();
      else if (eat('-')) acc = acc - term();
      else return acc;
    }
  }

  AlgebraElement term() {
    AlgebraElement acc = power();
    while (eat('*') || eat('.')) acc = acc * power();
    return acc;
  }

  AlgebraElement power() {
    AlgebraElement base = atom();
    if (!eat('^')) return base;
    const std::size_t n = static_cast<std::size_t>(integer());
    AlgebraElement acc = one(g_, k_);
    for (std::size_t j = 0; j < n; ++j) acc = acc * base;
    return acc;
  }

  BigInt integer() {
    skip();
    const std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail("expected integer");
    return BigInt(std::string(s_.substr(start, i_ - start)));
  }

  std::string ident() {
    skip();
    const std::size_t start = i_;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_' || s_[i_] == '\''))
      ++i_;
    if (start == i_) fail("expected identifier");
    return std::string(s_.substr(start, i_ - start));
  }

  AlgebraElement atom() {
    if (eat('(')) {
      AlgebraElement x = expr();
      if (!eat(')')) fail("expected ')'");
      return x;
    }
    if (eat('~')) return atom().star();
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const BigInt num = integer();
      BigInt den = 1;
      if (eat('/')) den = integer();
      if (den == 0) fail("zero denominator");
      return one(g_, k_).scaled(Scalar::from_rational(k_, Rational(num, den)));
    }
    const std::string id = ident();
    if (auto v = g_->find_vertex(id)) return vertex_element(g_, k_, *v);
    if (auto e = g_->find_edge(id)) return edge_element(g_, k_, *e);
    if (id == "t" && k_->is_quotient()) return one(g_, k_).scaled(Scalar::generator(k_));
    fail("unknown identifier \"" + id + "\"");
  }

  GraphPtr g_;
  FieldPtr k_;
  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace detail

/// Parses "2*e1.e2*~e3 + 1/3*v2": '.' and '*' multiply, '~' applies the
/// involution, '^n' is a power, parentheses group, and in a quotient field
/// the identifier t (if not a graph id) is the class of t.
inline AlgebraElement parse_element(const GraphPtr& g, const FieldPtr& k, std::string_view text) {
  return detail::ElementParser(g, k, text).parse();
}

}  // namespace leavitt
