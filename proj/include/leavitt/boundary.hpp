#pragma once

// The boundary path space X of a row-finite graph: finite paths ending at
// sinks, eventually periodic ("rational") infinite paths, and aperiodic
// ("irrational") infinite paths produced by a generator. Also the elements
// of a tail-equivalence class in canonical reduced form, orbits, isotropy
// and the groupoid degree of an orbit point.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "leavitt/errors.hpp"
#include "leavitt/graph.hpp"

namespace leavitt {

/// Rotation of a closed path by r positions to the left (r taken mod n).
inline FinPath rotate_left(const Digraph& g, const FinPath& c, std::size_t r) {
  r %= c.length();
  return r == 0 ? c : rotate(g, c, r);
}

// ---------------------------------------------------------------------------

/// An infinite edge sequence given by a rule, memoized on demand. The rule is
/// asserted to be aperiodic; construction spot-checks that no period up to a
/// quarter of the checked window repeats over its second half.
///
/// The memo is mutable: calls on one stream must be serialized by the caller.
class IrrationalStream {
 public:
  using Rule = std::function<EdgeId(std::size_t)>;

  IrrationalStream(GraphPtr g, std::string rule_name, nlohmann::json params, Rule rule,
                   std::size_t check_length = 256)
      : g_(std::move(g)), name_(std::move(rule_name)), params_(std::move(params)), rule_(std::move(rule)) {
    extend(check_length);
    const std::size_t half = check_length / 2;
    // a genuine repeat fills the second half at least four times; Sturmian
    // windows can look periodic for fewer repetitions
    for (std::size_t q = 1; q <= half / 4; ++q) {
      bool periodic = true;
      for (std::size_t i = half; i + q < check_length && periodic; ++i) periodic = memo_[i] == memo_[i + q];
      if (periodic)
        throw PreconditionError("generator \"" + name_ + "\" repeats with period " + std::to_string(q));
    }
  }

  EdgeId edge(std::size_t i) const {
    if (i >= memo_.size()) extend(std::max(i + 1, 2 * memo_.size()));
    return memo_[i];
  }
  VertexId vertex(std::size_t i) const { return g_->src(edge(i)); }

  const Digraph& graph() const { return *g_; }
  const GraphPtr& graph_ptr() const { return g_; }
  const std::string& name() const { return name_; }
  const nlohmann::json& params() const { return params_; }

 private:
  void extend(std::size_t n) const {
    while (memo_.size() < n) {
      const EdgeId e = rule_(memo_.size());
      if (e < 0 || e >= static_cast<EdgeId>(g_->edge_count()))
        throw PreconditionError("generator produced an unknown edge");
      if (!memo_.empty() && g_->dst(memo_.back()) != g_->src(e))
        throw PreconditionError("generator output is not a path");
      memo_.push_back(e);
    }
  }

  GraphPtr g_;
  std::string name_;
  nlohmann::json params_;
  Rule rule_;
  mutable std::vector<EdgeId> memo_;
};

using StreamPtr = std::shared_ptr<const IrrationalStream>;

namespace detail {

inline std::pair<EdgeId, EdgeId> two_loops(const Digraph& g, const nlohmann::json& params) {
  EdgeId e, f;
  if (params.contains("e") && params.contains("f")) {
    e = g.edge(params.at("e").get<std::string>());
    f = g.edge(params.at("f").get<std::string>());
  } else {
    // the two least loops at the first vertex carrying two loops
    std::optional<std::pair<EdgeId, EdgeId>> pick;
    for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()) && !pick; ++v) {
      std::vector<EdgeId> loops;
      for (EdgeId x : g.out_edges(v))
        if (g.dst(x) == v) loops.push_back(x);
      if (loops.size() >= 2) pick = std::make_pair(loops[0], loops[1]);
    }
    if (!pick) throw PreconditionError("no vertex with two loops for the built-in generator");
    std::tie(e, f) = *pick;
  }
  const VertexId v = g.src(e);
  if (e == f || g.dst(e) != v || g.src(f) != v || g.dst(f) != v)
    throw PreconditionError("built-in generators need two distinct loops at one vertex");
  return {e, f};
}

}  // namespace detail

/// Named aperiodic generators over two loops e, f at one vertex:
///   "thue-morse-like": blocks e^1 f^1 e^2 f^2 e^3 f^3 ...
///   "fibonacci":       the Fibonacci word (fixed point of e -> ef, f -> e).
inline StreamPtr builtin_stream(const GraphPtr& g, const std::string& rule, const nlohmann::json& params) {
  auto [e, f] = detail::two_loops(*g, params);
  nlohmann::json used = {{"e", g->edge_name(e)}, {"f", g->edge_name(f)}};
  if (rule == "thue-morse-like") {
    auto r = [e = e, f = f](std::size_t i) {
      // pair m occupies positions [m(m-1), m(m+1))
      std::size_t m = 1;
      while (m * (m + 1) <= i) ++m;
      return i - m * (m - 1) < m ? e : f;
    };
    return std::make_shared<IrrationalStream>(g, rule, used, r);
  }
  if (rule == "fibonacci") {
    auto word = std::make_shared<std::vector<bool>>(std::vector<bool>{false});
    auto r = [e = e, f = f, word](std::size_t i) {
      while (word->size() <= i) {
        std::vector<bool> next;
        for (bool b : *word) {
          next.push_back(false);
          if (!b) next.push_back(true);
        }
        *word = std::move(next);
      }
      return (*word)[i] ? f : e;
    };
    return std::make_shared<IrrationalStream>(g, rule, used, r);
  }
  throw ParseError("unknown irrational rule \"" + rule + "\"");
}

// ---------------------------------------------------------------------------

/// A point of X. Rational points are kept in strip-and-rotate normal form
/// prefix * cycle^inf with a primitive cycle and a prefix that does not end
/// with the cycle's last edge; irrational points are prefix * stream[offset..]
/// with the analogous stripping applied.
class BoundaryPoint {
 public:
  enum class Kind { Sink, Rational, Irrational };

  static BoundaryPoint sink(GraphPtr g, FinPath p) {
    if (!g->is_sink(p.range())) throw PreconditionError("finite boundary path must end at a sink");
    BoundaryPoint x(Kind::Sink, std::move(g));
    x.prefix_ = std::move(p);
    return x;
  }

  static BoundaryPoint rational(GraphPtr g, FinPath prefix, const FinPath& closed) {
    if (!closed.is_closed()) throw PreconditionError("rational point needs a closed path");
    if (prefix.range() != closed.source()) throw PreconditionError("prefix does not lead into the cycle");
    BoundaryPoint x(Kind::Rational, std::move(g));
    x.prefix_ = std::move(prefix);
    x.cycle_ = primitive_root(closed).first;
    while (!x.prefix_.is_trivial() && x.prefix_.last_edge() == x.cycle_.last_edge()) {
      x.prefix_ = x.prefix_.drop_back();
      x.cycle_ = rotate_left(*x.g_, x.cycle_, x.cycle_.length() - 1);
    }
    return x;
  }

  static BoundaryPoint irrational(StreamPtr s, FinPath prefix, std::size_t offset = 0) {
    if (prefix.range() != s->vertex(offset)) throw PreconditionError("prefix does not lead into the stream");
    BoundaryPoint x(Kind::Irrational, s->graph_ptr());
    x.prefix_ = std::move(prefix);
    x.offset_ = offset;
    while (!x.prefix_.is_trivial() && x.offset_ > 0 && x.prefix_.last_edge() == s->edge(x.offset_ - 1)) {
      x.prefix_ = x.prefix_.drop_back();
      --x.offset_;
    }
    x.stream_ = std::move(s);
    return x;
  }
  static BoundaryPoint irrational(StreamPtr s) {
    FinPath p = FinPath::trivial(s->vertex(0));
    return irrational(std::move(s), std::move(p), 0);
  }

  Kind kind() const { return kind_; }
  bool is_sink() const { return kind_ == Kind::Sink; }
  bool is_rational() const { return kind_ == Kind::Rational; }
  bool is_irrational() const { return kind_ == Kind::Irrational; }

  const Digraph& graph() const { return *g_; }
  const GraphPtr& graph_ptr() const { return g_; }
  /// The whole path for sink points, the finite prefix otherwise.
  const FinPath& prefix() const { return prefix_; }
  const FinPath& cycle() const { return cycle_; }
  std::size_t period() const { return cycle_.length(); }
  std::size_t preperiod() const { return prefix_.length(); }
  const StreamPtr& stream() const { return stream_; }
  std::size_t offset() const { return offset_; }

  std::optional<EdgeId> edge_at(std::size_t i) const {
    if (i < prefix_.length()) return prefix_.edge(i);
    const std::size_t j = i - prefix_.length();
    switch (kind_) {
      case Kind::Sink:
        return std::nullopt;
      case Kind::Rational:
        return cycle_.edge(j % cycle_.length());
      case Kind::Irrational:
        return stream_->edge(offset_ + j);
    }
    return std::nullopt;
  }

  /// Source of the tail after i edges.
  VertexId vertex_at(std::size_t i) const {
    if (i <= prefix_.length() && (i < prefix_.length() || kind_ == Kind::Sink)) return prefix_.vertex(i);
    if (kind_ == Kind::Sink) throw PreconditionError("position beyond the end of a finite path");
    const std::size_t j = i - prefix_.length();
    return kind_ == Kind::Rational ? cycle_.vertex(j % cycle_.length()) : stream_->vertex(offset_ + j);
  }
  VertexId source() const { return vertex_at(0); }

  std::optional<std::size_t> length() const {
    if (kind_ == Kind::Sink) return prefix_.length();
    return std::nullopt;
  }

  /// Drops the first k edges.
  BoundaryPoint shift(std::size_t k) const {
    BoundaryPoint x = *this;
    const std::size_t rho = prefix_.length();
    if (kind_ == Kind::Sink) {
      if (k > rho) throw PreconditionError("shift beyond the end of a finite path");
      x.prefix_ = prefix_.drop_front(k);
    } else if (k <= rho) {
      x.prefix_ = prefix_.drop_front(k);
    } else if (kind_ == Kind::Rational) {
      x.cycle_ = rotate_left(*g_, cycle_, (k - rho) % cycle_.length());
      x.prefix_ = FinPath::trivial(x.cycle_.source());
    } else {
      x.offset_ = offset_ + (k - rho);
      x.prefix_ = FinPath::trivial(stream_->vertex(x.offset_));
    }
    return x;
  }

  /// mu * x; requires r(mu) = s(x).
  BoundaryPoint prepend(const FinPath& mu) const {
    switch (kind_) {
      case Kind::Sink:
        return sink(g_, compose(mu, prefix_));
      case Kind::Rational:
        return rational(g_, compose(mu, prefix_), cycle_);
      case Kind::Irrational:
        return irrational(stream_, compose(mu, prefix_), offset_);
    }
    throw PreconditionError("unreachable");
  }

  /// The first n edges (fewer for a short finite path).
  std::vector<EdgeId> expand(std::size_t n) const {
    std::vector<EdgeId> out;
    for (std::size_t i = 0; i < n; ++i) {
      auto e = edge_at(i);
      if (!e) break;
      out.push_back(*e);
    }
    return out;
  }

  /// Structural equality of normal forms (irrational points on distinct
  /// streams compare unequal; use tail_equiv / locate for semantics).
  bool operator==(const BoundaryPoint& o) const {
    if (kind_ != o.kind_ || prefix_ != o.prefix_) return false;
    if (kind_ == Kind::Rational) return cycle_ == o.cycle_;
    if (kind_ == Kind::Irrational) return stream_ == o.stream_ && offset_ == o.offset_;
    return true;
  }

  std::string describe() const {
    const auto& g = *g_;
    switch (kind_) {
      case Kind::Sink:
        return g.format(prefix_);
      case Kind::Rational: {
        std::string s = prefix_.is_trivial() ? "" : g.format(prefix_) + ".";
        return s + "(" + g.format(cycle_) + ")^inf";
      }
      case Kind::Irrational: {
        std::string s = prefix_.is_trivial() ? "" : g.format(prefix_) + ".";
        return s + stream_->name() + "[" + std::to_string(offset_) + "..]";
      }
    }
    return {};
  }

  nlohmann::json to_json() const {
    const auto& g = *g_;
    nlohmann::json j;
    switch (kind_) {
      case Kind::Sink:
        j["sink"] = g.path_json(prefix_);
        if (prefix_.is_trivial()) j["vertex"] = g.vertex_name(prefix_.source());
        break;
      case Kind::Rational:
        j["prefix"] = g.path_json(prefix_);
        j["cycle"] = g.path_json(cycle_);
        break;
      case Kind::Irrational:
        j["irrational"] = {{"rule", stream_->name()}, {"params", stream_->params()}};
        j["prefix"] = g.path_json(prefix_);
        if (prefix_.is_trivial()) j["vertex"] = g.vertex_name(prefix_.source());
        j["offset"] = offset_;
        break;
    }
    return j;
  }

 private:
  BoundaryPoint(Kind k, GraphPtr g) : kind_(k), g_(std::move(g)) {}

  Kind kind_;
  GraphPtr g_;
  FinPath prefix_;
  FinPath cycle_;
  StreamPtr stream_;
  std::size_t offset_ = 0;
};

using PointPtr = std::shared_ptr<const BoundaryPoint>;

inline PointPtr share(BoundaryPoint x) { return std::make_shared<const BoundaryPoint>(std::move(x)); }

/// Point JSON: {"sink": [...]} (plus "vertex" for a trivial path),
/// {"prefix": [...], "cycle": [...]}, or
/// {"irrational": {"rule": ..., "params": {...}}, "prefix": [...], "offset": k}.
inline BoundaryPoint parse_point(const GraphPtr& g, const nlohmann::json& j) {
  try {
    auto path_from = [&](const nlohmann::json& arr, const char* vertex_key) {
      std::vector<EdgeId> e;
      for (const auto& id : arr) e.push_back(g->edge(id.get<std::string>()));
      std::optional<VertexId> start;
      if (j.contains(vertex_key)) start = g->vertex(j.at(vertex_key).get<std::string>());
      return g->path(e, start);
    };
    if (j.contains("sink")) {
      const auto& s = j.at("sink");
      if (s.is_string()) return BoundaryPoint::sink(g, FinPath::trivial(g->vertex(s.get<std::string>())));
      return BoundaryPoint::sink(g, path_from(s, "vertex"));
    }
    if (j.contains("cycle")) {
      FinPath cycle = path_from(j.at("cycle"), "__none__");
      FinPath prefix = j.contains("prefix") && !j.at("prefix").empty()
                           ? path_from(j.at("prefix"), "__none__")
                           : FinPath::trivial(cycle.source());
      return BoundaryPoint::rational(g, std::move(prefix), cycle);
    }
    if (j.contains("irrational")) {
      const auto& spec = j.at("irrational");
      StreamPtr s = builtin_stream(g, spec.at("rule").get<std::string>(), spec.value("params", nlohmann::json::object()));
      const std::size_t offset = j.value("offset", std::size_t{0});
      FinPath prefix = j.contains("prefix") && !j.at("prefix").empty() ? path_from(j.at("prefix"), "__none__")
                                                                        : FinPath::trivial(s->vertex(offset));
      return BoundaryPoint::irrational(std::move(s), std::move(prefix), offset);
    }
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("point JSON: ") + ex.what());
  }
  throw ParseError("point JSON must contain \"sink\", \"cycle\" or \"irrational\"");
}

// ---------------------------------------------------------------------------

/// Degree |mu| - |nu| of an orbit point relative to its base. For rational
/// bases only the residue mod the period is meaningful; `value` is the
/// canonical representative |prefix| - shift.
struct Degree {
  long long value = 0;
  std::size_t modulus = 0;  // 0: exact integer

  bool congruent(long long k) const {
    if (modulus == 0) return k == value;
    const long long n = static_cast<long long>(modulus);
    return ((k - value) % n + n) % n == 0;
  }
};

/// The boundary path mu * shift^k(x) of the class [x], in reduced form: the
/// prefix never ends with the edge that precedes the tail in x, and for a
/// rational x the shift is below preperiod + period.
class ClassElement {
 public:
  ClassElement(PointPtr base, FinPath prefix, std::size_t shift)
      : base_(std::move(base)), prefix_(std::move(prefix)), shift_(shift) {
    const auto& x = *base_;
    if (x.is_sink() && shift_ > *x.length()) throw PreconditionError("shift beyond the end of a finite path");
    normalize_shift();
    if (prefix_.range() != x.vertex_at(shift_)) throw PreconditionError("prefix does not lead into the shifted base");
    reduce();
  }

  static ClassElement of_base(const PointPtr& base) { return {base, FinPath::trivial(base->source()), 0}; }

  const BoundaryPoint& base() const { return *base_; }
  const PointPtr& base_ptr() const { return base_; }
  const FinPath& prefix() const { return prefix_; }
  std::size_t shift() const { return shift_; }

  std::optional<EdgeId> edge_at(std::size_t i) const {
    if (i < prefix_.length()) return prefix_.edge(i);
    return base_->edge_at(shift_ + i - prefix_.length());
  }
  VertexId source() const { return prefix_.source(); }

  /// z with this = nu * z, if any.
  std::optional<ClassElement> strip(const FinPath& nu) const {
    if (nu.source() != source()) return std::nullopt;
    for (std::size_t i = 0; i < nu.length(); ++i)
      if (edge_at(i) != nu.edge(i)) return std::nullopt;
    if (nu.length() <= prefix_.length()) return ClassElement(base_, prefix_.drop_front(nu.length()), shift_);
    return ClassElement(base_, FinPath::trivial(nu.range()), shift_ + nu.length() - prefix_.length());
  }

  /// mu * this; requires r(mu) = s(this).
  ClassElement prepend(const FinPath& mu) const { return {base_, compose(mu, prefix_), shift_}; }

  BoundaryPoint to_point() const { return base_->shift(shift_).prepend(prefix_); }

  Degree degree() const {
    return {static_cast<long long>(prefix_.length()) - static_cast<long long>(shift_),
            base_->is_rational() ? base_->period() : 0};
  }

  /// The first `shift` edges of the base, i.e. nu with base = nu * tail.
  FinPath base_prefix() const {
    const auto& g = base_->graph();
    return g.path(base_->expand(shift_), base_->source());
  }

  /// Ordering and equality assume a common base.
  auto operator<=>(const ClassElement& o) const {
    if (auto c = prefix_ <=> o.prefix_; c != 0) return c;
    return shift_ <=> o.shift_;
  }
  bool operator==(const ClassElement& o) const { return prefix_ == o.prefix_ && shift_ == o.shift_; }

  std::string describe() const {
    const auto& g = base_->graph();
    std::string s = prefix_.is_trivial() ? "" : g.format(prefix_);
    return s + "@" + std::to_string(shift_);
  }

  nlohmann::json to_json() const {
    return {{"prefix", base_->graph().path_json(prefix_)},
            {"vertex", base_->graph().vertex_name(source())},
            {"shift", shift_},
            {"point", to_point().to_json()}};
  }

 private:
  void normalize_shift() {
    const auto& x = *base_;
    if (!x.is_rational()) return;
    const std::size_t rho = x.preperiod(), n = x.period();
    if (shift_ >= rho + n) shift_ = rho + (shift_ - rho) % n;
  }

  void reduce() {
    const auto& x = *base_;
    while (!prefix_.is_trivial()) {
      const EdgeId last = prefix_.last_edge();
      if (shift_ >= 1 && x.edge_at(shift_ - 1) == last) {
        prefix_ = prefix_.drop_back();
        --shift_;
      } else if (x.is_rational() && shift_ == x.preperiod() && last == x.cycle().last_edge()) {
        prefix_ = prefix_.drop_back();
        shift_ = x.preperiod() + x.period() - 1;
      } else {
        break;
      }
    }
  }

  PointPtr base_;
  FinPath prefix_;
  std::size_t shift_ = 0;
};

/// Equality of two elements of the same class.
inline bool class_eq(const ClassElement& u, const ClassElement& v) {
  if (!(u.base() == v.base())) throw PreconditionError("class elements over different bases");
  return u == v;
}

inline Degree degree_of(const ClassElement& y) { return y.degree(); }

inline BoundaryPoint shift(const BoundaryPoint& x, std::size_t k) { return x.shift(k); }

// ---------------------------------------------------------------------------

struct Located {
  std::optional<ClassElement> element;
  bool certified = true;  // false: only checked on a bounded window
};

/// Expresses the point p as an element of the class of `base`, if p lies in
/// it. Exact for sink and rational points and for irrational points on the
/// same stream; otherwise a bounded search over shifts <= depth with a
/// matching window of `depth` edges.
inline Located locate(const BoundaryPoint& p, const PointPtr& base, std::size_t depth = 8) {
  const auto& x = *base;
  const auto& g = x.graph();
  if (p.kind() != x.kind()) return {std::nullopt, !p.is_irrational() && !x.is_irrational()};
  switch (p.kind()) {
    case BoundaryPoint::Kind::Sink:
      if (p.prefix().range() != x.prefix().range()) return {std::nullopt, true};
      return {ClassElement(base, p.prefix(), *x.length()), true};
    case BoundaryPoint::Kind::Rational:
      for (std::size_t r = 0; r < x.period(); ++r)
        if (x.period() == p.period() && rotate_left(g, x.cycle(), r) == p.cycle())
          return {ClassElement(base, p.prefix(), x.preperiod() + r), true};
      return {std::nullopt, true};
    case BoundaryPoint::Kind::Irrational:
      break;
  }
  if (p.stream() == x.stream()) {
    const std::size_t po = p.offset(), xo = x.offset();
    if (po >= xo) return {ClassElement(base, p.prefix(), x.preperiod() + (po - xo)), true};
    std::vector<EdgeId> mid;
    for (std::size_t i = po; i < xo; ++i) mid.push_back(p.stream()->edge(i));
    FinPath mu = compose(p.prefix(), g.path(mid, p.prefix().range()));
    return {ClassElement(base, std::move(mu), x.preperiod()), true};
  }
  for (std::size_t i = 0; i <= depth; ++i)
    for (std::size_t j = 0; j <= depth; ++j) {
      bool match = true;
      for (std::size_t t = 0; t < depth && match; ++t) match = p.edge_at(i + t) == x.edge_at(j + t);
      if (match) return {ClassElement(base, g.path(p.expand(i), p.source()), j), false};
    }
  return {std::nullopt, false};
}

struct TailVerdict {
  bool equivalent = false;
  bool certified = true;
};

inline TailVerdict tail_equiv(const BoundaryPoint& x, const BoundaryPoint& y, std::size_t depth = 8) {
  auto loc = locate(y, share(x), depth);
  return {loc.element.has_value(), loc.certified};
}

/// Isotropy of a point: trivial, or infinite cyclic generated in degree n by
/// the (canonically rotated) primitive cycle the point is eventually
/// periodic with.
struct IsotropyDesc {
  bool cyclic = false;
  std::size_t period = 0;
  FinPath cycle;
};

inline IsotropyDesc isotropy(const BoundaryPoint& x) {
  if (!x.is_rational()) return {};
  return {true, x.period(), canonical_rotation(x.graph(), x.cycle())};
}

struct Orbit {
  std::vector<ClassElement> points;
  bool exhausted = false;
};

/// All reduced elements of [x] whose prefix has length <= depth. For
/// irrational x the shifts are also truncated (to |prefix| + depth) and the
/// orbit is never reported exhausted.
inline Orbit orbit_points(const PointPtr& base, std::size_t depth = 8) {
  const auto& x = *base;
  const auto& g = x.graph();
  std::size_t max_shift = 0;
  switch (x.kind()) {
    case BoundaryPoint::Kind::Sink:
      max_shift = *x.length();
      break;
    case BoundaryPoint::Kind::Rational:
      max_shift = x.preperiod() + x.period() - 1;
      break;
    case BoundaryPoint::Kind::Irrational:
      max_shift = x.preperiod() + depth;
      break;
  }
  Orbit out;
  bool boundary_hit = false;
  std::vector<EdgeId> rev;
  for (std::size_t k = 0; k <= max_shift; ++k) {
    const VertexId tail = x.vertex_at(k);
    std::vector<EdgeId> forbidden;
    if (k >= 1) forbidden.push_back(*x.edge_at(k - 1));
    if (x.is_rational() && k == x.preperiod()) forbidden.push_back(x.cycle().last_edge());
    out.points.emplace_back(base, FinPath::trivial(tail), k);
    auto walk = [&](auto&& self, VertexId at) -> void {
      for (EdgeId e : g.in_edges(at)) {
        if (rev.empty() && std::find(forbidden.begin(), forbidden.end(), e) != forbidden.end()) continue;
        rev.push_back(e);
        out.points.emplace_back(base, g.path(std::vector<EdgeId>(rev.rbegin(), rev.rend())), k);
        if (rev.size() == depth) boundary_hit = true;
        else self(self, g.src(e));
        rev.pop_back();
      }
    };
    if (depth > 0) walk(walk, tail);
    else boundary_hit = boundary_hit || !g.in_edges(tail).empty();
  }
  std::sort(out.points.begin(), out.points.end());
  out.exhausted = !boundary_hit && !x.is_irrational();
  return out;
}

}  // namespace leavitt
