#pragma once

// Row-finite digraphs and their finite path monoid.
//
// Vertex and edge ids are opaque strings. Internally both are numbered in
// lexicographic order of their ids, so comparing indices agrees with
// comparing ids; every ordering downstream (special edges, canonical
// rotations, term order) relies on this.

#include <algorithm>
#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "leavitt/errors.hpp"

namespace leavitt {

using VertexId = int;
using EdgeId = int;

class Digraph;
using GraphPtr = std::shared_ptr<const Digraph>;

/// A finite path e_1...e_n, or the trivial path at a vertex. Stores the
/// vertex sequence as well, so sub-paths never need the graph.
class FinPath {
 public:
  FinPath() = default;

  static FinPath trivial(VertexId v) {
    FinPath p;
    p.verts_ = {v};
    return p;
  }

  std::size_t length() const { return edges_.size(); }
  bool is_trivial() const { return edges_.empty(); }
  VertexId source() const { return verts_.front(); }
  VertexId range() const { return verts_.back(); }
  bool is_closed() const { return !is_trivial() && source() == range(); }

  const std::vector<EdgeId>& edges() const { return edges_; }
  EdgeId edge(std::size_t i) const { return edges_[i]; }
  EdgeId last_edge() const { return edges_.back(); }
  /// Vertex before edge i (i == length() gives the range).
  VertexId vertex(std::size_t i) const { return verts_[i]; }

  /// Edges [from, to) as a path (trivial at vertex(from) when empty).
  FinPath slice(std::size_t from, std::size_t to) const {
    FinPath p;
    p.verts_.assign(verts_.begin() + from, verts_.begin() + to + 1);
    p.edges_.assign(edges_.begin() + from, edges_.begin() + to);
    return p;
  }
  FinPath drop_front(std::size_t k) const { return slice(k, length()); }
  FinPath take_front(std::size_t k) const { return slice(0, k); }
  FinPath drop_back(std::size_t k = 1) const { return slice(0, length() - k); }

  bool starts_with(const FinPath& p) const {
    if (p.source() != source() || p.length() > length()) return false;
    return std::equal(p.edges_.begin(), p.edges_.end(), edges_.begin());
  }

  /// Paths are ordered by length, then edge ids, then source vertex.
  std::strong_ordering operator<=>(const FinPath& o) const {
    if (auto c = length() <=> o.length(); c != 0) return c;
    if (auto c = edges_ <=> o.edges_; c != 0) return c;
    return source() <=> o.source();
  }
  bool operator==(const FinPath& o) const { return edges_ == o.edges_ && source() == o.source(); }

 private:
  friend class Digraph;
  friend FinPath compose(const FinPath& p, const FinPath& q);

  std::vector<VertexId> verts_;
  std::vector<EdgeId> edges_;
};

/// pq; requires r(p) = s(q).
inline FinPath compose(const FinPath& p, const FinPath& q) {
  if (p.range() != q.source()) throw PreconditionError("range/source mismatch in path composition");
  FinPath out = p;
  out.edges_.insert(out.edges_.end(), q.edges_.begin(), q.edges_.end());
  out.verts_.insert(out.verts_.end(), q.verts_.begin() + 1, q.verts_.end());
  return out;
}

struct EdgeSpec {
  std::string id;
  std::string src;
  std::string dst;
};

class Digraph {
 public:
  /// Validates uniqueness of ids and that every edge endpoint exists.
  static GraphPtr make(std::vector<std::string> vertices, std::vector<EdgeSpec> edges) {
    auto g = std::shared_ptr<Digraph>(new Digraph());
    std::sort(vertices.begin(), vertices.end());
    if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
      throw ParseError("duplicate vertex id");
    std::sort(edges.begin(), edges.end(), [](const EdgeSpec& a, const EdgeSpec& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < edges.size(); ++i)
      if (edges[i - 1].id == edges[i].id) throw ParseError("duplicate edge id \"" + edges[i].id + "\"");
    g->vertex_names_ = std::move(vertices);
    for (std::size_t i = 0; i < g->vertex_names_.size(); ++i) g->vertex_index_[g->vertex_names_[i]] = static_cast<int>(i);
    for (const auto& e : edges)
      if (g->vertex_index_.count(e.id)) throw ParseError("id \"" + e.id + "\" used for both a vertex and an edge");
    g->out_.resize(g->vertex_names_.size());
    g->in_.resize(g->vertex_names_.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const auto& e = edges[i];
      auto s = g->vertex_index_.find(e.src);
      auto r = g->vertex_index_.find(e.dst);
      if (s == g->vertex_index_.end() || r == g->vertex_index_.end())
        throw ParseError("edge \"" + e.id + "\" refers to an unknown vertex");
      g->edge_names_.push_back(e.id);
      g->src_.push_back(s->second);
      g->dst_.push_back(r->second);
      g->edge_index_[e.id] = static_cast<int>(i);
      g->out_[s->second].push_back(static_cast<int>(i));
      g->in_[r->second].push_back(static_cast<int>(i));
    }
    return g;
  }

  std::size_t vertex_count() const { return vertex_names_.size(); }
  std::size_t edge_count() const { return edge_names_.size(); }
  const std::string& vertex_name(VertexId v) const { return vertex_names_.at(v); }
  const std::string& edge_name(EdgeId e) const { return edge_names_.at(e); }

  std::optional<VertexId> find_vertex(const std::string& id) const {
    auto it = vertex_index_.find(id);
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<EdgeId> find_edge(const std::string& id) const {
    auto it = edge_index_.find(id);
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
  }
  VertexId vertex(const std::string& id) const {
    if (auto v = find_vertex(id)) return *v;
    throw ParseError("unknown vertex \"" + id + "\"");
  }
  EdgeId edge(const std::string& id) const {
    if (auto e = find_edge(id)) return *e;
    throw ParseError("unknown edge \"" + id + "\"");
  }

  VertexId src(EdgeId e) const { return src_.at(e); }
  VertexId dst(EdgeId e) const { return dst_.at(e); }
  /// Out-edges of v in id order.
  const std::vector<EdgeId>& out_edges(VertexId v) const { return out_.at(v); }
  const std::vector<EdgeId>& in_edges(VertexId v) const { return in_.at(v); }
  bool is_sink(VertexId v) const { return out_.at(v).empty(); }

  /// The out-edge with least id; the CK2 normal form eliminates it.
  EdgeId special_edge(VertexId v) const {
    if (is_sink(v)) throw PreconditionError("sink has no special edge");
    return out_[v].front();
  }

  std::vector<VertexId> sinks() const {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < static_cast<VertexId>(vertex_count()); ++v)
      if (is_sink(v)) out.push_back(v);
    return out;
  }

  /// Builds a path from edge indices; `start` is required for trivial paths.
  FinPath path(std::span<const EdgeId> edges, std::optional<VertexId> start = std::nullopt) const {
    FinPath p;
    if (edges.empty()) {
      if (!start) throw PreconditionError("trivial path needs a vertex");
      p.verts_ = {*start};
      return p;
    }
    if (start && *start != src(edges[0])) throw PreconditionError("path does not start at the given vertex");
    p.verts_.push_back(src(edges[0]));
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (i > 0 && dst(edges[i - 1]) != src(edges[i]))
        throw PreconditionError("edges " + edge_name(edges[i - 1]) + " and " + edge_name(edges[i]) +
                                " are not composable");
      p.edges_.push_back(edges[i]);
      p.verts_.push_back(dst(edges[i]));
    }
    return p;
  }
  FinPath path(std::initializer_list<EdgeId> edges) const { return path(std::span<const EdgeId>(edges.begin(), edges.size())); }

  /// Path from edge ids; a single vertex id yields the trivial path there.
  FinPath path_of(const std::vector<std::string>& ids) const {
    if (ids.size() == 1 && find_vertex(ids[0])) return FinPath::trivial(vertex(ids[0]));
    std::vector<EdgeId> e;
    for (const auto& id : ids) e.push_back(edge(id));
    return path(e);
  }
  FinPath edge_path(EdgeId e) const { return path({e}); }

  std::string format(const FinPath& p) const {
    if (p.is_trivial()) return vertex_name(p.source());
    std::string s;
    for (std::size_t i = 0; i < p.length(); ++i) s += (i ? "." : "") + edge_name(p.edge(i));
    return s;
  }

  nlohmann::json path_json(const FinPath& p) const {
    auto j = nlohmann::json::array();
    for (EdgeId e : p.edges()) j.push_back(edge_name(e));
    return j;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["vertices"] = vertex_names_;
    j["edges"] = nlohmann::json::array();
    for (std::size_t i = 0; i < edge_count(); ++i)
      j["edges"].push_back({{"id", edge_names_[i]}, {"src", vertex_names_[src_[i]]}, {"dst", vertex_names_[dst_[i]]}});
    return j;
  }

 private:
  Digraph() = default;

  std::vector<std::string> vertex_names_;
  std::vector<std::string> edge_names_;
  std::map<std::string, int> vertex_index_;
  std::map<std::string, int> edge_index_;
  std::vector<VertexId> src_, dst_;
  std::vector<std::vector<EdgeId>> out_, in_;
};

/// {"vertices": [...], "edges": [{"id":..,"src":..,"dst":..}, ...]}
inline GraphPtr parse_graph(const nlohmann::json& j) {
  try {
    std::vector<std::string> vertices = j.at("vertices").get<std::vector<std::string>>();
    std::vector<EdgeSpec> edges;
    for (const auto& e : j.at("edges"))
      edges.push_back({e.at("id").get<std::string>(), e.at("src").get<std::string>(), e.at("dst").get<std::string>()});
    return Digraph::make(std::move(vertices), std::move(edges));
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("graph JSON: ") + ex.what());
  }
}

// ---------------------------------------------------------------------------
// Closed paths.

/// c_i = e_{i+1}...e_n e_1...e_i for a closed path c = e_1...e_n, 1 <= i <= n.
inline FinPath rotate(const Digraph& g, const FinPath& c, std::size_t i) {
  if (!c.is_closed()) throw PreconditionError("rotation of a non-closed path");
  if (i < 1 || i > c.length()) throw PreconditionError("rotation index out of range");
  std::vector<EdgeId> e(c.edges().begin() + i, c.edges().end());
  e.insert(e.end(), c.edges().begin(), c.edges().begin() + i);
  return g.path(e);
}

/// Lexicographically least rotation.
inline FinPath canonical_rotation(const Digraph& g, const FinPath& c) {
  FinPath best = c;
  for (std::size_t i = 1; i < c.length(); ++i) {
    FinPath r = rotate(g, c, i);
    if (r.edges() < best.edges()) best = std::move(r);
  }
  return best;
}

/// (c, m) with d = c^m and c not a proper power.
inline std::pair<FinPath, std::size_t> primitive_root(const FinPath& d) {
  if (!d.is_closed()) throw PreconditionError("primitive root of a non-closed path");
  const std::size_t n = d.length();
  for (std::size_t q = 1; q <= n; ++q) {
    if (n % q) continue;
    bool periodic = true;
    for (std::size_t i = q; i < n && periodic; ++i) periodic = d.edge(i) == d.edge(i - q);
    if (periodic) return {d.take_front(q), n / q};
  }
  return {d, 1};
}

inline bool is_simple_closed(const FinPath& c) { return c.is_closed() && primitive_root(c).second == 1; }

/// Every simple closed path of length <= max_len, one per rotation class, in
/// canonical rotation, sorted by (length, edge ids).
inline std::vector<FinPath> simple_cycles(const Digraph& g, std::size_t max_len) {
  if (max_len < 1) throw PreconditionError("max_len must be >= 1");
  std::set<FinPath> found;
  std::vector<EdgeId> stack;
  // Depth-first over walks that start with their least edge; a canonical
  // rotation always does.
  auto dfs = [&](auto&& self, VertexId at, VertexId home, EdgeId least) -> void {
    for (EdgeId e : g.out_edges(at)) {
      if (e < least) continue;
      stack.push_back(e);
      if (g.dst(e) == home) {
        FinPath c = g.path(stack);
        if (is_simple_closed(c) && canonical_rotation(g, c).edges() == c.edges()) found.insert(c);
      }
      if (stack.size() < max_len) self(self, g.dst(e), home, least);
      stack.pop_back();
    }
  };
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e) {
    stack = {e};
    const VertexId home = g.src(e);
    if (g.dst(e) == home) found.insert(g.path(stack));
    if (max_len > 1) dfs(dfs, g.dst(e), home, e);
  }
  return {found.begin(), found.end()};
}

}  // namespace leavitt
