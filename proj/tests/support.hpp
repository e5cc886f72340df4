#pragma once

// Reference graphs and random generators shared by the test binaries.

#include <random>
#include <string>
#include <vector>

#include "leavitt/boundary.hpp"
#include "leavitt/chen.hpp"
#include "leavitt/field.hpp"
#include "leavitt/graph.hpp"
#include "leavitt/groupoid.hpp"
#include "leavitt/lpa.hpp"

namespace testing_support {

using namespace leavitt;

inline GraphPtr graph_of(const std::vector<std::string>& vertices, const std::vector<EdgeSpec>& edges) {
  return Digraph::make(vertices, edges);
}

/// One vertex v with a loop e.
inline GraphPtr R1() { return graph_of({"v"}, {{"e", "v", "v"}}); }
/// One vertex v with loops e, f.
inline GraphPtr R2() { return graph_of({"v"}, {{"e", "v", "v"}, {"f", "v", "v"}}); }
/// v1 -e-> v2.
inline GraphPtr A2() { return graph_of({"v1", "v2"}, {{"e", "v1", "v2"}}); }
/// v1 -e1-> v2 -e2-> v3.
inline GraphPtr A3() { return graph_of({"v1", "v2", "v3"}, {{"e1", "v1", "v2"}, {"e2", "v2", "v3"}}); }
/// Toeplitz: loop e at u, g: u -> w.
inline GraphPtr T() { return graph_of({"u", "w"}, {{"e", "u", "u"}, {"g", "u", "w"}}); }
/// Line with n vertices.
inline GraphPtr A(int n) {
  std::vector<std::string> v;
  std::vector<EdgeSpec> e;
  for (int i = 1; i <= n; ++i) v.push_back("v" + std::to_string(i));
  for (int i = 1; i < n; ++i) e.push_back({"e" + std::to_string(i), v[i - 1], v[i]});
  return graph_of(v, e);
}
/// Two vertices, e: v1 -> v2, f: v2 -> v1 (one cycle of length 2).
inline GraphPtr C2() { return graph_of({"v1", "v2"}, {{"e", "v1", "v2"}, {"f", "v2", "v1"}}); }

inline std::vector<std::pair<std::string, GraphPtr>> reference_graphs() {
  return {{"R1", R1()}, {"R2", R2()}, {"A2", A2()}, {"A3", A3()}, {"T", T()}};
}

inline FinPath P(const GraphPtr& g, const std::vector<std::string>& ids) { return g->path_of(ids); }

inline PointPtr cycle_point(const GraphPtr& g, const std::vector<std::string>& cycle,
                            const std::vector<std::string>& prefix = {}) {
  const FinPath c = g->path_of(cycle);
  const FinPath p = prefix.empty() ? FinPath::trivial(c.source()) : g->path_of(prefix);
  return share(BoundaryPoint::rational(g, p, c));
}

inline PointPtr sink_point(const GraphPtr& g, const std::vector<std::string>& ids) {
  return share(BoundaryPoint::sink(g, g->path_of(ids)));
}

inline PointPtr irrational_point(const GraphPtr& g, const std::string& rule = "thue-morse-like") {
  return share(BoundaryPoint::irrational(builtin_stream(g, rule, {})));
}

/// Every path of length <= len (trivial paths included).
inline std::vector<FinPath> all_paths(const Digraph& g, std::size_t len) {
  std::vector<FinPath> out;
  for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v) out.push_back(FinPath::trivial(v));
  for (std::size_t i = 0; i < out.size(); ++i)
    if (out[i].length() < len)
      for (EdgeId e : g.out_edges(out[i].range())) out.push_back(compose(out[i], g.edge_path(e)));
  return out;
}

class Random {
 public:
  explicit Random(unsigned seed) : rng_(seed) {}

  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  long long integer(long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng_); }

  Scalar scalar(const FieldPtr& k, bool nonzero = false) {
    while (true) {
      Poly p;
      for (std::size_t i = 0; i < k->degree(); ++i) {
        const long long num = integer(-3, 3);
        const long long den = k->base().is_rational() ? integer(1, 3) : 1;
        p.coeffs.push_back(Rational(num, den));
      }
      p.trim();
      Scalar s(k, p);
      if (!nonzero || !s.is_zero()) return s;
    }
  }

  /// A random monomial mu nu* with |mu|, |nu| <= len.
  Monomial monomial(const GraphPtr& g, std::size_t len) {
    const auto paths = all_paths(*g, len);
    while (true) {
      const FinPath& mu = paths[index(paths.size())];
      std::vector<const FinPath*> partners;
      for (const auto& nu : paths)
        if (nu.range() == mu.range()) partners.push_back(&nu);
      return {mu, *partners[index(partners.size())]};
    }
  }

  AlgebraElement element(const GraphPtr& g, const FieldPtr& k, std::size_t terms = 3, std::size_t len = 2) {
    AlgebraElement x(g, k);
    const std::size_t n = 1 + index(terms);
    for (std::size_t i = 0; i < n; ++i) {
      const Monomial m = monomial(g, len);
      x = x + leavitt::monomial(g, k, m.mu, m.nu, scalar(k, true));
    }
    return x;
  }

  /// A random nonzero vector supported on orbit points of prefix length <= len.
  PointVector vector(const PointPtr& base, const FieldPtr& coeffs, std::size_t len, std::size_t terms = 3) {
    const auto pts = orbit_points(base, len).points;
    while (true) {
      PointVector v;
      const std::size_t n = 1 + index(terms);
      for (std::size_t i = 0; i < n; ++i) v.add(pts[index(pts.size())], scalar(coeffs, true));
      if (!v.is_zero()) return v;
    }
  }

  std::mt19937& engine() { return rng_; }

 private:
  std::mt19937 rng_;
};

}  // namespace testing_support
