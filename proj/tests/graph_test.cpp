#include <gtest/gtest.h>

#include "leavitt/graph.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace leavitt;
using namespace testing_support;

namespace {

std::vector<std::vector<std::string>> names(const Digraph& g, const std::vector<FinPath>& ps) {
  std::vector<std::vector<std::string>> out;
  for (const auto& p : ps) {
    std::vector<std::string> n;
    for (EdgeId e : p.edges()) n.push_back(g.edge_name(e));
    out.push_back(n);
  }
  return out;
}

}  // namespace

TEST(Compose, Examples) {
  auto r1 = R1();
  const FinPath e = P(r1, {"e"});
  EXPECT_EQ(compose(e, e), P(r1, {"e", "e"}));
  EXPECT_EQ(compose(FinPath::trivial(r1->vertex("v")), e), e);
  EXPECT_EQ(compose(e, FinPath::trivial(r1->vertex("v"))), e);
  auto a2 = A2();
  EXPECT_THROW(compose(P(a2, {"e"}), P(a2, {"e"})), PreconditionError);
}

TEST(Compose, AssociativeWithUnits) {
  auto g = R2();
  const auto paths = all_paths(*g, 3);
  for (const auto& p : paths)
    for (const auto& q : paths)
      for (const auto& r : {paths[0], paths[3], paths[7]})
        EXPECT_EQ(compose(compose(p, q), r), compose(p, compose(q, r)));
}

TEST(Graph, ParseAndValidate) {
  auto g = parse_graph(nlohmann::json::parse(R"({"vertices":["b","a"],"edges":[{"id":"x","src":"a","dst":"b"}]})"));
  EXPECT_EQ(g->vertex_name(0), "a");
  EXPECT_TRUE(g->is_sink(g->vertex("b")));
  EXPECT_EQ(g->sinks().size(), 1u);
  EXPECT_THROW(parse_graph(nlohmann::json::parse(R"({"vertices":["a","a"],"edges":[]})")), ParseError);
  EXPECT_THROW(parse_graph(nlohmann::json::parse(R"({"vertices":["a"],"edges":[{"id":"x","src":"a","dst":"z"}]})")),
               ParseError);
  EXPECT_THROW(parse_graph(nlohmann::json::parse(
                   R"({"vertices":["a"],"edges":[{"id":"x","src":"a","dst":"a"},{"id":"x","src":"a","dst":"a"}]})")),
               ParseError);
  EXPECT_THROW(parse_graph(nlohmann::json::parse(R"({"vertices":["a"]})")), ParseError);
  // isolated vertices are sinks
  auto iso = parse_graph(nlohmann::json::parse(R"({"vertices":["a","b"],"edges":[]})"));
  EXPECT_EQ(iso->sinks().size(), 2u);
}

TEST(Graph, SpecialEdgeIsLeastId) {
  auto g = graph_of({"v"}, {{"f", "v", "v"}, {"e", "v", "v"}});
  EXPECT_EQ(g->edge_name(g->special_edge(0)), "e");
  EXPECT_THROW(A2()->special_edge(A2()->vertex("v2")), PreconditionError);
}

TEST(SimpleCycles, Examples) {
  auto r1 = R1();
  EXPECT_EQ(names(*r1, simple_cycles(*r1, 3)), (std::vector<std::vector<std::string>>{{"e"}}));
  EXPECT_TRUE(simple_cycles(*A2(), 5).empty());
  auto r2 = R2();
  EXPECT_EQ(names(*r2, simple_cycles(*r2, 2)), (std::vector<std::vector<std::string>>{{"e"}, {"f"}, {"e", "f"}}));
  EXPECT_THROW(simple_cycles(*r1, 0), PreconditionError);
}

TEST(SimpleCycles, MatchExhaustiveEnumeration) {
  std::vector<GraphPtr> graphs{R1(), R2(), A3(), T(), C2(),
                               graph_of({"a", "b", "c"}, {{"x", "a", "b"}, {"y", "b", "c"}, {"z", "c", "a"},
                                                          {"w", "b", "a"}, {"l", "c", "c"}})};
  for (const auto& g : graphs)
    for (std::size_t len = 1; len <= 6; ++len) {
      std::set<std::vector<EdgeId>> got;
      for (const auto& c : simple_cycles(*g, len)) {
        EXPECT_EQ(primitive_root(c).second, 1u);
        got.insert(c.edges());
      }
      EXPECT_EQ(got, oracle::simple_cycles(*g, len));
    }
}

TEST(Rotate, Examples) {
  auto g = graph_of({"a", "b", "c"}, {{"e1", "a", "b"}, {"e2", "b", "c"}, {"e3", "c", "a"}});
  const FinPath c = P(g, {"e1", "e2", "e3"});
  EXPECT_EQ(rotate(*g, c, 1), P(g, {"e2", "e3", "e1"}));
  EXPECT_EQ(rotate(*g, c, 3), c);
  EXPECT_THROW(rotate(*g, c, 0), PreconditionError);
  EXPECT_THROW(rotate(*g, c, 4), PreconditionError);
  auto r2 = R2();
  EXPECT_EQ(rotate(*r2, P(r2, {"e", "f"}), 1), P(r2, {"f", "e"}));
  EXPECT_EQ(rotate(*R1(), P(R1(), {"e"}), 1), P(R1(), {"e"}));
}

TEST(PrimitiveRoot, Examples) {
  auto r2 = R2();
  auto [c, m] = primitive_root(P(r2, {"e", "f", "e", "f"}));
  EXPECT_EQ(c, P(r2, {"e", "f"}));
  EXPECT_EQ(m, 2u);
  EXPECT_EQ(primitive_root(P(r2, {"e"})).second, 1u);
  auto [c2, m2] = primitive_root(P(r2, {"e", "e", "f"}));
  EXPECT_EQ(c2, P(r2, {"e", "e", "f"}));
  EXPECT_EQ(m2, 1u);
  EXPECT_THROW(primitive_root(P(A2(), {"e"})), PreconditionError);
}

TEST(PrimitiveRoot, AgreesWithOracle) {
  auto g = R2();
  for (const auto& w : oracle::closed_words(*g, 6)) {
    const FinPath d = g->path(w);
    auto [c, m] = primitive_root(d);
    EXPECT_EQ(c.edges(), oracle::primitive(w));
    EXPECT_EQ(c.length() * m, w.size());
  }
}

TEST(SimpleCycles, RotationClassesPartitionClosedWords) {
  auto g = R2();
  const auto cycles = simple_cycles(*g, 5);
  for (const auto& w : oracle::closed_words(*g, 5)) {
    const auto root = oracle::primitive(w);
    int hits = 0;
    for (const auto& c : cycles)
      for (std::size_t i = 1; i <= c.length(); ++i)
        if (c.length() == root.size() && rotate(*g, c, i).edges() == root) {
          ++hits;
          break;
        }
    EXPECT_EQ(hits, 1);
  }
}
