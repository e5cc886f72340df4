#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "leavitt/classify.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace leavitt;
using namespace testing_support;

namespace {

std::vector<std::string> formatted(const std::vector<Poly>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(poly::format(p));
  return out;
}

/// The same graph with shuffled vertex and edge order and fresh ids, so
/// that special edges and id order change.
GraphPtr relabel(const Digraph& g, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<VertexId> vp(g.vertex_count());
  std::vector<EdgeId> ep(g.edge_count());
  std::iota(vp.begin(), vp.end(), 0);
  std::iota(ep.begin(), ep.end(), 0);
  std::shuffle(vp.begin(), vp.end(), rng);
  std::shuffle(ep.begin(), ep.end(), rng);
  std::vector<std::string> names(g.vertex_count());
  for (std::size_t i = 0; i < vp.size(); ++i) names[vp[i]] = "n" + std::to_string(i);
  std::vector<std::string> vertices(names);
  std::sort(vertices.begin(), vertices.end());
  std::vector<EdgeSpec> edges;
  for (std::size_t i = 0; i < ep.size(); ++i)
    edges.push_back({"a" + std::to_string(i), names[g.src(ep[i])], names[g.dst(ep[i])]});
  return Digraph::make(vertices, edges);
}

/// (kind, finite, dim, fibre) per entry, as a sorted multiset.
std::multiset<std::string> shape(const Catalog& c, const Digraph& g) {
  std::multiset<std::string> out;
  for (const auto& e : c.entries) {
    const auto j = e.to_json(g);
    out.insert(j.at("kind").get<std::string>() + "|" + j.at("finite_dim").dump() + "|" + j.at("dim").dump() + "|" +
               std::to_string(e.fibre_dim()));
  }
  return out;
}

}  // namespace

TEST(Polys, AdmissibleIrreducibles) {
  EXPECT_EQ(formatted(quotient_polys(Field::prime(2), 2, {})), (std::vector<std::string>{"t^2+t+1"}));
  EXPECT_EQ(formatted(quotient_polys(Field::prime(2), 3, {})),
            (std::vector<std::string>{"t^2+t+1", "t^3+t+1", "t^3+t^2+1"}));
  // oracle: all monic irreducibles except t and t - 1
  for (int p : {3, 5}) {
    std::set<oracle::IntPoly> want = oracle::irreducibles(p, 2);
    want.erase({0, 1});
    want.erase({p - 1, 1});
    std::set<oracle::IntPoly> got;
    for (const auto& f : quotient_polys(Field::prime(p), 2, {})) {
      oracle::IntPoly g;
      for (const auto& c : f.coeffs) g.push_back(static_cast<std::int64_t>(c));
      got.insert(g);
    }
    EXPECT_EQ(got, want) << "p=" << p;
  }
}

TEST(Polys, RationalsUseSuppliedPolynomials) {
  auto q = Field::rationals();
  const BaseField b{0};
  EXPECT_TRUE(quotient_polys(q, 3, {}).empty());
  EXPECT_EQ(formatted(quotient_polys(q, 3, {poly::parse("2*t^2+2", b), poly::parse("t-1", b), poly::parse("t^3-2", b)})),
            (std::vector<std::string>{"t^2+1", "t^3-2"}));
  EXPECT_TRUE(quotient_polys(q, 1, {poly::parse("t^2+1", b)}).empty());
  EXPECT_THROW(quotient_polys(q, 3, {poly::parse("t^2-1", b)}), PreconditionError);
  EXPECT_THROW(quotient_polys(q, 4, {poly::parse("t^4+1", b)}), CannotCertify);
  EXPECT_THROW(quotient_polys(parse_field("F2[t]/(t^2+t+1)"), 2, {}), PreconditionError);
}

TEST(OrbitReps, Examples) {
  const auto r2 = orbit_reps(*R2(), 2);
  EXPECT_TRUE(r2.sinks.empty());
  EXPECT_EQ(r2.cycles.size(), 3u);
  EXPECT_EQ(r2.irrational_families.size(), 1u);
  const auto t = orbit_reps(*T(), 4);
  EXPECT_EQ(t.sinks.size(), 1u);
  EXPECT_EQ(t.cycles.size(), 1u);
  EXPECT_TRUE(t.irrational_families.empty());
  EXPECT_TRUE(orbit_reps(*C2(), 4).irrational_families.empty());
  auto g = graph_of({"a", "b", "c"}, {{"x", "a", "b"}, {"y", "b", "a"}, {"l", "a", "a"}, {"z", "b", "c"}});
  const auto reps = orbit_reps(*g, 3);
  ASSERT_EQ(reps.irrational_families.size(), 1u);
  EXPECT_EQ(reps.irrational_families[0], "irrational paths eventually inside the component {a, b}");
}

// The exact criterion agrees with a deep orbit walk.
TEST(FiniteDim, InfiniteOrbitCriterionMatchesDeepWalk) {
  std::vector<GraphPtr> graphs{R1(), R2(), A3(), T(), C2(),
                               graph_of({"a", "b", "c"}, {{"x", "a", "b"}, {"y", "b", "c"}, {"l", "c", "c"}}),
                               graph_of({"a", "b", "c"}, {{"x", "a", "a"}, {"y", "a", "b"}, {"z", "b", "c"}}),
                               graph_of({"a", "b"}, {{"x", "a", "b"}, {"y", "b", "b"}, {"z", "b", "b"}})};
  for (const auto& g : graphs) {
    std::vector<PointPtr> pts;
    for (VertexId w : g->sinks()) pts.push_back(share(BoundaryPoint::sink(g, FinPath::trivial(w))));
    for (const auto& c : simple_cycles(*g, 3))
      pts.push_back(share(BoundaryPoint::rational(g, FinPath::trivial(c.source()), c)));
    for (const auto& x : pts) {
      const Orbit deep = orbit_points(x, 10);
      EXPECT_EQ(orbit_is_infinite(*x), !deep.exhausted) << x->describe();
    }
  }
}

TEST(Catalog, LineGraphsHaveOneFiniteEntry) {
  for (int n = 1; n <= 5; ++n)
    for (const auto& k : {Field::rationals(), Field::prime(2)}) {
      const auto g = A(n);
      const auto c = catalog(g, k, 2, 4);
      ASSERT_EQ(c.entries.size(), 1u) << n;
      EXPECT_EQ(c.entries[0].kind, CatalogEntry::Kind::SinkClass);
      EXPECT_EQ(c.entries[0].report.finite, true);
      EXPECT_EQ(c.entries[0].report.dim, static_cast<std::size_t>(n));
    }
}

TEST(Catalog, RoseWithOnePetalOverF2) {
  const auto g = R1();
  const auto c = catalog(g, Field::prime(2), 3, 4);
  std::multiset<std::size_t> dims;
  for (const auto& e : c.entries) {
    ASSERT_EQ(e.report.finite, true);
    dims.insert(*e.report.dim);
  }
  EXPECT_EQ(dims, (std::multiset<std::size_t>{1, 2, 3, 3}));
  const auto j = c.to_json(*g);
  EXPECT_EQ(j.at("label"), "spectral simple modules");
  EXPECT_EQ(j.at("field"), "F2");
  EXPECT_EQ(j.at("entries")[0].at("kind"), "rational_chen");
  EXPECT_EQ(j.at("entries")[1].at("data").at("poly"), "t^2+t+1");
  EXPECT_EQ(j.at("entries")[1].at("noniso_witness").at("generator_annihilator"), "t^2+t+1");
  EXPECT_EQ(j.at("entries")[0].at("noniso_witness").at("generator_annihilator"), "t+1");
}

TEST(Catalog, ToeplitzFlags) {
  const auto g = T();
  const auto c = catalog(g, Field::prime(2), 2, 4);
  ASSERT_EQ(c.entries.size(), 3u);
  const auto j = c.to_json(*g);
  EXPECT_EQ(j.at("entries")[0].at("kind"), "sink");
  EXPECT_EQ(j.at("entries")[0].at("finite_dim"), false);
  EXPECT_EQ(j.at("entries")[0].at("dim"), "inf");
  EXPECT_EQ(j.at("entries")[1].at("finite_dim"), true);
  EXPECT_EQ(j.at("entries")[1].at("dim"), 1);
  EXPECT_EQ(j.at("entries")[2].at("dim"), 2);
}

TEST(Catalog, RoseWithTwoPetalsHasAFamilyAndDistinctWitnesses) {
  const auto g = R2();
  const auto c = catalog(g, Field::prime(2), 2, 2);
  // three cycles, each with its Chen module and one quotient, plus the family
  ASSERT_EQ(c.entries.size(), 7u);
  EXPECT_EQ(c.entries.back().kind, CatalogEntry::Kind::IrrationalFamily);
  EXPECT_EQ(c.entries.back().report.finite, false);
  std::set<std::string> witnesses;
  for (const auto& e : c.entries) {
    if (e.kind == CatalogEntry::Kind::IrrationalFamily) continue;
    EXPECT_EQ(e.report.finite, false);
    auto w = e.noniso_witness;
    w.erase("base_point");
    witnesses.insert(w.dump());
  }
  EXPECT_EQ(witnesses.size(), 6u);
}

TEST(Catalog, InvariantUnderRelabeling) {
  std::vector<GraphPtr> graphs{R2(), T(), C2(), A3(),
                               graph_of({"a", "b", "c"}, {{"x", "a", "b"}, {"y", "b", "a"}, {"l", "a", "a"}, {"z", "b", "c"}})};
  for (const auto& g : graphs) {
    const auto k = Field::prime(2);
    const auto base = shape(catalog(g, k, 2, 3), *g);
    for (unsigned seed = 1; seed <= 3; ++seed) {
      const auto h = relabel(*g, seed);
      EXPECT_EQ(shape(catalog(h, k, 2, 3), *h), base);
    }
  }
}

TEST(Catalog, DeterministicOutput) {
  const auto g = T();
  EXPECT_EQ(catalog(g, Field::prime(3), 2, 3).to_json(*g).dump(), catalog(g, Field::prime(3), 2, 3).to_json(*g).dump());
}
