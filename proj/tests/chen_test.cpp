#include <gtest/gtest.h>

#include <map>

#include "leavitt/chen.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace leavitt;
using namespace testing_support;

namespace {

Scalar q(const std::string& s) { return parse_scalar(s, Field::rationals()); }

PointVector at(const PointPtr& x, const FinPath& mu, std::size_t k, const Scalar& c) {
  return PointVector(ClassElement(x, mu, k), c);
}

using Windows = std::map<oracle::Window, Scalar>;

Windows windows_of(const BoundaryPoint& x, const PointVector& m) {
  Windows out;
  for (const auto& [y, c] : m.terms()) {
    const oracle::RawPoint p{y.prefix().edges(), y.source(), y.shift()};
    out.emplace(oracle::window(x, p, 24), c);
  }
  return out;
}

Windows oracle_act(const Digraph& g, const BoundaryPoint& x, const AlgebraElement& z, const PointVector& m) {
  Windows out;
  for (const auto& [mono, c] : z.terms())
    for (const auto& [y, v] : m.terms()) {
      const oracle::RawPoint p{y.prefix().edges(), y.source(), y.shift()};
      if (auto r = oracle::act_word(g, x, oracle::letters(mono), p)) {
        const auto w = oracle::window(x, *r, 24);
        auto it = out.find(w);
        if (it == out.end()) out.emplace(w, c * v);
        else it->second += c * v;
      }
    }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

}  // namespace

TEST(ChenAction, Examples) {
  auto r2 = R2();
  auto k = Field::rationals();
  const auto x = cycle_point(r2, {"e"});
  const auto v = ChenModule::untwisted(x, k);
  const PointVector base = at(x, FinPath::trivial(0), 0, q("1"));
  EXPECT_EQ(v.act(parse_element(r2, k, "e"), base), base);
  EXPECT_TRUE(v.act(parse_element(r2, k, "~f"), base).is_zero());
  EXPECT_EQ(v.act(parse_element(r2, k, "f"), base).describe(), "(1)*f@0");
  EXPECT_EQ(v.act(parse_element(r2, k, "~f.f + 2*e.~e"), base), base.scaled(q("3")));

  auto r1 = R1();
  const auto y = cycle_point(r1, {"e"});
  const auto tw = ChenModule(y, k, parse_twist(*r1, k, nlohmann::json::parse(R"({"e": "2"})")));
  const PointVector b1 = at(y, FinPath::trivial(0), 0, q("1"));
  EXPECT_EQ(tw.act(parse_element(r1, k, "e"), b1), b1.scaled(q("2")));
  EXPECT_EQ(tw.act(parse_element(r1, k, "~e"), b1), b1.scaled(q("1/2")));
  EXPECT_EQ(twist_invariant(tw).to_string(), "2");
  EXPECT_THROW(tw.act(parse_element(r1, Field::prime(3), "e"), b1), PreconditionError);
}

TEST(ChenAction, UntwistedMatchesWordOracle) {
  Random rnd(31);
  for (const auto& x : {cycle_point(R2(), {"e", "f"}, {"f"}), sink_point(T(), {"w"}), irrational_point(R2()),
                        cycle_point(T(), {"e"})}) {
    SCOPED_TRACE(x->describe());
    const auto g = x->graph_ptr();
    const auto k = Field::prime(5);
    const auto v = ChenModule::untwisted(x, k);
    for (int i = 0; i < 60; ++i) {
      const auto z = rnd.element(g, k, 3, 3);
      const auto m = rnd.vector(x, k, 3);
      ASSERT_EQ(windows_of(*x, v.act(z, m)), oracle_act(*g, *x, z, m)) << z.to_string() << " on " << m.describe();
    }
  }
}

TEST(ChenAction, IsAModuleActionIncludingTwistsAndQuotients) {
  Random rnd(32);
  auto f2 = Field::prime(2);
  auto k = Field::rationals();
  auto r2 = R2();
  std::vector<ChenModule> mods{
      ChenModule::untwisted(sink_point(A3(), {"v3"}), k),
      ChenModule(cycle_point(r2, {"e", "f"}), k, parse_twist(*r2, k, nlohmann::json::parse(R"({"e": "2", "f": "-1/3"})"))),
      ChenModule(irrational_point(r2), k, parse_twist(*r2, k, nlohmann::json::parse(R"({"f": "5"})"))),
      ChenModule::quotient(cycle_point(R1(), {"e"}), f2, poly::parse("t^2+t+1", {2})),
      ChenModule::quotient(cycle_point(r2, {"f", "e"}), f2, poly::parse("t^3+t+1", {2}))};
  for (const auto& w : mods) {
    SCOPED_TRACE(w.describe());
    const auto g = w.base().graph_ptr();
    const auto& s = w.scalar_field();
    for (int i = 0; i < 40; ++i) {
      const auto x = rnd.element(g, s), y = rnd.element(g, s);
      const auto m = rnd.vector(w.base_ptr(), w.coeff_field(), 3);
      ASSERT_EQ(w.act(x * y, m), w.act(x, w.act(y, m)));
      ASSERT_EQ(w.act(one(g, s), m), m);
    }
  }
}

TEST(ChenModule, QuotientPlacesTheGeneratorOnTheCanonicalCycle) {
  auto r2 = R2();
  auto f2 = Field::prime(2);
  const auto v = ChenModule::quotient(cycle_point(r2, {"f", "e"}), f2, poly::parse("t^2+t+1", {2}));
  EXPECT_TRUE(v.restricted());
  EXPECT_EQ(v.twist().to_json(*r2), nlohmann::json::parse(R"({"e": "t"})"));
  EXPECT_EQ(twist_invariant(v).to_string(), "t");
  EXPECT_THROW(ChenModule::quotient(sink_point(A2(), {"v2"}), f2, poly::parse("t^2+t+1", {2})), PreconditionError);
  EXPECT_THROW(ChenModule::quotient(cycle_point(r2, {"e"}), f2, poly::parse("t^2+1", {2})), PreconditionError);
}

TEST(Isomorphisms, TrivialIsotropyRoundTrip) {
  auto a3 = A3();
  auto k = Field::rationals();
  const auto x = sink_point(a3, {"v3"});
  const auto ind = induce(x, CoeffModule::trivial(k));
  const auto chen = ChenModule(x, k, parse_twist(*a3, k, nlohmann::json::parse(R"({"e1": "2", "e2": "3"})")));
  const PointVector m = at(x, P(a3, {"e1", "e2"}), 0, q("1"));
  EXPECT_EQ(phi_triv(ind, chen, m), m.scaled(q("6")));
  EXPECT_EQ(psi_triv(ind, chen, phi_triv(ind, chen, m)), m);
  auto phi = [&](const PointVector& v) { return phi_triv(ind, chen, v); };
  auto psi = [&](const PointVector& v) { return psi_triv(ind, chen, v); };
  EXPECT_TRUE(hom_check(basis_map(phi), ind, chen).equivariant);
  EXPECT_TRUE(hom_check(basis_map(psi), chen, ind).equivariant);
  // the identity on coordinates is not a homomorphism once a is nontrivial
  auto id = [](const PointVector& v) { return v; };
  const auto bad = hom_check(basis_map(id), ind, chen);
  EXPECT_FALSE(bad.equivariant);
  EXPECT_EQ(bad.counterexample->generator, "e1");
}

TEST(Isomorphisms, Preconditions) {
  auto r1 = R1();
  auto k = Field::rationals();
  const auto x = cycle_point(r1, {"e"});
  const auto chen = ChenModule(x, k, parse_twist(*r1, k, nlohmann::json::parse(R"({"e": "2"})")));
  const auto good = induce(x, CoeffModule::twisted_line(k, q("2")));
  const auto bad = induce(x, CoeffModule::twisted_line(k, q("3")));
  const PointVector m = at(x, FinPath::trivial(0), 0, q("1"));
  EXPECT_NO_THROW(phi_twist(good, chen, m));
  EXPECT_THROW(phi_twist(bad, chen, m), PreconditionError);
  EXPECT_THROW(phi_triv(good, chen, m), PreconditionError);
  const auto sink = sink_point(A2(), {"v2"});
  EXPECT_THROW(phi_twist(induce(sink, CoeffModule::trivial(k)), ChenModule::untwisted(sink, k), PointVector()),
               PreconditionError);
  EXPECT_THROW(phi_triv(induce(sink, CoeffModule::trivial(k)), ChenModule::untwisted(sink_point(A2(), {"e"}), k),
                        PointVector()),
               PreconditionError);
}

TEST(HomCheck, DifferentTailsAreDetected) {
  auto r2 = R2();
  auto k = Field::rationals();
  const auto e_inf = cycle_point(r2, {"e"}), f_inf = cycle_point(r2, {"f"});
  const auto src = ChenModule::untwisted(e_inf, k), dst = ChenModule::untwisted(f_inf, k);
  // y = mu e^inf  ->  mu f^inf
  BasisMap naive = [&](const ClassElement& y, const Scalar& c) -> std::optional<PointVector> {
    return PointVector(ClassElement(f_inf, y.prefix(), 0), c);
  };
  const auto v = hom_check(naive, src, dst, 4);
  EXPECT_FALSE(v.equivariant);
  ASSERT_TRUE(v.counterexample.has_value());
  EXPECT_EQ(v.counterexample->generator, "e");
  EXPECT_EQ(v.counterexample->basis.describe(), "@0");
  EXPECT_EQ(v.to_json().at("counterexample").at("generator"), "e");

  BasisMap scale = [&](const ClassElement& y, const Scalar& c) -> std::optional<PointVector> {
    return PointVector(y, c * q("2"));
  };
  const auto ok = hom_check(scale, src, src, 3);
  EXPECT_TRUE(ok.equivariant);
  EXPECT_EQ(ok.checked, 5 * orbit_points(e_inf, 3).points.size());
}

TEST(Theta, Evaluation) {
  auto q_ = Field::rationals();
  const Scalar a = q("2");
  EXPECT_TRUE(theta({poly::parse("t-2", {0}), 0}, a).is_zero());
  EXPECT_EQ(theta({poly::parse("t+5", {0}), 0}, a).to_string(), "7");
  EXPECT_EQ(theta({Poly::constant(1), -1}, a).to_string(), "1/2");
  EXPECT_EQ(theta({poly::parse("t^2+1", {0}), -3}, a).to_string(), "5/8");
  EXPECT_THROW(theta({Poly::constant(1), 1}, Scalar::zero(q_)), PreconditionError);
}

TEST(Witness, Examples) {
  auto k = Field::rationals();
  auto a2 = A2();
  const auto sink = sink_point(a2, {"v2"});
  const auto v = ChenModule::untwisted(sink, k);
  const PointVector m = at(sink, P(a2, {"e"}), 0, q("3")) + at(sink, FinPath::trivial(1), 0, q("-1"));
  const auto w = generator_witness(v, m);
  ASSERT_TRUE(w.element.has_value());
  EXPECT_EQ(v.act(*w.element, m), at(sink, FinPath::trivial(1), 0, q("1")));
  EXPECT_THROW(generator_witness(v, PointVector()), PreconditionError);

  auto r1 = R1();
  auto f2 = Field::prime(2);
  const auto vf = ChenModule::quotient(cycle_point(r1, {"e"}), f2, poly::parse("t^2+t+1", {2}));
  const auto ext = vf.coeff_field();
  const PointVector n = at(vf.base_ptr(), FinPath::trivial(0), 0, Scalar::generator(ext));
  const auto wf = generator_witness(vf, n);
  ASSERT_TRUE(wf.element.has_value());
  EXPECT_EQ(vf.act(*wf.element, n), at(vf.base_ptr(), FinPath::trivial(0), 0, Scalar::one(ext)));
}

TEST(Witness, RandomElementsAreGenerated) {
  Random rnd(44);
  auto k = Field::rationals();
  auto r2 = R2();
  std::vector<ChenModule> mods{ChenModule::untwisted(sink_point(T(), {"w"}), k),
                               ChenModule::untwisted(cycle_point(r2, {"e", "f"}), k),
                               ChenModule::untwisted(irrational_point(r2), k),
                               ChenModule::quotient(cycle_point(r2, {"e"}), Field::prime(3), poly::parse("t^2+1", {3}))};
  for (const auto& v : mods) {
    SCOPED_TRACE(v.describe());
    for (int i = 0; i < 25; ++i) {
      const auto m = rnd.vector(v.base_ptr(), v.coeff_field(), 3, 4);
      const auto w = generator_witness(v, m);
      ASSERT_TRUE(w.element.has_value()) << m.describe();
      ASSERT_EQ(v.act(*w.element, m), PointVector(ClassElement::of_base(v.base_ptr()), Scalar::one(v.coeff_field())));
    }
  }
}
