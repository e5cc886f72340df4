#pragma once

// Command-line front end. Every command prints one JSON document on the
// output stream. Exit codes: 0 ok, 1 parse error, 2 precondition
// violation, 3 verification failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "leavitt/boundary.hpp"
#include "leavitt/chen.hpp"
#include "leavitt/classify.hpp"
#include "leavitt/errors.hpp"
#include "leavitt/field.hpp"
#include "leavitt/graph.hpp"
#include "leavitt/groupoid.hpp"
#include "leavitt/lpa.hpp"
#include "leavitt/verify.hpp"

namespace leavitt::cli {

enum ExitCode { kOk = 0, kParse = 1, kPrecondition = 2, kVerification = 3 };

inline std::size_t default_depth() {
  if (const char* env = std::getenv("LEAVITT_DEPTH")) {
    try {
      const long v = std::stol(env);
      if (v >= 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    throw ParseError(std::string("LEAVITT_DEPTH is not a count: ") + env);
  }
  return 8;
}

/// Inline JSON if the argument looks like JSON, a file path otherwise.
inline nlohmann::json load_json(const std::string& arg) {
  std::string text = arg;
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || (arg[first] != '{' && arg[first] != '[')) {
    std::ifstream in(arg);
    if (!in) throw ParseError("cannot read " + arg);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError("invalid JSON in " + arg + ": " + ex.what());
  }
}

/// "2*e.f@1 - (t+1)*@0": terms coef*prefix@shift over the base point.
inline PointVector parse_point_vector(const PointPtr& base, const FieldPtr& f, const std::string& text) {
  const Digraph& g = base->graph();
  std::vector<std::pair<bool, std::string>> terms;
  std::string cur;
  bool negative = false;
  int depth = 0;
  auto flush = [&] {
    const auto a = cur.find_first_not_of(' '), b = cur.find_last_not_of(' ');
    if (a == std::string::npos) throw ParseError("empty term in \"" + text + "\"");
    terms.emplace_back(negative, cur.substr(a, b - a + 1));
    cur.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    const bool at_start = cur.find_first_not_of(' ') == std::string::npos;
    if (depth == 0 && (c == '+' || c == '-')) {
      if (at_start) {
        if (c == '-') negative = !negative;
        continue;
      }
      flush();
      negative = c == '-';
      continue;
    }
    cur += c;
  }
  flush();

  PointVector out;
  for (const auto& [neg, term] : terms) {
    const auto at = term.rfind('@');
    if (at == std::string::npos) throw ParseError("point term \"" + term + "\" lacks '@shift'");
    std::size_t shift = 0;
    try {
      shift = std::stoul(term.substr(at + 1));
    } catch (const std::exception&) {
      throw ParseError("bad shift in \"" + term + "\"");
    }
    std::string left = term.substr(0, at);
    Scalar coeff = Scalar::one(f);
    if (const auto star = left.rfind('*'); star != std::string::npos) {
      std::string c = left.substr(0, star);
      left = left.substr(star + 1);
      const auto a = c.find_first_not_of(' '), b = c.find_last_not_of(' ');
      if (a == std::string::npos) throw ParseError("empty coefficient in \"" + term + "\"");
      c = c.substr(a, b - a + 1);
      if (c.front() == '(' && c.back() == ')') c = c.substr(1, c.size() - 2);
      coeff = parse_scalar(c, f);
    }
    std::vector<std::string> ids;
    std::stringstream ss(left);
    for (std::string id; std::getline(ss, id, '.');) {
      id.erase(0, id.find_first_not_of(' '));
      id.erase(id.find_last_not_of(' ') + 1);
      if (!id.empty()) ids.push_back(id);
    }
    if (base->is_sink() && shift > *base->length()) throw PreconditionError("shift beyond the end of the sink path");
    const FinPath prefix = ids.empty() ? FinPath::trivial(base->vertex_at(shift)) : g.path_of(ids);
    out.add(ClassElement(base, prefix, shift), neg ? -coeff : coeff);
  }
  return out;
}

struct ModuleOptions {
  std::string module;
  std::string twist;
  std::string poly;
  std::string coeff;
  bool induced = false;
};

/// A Chen-type or induced module on the given base point.
struct AnyModule {
  std::optional<ChenModule> chen;
  std::optional<InducedModule> ind;

  PointVector act(const AlgebraElement& z, const PointVector& m) const { return chen ? chen->act(z, m) : ind->act(z, m); }
  const FieldPtr& coeff_field() const { return chen ? chen->coeff_field() : ind->coeff_field(); }
  const FieldPtr& scalar_field() const { return chen ? chen->scalar_field() : ind->scalar_field(); }
  const PointPtr& base_ptr() const { return chen ? chen->base_ptr() : ind->base_ptr(); }
  const BoundaryPoint& base() const { return *base_ptr(); }
  std::string describe() const { return chen ? chen->describe() : ind->describe(); }
};

inline AnyModule build_module(const GraphPtr& g, const FieldPtr& k, const ModuleOptions& o) {
  if (o.module.empty()) throw ParseError("--module is required");
  const PointPtr x = share(parse_point(g, load_json(o.module)));
  if (!o.twist.empty() && !o.poly.empty()) throw ParseError("--twist and --poly are exclusive");
  AnyModule m;
  if (o.induced) {
    if (!o.twist.empty()) throw ParseError("--twist applies to Chen modules; use --coeff for induced ones");
    if (!o.poly.empty()) m.ind.emplace(x, CoeffModule::quotient(k, poly::parse(o.poly, k->base())));
    else if (!o.coeff.empty()) m.ind.emplace(x, CoeffModule::twisted_line(k, parse_scalar(o.coeff, k)));
    else m.ind.emplace(x, CoeffModule::trivial(k));
    return m;
  }
  if (!o.coeff.empty()) throw ParseError("--coeff applies to induced modules");
  if (!o.poly.empty()) m.chen.emplace(ChenModule::quotient(x, k, poly::parse(o.poly, k->base())));
  else if (!o.twist.empty()) m.chen.emplace(x, k, parse_twist(*g, k, load_json(o.twist)));
  else m.chen.emplace(ChenModule::untwisted(x, k));
  return m;
}

inline nlohmann::json restriction_json(const Restriction& r) {
  nlohmann::json j{{"dim", r.dim()}, {"certified", r.certified}};
  j["point"] = r.point ? r.point->to_json() : nlohmann::json(nullptr);
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& b : r.basis) basis.push_back(b.to_json());
  j["basis"] = basis;
  j["generator"] = r.generator ? detail::matrix_json(*r.generator) : nlohmann::json(nullptr);
  return j;
}

/// The reference instances each suite runs on the given graph and field.
inline SuiteReport run_suite(const GraphPtr& g, const FieldPtr& k, const std::string& suite, std::size_t depth,
                             const std::optional<TwistParam>& user_twist) {
  SuiteReport report{suite};
  const auto units = small_units(k, 3);
  auto runs = [&](const std::string& s) { return suite == "all" || suite == s; };

  std::vector<PointPtr> trivial_points;
  for (VertexId w : g->sinks()) trivial_points.push_back(share(BoundaryPoint::sink(g, FinPath::trivial(w))));
  try {
    trivial_points.push_back(share(BoundaryPoint::irrational(builtin_stream(g, "thue-morse-like", {}))));
  } catch (const PreconditionError&) {
  }
  std::vector<PointPtr> cyclic_points;
  for (const auto& c : simple_cycles(*g, std::min<std::size_t>(3, std::max<std::size_t>(1, g->edge_count())))) {
    if (cyclic_points.size() == 3) break;
    cyclic_points.push_back(share(BoundaryPoint::rational(g, FinPath::trivial(c.source()), c)));
  }

  std::vector<TwistParam> twists{TwistParam::trivial(k)};
  if (user_twist) twists.push_back(*user_twist);
  if (units.size() > 1) {
    TwistParam all(k);
    for (EdgeId e = 0; e < static_cast<EdgeId>(g->edge_count()); ++e) all.set(e, units[1]);
    twists.push_back(all);
  }

  if (runs("triv"))
    for (const auto& x : trivial_points)
      for (const auto& a : twists) report.append(verify_triv(x, k, a, depth));

  std::vector<ChenModule> cyclic_modules;
  for (const auto& x : cyclic_points) {
    for (const auto& a : twists) cyclic_modules.emplace_back(x, k, a);
    if (!k->is_quotient()) {
      std::vector<Poly> quad;
      if (k->base().is_rational()) quad.push_back(poly::parse("t^2+1", k->base()));
      for (const auto& f : quotient_polys(k, 2, quad))
        if (f.degree() == 2) {
          cyclic_modules.push_back(ChenModule::quotient(x, k, f));
          break;
        }
    }
  }
  if (runs("twist")) {
    for (const auto& m : cyclic_modules) report.append(verify_twist(m, depth));
    if (!k->is_quotient())
      for (const auto& x : cyclic_points)
        for (std::size_t i = 0; i < std::min<std::size_t>(2, units.size()); ++i)
          report.append(verify_theta(x, k, units[i], depth));
  }
  if (runs("res")) {
    for (const auto& x : trivial_points) report.append(verify_res(induce(x, CoeffModule::trivial(k)), depth));
    for (const auto& m : cyclic_modules)
      report.append(verify_res(
          m.restricted() ? induce(m.base_ptr(), CoeffModule::quotient(k, twist_invariant(m).field()->modulus()))
                         : induce(m.base_ptr(), CoeffModule::twisted_line(k, twist_invariant(m))),
          depth));
  }
  if (runs("cor2")) {
    for (const auto& x : cyclic_points) {
      const FinPath& c = x->cycle();
      const Scalar u = units.size() > 1 ? units[1] : units[0];
      TwistParam a(k), b(k);
      a.set(c.edge(0), u);
      b.set(c.edge(c.length() - 1), u);
      report.append(verify_cor2(x, k, a, b, depth));
      if (units.size() > 2) {
        TwistParam b2(k);
        b2.set(c.edge(0), units[2]);
        report.append(verify_cor2(x, k, a, b2, depth));
      } else {
        Claim skip{"distinct invariants [" + x->describe() + "]"};
        skip.skipped = true;
        skip.detail = {{"reason", "the field has fewer than two units besides 1 among 2, 3, ..."}};
        report.claims.push_back(skip);
      }
    }
  }
  return report;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations with Leavitt path algebras and their simple modules", "leavitt"};
  app.require_subcommand(1);
  std::string graph_path, field_spec, point_arg;
  std::optional<std::size_t> depth_opt;
  ModuleOptions mod;
  std::vector<std::string> positional;

  auto add_graph = [&](CLI::App* c) { c->add_option("-g,--graph", graph_path, "graph JSON file")->required(); };
  auto add_field = [&](CLI::App* c) { c->add_option("-K,--field", field_spec, "Q, F<p>, F<p>[t]/(f), Q[t]/(f)")->required(); };
  auto add_depth = [&](CLI::App* c) { c->add_option("--depth", depth_opt, "truncation depth (default 8 or $LEAVITT_DEPTH)"); };
  auto add_module = [&](CLI::App* c, bool required) {
    auto* o = c->add_option("--module", mod.module, "base point JSON (inline or file)");
    if (required) o->required();
    c->add_option("--twist", mod.twist, "edge twist JSON {\"e\": \"2\"} (inline or file)");
    c->add_option("--poly", mod.poly, "V^f for an irreducible f, e.g. t^2+t+1");
    c->add_flag("--induced", mod.induced, "use Ind_x(V) instead of a Chen module");
    c->add_option("--coeff", mod.coeff, "with --induced: isotropy generator acts by this scalar");
  };

  auto* validate = app.add_subcommand("validate", "check a graph file");
  validate->add_option("path", graph_path, "graph JSON file");
  validate->add_option("-g,--graph", graph_path, "graph JSON file");

  auto* nf = app.add_subcommand("nf", "normal form of an algebra element");
  add_graph(nf);
  add_field(nf);
  nf->add_option("expr", positional, "element")->required()->expected(1);

  auto* mul = app.add_subcommand("mul", "product of two algebra elements");
  add_graph(mul);
  add_field(mul);
  mul->add_option("exprs", positional, "two elements")->required()->expected(2);

  auto* act = app.add_subcommand("act", "action of an algebra element on a module element");
  add_graph(act);
  add_field(act);
  add_module(act, true);
  act->add_option("args", positional, "element and point vector (coef*prefix@shift + ...)")->required()->expected(2);

  auto* iso = app.add_subcommand("isotropy", "isotropy group of a boundary point");
  add_graph(iso);
  iso->add_option("--point", point_arg, "point JSON (inline or file)")->required();

  auto* orbit = app.add_subcommand("orbit", "orbit points up to a prefix length");
  add_graph(orbit);
  orbit->add_option("--point", point_arg, "point JSON (inline or file)")->required();
  add_depth(orbit);

  auto* res = app.add_subcommand("restrict", "restriction of a module to a point");
  add_graph(res);
  add_field(res);
  add_module(res, true);
  res->add_option("--point", point_arg, "point JSON (inline or file)")->required();
  add_depth(res);

  std::size_t max_deg = 0, max_cycle_len = 0;
  std::vector<std::string> supplied;
  auto* cls = app.add_subcommand("classify", "catalog of spectral simple modules");
  add_graph(cls);
  add_field(cls);
  cls->add_option("--max-deg", max_deg, "degree bound for f")->required();
  cls->add_option("--max-cycle-len", max_cycle_len, "length bound for cycles")->required()->check(CLI::PositiveNumber);
  cls->add_option("--poly", supplied, "irreducible f to include (needed over Q)");
  add_depth(cls);

  std::string suite = "all";
  auto* ver = app.add_subcommand("verify", "run the isomorphism checks on reference instances");
  add_graph(ver);
  add_field(ver);
  ver->add_option("--suite", suite, "triv, twist, res, cor2 or all")
      ->check(CLI::IsMember({"triv", "twist", "res", "cor2", "all"}));
  ver->add_option("--twist", mod.twist, "extra edge twist JSON (inline or file)");
  add_depth(ver);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    out << nlohmann::json{{"error", e.what()}, {"kind", "parse"}}.dump() << "\n";
    return kParse;
  }

  try {
    const std::size_t depth = depth_opt ? *depth_opt : default_depth();
    if (graph_path.empty()) throw ParseError("a graph file is required");
    const GraphPtr g = parse_graph(load_json(graph_path));
    const FieldPtr k = field_spec.empty() ? nullptr : parse_field(field_spec);
    nlohmann::json result;
    int code = kOk;

    if (*validate) {
      std::vector<std::string> sinks, regular;
      for (VertexId v = 0; v < static_cast<VertexId>(g->vertex_count()); ++v)
        (g->is_sink(v) ? sinks : regular).push_back(g->vertex_name(v));
      result = {{"valid", true}, {"vertices", g->vertex_count()}, {"edges", g->edge_count()}, {"sinks", sinks},
                {"regular", regular}};
    } else if (*nf) {
      result = parse_element(g, k, positional[0]).to_json();
    } else if (*mul) {
      const auto x = parse_element(g, k, positional[0]), y = parse_element(g, k, positional[1]);
      result = (x * y).to_json();
    } else if (*act) {
      const AnyModule m = build_module(g, k, mod);
      const AlgebraElement z = parse_element(g, k, positional[0]);
      const PointVector v = parse_point_vector(m.base_ptr(), m.coeff_field(), positional[1]);
      const PointVector w = m.act(z, v);
      result = {{"module", m.describe()}, {"element", z.to_string()}, {"result", w.to_json()}, {"text", w.describe()}};
    } else if (*iso) {
      const BoundaryPoint x = parse_point(g, load_json(point_arg));
      const IsotropyDesc d = isotropy(x);
      result = {{"point", x.to_json()}, {"cyclic", d.cyclic}};
      if (d.cyclic) {
        result["period"] = d.period;
        result["cycle"] = g->path_json(d.cycle);
      }
    } else if (*orbit) {
      const PointPtr x = share(parse_point(g, load_json(point_arg)));
      const Orbit o = orbit_points(x, depth);
      nlohmann::json pts = nlohmann::json::array();
      for (const auto& y : o.points) pts.push_back(y.to_json());
      result = {{"base", x->to_json()}, {"depth", depth}, {"count", o.points.size()}, {"exhausted", o.exhausted},
                {"points", pts}};
    } else if (*res) {
      const AnyModule m = build_module(g, k, mod);
      const BoundaryPoint x = parse_point(g, load_json(point_arg));
      const Restriction r = m.chen ? restrict(*m.chen, x, depth) : restrict(*m.ind, x, depth);
      result = restriction_json(r);
      result["module"] = m.describe();
    } else if (*cls) {
      std::vector<Poly> polys;
      for (const auto& s : supplied) polys.push_back(poly::parse(s, k->base()));
      result = catalog(g, k, max_deg, max_cycle_len, polys, depth).to_json(*g);
    } else if (*ver) {
      std::optional<TwistParam> twist;
      if (!mod.twist.empty()) twist = parse_twist(*g, k, load_json(mod.twist));
      const SuiteReport report = run_suite(g, k, suite, depth, twist);
      result = report.to_json();
      if (!report.pass()) code = kVerification;
    }
    out << result.dump(2) << "\n";
    return code;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    out << nlohmann::json{{"error", e.what()}, {"kind", "parse"}}.dump() << "\n";
    return kParse;
  } catch (const PreconditionError& e) {
    err << "precondition violated: " << e.what() << "\n";
    out << nlohmann::json{{"error", e.what()}, {"kind", "precondition"}}.dump() << "\n";
    return kPrecondition;
  }
}

}  // namespace leavitt::cli
