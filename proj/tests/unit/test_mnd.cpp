#include "catch_amalgamated.hpp"

#include "dcmonad/poly.hpp"
#include "dcmonad/span.hpp"

using namespace dcmonad;

namespace {

Graph chain() { return make_graph(FinSet{"a", "b", "c"}, {"f", "g"}, {{"a", "b"}, {"b", "c"}}); }

// The monoid {1, t, t2} with t.t = t2 and t2 absorbing.
FinCategory monoid() {
  Graph g = make_graph(FinSet{"*"}, {"1", "t", "t2"}, {{"*", "*"}, {"*", "*"}, {"*", "*"}});
  return make_category(g, {"1"}, [](const std::string& p, const std::string& q) {
    if (p == "1") return q;
    if (q == "1") return p;
    return std::string("t2");
  });
}

void require_all(const std::vector<EquationCheck>& checks) {
  for (const auto& check : checks) {
    INFO(check.name << ": " << check.detail);
    CHECK(check.holds);
  }
}

}  // namespace

TEST_CASE("identity monad and End identities") {
  SpanDouble c;
  FinSet x{"a", "b"};
  require_all(monad_laws(c, identity_monad(c, x)));
  EndDouble<SpanDouble> end(c);
  Endomorphism<SpanDouble> e{chain().nodes, chain().edges};
  auto h = end.hor_id(e);
  CHECK(h.arrow == id_span(e.object));
  auto v = end.ver_id(e);
  CHECK(v.square == c.id_square_hor(e.arrow));
  require_all(endo_square_condition(c, end.id_square_hor(h)));
}

TEST_CASE("base change of a loop along a map of points") {
  SpanDouble c;
  FinSet a{"a"}, b{"b"};
  Graph loop = make_graph(b, {"l"}, {{"b", "b"}});
  FinFun u = FinFun::constant(a, b, 0);
  auto bc = base_change_endo(c, u, Endomorphism<SpanDouble>{b, loop.edges});
  CHECK(bc.endo.object == a);
  CHECK(bc.endo.arrow.apex.size() == 1);
  CHECK_FALSE(c.check_square(bc.lift.square));
}

TEST_CASE("base change of a monad is a monad") {
  SpanDouble c;
  FinCategory t = monoid();
  FinFun u = FinFun::constant(FinSet{"p", "q"}, t.endo.object, 0);
  auto mb = base_change_monad(c, u, t);
  CHECK(mb.monad.endo.arrow.apex.size() == 12);
  require_all(monad_laws(c, mb.monad));
  require_all(vert_monad_map_laws(c, mb.lift));
}

TEST_CASE("cofold and uncofold are inverse") {
  SpanDouble c;
  Graph g = chain();
  Endomorphism<SpanDouble> e{g.nodes, g.edges};
  FinCategory t = monoid();
  FinFun u = FinFun::constant(g.nodes, t.endo.object, 0);
  for (std::size_t target = 0; target < 3; ++target) {
    FinFun ubar = FinFun::constant(g.edges.apex, t.endo.arrow.apex, target);
    VertEndoMap<SpanDouble> m{e, t.endo, u, make_span_square(e.arrow, t.endo.arrow, u, u, ubar)};
    auto h = cofold(c, m);
    CHECK(h.arrow == c.conjoint(u));
    CHECK(uncofold(c, h) == m);
    CHECK(cofold(c, uncofold(c, h)) == h);
  }
}

TEST_CASE("pipeline on the chain with an identity square") {
  SpanDouble c;
  Graph g = chain();
  Endomorphism<SpanDouble> e{g.nodes, g.edges};
  auto adj = free_monad_adjunction(c, e);
  FinCategory t = monoid();
  FinFun u = FinFun::constant(g.nodes, t.endo.object, 0);
  FinFun ubar = FinFun::constant(g.edges.apex, t.endo.arrow.apex, 1);
  VertEndoMap<SpanDouble> m{e, t.endo, u, make_span_square(e.arrow, t.endo.arrow, u, u, ubar)};
  EndDouble<SpanDouble> end(c);
  PipelineInput<SpanDouble> in{adj, adj, t, t, end.id_square_ver(m)};
  require_all(theorem_pipeline(c, in));
}

TEST_CASE("pipeline through a conjoint") {
  SpanDouble c;
  Graph g = chain();
  Endomorphism<SpanDouble> e{g.nodes, g.edges};
  Graph dag = make_graph(FinSet{"p", "q", "r"}, {"e1", "e2"}, {{"p", "q"}, {"p", "r"}});
  Endomorphism<SpanDouble> d{dag.nodes, dag.edges};
  auto adj = free_monad_adjunction(c, e);
  auto adjd = free_monad_adjunction(c, d);
  FinFun w = FinFun::from_names(dag.nodes, g.nodes, {{"p", "a"}, {"q", "b"}, {"r", "b"}});
  FinFun wbar = FinFun::constant(dag.edges.apex, g.edges.apex, 0);
  VertEndoMap<SpanDouble> wm{d, e, w, make_span_square(d.arrow, e.arrow, w, w, wbar)};
  EndDouble<SpanDouble> end(c);
  EndoSquare<SpanDouble> beta{cofold(c, wm), end.hor_id(e), end.ver_id(e), wm, c.beta(w)};
  require_all(endo_square_condition(c, beta));

  FinCategory t = monoid();
  FinFun u = FinFun::constant(g.nodes, t.endo.object, 0);
  FinFun ubar = FinFun::from_names(g.edges.apex, t.endo.arrow.apex, {{"f", "t"}, {"g", "1"}});
  VertEndoMap<SpanDouble> m{e, t.endo, u, make_span_square(e.arrow, t.endo.arrow, u, u, ubar)};
  PipelineInput<SpanDouble> in{adj, adjd, t, t, end.vcomp(end.id_square_ver(m), beta)};
  require_all(theorem_pipeline(c, in));
}

TEST_CASE("pipeline in Poly") {
  PolyDouble c;
  FinSet y{"y"}, a{"a"};
  Polynomial q = poly_from_ops(y, y, {{"c", {{}, "y"}}});
  Endomorphism<PolyDouble> e{y, q};
  auto adj = free_monad_adjunction(c, e);
  PolyMonad t = make_unary_poly_monad(
      a, {{"1", {"a", "a"}}}, {"1"}, [](const std::string&, const std::string&) { return std::string("1"); }, {{"k", "a"}},
      [](const std::string&, const std::string& k) { return k; });
  FinFun u = FinFun::constant(y, a, 0);
  VertEndoMap<PolyDouble> m{e, t.endo, u,
                            make_poly_square(q, t.endo.arrow, u, u, FinFun::from_names(q.ops, t.endo.arrow.ops, {{"c", "k"}}),
                                             FinFun(q.slots, t.endo.arrow.slots, {}))};
  EndDouble<PolyDouble> end(c);
  require_all(theorem_pipeline(c, PipelineInput<PolyDouble>{adj, adj, t, t, end.id_square_ver(m)}));

  FinSet x{"x1", "x2"};
  Polynomial p = poly_from_ops(x, x, {{"c1", {{}, "x1"}}, {"c2", {{}, "x2"}}});
  Endomorphism<PolyDouble> ep{x, p};
  auto adjp = free_monad_adjunction(c, ep);
  FinFun w = FinFun::constant(y, x, 0);
  VertEndoMap<PolyDouble> wm{e, ep, w,
                             make_poly_square(q, p, w, w, FinFun::from_names(q.ops, p.ops, {{"c", "c1"}}), FinFun(q.slots, p.slots, {}))};
  EndoSquare<PolyDouble> beta{cofold(c, wm), end.hor_id(ep), end.ver_id(ep), wm, c.beta(w)};
  FinFun ux = FinFun::constant(x, a, 0);
  VertEndoMap<PolyDouble> mx{ep, t.endo, ux,
                             make_poly_square(p, t.endo.arrow, ux, ux, FinFun::constant(p.ops, t.endo.arrow.ops, 1),
                                              FinFun(p.slots, t.endo.arrow.slots, {}))};
  require_all(theorem_pipeline(c, PipelineInput<PolyDouble>{adjp, adj, t, t, end.vcomp(end.id_square_ver(mx), beta)}));
}
