#include "catch_amalgamated.hpp"

#include "dcmonad/span.hpp"

using namespace dcmonad;

namespace {

Graph chain() { return make_graph(FinSet{"a", "b", "c"}, {"f", "g"}, {{"a", "b"}, {"b", "c"}}); }

Graph loop() { return make_graph(FinSet{"x"}, {"e"}, {{"x", "x"}}); }

}  // namespace

TEST_CASE("composing single-edge spans") {
  FinSet abc{"a", "b", "c"};
  Graph f = make_graph(abc, {"f"}, {{"a", "b"}});
  Graph g = make_graph(abc, {"g"}, {{"b", "c"}});
  Span gf = compose_spans(g.edges, f.edges);
  REQUIRE(gf.apex.size() == 1);
  CHECK(gf.apex[0] == "(f,g)");
  CHECK(gf.src[gf.left(0)] == "a");
  CHECK(gf.tgt[gf.right(0)] == "c");

  Span empty = make_span(FinFun(FinSet{}, abc, {}), FinFun(FinSet{}, abc, {}));
  CHECK(compose_spans(g.edges, empty).apex.empty());
}

TEST_CASE("identity spans are units up to a commuting bijection") {
  Span f = chain().edges;
  for (const Span& composite : {compose_spans(id_span(f.tgt), f), compose_spans(f, id_span(f.src))}) {
    std::vector<BijectionConstraint> cons{{composite.left, f.left}, {composite.right, f.right}};
    CHECK(find_commuting_bijection(composite.apex, f.apex, cons).has_value());
  }
}

TEST_CASE("coherence squares are invertible and globular") {
  SpanDouble c;
  Span f = chain().edges;
  SpanSquare a = c.associator(f, f, f);
  CHECK_FALSE(c.check_square(a));
  CHECK(is_globular(c, a));
  auto inv = c.invert_globular(a);
  REQUIRE(inv);
  CHECK(c.vcomp(*inv, a) == c.id_square_hor(a.top));
  CHECK(c.vcomp(a, *inv) == c.id_square_hor(a.bottom));
  CHECK(c.invert_globular(c.left_unitor(f)));
  CHECK(c.invert_globular(c.right_unitor(f)));
}

TEST_CASE("equality mod coherence") {
  SpanDouble c;
  Graph g = chain();
  Span f = g.edges;
  // (f f) f and f (f f) are related by the associator.
  SpanSquare lhs = c.id_square_hor(c.hor_compose(c.hor_compose(f, f), f));
  SpanSquare rhs = c.id_square_hor(c.hor_compose(f, c.hor_compose(f, f)));
  CHECK(squares_equal_mod_coherence(c, lhs, rhs));
  CHECK(squares_equal_mod_coherence(c, lhs, lhs));

  FinSet x{"x"};
  Span two = make_span(FinFun::constant(FinSet{"p", "q"}, x, 0), FinFun::constant(FinSet{"p", "q"}, x, 0));
  Span top = make_span(FinFun::constant(FinSet{"t"}, x, 0), FinFun::constant(FinSet{"t"}, x, 0));
  auto one = FinFun::identity(x);
  SpanSquare s1{top, two, one, one, FinFun(top.apex, two.apex, {0})};
  SpanSquare s2{top, two, one, one, FinFun(top.apex, two.apex, {1})};
  // Swapping p and q is an automorphism of `two`.
  CHECK(squares_equal_mod_coherence(c, s1, s2));

  // t and w share a target in q1 but not in q2; no automorphism changes that.
  FinSet y{"y1", "y2"};
  Span rtop2 = make_span(FinFun::constant(FinSet{"t", "w"}, x, 0), FinFun(FinSet{"t", "w"}, y, {0, 0}));
  Span rigid2 = make_span(FinFun::constant(FinSet{"p", "q"}, x, 0), FinFun(FinSet{"p", "q"}, y, {0, 0}));
  SpanSquare q1{rtop2, rigid2, one, FinFun::identity(y), FinFun(rtop2.apex, rigid2.apex, {0, 0})};
  SpanSquare q2{rtop2, rigid2, one, FinFun::identity(y), FinFun(rtop2.apex, rigid2.apex, {0, 1})};
  CHECK_FALSE(squares_equal_mod_coherence(c, q1, q2));
}

TEST_CASE("interchange on a 2x2 grid") {
  SpanDouble c;
  std::mt19937_64 rng(7);
  int checked = 0;
  for (int trial = 0; trial < 50; ++trial) {
    FinSet x = random_set(rng, 2, "x", 1), y = random_set(rng, 2, "y", 1), z = random_set(rng, 2, "z", 1);
    FinSet x2 = random_set(rng, 2, "x", 1), y2 = random_set(rng, 2, "y", 1), z2 = random_set(rng, 2, "z", 1);
    FinFun u = random_fun(rng, x, x2), v = random_fun(rng, y, y2), w = random_fun(rng, z, z2);
    Span f = random_span(rng, x, y, 3), g = random_span(rng, y, z, 3);
    auto a = random_square_over(rng, f, u, v, 3);
    auto b = random_square_over(rng, g, v, w, 3);
    if (!a || !b) continue;
    auto a2 = random_square_over(rng, a->bottom, FinFun::identity(x2), FinFun::identity(y2), 3);
    auto b2 = random_square_over(rng, b->bottom, FinFun::identity(y2), FinFun::identity(z2), 3);
    if (!a2 || !b2) continue;
    SpanSquare rows = c.vcomp(c.hcomp(*b2, *a2), c.hcomp(*b, *a));
    SpanSquare cols = c.hcomp(c.vcomp(*b2, *b), c.vcomp(*a2, *a));
    CHECK(rows == cols);
    ++checked;
  }
  CHECK(checked > 10);
}

TEST_CASE("framed equalities for a constant map") {
  SpanDouble c;
  FinFun u = FinFun::constant(FinSet{"a", "b"}, FinSet{"c"}, 0);
  CHECK(c.companion(u).apex.size() == 2);
  CHECK(c.conjoint(u).apex.size() == 2);
  for (const auto& check : framed_equalities(c, u)) {
    INFO(check.name << " " << check.detail);
    CHECK(check.holds);
  }
  FinFun one = FinFun::identity(FinSet{"a", "b"});
  CHECK(c.companion(one) == id_span(one.dom()));
  CHECK(c.conjoint(one) == id_span(one.dom()));
  CHECK(c.alpha(one) == c.id_square_hor(id_span(one.dom())));
}

TEST_CASE("free category on a chain") {
  auto r = free_category(chain(), 2);
  const FreeCategory& fc = *r.data;
  CHECK(fc.exact);
  CHECK(fc.morphisms == FinSet{"1_a", "1_b", "1_c", "f", "g", "f.g"});
  SpanDouble c;
  FinCategory cat = free_category_monad(r);
  for (const auto& check : monad_laws(c, cat)) {
    INFO(check.name << " " << check.detail);
    CHECK(check.holds);
  }
  CHECK_FALSE(free_category(chain(), 1).data->exact);
}

TEST_CASE("free category on a loop is truncated") {
  auto r = free_category(loop(), 3);
  CHECK_FALSE(r.data->exact);
  CHECK(r.data->morphisms == FinSet{"1_x", "e", "e.e", "e.e.e"});
  CHECK_THROWS_AS(free_category_monad(r), TruncationError);
  auto laws = free_category_pointwise_laws(*r.data);
  REQUIRE(laws.size() == 2);
  CHECK_FALSE(laws[0].holds);
  CHECK(laws[0].detail.find("exceeds max length 3") != std::string::npos);
}

TEST_CASE("free category on an edgeless graph is discrete") {
  auto r = free_category(make_graph(FinSet{"a", "b"}, {}, {}), 1);
  CHECK(r.data->exact);
  CHECK(r.data->morphisms == FinSet{"1_a", "1_b"});
  CHECK_THROWS_AS(free_category(loop(), 0), Error);
}

TEST_CASE("awkward edge names are bracketed") {
  Graph g = make_graph(FinSet{"a", "b"}, {"p.q", "1_z"}, {{"a", "b"}, {"b", "b"}});
  auto r = free_category(g, 2);
  CHECK(r.data->morphisms.contains("[p.q].[1_z]"));
}

TEST_CASE("sharp of the chain into a one-object category") {
  // Target: the monoid {1, t, t2} with t.t = t2 and t2 absorbing under t.
  FinSet star{"*"};
  Graph monoid_graph = make_graph(star, {"1", "t", "t2"}, {{"*", "*"}, {"*", "*"}, {"*", "*"}});
  FinCategory target = make_category(monoid_graph, {"1"}, [](const std::string& p, const std::string& q) {
    if (p == "1") return q;
    if (q == "1") return p;
    return std::string("t2");
  });
  SpanDouble c;
  REQUIRE(all_hold(monad_laws(c, target)));

  // A graph morphism chain -> target sending both edges to t, cofolded and sharpened.
  auto free = free_category(chain(), 2);
  FinFun u = FinFun::constant(chain().nodes, star, 0);
  FinFun ubar = FinFun::constant(chain().edges.apex, monoid_graph.edges.apex, 1);
  VertEndoMap<SpanDouble> m{Endomorphism<SpanDouble>{chain().nodes, chain().edges}, target.endo, u,
                            make_span_square(chain().edges, target.endo.arrow, u, u, ubar)};
  auto adj = free_monad_adjunction(c, m.src);
  VertMonadMap<SpanDouble> sharp = vertical_sharp(c, adj, target, m);
  CHECK(sharp.square.mid.apply("f.g") == "t2");
  CHECK(sharp.square.mid.apply("f") == "t");
  CHECK(sharp.square.mid.apply("1_b") == "1");
  CHECK(all_hold(vert_monad_map_laws(c, sharp)));
}

TEST_CASE("category enumeration agrees with brute force") {
  FinSet one{"o"};
  std::size_t labeled = 0;
  enumerate_categories(one, 2, [&](const FinCategory&) {
    ++labeled;
    return true;
  });
  CHECK(labeled == 5);
  CHECK(brute_force_monad_count(one, 0) + brute_force_monad_count(one, 1) + brute_force_monad_count(one, 2) == 5);

  FinSet two{"o1", "o2"};
  std::size_t labeled2 = 0;
  enumerate_categories(two, 3, [&](const FinCategory&) {
    ++labeled2;
    return true;
  });
  CHECK(labeled2 == brute_force_monad_count(two, 2) + brute_force_monad_count(two, 3));
}
