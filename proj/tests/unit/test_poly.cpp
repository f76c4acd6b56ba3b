#include "catch_amalgamated.hpp"

#include "dcmonad/poly.hpp"
#include "dcmonad/span.hpp"

using namespace dcmonad;

namespace {

FinSet Y{"y"};

Polynomial constants() { return poly_from_ops(Y, Y, {{"c", {{}, "y"}}}); }
Polynomial successor() { return poly_from_ops(Y, Y, {{"s", {{"y"}, "y"}}}); }

std::vector<std::size_t> arities(const Polynomial& p) {
  std::vector<std::size_t> out;
  for (std::size_t b = 0; b < p.ops.size(); ++b) out.push_back(p.arity(b));
  return out;
}

// The monad on {a} with ops 1 (unary identity) and one constant k.
PolyMonad pointed() {
  return make_unary_poly_monad(
      FinSet{"a"}, {{"1", {"a", "a"}}}, {"1"}, [](const std::string&, const std::string&) { return std::string("1"); },
      {{"k", "a"}}, [](const std::string&, const std::string& c) { return c; });
}

}  // namespace

TEST_CASE("composite ops pair an outer op with inner ops") {
  FinSet one{"*"};
  Polynomial q = poly_from_ops(one, one, {{"q", {{"*", "*"}, "*"}}});
  Polynomial p = poly_from_ops(one, one, {{"z", {{}, "*"}}, {"u", {{"*"}, "*"}}});
  PolyComposite c = compose_polys_detailed(q, p);
  CHECK(c.poly.ops == FinSet{"(q,[z,z])", "(q,[z,u])", "(q,[u,z])", "(q,[u,u])"});
  CHECK(arities(c.poly) == std::vector<std::size_t>{0, 1, 1, 2});
  CHECK_THROWS_AS(compose_polys(q, poly_from_ops(Y, Y, {})), CompositionError);
}

TEST_CASE("evaluation counts sections") {
  FinSet one{"*"};
  Polynomial q = poly_from_ops(one, one, {{"q", {{"*", "*"}, "*"}}});
  SliceObject x{FinFun::constant(FinSet{"x1", "x2", "x3"}, one, 0)};
  CHECK(evaluate_poly(q, x).total().size() == 9);
  Polynomial z = poly_from_ops(one, one, {{"z", {{}, "*"}}});
  CHECK(evaluate_poly(z, x).total().size() == 1);
  CHECK(evaluate_poly(z, SliceObject{FinFun(FinSet{}, one, {})}).total().size() == 1);
  CHECK(evaluate_poly(id_poly(one), x).total().size() == 3);
}

TEST_CASE("composition agrees with evaluation on random inputs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    FinSet x = random_set(rng, 2, "x", 1), y = random_set(rng, 2, "y", 1), z = random_set(rng, 2, "z", 1);
    Polynomial p = random_poly(rng, x, y, 3, 2, "p");
    Polynomial q = random_poly(rng, y, z, 3, 2, "q");
    FinSet total = random_set(rng, 3, "t");
    SliceObject s{random_fun(rng, total, x)};
    auto beta = composition_bijection(q, p, s);
    INFO(describe_poly_ops(p) << " | " << describe_poly_ops(q));
    CHECK(beta.has_value());
  }
}

TEST_CASE("coherence squares are cartesian and invertible") {
  PolyDouble c;
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    FinSet x = random_set(rng, 2, "x", 1);
    Polynomial f = random_poly(rng, x, x, 2, 2, "f"), g = random_poly(rng, x, x, 2, 2, "g"), h = random_poly(rng, x, x, 2, 1, "h");
    for (const PolySquare& s : {c.associator(h, g, f), c.left_unitor(f), c.right_unitor(f)}) {
      CHECK_FALSE(c.check_square(s));
      auto inv = c.invert_globular(s);
      REQUIRE(inv);
      CHECK(c.vcomp(*inv, s) == c.id_square_hor(s.top));
    }
  }
}

TEST_CASE("interchange and cartesianness of composites on random grids") {
  PolyDouble c;
  std::mt19937_64 rng(5);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    FinSet x = random_set(rng, 2, "x", 1), y = random_set(rng, 2, "y", 1), z = random_set(rng, 2, "z", 1);
    FinSet x2 = random_set(rng, 2, "x", 1), y2 = random_set(rng, 2, "y", 1), z2 = random_set(rng, 2, "z", 1);
    FinFun u = random_fun(rng, x, x2), v = random_fun(rng, y, y2), w = random_fun(rng, z, z2);
    Polynomial f = random_poly(rng, x, y, 2, 2, "f"), g = random_poly(rng, y, z, 2, 2, "g");
    auto a = random_poly_square_over(rng, f, u, v, 1);
    auto b = random_poly_square_over(rng, g, v, w, 1);
    REQUIRE(a);
    REQUIRE(b);
    auto a2 = random_poly_square_over(rng, a->bottom, FinFun::identity(x2), FinFun::identity(y2), 1, "t");
    auto b2 = random_poly_square_over(rng, b->bottom, FinFun::identity(y2), FinFun::identity(z2), 1, "t");
    REQUIRE(a2);
    REQUIRE(b2);
    PolySquare rows = c.vcomp(c.hcomp(*b2, *a2), c.hcomp(*b, *a));
    PolySquare cols = c.hcomp(c.vcomp(*b2, *b), c.vcomp(*a2, *a));
    CHECK(rows == cols);
    CHECK_FALSE(c.check_square(rows));
    ++checked;
  }
  CHECK(checked == 100);
}

TEST_CASE("a non-cartesian square is rejected") {
  FinSet one{"*"};
  Polynomial two = poly_from_ops(one, one, {{"b", {{"*", "*"}, "*"}}});
  Polynomial un = poly_from_ops(one, one, {{"d", {{"*"}, "*"}}});
  auto id = FinFun::identity(one);
  CHECK_THROWS_AS(make_poly_square(two, un, id, id, FinFun(two.ops, un.ops, {0}), FinFun(two.slots, un.slots, {0, 0})),
                  CompositionError);
}

TEST_CASE("framed equalities in Poly") {
  PolyDouble c;
  FinSet ab{"a", "b"}, cd{"c", "d"};
  std::vector<FinFun> maps{FinFun::constant(ab, FinSet{"c"}, 0), FinFun::from_names(ab, cd, {{"a", "d"}, {"b", "c"}}),
                           FinFun::constant(ab, cd, 1), FinFun(FinSet{}, ab, {})};
  for (const FinFun& u : maps) {
    for (const auto& check : framed_equalities(c, u)) {
      INFO(u.to_string() << " " << check.name << " " << check.detail);
      CHECK(check.holds);
    }
  }
  FinFun k = FinFun::constant(ab, FinSet{"c"}, 0);
  CHECK(c.as_conjoint(c.conjoint(k)) == k);
  CHECK_FALSE(c.as_conjoint(c.companion(k)));
}

TEST_CASE("free monad on a constant") {
  auto r = free_poly_monad(constants(), 8);
  CHECK(r.data->exact);
  CHECK(r.data->star.ops == FinSet{"Hole(y)", "c"});
  CHECK(arities(r.data->star) == std::vector<std::size_t>{1, 0});
  PolyDouble c;
  PolyMonad m = free_poly_monad_data(r);
  for (const auto& check : monad_laws(c, m)) {
    INFO(check.name << " " << check.detail);
    CHECK(check.holds);
  }
  CHECK_FALSE(c.check_square(r.bundle.iota));
  PolySquare nu = nu_square(r);
  CHECK(nu.phi.apply("(c,[])") == "c");
}

TEST_CASE("free monad on a successor is truncated") {
  auto r = free_poly_monad(successor(), 4);
  CHECK_FALSE(r.data->exact);
  CHECK(r.data->star.ops == FinSet{"Hole(y)", "s(Hole(y))", "s(s(Hole(y)))", "s(s(s(Hole(y))))", "s(s(s(s(Hole(y)))))"});
  CHECK(arities(r.data->star) == std::vector<std::size_t>{1, 1, 1, 1, 1});
  CHECK_FALSE(r.bundle.mult);
  CHECK_THROWS_AS(free_poly_monad_data(r), TruncationError);
  auto laws = free_poly_pointwise_laws(*r.data);
  REQUIRE(laws.size() == 2);
  CHECK_FALSE(laws[0].holds);
  CHECK(laws[0].detail.find("exceeds max depth 4") != std::string::npos);
  CHECK(laws[1].holds);
  CHECK_THROWS_AS(free_poly_monad(successor(), 0), Error);
}

TEST_CASE("free monad with no ops has only holes") {
  FinSet xy{"x", "y"};
  auto r = free_poly_monad(poly_from_ops(xy, xy, {}), 1);
  CHECK(r.data->exact);
  CHECK(r.data->star.ops == FinSet{"Hole(x)", "Hole(y)"});
  CHECK(nu_square(r).top.ops.empty());
}

TEST_CASE("mixed trees graft associatively") {
  Polynomial q = poly_from_ops(FinSet{"x", "y"}, FinSet{"x", "y"},
                               {{"b", {{"x", "x"}, "y"}}, {"c", {{}, "x"}}, {"d", {{}, "y"}}});
  auto r = free_poly_monad(q, 4);
  CHECK(r.data->exact);
  CHECK(r.data->star.ops.size() == 8);
  CHECK(all_hold(monad_laws(PolyDouble(), free_poly_monad_data(r))));
  CHECK(all_hold(free_poly_pointwise_laws(*r.data)));
}

TEST_CASE("sharp of the constant into a pointed monad") {
  PolyDouble c;
  PolyMonad m = pointed();
  REQUIRE(all_hold(monad_laws(c, m)));
  auto free = free_poly_monad(constants(), 8);
  FinSet a{"a"};
  Polynomial f = poly_from_ops(a, Y, {{"f", {{"a"}, "y"}}});
  Polynomial qf = compose_polys(constants(), f);
  Polynomial fm = compose_polys(f, m.endo.arrow);
  REQUIRE(qf.ops == FinSet{"(c,[])"});
  PolySquare phi = make_poly_square(qf, fm, FinFun::identity(a), FinFun::identity(Y),
                                    FinFun::from_names(qf.ops, fm.ops, {{"(c,[])", "(f,[k])"}}), FinFun(qf.slots, fm.slots, {}));
  HorEndoMap<PolyDouble> h{m.endo, Endomorphism<PolyDouble>{Y, constants()}, f, phi};
  PolySquare sharp = sharp_lift_poly(m, h, free);
  CHECK_FALSE(c.check_square(sharp));
  CHECK(sharp.phi.apply("(c,[])") == "(f,[k])");
  CHECK(sharp.phi.apply("(Hole(y),[f])") == "(f,[1])");

  // The iota triangle: sharp after (iota F) is phi.
  PolySquare triangle = c.vcomp(sharp, c.hcomp(free.bundle.iota, c.id_square_hor(f)));
  CHECK(triangle == phi);

  auto adj = free_monad_adjunction(c, Endomorphism<PolyDouble>{Y, constants()});
  HorMonadMap<PolyDouble> hm = horizontal_sharp(c, adj, m, h);
  for (const auto& check : hor_monad_map_laws(c, hm)) {
    INFO(check.name << " " << check.detail);
    CHECK(check.holds);
  }
}

TEST_CASE("free monad is the initial algebra of id + Q") {
  // Algebras (A, lambda : id => A, rho : Q A => A) over A with at most two ops
  // of arity at most one; exactly one algebra map out of the trees each time.
  PolyDouble c;
  for (const Polynomial& q : {constants(), poly_from_ops(Y, Y, {})}) {
    auto free = free_poly_monad(q, 8);
    REQUIRE(free.data->exact);
    const Polynomial& star = free.data->star;
    PolySquare nu = nu_square(free);
    auto one = FinFun::identity(Y);
    std::size_t algebras = 0;
    for (std::size_t unary = 0; unary <= 2; ++unary) {
      for (std::size_t nullary = 0; unary + nullary <= 2; ++nullary) {
        std::vector<std::pair<std::string, std::pair<std::vector<std::string>, std::string>>> ops;
        for (std::size_t i = 0; i < unary; ++i) ops.push_back({"u" + std::to_string(i), {{"y"}, "y"}});
        for (std::size_t i = 0; i < nullary; ++i) ops.push_back({"n" + std::to_string(i), {{}, "y"}});
        Polynomial alg = poly_from_ops(Y, Y, ops);
        Polynomial qa = compose_polys(q, alg);
        c.enumerate_squares(id_poly(Y), alg, one, one, [&](const PolySquare& lambda) {
          c.enumerate_squares(qa, alg, one, one, [&](const PolySquare& rho) {
            ++algebras;
            std::size_t maps = 0;
            c.enumerate_squares(star, alg, one, one, [&](const PolySquare& h) {
              bool unit = c.vcomp(h, free.bundle.unit) == lambda;
              bool action = c.vcomp(h, nu) == c.vcomp(rho, c.hcomp(c.id_square_hor(q), h));
              if (unit && action) ++maps;
              return true;
            });
            CHECK(maps == 1);
            return true;
          });
          return true;
        });
      }
    }
    CHECK(algebras > 0);
  }
}

TEST_CASE("coproducts and equalizers of polynomial squares") {
  PolyDouble c;
  FinSet one{"*"};
  Polynomial f = poly_from_ops(one, one, {{"a", {{"*"}, "*"}}});
  Polynomial g = poly_from_ops(one, one, {{"b", {{}, "*"}}});
  auto cp = c.coproduct(f, g);
  CHECK(cp.sum.ops == FinSet{"inl(a)", "inr(b)"});
  CHECK_FALSE(c.check_square(cp.inl));
  CHECK(c.copair(cp, cp.inl, cp.inr) == c.id_square_hor(cp.sum));

  Polynomial two = poly_from_ops(one, one, {{"p", {{"*"}, "*"}}, {"q", {{"*"}, "*"}}});
  auto id = FinFun::identity(one);
  PolySquare s = make_poly_square(two, two, id, id, FinFun(two.ops, two.ops, {0, 1}), FinFun(two.slots, two.slots, {0, 1}));
  PolySquare t = make_poly_square(two, two, id, id, FinFun(two.ops, two.ops, {0, 0}), FinFun(two.slots, two.slots, {0, 0}));
  auto eq = c.equalizer(s, t);
  CHECK(eq.object.ops == FinSet{"p"});
  PolySquare only_p = make_poly_square(f, two, id, id, FinFun(f.ops, two.ops, {0}), FinFun(f.slots, two.slots, {0}));
  CHECK(c.factor_through(eq.inclusion, only_p));
  PolySquare only_q = make_poly_square(f, two, id, id, FinFun(f.ops, two.ops, {1}), FinFun(f.slots, two.slots, {1}));
  CHECK_FALSE(c.factor_through(eq.inclusion, only_q));
}

TEST_CASE("unary polynomial monads") {
  std::size_t count = 0;
  enumerate_unary_poly_monads(Y, 2, 2, [&](const PolyMonad& m) {
    ++count;
    INFO(describe_poly_ops(m.endo.arrow));
    CHECK(all_hold(monad_laws(PolyDouble(), m)));
    return true;
  });
  // Monoids of size <= 2: trivial, Z/2, {1,t} with tt = t. Actions on 0, 1
  // or 2 constants up to swapping: 3 + 3 + (1 + 2 + 2).
  CHECK(count == 11);
}
