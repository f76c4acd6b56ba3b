#include "catch_amalgamated.hpp"

#include "dcmonad/finset.hpp"

using namespace dcmonad;

TEST_CASE("compose_fun tables compose pointwise") {
  FinSet one2{"1", "2"};
  FinSet a{"a"};
  FinSet pq{"p", "q"};
  FinFun f = FinFun::constant(one2, a, 0);
  FinFun g = FinFun::from_names(a, pq, {{"a", "q"}});
  FinFun h = compose_fun(g, f);
  CHECK(h == FinFun::constant(one2, pq, 1));
  CHECK_THROWS_AS(compose_fun(f, f), CompositionError);
}

TEST_CASE("pullback names and orders pairs") {
  FinSet c{"c"};
  FinFun f = FinFun::constant(FinSet{"a1", "a2"}, c, 0);
  FinFun g = FinFun::constant(FinSet{"b1"}, c, 0);
  Pullback pb = pullback(f, g);
  CHECK(pb.object == FinSet{"(a1,b1)", "(a2,b1)"});
  CHECK(pb.p1.table() == std::vector<std::size_t>{0, 1});
  CHECK(pb.p2.table() == std::vector<std::size_t>{0, 0});

  FinSet cc{"c1", "c2"};
  Pullback empty = pullback(FinFun::from_names(FinSet{"a"}, cc, {{"a", "c1"}}),
                            FinFun::from_names(FinSet{"b"}, cc, {{"b", "c2"}}));
  CHECK(empty.object.empty());

  FinSet ab{"a", "b"};
  Pullback diag = pullback(FinFun::identity(ab), FinFun::identity(ab));
  CHECK(diag.object == FinSet{"(a,a)", "(b,b)"});
  CHECK(diag.p1.is_bijective());
}

TEST_CASE("pullback satisfies its universal property on small cones") {
  FinSet c{"c1", "c2"};
  FinFun f = FinFun::from_names(FinSet{"a1", "a2", "a3"}, c, {{"a1", "c1"}, {"a2", "c2"}, {"a3", "c1"}});
  FinFun g = FinFun::from_names(FinSet{"b1", "b2"}, c, {{"b1", "c1"}, {"b2", "c1"}});
  Pullback pb = pullback(f, g);
  CHECK(pb.object.size() == 4);
  for (std::size_t z = 0; z <= 4; ++z) {
    FinSet zs = numbered_set("z", z);
    for_each_function(zs, f.dom(), {}, [&](const FinFun& z1) {
      for_each_function(zs, g.dom(), {}, [&](const FinFun& z2) {
        if (!(compose_fun(f, z1) == compose_fun(g, z2))) return true;
        int mediating = 0;
        for_each_function(zs, pb.object, {}, [&](const FinFun& m) {
          if (compose_fun(pb.p1, m) == z1 && compose_fun(pb.p2, m) == z2) ++mediating;
          return true;
        });
        CHECK(mediating == 1);
        return true;
      });
      return true;
    });
  }
}

TEST_CASE("equalizer keeps agreeing points in order") {
  FinSet xy{"x", "y"};
  FinSet one2{"1", "2"};
  FinFun f = FinFun::from_names(one2, xy, {{"1", "x"}, {"2", "y"}});
  FinFun g = FinFun::constant(one2, xy, 0);
  Equalizer e = equalizer(f, g);
  CHECK(e.object == FinSet{"1"});
  CHECK(equalizer(f, f).inclusion.is_bijective());
  FinFun f1 = FinFun::constant(FinSet{"1"}, xy, 0);
  FinFun g1 = FinFun::constant(FinSet{"1"}, xy, 1);
  CHECK(equalizer(f1, g1).object.empty());
}

TEST_CASE("coproduct tags both summands") {
  Coproduct s = coproduct(FinSet{"a1", "a2"}, FinSet{"a1"});
  CHECK(s.sum.size() == 3);
  CHECK(s.sum == FinSet{"inl(a1)", "inl(a2)", "inr(a1)"});
  CHECK(coproduct(FinSet{}, FinSet{"b"}).sum.size() == 1);
}

TEST_CASE("fiber scans the table") {
  FinSet xy{"x", "y"};
  FinFun f = FinFun::from_names(FinSet{"1", "2"}, xy, {{"1", "x"}, {"2", "y"}});
  CHECK(fiber(f, "x") == FinSet{"1"});
  CHECK(fiber(FinFun::constant(FinSet{"1", "2"}, FinSet{"c"}, 0), "c") == FinSet{"1", "2"});
  CHECK_THROWS_AS(fiber(f, "z"), Error);
}

TEST_CASE("dependent product counts sections") {
  FinSet b{"b", "b0"};
  FinSet e{"e1", "e2"};
  FinFun theta = FinFun::constant(e, b, 0);
  FinSet total{"s1", "s2", "t1", "t2", "t3"};
  FinFun proj = FinFun::from_names(total, e, {{"s1", "e1"}, {"s2", "e1"}, {"t1", "e2"}, {"t2", "e2"}, {"t3", "e2"}});
  SliceObject pi = dependent_product(theta, SliceObject{proj});
  CHECK(fiber(pi.proj, "b").size() == 6);
  CHECK(fiber(pi.proj, "b0").size() == 1);

  FinFun proj_gap = FinFun::from_names(FinSet{"s1"}, e, {{"s1", "e1"}});
  CHECK(fiber(dependent_product(theta, SliceObject{proj_gap}).proj, "b").empty());
}

TEST_CASE("dependent product is right adjoint to pullback") {
  FinSet b{"b1", "b2"};
  FinSet e{"e1", "e2", "e3"};
  FinFun theta = FinFun::from_names(e, b, {{"e1", "b1"}, {"e2", "b1"}, {"e3", "b2"}});
  SliceObject s{FinFun::from_names(FinSet{"x", "y", "z"}, e, {{"x", "e1"}, {"y", "e2"}, {"z", "e2"}})};
  SliceObject pi = dependent_product(theta, s);
  for (std::size_t n = 0; n <= 4; ++n) {
    FinSet tt = numbered_set("t", n);
    for_each_function(tt, b, {}, [&](const FinFun& tproj) {
      SliceObject t{tproj};
      SliceObject pt = pullback_slice(theta, t);
      std::size_t lhs = 0, rhs = 0;
      for_each_function(pt.total(), s.total(), {}, [&](const FinFun& h) {
        if (compose_fun(s.proj, h) == pt.proj) ++lhs;
        return true;
      });
      for_each_function(t.total(), pi.total(), {}, [&](const FinFun& h) {
        if (compose_fun(pi.proj, h) == t.proj) ++rhs;
        return true;
      });
      CHECK(lhs == rhs);
      return true;
    });
  }
}

TEST_CASE("commuting bijection search") {
  FinSet ab{"a", "b"};
  FinFun id = FinFun::identity(ab);
  std::vector<BijectionConstraint> same{{id, id}};
  auto found = find_commuting_bijection(ab, ab, same);
  REQUIRE(found);
  CHECK(*found == id);

  FinSet pq{"p", "q"};
  FinSet uv{"u", "v"};
  FinSet lab{"L1", "L2"};
  FinFun f = FinFun::from_names(pq, lab, {{"p", "L1"}, {"q", "L2"}});
  FinFun g = FinFun::from_names(uv, lab, {{"u", "L2"}, {"v", "L1"}});
  std::vector<BijectionConstraint> cons{{f, g}};
  auto beta = find_commuting_bijection(pq, uv, cons);
  REQUIRE(beta);
  CHECK(beta->apply("p") == "v");
  CHECK(beta->apply("q") == "u");

  CHECK_FALSE(find_commuting_bijection(ab, FinSet{"a"}, {}));
  CHECK_THROWS_AS(find_commuting_bijection(numbered_set("x", 9), numbered_set("y", 9), {}), SearchLimitError);
}

TEST_CASE("duplicate names are rejected") {
  CHECK_THROWS_AS(FinSet({"a", "a"}), Error);
}
