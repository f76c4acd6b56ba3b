#include "catch_amalgamated.hpp"

#include "dcmonad/twocat.hpp"

using namespace dcmonad;

namespace {

std::vector<Span> all_spans(const FinSet& x, std::size_t n) {
  std::vector<Span> out;
  FinSet apex = numbered_set("m", n);
  for_each_function(apex, x, {}, [&](const FinFun& l) {
    for_each_function(apex, x, {}, [&](const FinFun& r) {
      out.push_back(make_span(l, r));
      return true;
    });
    return true;
  });
  return out;
}

}  // namespace

TEST_CASE("the terminal 2-category has one monad") {
  TerminalTwoCat k;
  TrivialVertical<TerminalTwoCat> h;
  CHECK(h.left(h.id_square_hor({})) == h.ver_id({}));
  auto cmp = compare_monad_notions(k, {}, {TerminalTwoCat::Cell{}});
  CHECK(cmp.two_categorical == 1);
  CHECK(cmp.double_categorical == 1);
}

TEST_CASE("monads in the horizontal 2-category of spans are categories") {
  SpanHorizontal k;
  for (const FinSet& x : {FinSet{"o"}, FinSet{"o1", "o2"}}) {
    std::size_t max_n = x.size() == 1 ? 2 : 3;
    std::size_t categories = 0;
    enumerate_categories(x, max_n, [&](const FinCategory&) {
      ++categories;
      return true;
    });
    std::size_t two = 0, dbl = 0, brute = 0;
    for (std::size_t n = 0; n <= max_n; ++n) {
      auto cmp = compare_monad_notions(k, x, all_spans(x, n));
      CHECK(cmp.disagreements == 0);
      two += cmp.two_categorical;
      dbl += cmp.double_categorical;
      brute += brute_force_monad_count(x, n);
    }
    CHECK(two == categories);
    CHECK(dbl == categories);
    CHECK(brute == categories);
  }
}

TEST_CASE("vertical composition in the trivial instance is 2-cell composition") {
  TrivialVertical<SpanHorizontal> h;
  Graph g = make_graph(FinSet{"a", "b"}, {"f"}, {{"a", "b"}});
  SpanSquare a = h.left_unitor(g.edges);
  auto inv = h.invert_globular(a);
  REQUIRE(inv);
  CHECK(h.vcomp(a, *inv) == h.two_category().vcomp2(a, *inv));
  CHECK(h.vcomp(a, *inv) == h.id_square_hor(g.edges));
}
