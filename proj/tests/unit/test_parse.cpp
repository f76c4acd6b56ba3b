#include "catch_amalgamated.hpp"

#include "dcmonad/parse.hpp"

using namespace dcmonad;

namespace {

ParseError parse_error_of(auto&& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("no ParseError thrown");
  return ParseError(0, 0, "");
}

}  // namespace

TEST_CASE("graph file parses") {
  Graph g = parse_graph("graph\n# comment\n\nnodes: a b c\nedge f a b  # trailing\nedge g b c\n");
  CHECK(g.nodes.size() == 3);
  CHECK(g.edges.apex.size() == 2);
  auto fc = free_category(g, 16);
  CHECK(fc.data->morphisms.size() == 6);
  CHECK(fc.data->exact);
}

TEST_CASE("graph accepts a separated colon") {
  Graph g = parse_graph("graph\nnodes : x\nedge l x x\n");
  CHECK(g.edges.apex.size() == 1);
}

TEST_CASE("graph errors carry positions") {
  auto e = parse_error_of([] { parse_graph("graph\nnodes: a b\nedge f a z\n"); });
  CHECK(e.line() == 3);
  CHECK(e.column() == 10);
  CHECK(std::string(e.what()) == "3:10: unknown node 'z'");

  e = parse_error_of([] { parse_graph("graf\n"); });
  CHECK(e.line() == 1);
  CHECK(e.column() == 1);

  e = parse_error_of([] { parse_graph("graph\nnodes: a a\n"); });
  CHECK(e.line() == 2);
  CHECK(e.column() == 10);

  e = parse_error_of([] { parse_graph("graph\nedge f a b\n"); });
  CHECK(e.line() == 2);

  e = parse_error_of([] { parse_graph("graph\nnodes: a\nedge f a\n"); });
  CHECK(e.line() == 3);
  CHECK(e.column() == 9);

  e = parse_error_of([] { parse_graph("graph\nnodes: a\nedge f a a\nedge f a a\n"); });
  CHECK(e.line() == 4);
  CHECK(e.column() == 6);

  e = parse_error_of([] { parse_graph(""); });
  CHECK(e.line() == 1);
}

TEST_CASE("poly file parses") {
  Polynomial p = parse_poly("poly\nbase: x y\nop b x x : -> y\nop c : -> x\nop d :-> y\n");
  CHECK(p.ops.size() == 3);
  CHECK(p.slots.size() == 2);
  auto fm = free_poly_monad(parse_poly("poly\nbase: y\nop c : -> y\n"), 8);
  CHECK(fm.data->star.ops.size() == 2);
  CHECK(fm.data->exact);
}

TEST_CASE("poly errors carry positions") {
  auto e = parse_error_of([] { parse_poly("poly\nbase: y\nop c : => y\n"); });
  CHECK(e.line() == 3);
  CHECK(e.column() == 8);

  e = parse_error_of([] { parse_poly("poly\nbase: y\nop s w : -> y\n"); });
  CHECK(e.line() == 3);
  CHECK(e.column() == 6);
  CHECK(std::string(e.what()) == "3:6: unknown type 'w'");

  e = parse_error_of([] { parse_poly("poly\nbase: y\nop s y : -> q\n"); });
  CHECK(e.column() == 13);

  e = parse_error_of([] { parse_poly("poly\nbase: y\nop s y\n"); });
  CHECK(e.line() == 3);

  e = parse_error_of([] { parse_poly("poly\nbase: y\nop s y : -> y y\n"); });
  CHECK(e.column() == 15);
}

TEST_CASE("header chooses the format") {
  CHECK(std::holds_alternative<Graph>(parse_endo("  # x\ngraph\nnodes: a\n")));
  CHECK(std::holds_alternative<Polynomial>(parse_endo("poly\nbase: y\n")));
  auto e = parse_error_of([] { parse_endo("span\n"); });
  CHECK(e.line() == 1);
}

TEST_CASE("missing file is a parse error") {
  auto e = parse_error_of([] { read_text_file("/nonexistent/file.graph"); });
  CHECK(e.line() == 0);
}
