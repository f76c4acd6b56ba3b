#include "catch_amalgamated.hpp"

#include <sstream>

#include "dcmonad/cli.hpp"

using namespace dcmonad;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(DCMONAD_TEST_DATA) + "/" + name; }

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("free-cat on the chain") {
  auto r = call({"free-cat", data("chain.graph")});
  CHECK(r.code == kExitOk);
  CHECK(has(r.out, "morphisms: 6\n"));
  CHECK(has(r.out, "f ; g = f.g\n"));
  CHECK(has(r.out, "exact: true\n"));
}

TEST_CASE("free-cat on a loop is truncated") {
  auto r = call({"free-cat", data("loop.graph"), "--max-length", "3"});
  CHECK(r.code == kExitOk);
  CHECK(has(r.out, "morphisms: 4\n"));
  CHECK(has(r.out, "l.l ; l.l = undefined (exceeds max length 3)"));
  CHECK(has(r.out, "exact: false\n"));
}

TEST_CASE("free-monad on constants and successor") {
  auto c = call({"free-monad", data("const.poly")});
  CHECK(c.code == kExitOk);
  CHECK(has(c.out, "trees: 2\n"));
  CHECK(has(c.out, "Hole(y) : arity 1"));
  CHECK(has(c.out, "c : arity 0"));
  CHECK(has(c.out, "mu: Hole(y) <- [c] = c\n"));
  CHECK(has(c.out, "exact: true\n"));

  auto s = call({"free-monad", data("succ.poly"), "--max-depth", "4"});
  CHECK(s.code == kExitOk);
  CHECK(has(s.out, "trees: 5\n"));
  CHECK(has(s.out, "exact: false\n"));
}

TEST_CASE("laws prints suite lines") {
  auto r = call({"laws", "span", "--size", "3", "--trials", "200", "--seed", "1"});
  CHECK(r.code == kExitOk);
  CHECK(has(r.out, "SUITE double-axioms PASS 5400 0 seed=1\n"));
  CHECK(has(r.out, "SUITE framed PASS 420 0 seed=0\n"));
  auto p = call({"laws", "poly", "--size", "2", "--trials", "20"});
  CHECK(p.code == kExitOk);
  CHECK(has(p.out, "SUITE framed PASS 77 0"));
}

TEST_CASE("laws output is deterministic") {
  auto a = call({"laws", "poly", "--trials", "30", "--seed", "5"});
  auto b = call({"laws", "poly", "--trials", "30", "--seed", "5"});
  CHECK(a.out.substr(0, a.out.find('\n')) == b.out.substr(0, b.out.find('\n')));
}

TEST_CASE("check-universal") {
  auto g = call({"check-universal", data("chain.graph"), "--target-size", "3"});
  CHECK(g.code == kExitOk);
  CHECK(has(g.out, "SUITE universal-property PASS"));
  CHECK(has(g.out, "SUITE theorem-pipeline PASS"));
  auto p = call({"check-universal", data("const.poly")});
  CHECK(p.code == kExitOk);
  CHECK(has(p.out, "SUITE universal-property PASS 440 0"));
  auto loop = call({"check-universal", data("loop.graph")});
  CHECK(loop.code == kExitLawFailure);
  CHECK(has(loop.out, "FAILED free monad is exact"));
}

TEST_CASE("compose") {
  auto g = call({"compose", data("chain.graph"), data("chain.graph")});
  CHECK(g.code == kExitOk);
  CHECK(g.out == "span {a, b, c} -> {a, b, c} {(f,g):a->c}\n");
  auto p = call({"compose", data("const.poly"), data("succ.poly")});
  CHECK(p.code == kExitOk);
  CHECK(p.out == "poly {y} -> {y} {(s,[c]): -> y}\n");
  CHECK(call({"compose", data("chain.graph"), data("const.poly")}).code == kExitInputError);
  CHECK(call({"compose", data("chain.graph"), data("loop.graph")}).code == kExitInputError);
}

TEST_CASE("input errors exit 2 with a position") {
  auto r = call({"free-cat", data("bad_node.graph")});
  CHECK(r.code == kExitInputError);
  CHECK(has(r.err, "bad_node.graph:3:10: unknown node 'z'"));
  auto p = call({"free-monad", data("bad_arrow.poly")});
  CHECK(p.code == kExitInputError);
  CHECK(has(p.err, "bad_arrow.poly:3:8:"));
  CHECK(call({"free-cat", data("const.poly")}).code == kExitInputError);
  CHECK(call({"free-cat", data("missing.graph")}).code == kExitInputError);
  CHECK(call({"laws", "spam"}).code == kExitInputError);
  CHECK(call({"laws", "span", "--size", "9"}).code == kExitInputError);
  CHECK(call({"free-cat", data("chain.graph"), "--max-length", "0"}).code == kExitInputError);
  CHECK(call({}).code == kExitInputError);
  CHECK(call({"--help"}).code == kExitOk);
}
