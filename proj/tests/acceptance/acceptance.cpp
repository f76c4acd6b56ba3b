// One line per acceptance criterion: "CRITERION <n> PASS|FAIL <summary>".
// Exits nonzero if any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "dcmonad/lawcheck.hpp"

using namespace dcmonad;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream summary;
  std::vector<std::string> reports;

  Outcome() { summary << std::boolalpha; }

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      summary << "[failed: " << what << "] ";
    }
  }
  void report(const LawReport& r) {
    summary << r.line() << "; ";
    if (!r.passed() || r.partial()) reports.push_back(r.text());
  }
};

bool has_counterexample(const LawReport& r) {
  if (r.passed() || r.failures().empty()) return false;
  for (const auto& f : r.failures()) {
    if (f.cells.empty() && f.detail.empty()) return false;
  }
  return true;
}


Outcome criterion1() {
  Outcome o;
  auto fc = free_category(chain_graph(), 16);
  std::size_t by_len[3] = {0, 0, 0};
  for (const auto& p : fc.data->paths) {
    if (p.size() < 3) ++by_len[p.size()];
  }
  o.require(fc.data->morphisms.size() == 6, "6 morphisms");
  o.require(by_len[0] == 3 && by_len[1] == 2 && by_len[2] == 1, "3 identities, 2 generators, 1 composite");
  o.require(fc.data->exact, "exact");
  auto r = check_monad_laws(fc);
  o.require(r.passed() && r.checks() > 0, "monad laws");
  o.summary << fc.data->morphisms.size() << " morphisms, exact=" << fc.data->exact << "; ";
  o.report(r);
  return o;
}

Outcome criterion2() {
  Outcome o;
  Graph loop = make_graph(FinSet{"x"}, {"l"}, {{"x", "x"}});
  auto fc = free_category(loop, 3);
  o.require(fc.data->morphisms.size() == 4, "4 paths");
  o.require(!fc.data->exact, "truncated");
  auto r = check_monad_laws(fc);
  bool assoc = !r.failures().empty() && r.failures()[0].check == "associativity" && !r.failures()[0].detail.empty();
  o.require(!r.passed() && assoc, "associativity counterexample");
  o.summary << fc.data->morphisms.size() << " paths, exact=" << fc.data->exact << "; " << r.line();
  if (assoc) o.summary << "; counterexample: " << r.failures()[0].detail;
  return o;
}

Outcome criterion3() {
  Outcome o;
  auto fm = free_poly_monad(constant_poly(), 8);
  const auto& star = fm.data->star;
  std::vector<std::size_t> arities;
  for (std::size_t t = 0; t < star.ops.size(); ++t) arities.push_back(star.arity(t));
  o.require(star.ops.size() == 2, "2 tree ops");
  o.require(arities == std::vector<std::size_t>{1, 0}, "arities (1, 0)");
  o.require(fm.data->exact, "exact");
  auto r = check_monad_laws(fm);
  o.require(r.passed(), "monad laws");
  FinSet y{"y"};
  auto succ = free_poly_monad(poly_from_ops(y, y, {{"s", {{"y"}, "y"}}}), 4);
  o.require(succ.data->trees.size() == 5, "5 successor trees");
  o.require(!succ.data->exact, "successor truncated");
  o.summary << "constant: " << star.ops.size() << " trees, exact=" << fm.data->exact << ", " << r.line()
            << "; successor at depth 4: " << succ.data->trees.size() << " trees, exact=" << succ.data->exact;
  return o;
}

Outcome criterion4() {
  Outcome o;
  auto span = check_framed(SpanDouble(), 3);
  auto poly = check_framed(PolyDouble(), 2);
  o.require(span.passed() && span.checks() == 60 * 7, "span framed, 60 maps x 7");
  o.require(poly.passed() && poly.checks() == 11 * 7, "poly framed, 11 maps x 7");
  o.report(span);
  o.report(poly);
  return o;
}

Outcome criterion5() {
  Outcome o;
  auto span = check_cofold(InstanceSampler<SpanDouble>{SpanDouble(), {2, 2, 2, 1}, 1}, 100, small_categories(2, 3));
  auto poly = check_cofold(InstanceSampler<PolyDouble>{PolyDouble(), {2, 2, 1, 1}, 1}, 100, small_poly_monads(1, 2, 1));
  o.require(span.passed() && !span.partial(), "span cofold");
  o.require(poly.passed() && !poly.partial(), "poly cofold");
  o.report(span);
  o.report(poly);
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::mt19937_64 rng(6);
  const int trials = 60;
  int found = 0;
  for (int t = 0; t < trials; ++t) {
    FinSet x = random_set(rng, 2, "x", 1), y = random_set(rng, 2, "y", 1), z = random_set(rng, 2, "z", 1);
    Polynomial p = random_poly(rng, x, y, 3, 2, "p");
    Polynomial q = random_poly(rng, y, z, 3, 2, "q");
    SliceObject s{random_fun(rng, random_set(rng, 3, "t"), x)};
    if (composition_bijection(q, p, s)) {
      ++found;
    } else {
      o.reports.push_back("no bijection for P={" + describe_poly_ops(p) + "} Q={" + describe_poly_ops(q) + "} x=" + s.proj.to_string());
    }
  }
  o.require(found == trials, "bijection in every trial");
  o.summary << found << "/" << trials << " bijections exhibited (seed=6)";
  return o;
}

Outcome criterion7() {
  Outcome o;
  SpanDouble sc;
  Graph g = chain_graph();
  auto span_adj = free_monad_adjunction(sc, Endomorphism<SpanDouble>{g.nodes, g.edges});
  auto span_targets = small_categories(2, 4);
  auto span = check_universal_property(sc, span_adj, span_targets);
  PolyDouble pc;
  auto poly_adj = free_monad_adjunction(pc, Endomorphism<PolyDouble>{FinSet{"y"}, constant_poly()});
  auto poly = check_universal_property(pc, poly_adj, small_poly_monads(2, 3, 2));
  o.require(span.passed() && !span.partial(), "span universal property with uniqueness");
  o.require(poly.passed() && !poly.partial(), "poly universal property with uniqueness");
  o.summary << span_targets.size() << " categories; ";
  o.report(span);
  o.report(poly);
  return o;
}

Outcome criterion8() {
  Outcome o;
  SpanDouble sc;
  PolyDouble pc;
  auto span = check_theorem_pipeline(sc, span_pipeline_scenarios(sc));
  auto poly = check_theorem_pipeline(pc, poly_pipeline_scenarios(pc));
  o.require(span.passed(), "span pipeline");
  o.require(poly.passed(), "poly pipeline");
  o.report(span);
  o.report(poly);
  return o;
}

Outcome criterion9() {
  Outcome o;
  auto span = check_fibration(InstanceSampler<SpanDouble>{SpanDouble(), {2, 2, 2, 1}, 1}, 2, small_categories(2, 3));
  auto poly = check_fibration(InstanceSampler<PolyDouble>{PolyDouble(), {2, 2, 1, 1}, 1}, 2, small_poly_monads(1, 2, 1));
  o.require(span.passed(), "span fibration");
  o.require(poly.passed(), "poly fibration");
  o.report(span);
  o.report(poly);
  return o;
}

Outcome criterion10() {
  Outcome o;
  std::size_t caught = 0, total = 0;
  auto expect_caught = [&](const std::string& what, const LawReport& r) {
    ++total;
    bool ok = has_counterexample(r);
    if (ok) {
      ++caught;
      const auto& f = r.failures().front();
      o.reports.push_back(what + ": " + r.line() + "\n    FAILED " + f.check + "\n    cells: " + f.cells.substr(0, 300) +
                          (f.detail.empty() ? "" : "\n    detail: " + f.detail.substr(0, 300)));
    }
    o.require(ok, what);
  };

  using FS = Faulty<SpanDouble>;
  using FP = Faulty<PolyDouble>;
  const SamplerBounds small{2, 2, 2, 1}, poly_small{2, 2, 1, 1};

  expect_caught("double-axioms/span id-square-hor",
                check_double_axioms(InstanceSampler<FS>{FS(SpanDouble(), Fault::id_square_hor), {}, 1}, 50));
  expect_caught("double-axioms/poly id-square-hor",
                check_double_axioms(InstanceSampler<FP>{FP(PolyDouble(), Fault::id_square_hor), small, 1}, 50));

  expect_caught("framed/span alpha", check_framed(FS(SpanDouble(), Fault::alpha), 2));
  expect_caught("framed/poly alpha", check_framed(FP(PolyDouble(), Fault::alpha), 2));

  expect_caught("monad-laws/span swapped mu", check_monad_laws(SpanDouble(), with_mutated_mult(three_element_monoid())));
  expect_caught("monad-laws/poly swapped mu", check_monad_laws(PolyDouble(), with_mutated_mult(pointed_poly_monad())));

  {
    FS c(SpanDouble(), Fault::sharp);
    Graph g = chain_graph();
    auto adj = free_monad_adjunction(c, Endomorphism<FS>{g.nodes, g.edges});
    std::vector<MonadData<FS>> targets{recast_monad<FS>(three_element_monoid())};
    expect_caught("universal-property/span sharp", check_universal_property(c, adj, targets));
  }
  {
    FP c(PolyDouble(), Fault::sharp);
    auto adj = free_monad_adjunction(c, Endomorphism<FP>{FinSet{"y"}, constant_poly()});
    std::vector<MonadData<FP>> targets;
    for (const auto& m : small_poly_monads(1, 2, 1)) targets.push_back(recast_monad<FP>(m));
    expect_caught("universal-property/poly sharp", check_universal_property(c, adj, targets));
  }

  {
    FS c(SpanDouble(), Fault::associator);
    expect_caught("theorem-pipeline/span associator", check_theorem_pipeline(c, span_pipeline_scenarios(c)));
    std::vector<MonadData<FS>> monoid{recast_monad<FS>(three_element_monoid())};
    expect_caught("fibration/span associator", check_fibration(InstanceSampler<FS>{c, small, 1}, 2, monoid));
  }
  {
    FP c(PolyDouble(), Fault::associator);
    expect_caught("theorem-pipeline/poly associator", check_theorem_pipeline(c, poly_pipeline_scenarios(c)));
    std::vector<MonadData<FP>> monads;
    for (const auto& m : small_poly_monads(1, 2, 1)) monads.push_back(recast_monad<FP>(m));
    expect_caught("fibration/poly associator", check_fibration(InstanceSampler<FP>{c, poly_small, 1}, 2, monads));
  }

  {
    std::vector<MonadData<FS>> none;
    expect_caught("cofold/span beta", check_cofold(InstanceSampler<FS>{FS(SpanDouble(), Fault::beta), small, 1}, 100, none));
    std::vector<MonadData<FP>> pnone;
    expect_caught("cofold/poly beta", check_cofold(InstanceSampler<FP>{FP(PolyDouble(), Fault::beta), poly_small, 1}, 100, pnone));
  }

  {
    SpanDouble c;
    auto cells = pipeline_cells(c, span_pipeline_scenarios(c)[1].input);
    auto h = cells.phi_star;
    h.phi = mutate_square(h.phi);
    expect_caught("hor-map/span mutated square", check_hor_map(c, h));
    auto v = cells.u_sharp;
    v.square = mutate_square(v.square);
    expect_caught("vert-map/span mutated square", check_vert_map(c, v));

    Graph chain = chain_graph();
    Graph dag = make_graph(FinSet{"p", "q", "r"}, {"e1", "e2"}, {{"p", "q"}, {"p", "r"}});
    Endomorphism<SpanDouble> e{chain.nodes, chain.edges}, d{dag.nodes, dag.edges};
    FinFun w = FinFun::from_names(dag.nodes, chain.nodes, {{"p", "a"}, {"q", "b"}, {"r", "b"}});
    VertEndoMap<SpanDouble> wm{d, e, w, make_span_square(d.arrow, e.arrow, w, w, FinFun::constant(dag.edges.apex, chain.edges.apex, 0))};
    EndDouble<SpanDouble> end(c);
    EndoSquare<SpanDouble> sq{cofold(c, wm), end.hor_id(e), end.ver_id(e), wm, c.beta(w)};
    sq.square = mutate_square(sq.square);
    expect_caught("endo-square/span mutated square", check_endo_square(c, sq));
  }

  o.summary << caught << "/" << total << " injected faults produced FAIL reports with counterexamples";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  bool verbose = argc > 1 && std::string(argv[1]) == "-v";
  std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                 criterion6, criterion7, criterion8, criterion9, criterion10};
  bool all = true;
  auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.summary << "exception: " << e.what();
    }
    all = all && o.pass;
    std::cout << "CRITERION " << i + 1 << " " << (o.pass ? "PASS" : "FAIL") << " " << o.summary.str() << std::endl;
    if (verbose || !o.pass) {
      for (const auto& r : o.reports) std::cout << "  " << r << "\n";
    }
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << "elapsed " << secs << "s\n";
  return all ? 0 : 1;
}
