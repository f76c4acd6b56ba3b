#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dcmonad/cli.hpp"
#include "dcmonad/lawcheck.hpp"
#include "dcmonad/parse.hpp"

namespace py = pybind11;
using namespace dcmonad;

namespace {

py::dict report_dict(const LawReport& r) {
  py::list failures;
  for (const auto& f : r.failures()) {
    py::dict d;
    d["check"] = f.check;
    d["cells"] = f.cells;
    d["detail"] = f.detail;
    failures.append(d);
  }
  py::dict d;
  d["line"] = r.line();
  d["passed"] = r.passed();
  d["partial"] = r.partial();
  d["checks"] = r.checks();
  d["failures"] = failures;
  d["notes"] = r.notes();
  d["text"] = r.text();
  return d;
}

py::dict free_category_dict(const Graph& g, std::size_t max_length) {
  auto res = free_category(g, max_length);
  const FreeCategory& fc = *res.data;
  py::list morphisms;
  for (std::size_t m = 0; m < fc.morphisms.size(); ++m) {
    std::vector<std::string> edges;
    for (std::size_t e : fc.paths[m]) edges.push_back(fc.graph.edges.apex[e]);
    py::dict d;
    d["name"] = fc.morphisms[m];
    d["src"] = fc.graph.nodes[fc.src(m)];
    d["tgt"] = fc.graph.nodes[fc.tgt(m)];
    d["edges"] = edges;
    morphisms.append(d);
  }
  py::dict compose;
  for (std::size_t p = 0; p < fc.morphisms.size(); ++p) {
    for (std::size_t q = 0; q < fc.morphisms.size(); ++q) {
      if (fc.tgt(p) != fc.src(q)) continue;
      auto edges = fc.paths[p];
      edges.insert(edges.end(), fc.paths[q].begin(), fc.paths[q].end());
      auto r = edges.empty() ? std::optional<std::size_t>(p) : fc.find_path(edges);
      compose[py::make_tuple(fc.morphisms[p], fc.morphisms[q])] = r ? py::object(py::str(fc.morphisms[*r])) : py::none();
    }
  }
  py::dict d;
  d["objects"] = std::vector<std::string>(fc.graph.nodes.elements());
  d["morphisms"] = morphisms;
  d["compose"] = compose;
  d["exact"] = fc.exact;
  d["laws"] = report_dict(check_monad_laws(res));
  return d;
}

py::dict free_monad_dict(const Polynomial& q, std::size_t max_depth) {
  auto res = free_poly_monad(q, max_depth);
  const FreeTrees& ft = *res.data;
  py::list trees;
  for (std::size_t t = 0; t < ft.trees.size(); ++t) {
    py::dict d;
    d["name"] = ft.tree_name(t);
    d["arity"] = ft.trees[t].leaves;
    d["depth"] = ft.trees[t].depth;
    d["output"] = ft.star.tgt[ft.trees[t].output];
    trees.append(d);
  }
  py::dict d;
  d["trees"] = trees;
  d["exact"] = ft.exact;
  d["laws"] = report_dict(check_monad_laws(res));
  return d;
}

Graph graph_of(const std::string& text) { return parse_graph(text); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Double categories of spans and polynomials over finite sets";

  py::object error = py::exception<Error>(m, "Error");
  py::exception<ParseError>(m, "ParseError", error);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      py::object cls = py::module_::import("dcmonad._core").attr("ParseError");
      py::object err = cls(py::str(e.what()));
      err.attr("line") = e.line();
      err.attr("column") = e.column();
      PyErr_SetObject(cls.ptr(), err.ptr());
    } catch (const Error& e) {
      py::object cls = py::module_::import("dcmonad._core").attr("Error");
      PyErr_SetString(cls.ptr(), e.what());
    }
  });

  m.def("free_category", [](const std::string& text, std::size_t max_length) { return free_category_dict(graph_of(text), max_length); },
        py::arg("graph_text"), py::arg("max_length") = 16);
  m.def("free_monad", [](const std::string& text, std::size_t max_depth) { return free_monad_dict(parse_poly(text), max_depth); },
        py::arg("poly_text"), py::arg("max_depth") = 8);
  m.def("compose", [](const std::string& first, const std::string& second) {
    auto a = parse_endo(first);
    auto b = parse_endo(second);
    if (auto* f = std::get_if<Graph>(&a)) {
      const auto* g = std::get_if<Graph>(&b);
      if (!g) throw Error("compose: inputs are of different kinds");
      SpanDouble c;
      return c.describe_hor(c.hor_compose(g->edges, f->edges));
    }
    const auto* q = std::get_if<Polynomial>(&b);
    if (!q) throw Error("compose: inputs are of different kinds");
    PolyDouble c;
    return c.describe_hor(c.hor_compose(*q, std::get<Polynomial>(a)));
  }, py::arg("first"), py::arg("second"));

  m.def("double_axioms", [](const std::string& instance, std::size_t size, std::size_t trials, std::uint64_t seed) {
    SamplerBounds b{size, size, 2, 1};
    if (instance == "span") return report_dict(check_double_axioms(InstanceSampler<SpanDouble>{SpanDouble(), b, seed}, trials));
    if (instance == "poly") return report_dict(check_double_axioms(InstanceSampler<PolyDouble>{PolyDouble(), b, seed}, trials));
    throw Error("unknown instance " + instance);
  }, py::arg("instance"), py::arg("size") = 3, py::arg("trials") = 200, py::arg("seed") = 0);
  m.def("framed", [](const std::string& instance, std::size_t size) {
    if (instance == "span") return report_dict(check_framed(SpanDouble(), size));
    if (instance == "poly") return report_dict(check_framed(PolyDouble(), size));
    throw Error("unknown instance " + instance);
  }, py::arg("instance"), py::arg("size") = 3);
  m.def("universal_property_chain", [](std::size_t max_morphisms) {
    SpanDouble c;
    Graph g = chain_graph();
    auto adj = free_monad_adjunction(c, Endomorphism<SpanDouble>{g.nodes, g.edges});
    return report_dict(check_universal_property(c, adj, small_categories(2, max_morphisms)));
  }, py::arg("max_morphisms") = 4);
  m.def("composition_bijection", [](const std::string& p_text, const std::string& q_text, std::vector<std::string> base_of_elements) {
    Polynomial p = parse_poly(p_text), q = parse_poly(q_text);
    std::vector<std::string> names;
    std::vector<std::size_t> table;
    for (std::size_t i = 0; i < base_of_elements.size(); ++i) {
      auto idx = p.src.find(base_of_elements[i]);
      if (!idx) throw Error("unknown type " + base_of_elements[i]);
      names.push_back("t" + std::to_string(i));
      table.push_back(*idx);
    }
    SliceObject x{FinFun(FinSet(names), p.src, table)};
    return composition_bijection(q, p, x).has_value();
  }, py::arg("p_text"), py::arg("q_text"), py::arg("slice"));
  m.def("run", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"));
}
