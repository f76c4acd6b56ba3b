#include "dcmonad/cli.hpp"

#include <CLI11.hpp>

#include "dcmonad/lawcheck.hpp"
#include "dcmonad/parse.hpp"

namespace dcmonad {

namespace {

struct InputError : Error {
  using Error::Error;
};

template <class T>
T load(const std::string& path) {
  auto text = read_text_file(path);
  try {
    auto parsed = parse_endo(text);
    if (auto* v = std::get_if<T>(&parsed)) return *v;
  } catch (const ParseError& e) {
    throw InputError(path + ":" + e.what());
  }
  throw InputError(path + ": expected a " + std::string(std::is_same_v<T, Graph> ? "graph" : "poly") + " file");
}

std::variant<Graph, Polynomial> load_any(const std::string& path) {
  auto text = read_text_file(path);
  try {
    return parse_endo(text);
  } catch (const ParseError& e) {
    throw InputError(path + ":" + e.what());
  }
}

std::string path_name(const FreeCategory& fc, std::size_t m) {
  const auto& p = fc.paths[m];
  if (p.empty()) return "id_" + fc.graph.nodes[fc.src(m)];
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) out += (i ? " " : "") + fc.graph.edges.apex[p[i]];
  return out;
}

int free_cat(const std::string& file, std::size_t max_length, std::ostream& out) {
  Graph g = load<Graph>(file);
  auto res = free_category(g, max_length);
  const FreeCategory& fc = *res.data;
  out << "objects: " << fc.graph.nodes.to_string() << "\n";
  out << "morphisms: " << fc.morphisms.size() << "\n";
  for (std::size_t m = 0; m < fc.morphisms.size(); ++m) {
    out << "  " << fc.morphisms[m] << " : " << fc.graph.nodes[fc.src(m)] << " -> " << fc.graph.nodes[fc.tgt(m)]
        << "  [" << path_name(fc, m) << "]\n";
  }
  out << "composition (first ; second):\n";
  for (std::size_t p = 0; p < fc.morphisms.size(); ++p) {
    for (std::size_t q = 0; q < fc.morphisms.size(); ++q) {
      if (fc.tgt(p) != fc.src(q)) continue;
      auto edges = fc.paths[p];
      edges.insert(edges.end(), fc.paths[q].begin(), fc.paths[q].end());
      out << "  " << fc.morphisms[p] << " ; " << fc.morphisms[q] << " = ";
      if (edges.empty()) {
        out << fc.morphisms[p] << "\n";
      } else if (auto r = fc.find_path(edges)) {
        out << fc.morphisms[*r] << "\n";
      } else {
        out << "undefined (exceeds max length " << fc.max_len << ")\n";
      }
    }
  }
  out << "exact: " << (fc.exact ? "true" : "false") << "\n";
  return kExitOk;
}

int free_monad(const std::string& file, std::size_t max_depth, std::ostream& out) {
  Polynomial q = load<Polynomial>(file);
  auto res = free_poly_monad(q, max_depth);
  const FreeTrees& ft = *res.data;
  const Polynomial& star = ft.star;
  auto leaf_type = [&](std::size_t t, std::size_t k) { return star.sigma(ft.leaf_offset[t] + k); };
  out << "base: " << q.tgt.to_string() << "\n";
  out << "trees: " << ft.trees.size() << "\n";
  for (std::size_t t = 0; t < ft.trees.size(); ++t) {
    const auto& n = ft.trees[t];
    out << "  " << ft.tree_name(t) << " : arity " << n.leaves << ", depth " << n.depth << ",";
    for (std::size_t k = 0; k < n.leaves; ++k) out << " " << star.src[leaf_type(t, k)];
    out << " -> " << star.tgt[n.output] << "\n";
  }
  // Graft into the first tree with leaves, preferring a root op over a bare hole.
  std::optional<std::size_t> host;
  for (std::size_t t = 0; t < ft.trees.size(); ++t) {
    if (ft.trees[t].leaves == 0) continue;
    if (!host || (ft.trees[*host].hole && !ft.trees[t].hole)) host = t;
  }
  if (!host) {
    out << "mu: no tree has leaves\n";
  } else {
    std::vector<std::size_t> subs;
    for (std::size_t k = 0; k < ft.trees[*host].leaves; ++k) {
      std::size_t ty = leaf_type(*host, k);
      std::size_t pick = ft.hole_index[ty];
      for (std::size_t t = 0; t < ft.trees.size(); ++t) {
        if (!ft.trees[t].hole && ft.trees[t].output == ty) {
          pick = t;
          break;
        }
      }
      subs.push_back(pick);
    }
    out << "mu: " << ft.tree_name(*host) << " <- [";
    for (std::size_t i = 0; i < subs.size(); ++i) out << (i ? ", " : "") << ft.tree_name(subs[i]);
    out << "] = ";
    if (auto r = ft.graft(*host, subs)) {
      out << ft.tree_name(*r) << "\n";
    } else {
      out << "undefined (exceeds max depth " << ft.max_depth << ")\n";
    }
  }
  out << "exact: " << (ft.exact ? "true" : "false") << "\n";
  return kExitOk;
}

int laws(const std::string& instance, std::size_t size, std::size_t trials, std::uint64_t seed, std::ostream& out) {
  std::vector<LawReport> reports;
  SamplerBounds bounds{size, size, 2, 1};
  if (instance == "span") {
    reports.push_back(check_double_axioms(InstanceSampler<SpanDouble>{SpanDouble(), bounds, seed}, trials));
    reports.push_back(check_framed(SpanDouble(), size));
  } else {
    bounds.max_arity = std::min<std::size_t>(size, 2);
    reports.push_back(check_double_axioms(InstanceSampler<PolyDouble>{PolyDouble(), bounds, seed}, trials));
    reports.push_back(check_framed(PolyDouble(), size));
  }
  bool ok = true;
  for (const auto& r : reports) {
    out << r.text();
    ok = ok && r.passed();
  }
  return ok ? kExitOk : kExitLawFailure;
}

template <class C, class Targets>
int universal(const C& c, const Endomorphism<C>& e, const Targets& targets, std::ostream& out) {
  std::vector<LawReport> reports;
  try {
    auto adj = free_monad_adjunction(c, e);
    reports.push_back(check_universal_property(c, adj, targets));
    std::vector<NamedPipeline<C>> scenarios;
    if (auto in = identity_pipeline(c, adj, targets)) scenarios.push_back({"identity", *in});
    LawReport pipe = check_theorem_pipeline(c, scenarios);
    if (scenarios.empty()) pipe.note("no vertical map into any target; nothing to run");
    reports.push_back(std::move(pipe));
  } catch (const TruncationError& err) {
    LawReport r("universal-property", 0);
    r.fail("free monad is exact", c.describe_hor(e.arrow), err.what());
    r.finish();
    reports.push_back(std::move(r));
  }
  bool ok = true;
  for (const auto& r : reports) {
    out << r.text();
    ok = ok && r.passed();
  }
  return ok ? kExitOk : kExitLawFailure;
}

int check_universal(const std::string& file, std::size_t target_size, std::ostream& out) {
  auto parsed = load_any(file);
  if (auto* g = std::get_if<Graph>(&parsed)) {
    SpanDouble c;
    return universal(c, Endomorphism<SpanDouble>{g->nodes, g->edges}, small_categories(2, target_size), out);
  }
  const auto& q = std::get<Polynomial>(parsed);
  PolyDouble c;
  std::size_t unary = target_size > 0 ? target_size - 1 : 0;
  std::size_t constants = target_size > 1 ? target_size - 2 : 0;
  return universal(c, Endomorphism<PolyDouble>{q.tgt, q}, small_poly_monads(2, unary, constants), out);
}

int compose(const std::string& first, const std::string& second, std::ostream& out) {
  auto a = load_any(first);
  auto b = load_any(second);
  if (a.index() != b.index()) throw InputError("compose: " + first + " and " + second + " are of different kinds");
  if (auto* f = std::get_if<Graph>(&a)) {
    const Graph& g = std::get<Graph>(b);
    if (!(f->nodes == g.nodes)) throw InputError("compose: node sets differ");
    SpanDouble c;
    out << c.describe_hor(c.hor_compose(g.edges, f->edges)) << "\n";
  } else {
    const auto& p = std::get<Polynomial>(a);
    const auto& q = std::get<Polynomial>(b);
    if (!(p.tgt == q.src)) throw InputError("compose: base sets differ");
    PolyDouble c;
    out << c.describe_hor(c.hor_compose(q, p)) << "\n";
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Double categories of spans and polynomials over finite sets", "dcmonad"};
  app.require_subcommand(1);

  std::string file, file2, instance;
  std::size_t max_length = 16, max_depth = 8, size = 3, trials = 200, target_size = 4;
  std::uint64_t seed = 0;

  auto* fc = app.add_subcommand("free-cat", "Free category on a graph");
  fc->add_option("file", file, "graph file")->required();
  fc->add_option("--max-length", max_length, "longest path enumerated")->check(CLI::PositiveNumber);

  auto* fm = app.add_subcommand("free-monad", "Free polynomial monad via trees");
  fm->add_option("file", file, "poly file")->required();
  fm->add_option("--max-depth", max_depth, "deepest tree enumerated")->check(CLI::PositiveNumber);

  auto* lw = app.add_subcommand("laws", "Double category axioms and framed structure on random instances");
  lw->add_option("instance", instance, "span or poly")->required()->check(CLI::IsMember({"span", "poly"}));
  lw->add_option("--size", size, "largest set")->check(CLI::Range(1, 4));
  lw->add_option("--trials", trials, "random trials");
  lw->add_option("--seed", seed, "random seed");

  auto* cu = app.add_subcommand("check-universal", "Universal property of the free monad and the construction of sharp");
  cu->add_option("file", file, "graph or poly file")->required();
  cu->add_option("--target-size", target_size, "largest target monad")->check(CLI::Range(1, 4));

  auto* co = app.add_subcommand("compose", "Horizontal composite, first file then second");
  co->add_option("file1", file, "graph or poly file")->required();
  co->add_option("file2", file2, "graph or poly file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  try {
    if (fc->parsed()) return free_cat(file, max_length, out);
    if (fm->parsed()) return free_monad(file, max_depth, out);
    if (lw->parsed()) return laws(instance, size, trials, seed, out);
    if (cu->parsed()) return check_universal(file, target_size, out);
    return compose(file, file2, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitLawFailure;
  }
}

}  // namespace dcmonad
