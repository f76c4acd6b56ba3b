#include "dcmonad/span.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace dcmonad {

namespace {

// Path enumeration stops before the path count exceeds this, whatever max_len says.
constexpr std::size_t kMaxPaths = 256;

std::string fun_line(const FinFun& f) { return f.to_string(); }

std::size_t lookup_pair(const FinSet& apex, const std::string& a, const std::string& b) {
  auto i = apex.find(pair_name(a, b));
  if (!i) throw CompositionError("composite element " + pair_name(a, b) + " is missing");
  return *i;
}

}  // namespace

Span make_span(FinFun left, FinFun right) {
  if (!(left.dom() == right.dom())) throw CompositionError("span legs have different domains");
  FinSet apex = left.dom();
  FinSet src = left.cod();
  FinSet tgt = right.cod();
  return Span{src, tgt, apex, std::move(left), std::move(right)};
}

Span id_span(const FinSet& x) {
  return Span{x, x, x, FinFun::identity(x), FinFun::identity(x)};
}

SpanComposite compose_spans_detailed(const Span& g, const Span& f) {
  if (!(f.tgt == g.src)) {
    throw CompositionError("spans are not composable: " + f.tgt.to_string() + " vs " + g.src.to_string());
  }
  Pullback pb = pullback(f.right, g.left);
  Span s{f.src, g.tgt, pb.object, compose_fun(f.left, pb.p1), compose_fun(g.right, pb.p2)};
  return SpanComposite{s, pb.p1, pb.p2};
}

Span compose_spans(const Span& g, const Span& f) { return compose_spans_detailed(g, f).span; }

SpanSquare make_span_square(const Span& top, const Span& bottom, const FinFun& u, const FinFun& v, const FinFun& mid) {
  SpanSquare s{top, bottom, u, v, mid};
  if (auto e = SpanDouble().check_square(s)) throw CompositionError("not a span square: " + *e);
  return s;
}

Graph make_graph(const FinSet& nodes, const std::vector<std::string>& edge_names,
                 const std::vector<std::pair<std::string, std::string>>& ends) {
  if (edge_names.size() != ends.size()) throw Error("make_graph: every edge needs a source and a target");
  FinSet edges(edge_names);
  std::vector<std::size_t> s, t;
  for (const auto& [a, b] : ends) {
    s.push_back(nodes.index_of(a));
    t.push_back(nodes.index_of(b));
  }
  return Graph{nodes, make_span(FinFun(edges, nodes, s), FinFun(edges, nodes, t))};
}

// ---------------------------------------------------------------------------
// Squares.

SpanSquare SpanDouble::id_square_ver(const FinFun& u) const {
  return SpanSquare{id_span(u.dom()), id_span(u.cod()), u, u, u};
}

SpanSquare SpanDouble::id_square_hor(const Span& f) const {
  return SpanSquare{f, f, FinFun::identity(f.src), FinFun::identity(f.tgt), FinFun::identity(f.apex)};
}

SpanSquare SpanDouble::hcomp(const SpanSquare& b, const SpanSquare& a) const {
  if (!(a.v == b.u)) throw CompositionError("squares are not horizontally composable: shared vertical arrows differ");
  SpanComposite top = compose_spans_detailed(b.top, a.top);
  SpanComposite bottom = compose_spans_detailed(b.bottom, a.bottom);
  std::vector<std::size_t> mid(top.span.apex.size());
  for (std::size_t k = 0; k < mid.size(); ++k) {
    const auto& x = a.bottom.apex[a.mid(top.first(k))];
    const auto& y = b.bottom.apex[b.mid(top.second(k))];
    mid[k] = lookup_pair(bottom.span.apex, x, y);
  }
  return SpanSquare{top.span, bottom.span, a.u, b.v, FinFun(top.span.apex, bottom.span.apex, std::move(mid))};
}

SpanSquare SpanDouble::vcomp(const SpanSquare& lower, const SpanSquare& upper) const {
  if (!(upper.bottom == lower.top)) throw CompositionError("squares are not vertically composable: shared horizontal arrows differ");
  return SpanSquare{upper.top, lower.bottom, compose_fun(lower.u, upper.u), compose_fun(lower.v, upper.v),
                    compose_fun(lower.mid, upper.mid)};
}

SpanSquare SpanDouble::associator(const Span& h, const Span& g, const Span& f) const {
  SpanComposite hg = compose_spans_detailed(h, g);
  SpanComposite src = compose_spans_detailed(hg.span, f);
  SpanComposite gf = compose_spans_detailed(g, f);
  SpanComposite tgt = compose_spans_detailed(h, gf.span);
  std::vector<std::size_t> mid(src.span.apex.size());
  for (std::size_t k = 0; k < mid.size(); ++k) {
    std::size_t x = src.first(k);
    std::size_t w = src.second(k);
    const auto& xy = pair_name(f.apex[x], g.apex[hg.first(w)]);
    mid[k] = lookup_pair(tgt.span.apex, xy, h.apex[hg.second(w)]);
  }
  return SpanSquare{src.span, tgt.span, FinFun::identity(f.src), FinFun::identity(h.tgt),
                    FinFun(src.span.apex, tgt.span.apex, std::move(mid))};
}

SpanSquare SpanDouble::left_unitor(const Span& f) const {
  SpanComposite c = compose_spans_detailed(id_span(f.tgt), f);
  return SpanSquare{c.span, f, FinFun::identity(f.src), FinFun::identity(f.tgt), c.first};
}

SpanSquare SpanDouble::right_unitor(const Span& f) const {
  SpanComposite c = compose_spans_detailed(f, id_span(f.src));
  return SpanSquare{c.span, f, FinFun::identity(f.src), FinFun::identity(f.tgt), c.second};
}

std::optional<SpanSquare> SpanDouble::invert_globular(const SpanSquare& s) const {
  if (!is_globular(*this, s)) return std::nullopt;
  auto inv = s.mid.inverse();
  if (!inv) return std::nullopt;
  return SpanSquare{s.bottom, s.top, s.u, s.v, *inv};
}

std::optional<std::string> SpanDouble::check_square(const SpanSquare& s) const {
  for (const Span* sp : {&s.top, &s.bottom}) {
    if (!(sp->left.dom() == sp->apex) || !(sp->right.dom() == sp->apex) || !(sp->left.cod() == sp->src) ||
        !(sp->right.cod() == sp->tgt)) {
      return "span legs do not match the span's objects";
    }
  }
  if (!(s.u.dom() == s.top.src) || !(s.u.cod() == s.bottom.src)) return "left vertical arrow has the wrong boundary";
  if (!(s.v.dom() == s.top.tgt) || !(s.v.cod() == s.bottom.tgt)) return "right vertical arrow has the wrong boundary";
  if (!(s.mid.dom() == s.top.apex) || !(s.mid.cod() == s.bottom.apex)) return "apex map has the wrong boundary";
  for (std::size_t i = 0; i < s.top.apex.size(); ++i) {
    if (s.bottom.left(s.mid(i)) != s.u(s.top.left(i))) return "left region does not commute at " + s.top.apex[i];
    if (s.bottom.right(s.mid(i)) != s.v(s.top.right(i))) return "right region does not commute at " + s.top.apex[i];
  }
  return std::nullopt;
}

std::string SpanDouble::describe_hor(const Span& f) const {
  std::string out = "span " + f.src.to_string() + " -> " + f.tgt.to_string() + " {";
  for (std::size_t i = 0; i < f.apex.size(); ++i) {
    if (i) out += ", ";
    out += f.apex[i] + ":" + f.src[f.left(i)] + "->" + f.tgt[f.right(i)];
  }
  return out + "}";
}

std::string SpanDouble::describe(const SpanSquare& s) const {
  return "square{top=" + describe_hor(s.top) + "; bottom=" + describe_hor(s.bottom) + "; u=" + fun_line(s.u) +
         "; v=" + fun_line(s.v) + "; mid=" + fun_line(s.mid) + "}";
}

// ---------------------------------------------------------------------------
// Framed structure.

Span SpanDouble::companion(const FinFun& u) const {
  return Span{u.dom(), u.cod(), u.dom(), FinFun::identity(u.dom()), u};
}

Span SpanDouble::conjoint(const FinFun& u) const {
  return Span{u.cod(), u.dom(), u.dom(), u, FinFun::identity(u.dom())};
}

SpanSquare SpanDouble::alpha(const FinFun& u) const {
  return SpanSquare{companion(u), id_span(u.cod()), u, FinFun::identity(u.cod()), u};
}

SpanSquare SpanDouble::beta(const FinFun& u) const {
  return SpanSquare{conjoint(u), id_span(u.cod()), FinFun::identity(u.cod()), u, u};
}

SpanSquare SpanDouble::gamma(const FinFun& u) const {
  return SpanSquare{id_span(u.dom()), conjoint(u), u, FinFun::identity(u.dom()), FinFun::identity(u.dom())};
}

SpanSquare SpanDouble::delta(const FinFun& u) const {
  return SpanSquare{id_span(u.dom()), companion(u), FinFun::identity(u.dom()), u, FinFun::identity(u.dom())};
}

std::optional<FinFun> SpanDouble::as_conjoint(const Span& f) const {
  if (!(f.apex == f.tgt) || !(f.right == FinFun::identity(f.tgt))) return std::nullopt;
  return f.left;
}

// ---------------------------------------------------------------------------
// Coproducts and equalizers.

HorCoproduct<SpanDouble> SpanDouble::coproduct(const Span& f, const Span& g) const {
  if (!(f.src == g.src) || !(f.tgt == g.tgt)) throw CompositionError("coproduct of non-parallel spans");
  Coproduct cp = dcmonad::coproduct(f.apex, g.apex);
  std::vector<std::size_t> l, r;
  for (std::size_t i = 0; i < f.apex.size(); ++i) {
    l.push_back(f.left(i));
    r.push_back(f.right(i));
  }
  for (std::size_t i = 0; i < g.apex.size(); ++i) {
    l.push_back(g.left(i));
    r.push_back(g.right(i));
  }
  Span sum{f.src, f.tgt, cp.sum, FinFun(cp.sum, f.src, l), FinFun(cp.sum, f.tgt, r)};
  auto one_x = FinFun::identity(f.src);
  auto one_y = FinFun::identity(f.tgt);
  return HorCoproduct<SpanDouble>{sum, SpanSquare{f, sum, one_x, one_y, cp.inl}, SpanSquare{g, sum, one_x, one_y, cp.inr}};
}

SpanSquare SpanDouble::copair(const HorCoproduct<SpanDouble>& cp, const SpanSquare& s, const SpanSquare& t) const {
  if (!(s.top == cp.inl.top) || !(t.top == cp.inr.top) || !(s.bottom == t.bottom) || !is_globular(*this, s) ||
      !is_globular(*this, t)) {
    throw CompositionError("copair: squares do not match the coproduct");
  }
  std::vector<std::size_t> mid(s.mid.table());
  mid.insert(mid.end(), t.mid.table().begin(), t.mid.table().end());
  return SpanSquare{cp.sum, s.bottom, s.u, s.v, FinFun(cp.sum.apex, s.bottom.apex, std::move(mid))};
}

C1Equalizer<SpanDouble> SpanDouble::equalizer(const SpanSquare& s, const SpanSquare& t) const {
  if (!(s.top == t.top) || !(s.bottom == t.bottom) || !(s.u == t.u) || !(s.v == t.v)) {
    throw CompositionError("equalizer of non-parallel squares");
  }
  Equalizer eq = dcmonad::equalizer(s.mid, t.mid);
  Span e = make_span(compose_fun(s.top.left, eq.inclusion), compose_fun(s.top.right, eq.inclusion));
  return C1Equalizer<SpanDouble>{e, SpanSquare{e, s.top, FinFun::identity(e.src), FinFun::identity(e.tgt), eq.inclusion}};
}

std::optional<SpanSquare> SpanDouble::factor_through(const SpanSquare& inclusion, const SpanSquare& s) const {
  if (!(s.bottom == inclusion.bottom)) throw CompositionError("factor_through: square does not land on the equalized arrow");
  if (!inclusion.mid.is_injective()) throw CompositionError("factor_through: not a monic square");
  std::vector<std::optional<std::size_t>> pre(inclusion.bottom.apex.size());
  for (std::size_t i = 0; i < inclusion.mid.dom().size(); ++i) pre[inclusion.mid(i)] = i;
  std::vector<std::size_t> mid;
  for (std::size_t i = 0; i < s.top.apex.size(); ++i) {
    auto p = pre[s.mid(i)];
    if (!p) return std::nullopt;
    mid.push_back(*p);
  }
  SpanSquare out{s.top, inclusion.top, s.u, s.v, FinFun(s.top.apex, inclusion.top.apex, std::move(mid))};
  if (auto e = check_square(out)) return std::nullopt;
  return out;
}

// ---------------------------------------------------------------------------
// Free categories.

namespace {

std::string edge_token(const std::string& e) {
  bool wrap = e.rfind("1_", 0) == 0 || e.find_first_of(".[]") != std::string::npos;
  return wrap ? "[" + e + "]" : e;
}

}  // namespace

std::string path_name(const Graph& g, const std::vector<std::size_t>& edges, const std::string& node) {
  if (edges.empty()) return "1_" + node;
  std::string out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i) out += '.';
    out += edge_token(g.edges.apex[edges[i]]);
  }
  return out;
}

std::optional<std::size_t> FreeCategory::find_path(const std::vector<std::size_t>& edges) const {
  for (std::size_t i = 0; i < paths.size(); ++i) {
    if (!edges.empty() && paths[i] == edges) return i;
  }
  return std::nullopt;
}

FreeCategory free_category_data(const Graph& g, std::size_t max_len) {
  if (max_len < 1) throw Error("free_category: max_len must be at least 1");
  if (!(g.edges.src == g.nodes) || !(g.edges.tgt == g.nodes)) throw CompositionError("free_category: edges are not an endomorphism of the nodes");
  FreeCategory fc;
  fc.graph = g;
  fc.max_len = max_len;
  const Span& e = g.edges;
  std::vector<std::size_t> src, tgt;
  for (std::size_t x = 0; x < g.nodes.size(); ++x) {
    fc.paths.push_back({});
    src.push_back(x);
    tgt.push_back(x);
  }
  std::vector<std::size_t> frontier;  // indices of paths of the current length
  for (std::size_t x = 0; x < g.nodes.size(); ++x) frontier.push_back(x);
  bool grows = true;
  for (std::size_t len = 1; len <= max_len + 1 && grows; ++len) {
    std::vector<std::size_t> next;
    std::vector<std::vector<std::size_t>> new_paths;
    std::vector<std::size_t> new_src, new_tgt;
    for (std::size_t p : frontier) {
      for (std::size_t k = 0; k < e.apex.size(); ++k) {
        if (e.left(k) != tgt[p]) continue;
        auto path = fc.paths[p];
        path.push_back(k);
        new_paths.push_back(std::move(path));
        new_src.push_back(src[p]);
        new_tgt.push_back(e.right(k));
      }
    }
    grows = !new_paths.empty();
    if (len == max_len + 1) break;
    if (fc.paths.size() + new_paths.size() > kMaxPaths) {
      // Stop at the previous length; the result is flagged truncated below.
      fc.max_len = len - 1;
      break;
    }
    for (std::size_t i = 0; i < new_paths.size(); ++i) {
      next.push_back(fc.paths.size());
      fc.paths.push_back(std::move(new_paths[i]));
      src.push_back(new_src[i]);
      tgt.push_back(new_tgt[i]);
    }
    frontier = std::move(next);
  }
  fc.exact = !grows;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < fc.paths.size(); ++i) names.push_back(path_name(g, fc.paths[i], g.nodes[src[i]]));
  fc.morphisms = FinSet(std::move(names));
  fc.src = FinFun(fc.morphisms, g.nodes, src);
  fc.tgt = FinFun(fc.morphisms, g.nodes, tgt);

  std::map<std::vector<std::size_t>, std::size_t> by_edges;
  for (std::size_t i = g.nodes.size(); i < fc.paths.size(); ++i) by_edges.emplace(fc.paths[i], i);
  Span star{g.nodes, g.nodes, fc.morphisms, fc.src, fc.tgt};
  SpanComposite two = compose_spans_detailed(star, star);
  fc.mult.resize(two.span.apex.size());
  for (std::size_t k = 0; k < fc.mult.size(); ++k) {
    std::size_t p = two.first(k);
    std::size_t q = two.second(k);
    if (fc.paths[p].empty()) {
      fc.mult[k] = q;
      continue;
    }
    if (fc.paths[q].empty()) {
      fc.mult[k] = p;
      continue;
    }
    auto path = fc.paths[p];
    path.insert(path.end(), fc.paths[q].begin(), fc.paths[q].end());
    auto it = by_edges.find(path);
    if (it != by_edges.end()) fc.mult[k] = it->second;
  }
  return fc;
}

FreeCategoryResult free_category(const Graph& g, std::size_t max_len) {
  auto data = std::make_shared<const FreeCategory>(free_category_data(g, max_len));
  const FreeCategory& fc = *data;
  Span star{g.nodes, g.nodes, fc.morphisms, fc.src, fc.tgt};
  auto one = FinFun::identity(g.nodes);
  std::vector<std::size_t> unit(g.nodes.size());
  std::iota(unit.begin(), unit.end(), std::size_t{0});
  SpanSquare unit_sq{id_span(g.nodes), star, one, one, FinFun(g.nodes, fc.morphisms, unit)};
  std::vector<std::size_t> iota;
  for (std::size_t k = 0; k < g.edges.apex.size(); ++k) iota.push_back(*fc.find_path({k}));
  SpanSquare iota_sq{g.edges, star, one, one, FinFun(g.edges.apex, fc.morphisms, iota)};
  std::optional<SpanSquare> mult;
  if (fc.exact) {
    Span two = compose_spans(star, star);
    std::vector<std::size_t> table;
    for (const auto& m : fc.mult) table.push_back(*m);
    mult = SpanSquare{two, star, one, one, FinFun(two.apex, fc.morphisms, table)};
  }
  FreeMonadBundle<SpanDouble> b{g.edges, star, mult, unit_sq, iota_sq, fc.exact, data};
  return FreeCategoryResult{data, b};
}

FinCategory free_category_monad(const FreeCategoryResult& r) {
  if (!r.bundle.exact || !r.bundle.mult) throw TruncationError("free category was truncated at length " + std::to_string(r.data->max_len));
  return FinCategory{Endomorphism<SpanDouble>{r.data->graph.nodes, r.bundle.star}, *r.bundle.mult, r.bundle.unit};
}

std::vector<EquationCheck> free_category_pointwise_laws(const FreeCategory& fc) {
  std::vector<EquationCheck> out;
  Span star{fc.graph.nodes, fc.graph.nodes, fc.morphisms, fc.src, fc.tgt};
  SpanComposite two = compose_spans_detailed(star, star);
  auto comp = [&](std::size_t p, std::size_t q) -> std::optional<std::size_t> {
    return fc.mult[lookup_pair(two.span.apex, fc.morphisms[p], fc.morphisms[q])];
  };
  auto describe_overflow = [&](std::size_t p, std::size_t q) {
    return fc.morphisms[p] + " ; " + fc.morphisms[q] + " exceeds max length " + std::to_string(fc.max_len);
  };
  EquationCheck assoc{"associativity", true, {}};
  std::size_t n = fc.morphisms.size();
  for (std::size_t p = 0; p < n && assoc.holds; ++p) {
    for (std::size_t q = 0; q < n && assoc.holds; ++q) {
      if (fc.tgt(p) != fc.src(q)) continue;
      for (std::size_t r = 0; r < n && assoc.holds; ++r) {
        if (fc.tgt(q) != fc.src(r)) continue;
        std::string triple = "(" + fc.morphisms[p] + ", " + fc.morphisms[q] + ", " + fc.morphisms[r] + ")";
        auto pq = comp(p, q);
        auto qr = comp(q, r);
        std::optional<std::size_t> lhs = pq ? comp(*pq, r) : std::nullopt;
        std::optional<std::size_t> rhs = qr ? comp(p, *qr) : std::nullopt;
        if (lhs && rhs && *lhs == *rhs) continue;
        assoc.holds = false;
        std::string l = lhs ? fc.morphisms[*lhs] : (pq ? describe_overflow(*pq, r) : describe_overflow(p, q));
        std::string rr = rhs ? fc.morphisms[*rhs] : (qr ? describe_overflow(p, *qr) : describe_overflow(q, r));
        assoc.detail = "triple " + triple + ": (pq)r = " + l + "; p(qr) = " + rr;
      }
    }
  }
  out.push_back(assoc);
  EquationCheck unit{"unit laws", true, {}};
  for (std::size_t p = 0; p < n && unit.holds; ++p) {
    auto l = comp(fc.src(p), p);
    auto r = comp(p, fc.tgt(p));
    if (!l || !r || *l != p || *r != p) {
      unit.holds = false;
      unit.detail = "identities do not act trivially on " + fc.morphisms[p];
    }
  }
  out.push_back(unit);
  return out;
}

FreeMonadBundle<SpanDouble> SpanDouble::free_monad(const Span& p) const {
  if (!(p.src == p.tgt)) throw CompositionError("free_monad: span is not an endomorphism");
  return free_category(Graph{p.src, p}, free_max_len_).bundle;
}

SpanSquare SpanDouble::sharp(const FreeMonadBundle<SpanDouble>& b, const Span& m, const SpanSquare& mu, const SpanSquare& eta,
                             const Span& f, const SpanSquare& phi) const {
  if (!b.exact || !b.data) throw TruncationError("sharp needs an exact free category");
  const FreeCategory& fc = *b.data;
  const Span& p = b.base;
  if (!(f.src == m.src) || !(f.tgt == p.src)) throw CompositionError("sharp: F does not run from the monad's object to the graph's nodes");
  if (!(phi.top == compose_spans(p, f)) || !(phi.bottom == compose_spans(f, m))) throw CompositionError("sharp: phi has the wrong boundary");
  SpanComposite top = compose_spans_detailed(b.star, f);
  SpanComposite bottom = compose_spans_detailed(f, m);
  std::vector<std::size_t> mid(top.span.apex.size());
  for (std::size_t k = 0; k < mid.size(); ++k) {
    std::size_t fcur = top.first(k);
    std::size_t cur = eta.mid(f.left(fcur));
    for (std::size_t edge : fc.paths[top.second(k)]) {
      std::size_t hit = phi.mid(lookup_pair(phi.top.apex, f.apex[fcur], p.apex[edge]));
      cur = mu.mid(lookup_pair(mu.top.apex, m.apex[cur], m.apex[bottom.first(hit)]));
      fcur = bottom.second(hit);
    }
    mid[k] = lookup_pair(bottom.span.apex, m.apex[cur], f.apex[fcur]);
  }
  return SpanSquare{top.span, bottom.span, FinFun::identity(f.src), FinFun::identity(f.tgt),
                    FinFun(top.span.apex, bottom.span.apex, std::move(mid))};
}

}  // namespace dcmonad

namespace dcmonad {

SpanSquare sharp_lift_span(const FinCategory& monad, const HorEndoMap<SpanDouble>& endo_map, const FreeCategoryResult& free) {
  if (!(endo_map.src == monad.endo)) throw CompositionError("sharp_lift_span: map does not start at the monad");
  if (!(endo_map.tgt.arrow == free.bundle.base)) throw CompositionError("sharp_lift_span: map does not land on the free category's graph");
  SpanDouble c;
  return c.sharp(free.bundle, monad.endo.arrow, monad.mult, monad.unit, endo_map.arrow, endo_map.phi);
}

void SpanDouble::enumerate_squares(const Span& top, const Span& bottom, const FinFun& u, const FinFun& v,
                                   const std::function<bool(const SpanSquare&)>& visit) const {
  if (!(u.dom() == top.src) || !(u.cod() == bottom.src) || !(v.dom() == top.tgt) || !(v.cod() == bottom.tgt)) {
    throw CompositionError("enumerate_squares: vertical arrows do not fit the horizontal ones");
  }
  std::vector<std::vector<std::size_t>> allowed(top.apex.size());
  for (std::size_t i = 0; i < top.apex.size(); ++i) {
    for (std::size_t j = 0; j < bottom.apex.size(); ++j) {
      if (bottom.left(j) == u(top.left(i)) && bottom.right(j) == v(top.right(i))) allowed[i].push_back(j);
    }
    if (allowed[i].empty()) return;
  }
  if (top.apex.empty()) {
    visit(SpanSquare{top, bottom, u, v, FinFun(top.apex, bottom.apex, {})});
    return;
  }
  for_each_function(top.apex, bottom.apex, allowed,
                    [&](const FinFun& mid) { return visit(SpanSquare{top, bottom, u, v, mid}); });
}

void SpanDouble::enumerate_globular_isos(const Span& f, const Span& g, const std::function<bool(const SpanSquare&)>& visit) const {
  if (!(f.src == g.src) || !(f.tgt == g.tgt)) return;
  std::vector<BijectionConstraint> cons{{f.left, g.left}, {f.right, g.right}};
  auto one_x = FinFun::identity(f.src);
  auto one_y = FinFun::identity(f.tgt);
  for_each_commuting_bijection(f.apex, g.apex, cons,
                               [&](const FinFun& b) { return visit(SpanSquare{f, g, one_x, one_y, b}); });
}

FinCategory make_category(const Graph& g, const std::vector<std::string>& identities,
                          const std::function<std::string(const std::string&, const std::string&)>& comp) {
  const Span& p = g.edges;
  if (identities.size() != g.nodes.size()) throw Error("make_category: one identity per object is required");
  std::vector<std::size_t> unit;
  for (const auto& name : identities) unit.push_back(p.apex.index_of(name));
  auto one = FinFun::identity(g.nodes);
  SpanSquare eta{id_span(g.nodes), p, one, one, FinFun(g.nodes, p.apex, unit)};
  SpanComposite two = compose_spans_detailed(p, p);
  std::vector<std::size_t> table;
  for (std::size_t k = 0; k < two.span.apex.size(); ++k) {
    table.push_back(p.apex.index_of(comp(p.apex[two.first(k)], p.apex[two.second(k)])));
  }
  SpanSquare mu{two.span, p, one, one, FinFun(two.span.apex, p.apex, table)};
  if (auto e = SpanDouble().check_square(mu)) throw CompositionError("make_category: composition " + *e);
  if (auto e = SpanDouble().check_square(eta)) throw CompositionError("make_category: identities " + *e);
  return FinCategory{Endomorphism<SpanDouble>{g.nodes, p}, mu, eta};
}

namespace {

struct CategorySearch {
  std::size_t objects;
  std::size_t n;
  std::vector<std::size_t> src, tgt;
  std::vector<std::size_t> ident;  // per object
  std::vector<std::optional<std::size_t>> comp;  // n * n, composable pairs only

  std::optional<std::size_t>& at(std::size_t f, std::size_t g) { return comp[f * n + g]; }

  bool is_identity(std::size_t f) const { return ident[src[f]] == f; }

  // Associativity on every triple whose products are all known.
  bool consistent() {
    for (std::size_t f = 0; f < n; ++f) {
      for (std::size_t g = 0; g < n; ++g) {
        if (tgt[f] != src[g]) continue;
        auto fg = at(f, g);
        if (!fg) continue;
        for (std::size_t h = 0; h < n; ++h) {
          if (tgt[g] != src[h]) continue;
          auto gh = at(g, h);
          if (!gh) continue;
          auto l = at(*fg, h);
          auto r = at(f, *gh);
          if (l && r && *l != *r) return false;
        }
      }
    }
    return true;
  }
};

// Encodes the structure after renaming morphisms by perm (old -> new).
std::vector<std::size_t> encode(const CategorySearch& s, const std::vector<std::size_t>& perm) {
  std::vector<std::size_t> inv(s.n);
  for (std::size_t i = 0; i < s.n; ++i) inv[perm[i]] = i;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < s.n; ++i) {
    out.push_back(s.src[inv[i]]);
    out.push_back(s.tgt[inv[i]]);
  }
  for (std::size_t x = 0; x < s.objects; ++x) out.push_back(perm[s.ident[x]]);
  for (std::size_t a = 0; a < s.n; ++a) {
    for (std::size_t b = 0; b < s.n; ++b) {
      auto v = s.comp[inv[a] * s.n + inv[b]];
      out.push_back(v ? perm[*v] + 1 : 0);
    }
  }
  return out;
}

std::vector<std::size_t> canonical_key(const CategorySearch& s) {
  std::vector<std::size_t> perm(s.n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<std::size_t> best = encode(s, perm);
  while (std::next_permutation(perm.begin(), perm.end())) best = std::min(best, encode(s, perm));
  return best;
}

FinCategory to_category(const FinSet& objects, const CategorySearch& s) {
  FinSet morphisms = numbered_set("m", s.n);
  Span p{objects, objects, morphisms, FinFun(morphisms, objects, s.src), FinFun(morphisms, objects, s.tgt)};
  std::vector<std::string> ids;
  for (std::size_t x = 0; x < s.objects; ++x) ids.push_back(morphisms[s.ident[x]]);
  return make_category(Graph{objects, p}, ids, [&](const std::string& a, const std::string& b) {
    return morphisms[*s.comp[morphisms.index_of(a) * s.n + morphisms.index_of(b)]];
  });
}

}  // namespace

void enumerate_categories(const FinSet& objects, std::size_t max_morphisms,
                          const std::function<bool(const FinCategory&)>& visit, bool up_to_relabeling) {
  const std::size_t k = objects.size();
  std::set<std::vector<std::size_t>> seen;
  bool stop = false;
  for (std::size_t n = k; n <= max_morphisms && !stop; ++n) {
    CategorySearch s{k, n, std::vector<std::size_t>(n), std::vector<std::size_t>(n), std::vector<std::size_t>(k), {}};
    // Odometer over (src, tgt) of every morphism.
    std::vector<std::size_t> ends(2 * n, 0);
    while (!stop) {
      for (std::size_t i = 0; i < n; ++i) {
        s.src[i] = ends[2 * i];
        s.tgt[i] = ends[2 * i + 1];
      }
      std::vector<std::vector<std::size_t>> loops(k);
      for (std::size_t i = 0; i < n; ++i) {
        if (s.src[i] == s.tgt[i]) loops[s.src[i]].push_back(i);
      }
      // Identities: one endo-morphism per object.
      std::vector<std::size_t> pick(k, 0);
      bool ids_possible = std::all_of(loops.begin(), loops.end(), [](const auto& l) { return !l.empty(); });
      while (ids_possible && !stop) {
        for (std::size_t x = 0; x < k; ++x) s.ident[x] = loops[x][pick[x]];
        s.comp.assign(n * n, std::nullopt);
        std::vector<std::pair<std::size_t, std::size_t>> open;
        for (std::size_t f = 0; f < n; ++f) {
          for (std::size_t g = 0; g < n; ++g) {
            if (s.tgt[f] != s.src[g]) continue;
            if (s.is_identity(f)) s.at(f, g) = g;
            else if (s.is_identity(g)) s.at(f, g) = f;
            else open.emplace_back(f, g);
          }
        }
        std::function<void(std::size_t)> fill = [&](std::size_t i) {
          if (stop) return;
          if (i == open.size()) {
            if (up_to_relabeling && !seen.insert(canonical_key(s)).second) return;
            if (!visit(to_category(objects, s))) stop = true;
            return;
          }
          auto [f, g] = open[i];
          for (std::size_t h = 0; h < n && !stop; ++h) {
            if (s.src[h] != s.src[f] || s.tgt[h] != s.tgt[g]) continue;
            s.at(f, g) = h;
            if (s.consistent()) fill(i + 1);
          }
          s.at(f, g) = std::nullopt;
        };
        fill(0);
        std::size_t x = k;
        bool more = false;
        while (x > 0) {
          --x;
          if (++pick[x] < loops[x].size()) {
            more = true;
            break;
          }
          pick[x] = 0;
        }
        if (!more) break;
      }
      std::size_t i = 2 * n;
      bool more = false;
      while (i > 0) {
        --i;
        if (++ends[i] < k) {
          more = true;
          break;
        }
        ends[i] = 0;
      }
      if (!more) break;
    }
  }
}

std::size_t brute_force_monad_count(const FinSet& objects, std::size_t n) {
  SpanDouble c;
  FinSet apex = numbered_set("m", n);
  auto one = FinFun::identity(objects);
  std::size_t count = 0;
  for_each_function(apex, objects, {}, [&](const FinFun& l) {
    for_each_function(apex, objects, {}, [&](const FinFun& r) {
      Span p = make_span(l, r);
      Span two = compose_spans(p, p);
      c.enumerate_squares(id_span(objects), p, one, one, [&](const SpanSquare& eta) {
        c.enumerate_squares(two, p, one, one, [&](const SpanSquare& mu) {
          if (all_hold(monad_laws(c, MonadData<SpanDouble>{Endomorphism<SpanDouble>{objects, p}, mu, eta}))) ++count;
          return true;
        });
        return true;
      });
      return true;
    });
    return true;
  });
  return count;
}

FinSet random_set(std::mt19937_64& rng, std::size_t max_size, const std::string& prefix, std::size_t min_size) {
  std::uniform_int_distribution<std::size_t> d(min_size, std::max(min_size, max_size));
  return numbered_set(prefix, d(rng));
}

FinFun random_fun(std::mt19937_64& rng, const FinSet& dom, const FinSet& cod) {
  if (cod.empty() && !dom.empty()) throw Error("random_fun: no function into the empty set");
  std::vector<std::size_t> table(dom.size());
  if (!cod.empty()) {
    std::uniform_int_distribution<std::size_t> d(0, cod.size() - 1);
    for (auto& t : table) t = d(rng);
  }
  return FinFun(dom, cod, std::move(table));
}

Span random_span(std::mt19937_64& rng, const FinSet& x, const FinSet& y, std::size_t max_apex, const std::string& prefix) {
  FinSet apex = (x.empty() || y.empty()) ? FinSet{} : random_set(rng, max_apex, prefix);
  return make_span(random_fun(rng, apex, x), random_fun(rng, apex, y));
}

std::optional<SpanSquare> random_square_over(std::mt19937_64& rng, const Span& top, const FinFun& u, const FinFun& v,
                                             std::size_t max_apex, const std::string& prefix) {
  const FinSet& x2 = u.cod();
  const FinSet& y2 = v.cod();
  if (!top.apex.empty() && (x2.empty() || y2.empty())) return std::nullopt;
  for (int attempt = 0; attempt < 20; ++attempt) {
    std::size_t lo = top.apex.empty() ? 0 : 1;
    FinSet apex = random_set(rng, std::max(max_apex, lo), prefix, lo);
    if (!apex.empty() && (x2.empty() || y2.empty())) continue;
    FinFun mid = random_fun(rng, top.apex, apex);
    std::vector<std::optional<std::size_t>> l(apex.size()), r(apex.size());
    bool ok = true;
    for (std::size_t i = 0; i < top.apex.size() && ok; ++i) {
      std::size_t j = mid(i);
      std::size_t wl = u(top.left(i));
      std::size_t wr = v(top.right(i));
      if ((l[j] && *l[j] != wl) || (r[j] && *r[j] != wr)) ok = false;
      l[j] = wl;
      r[j] = wr;
    }
    if (!ok) continue;
    std::vector<std::size_t> lt(apex.size()), rt(apex.size());
    for (std::size_t j = 0; j < apex.size(); ++j) {
      lt[j] = l[j] ? *l[j] : random_fun(rng, FinSet{"p"}, x2)(0);
      rt[j] = r[j] ? *r[j] : random_fun(rng, FinSet{"p"}, y2)(0);
    }
    Span bottom = make_span(FinFun(apex, x2, lt), FinFun(apex, y2, rt));
    return SpanSquare{top, bottom, u, v, mid};
  }
  return std::nullopt;
}

std::string describe_category(const FinCategory& c) {
  const Span& p = c.endo.arrow;
  std::string out = "objects: " + c.endo.object.to_string() + "\nmorphisms:";
  for (std::size_t i = 0; i < p.apex.size(); ++i) out += " " + p.apex[i] + ":" + p.src[p.left(i)] + "->" + p.tgt[p.right(i)];
  out += "\nidentities: " + c.unit.mid.to_string() + "\ncomposition: " + c.mult.mid.to_string() + "\n";
  return out;
}

}  // namespace dcmonad
