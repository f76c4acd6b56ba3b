#include "dcmonad/poly.hpp"
#include "dcmonad/span.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace dcmonad {

namespace {

// Tree saturation stops before the tree count exceeds this, whatever max_depth says.
constexpr std::size_t kMaxTrees = 512;

std::size_t position(const std::vector<std::size_t>& v, std::size_t x) {
  auto it = std::find(v.begin(), v.end(), x);
  if (it == v.end()) throw CompositionError("internal: element missing from fiber");
  return static_cast<std::size_t>(it - v.begin());
}

std::string join_names(const FinSet& s, const std::vector<std::size_t>& idx) {
  std::string out = "[";
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) out += ",";
    out += s[idx[i]];
  }
  return out + "]";
}

// Calls visit on every tuple with tuple[i] drawn from choices[i]; stops when visit returns false.
bool odometer(const std::vector<std::vector<std::size_t>>& choices, const std::function<bool(const std::vector<std::size_t>&)>& visit) {
  for (const auto& c : choices) {
    if (c.empty()) return true;
  }
  std::vector<std::size_t> pos(choices.size(), 0), tuple(choices.size());
  while (true) {
    for (std::size_t i = 0; i < choices.size(); ++i) tuple[i] = choices[i][pos[i]];
    if (!visit(tuple)) return false;
    std::size_t k = choices.size();
    while (true) {
      if (k == 0) return true;
      --k;
      if (++pos[k] < choices[k].size()) break;
      pos[k] = 0;
    }
  }
}

}  // namespace

Polynomial make_polynomial(FinFun sigma, FinFun theta, FinFun tau) {
  if (!(sigma.dom() == theta.dom())) throw CompositionError("polynomial: sigma and theta have different domains");
  if (!(theta.cod() == tau.dom())) throw CompositionError("polynomial: theta does not land in the ops of tau");
  FinSet src = sigma.cod(), tgt = tau.cod(), slots = sigma.dom(), ops = tau.dom();
  return Polynomial{src, tgt, slots, ops, std::move(sigma), std::move(theta), std::move(tau)};
}

Polynomial id_poly(const FinSet& x) {
  auto one = FinFun::identity(x);
  return Polynomial{x, x, x, x, one, one, one};
}

Polynomial poly_from_ops(const FinSet& x, const FinSet& y,
                         const std::vector<std::pair<std::string, std::pair<std::vector<std::string>, std::string>>>& ops) {
  std::vector<std::string> op_names, slot_names;
  std::vector<std::size_t> sigma, theta, tau;
  for (std::size_t b = 0; b < ops.size(); ++b) {
    const auto& [name, profile] = ops[b];
    op_names.push_back(name);
    tau.push_back(y.index_of(profile.second));
    for (std::size_t k = 0; k < profile.first.size(); ++k) {
      slot_names.push_back(pair_name(name, std::to_string(k)));
      sigma.push_back(x.index_of(profile.first[k]));
      theta.push_back(b);
    }
  }
  FinSet o(op_names), s(slot_names);
  return make_polynomial(FinFun(s, x, sigma), FinFun(s, o, theta), FinFun(o, y, tau));
}

// ---------------------------------------------------------------------------
// Composition.

std::optional<std::size_t> PolyComposite::find_op(std::size_t outer, const std::vector<std::size_t>& inner) const {
  auto it = op_index.find({outer, inner});
  if (it == op_index.end()) return std::nullopt;
  return it->second;
}

std::size_t PolyComposite::find_slot(std::size_t op, std::size_t outer, std::size_t inner) const {
  auto it = slot_index.find({op, outer, inner});
  if (it == slot_index.end()) throw CompositionError("composite slot is missing");
  return it->second;
}

PolyComposite compose_polys_detailed(const Polynomial& q, const Polynomial& p) {
  if (!(p.tgt == q.src)) throw CompositionError("polynomials are not composable: " + p.tgt.to_string() + " vs " + q.src.to_string());
  PolyComposite c;
  std::vector<std::string> op_names, slot_names;
  std::vector<std::size_t> tau, sigma, theta;
  std::vector<std::vector<std::size_t>> by_type(p.tgt.size());
  for (std::size_t b = 0; b < p.ops.size(); ++b) by_type[p.tau(b)].push_back(b);
  for (std::size_t qb = 0; qb < q.ops.size(); ++qb) {
    std::vector<std::size_t> js = q.slots_of(qb);
    std::vector<std::vector<std::size_t>> choices;
    for (std::size_t j : js) choices.push_back(by_type[q.sigma(j)]);
    odometer(choices, [&](const std::vector<std::size_t>& inner) {
      std::size_t o = op_names.size();
      std::string name = pair_name(q.ops[qb], join_names(p.ops, inner));
      op_names.push_back(name);
      tau.push_back(q.tau(qb));
      c.op_outer.push_back(qb);
      c.op_inner.push_back(inner);
      c.op_index.emplace(std::pair{qb, inner}, o);
      for (std::size_t jpos = 0; jpos < js.size(); ++jpos) {
        for (std::size_t e : p.slots_of(inner[jpos])) {
          c.slot_index.emplace(std::array<std::size_t, 3>{o, js[jpos], e}, slot_names.size());
          slot_names.push_back(pair_name(name, pair_name(q.slots[js[jpos]], p.slots[e])));
          sigma.push_back(p.sigma(e));
          theta.push_back(o);
          c.slot_op.push_back(o);
          c.slot_outer.push_back(js[jpos]);
          c.slot_inner.push_back(e);
        }
      }
      return true;
    });
  }
  FinSet ops(op_names), slots(slot_names);
  c.poly = Polynomial{p.src, q.tgt, slots, ops, FinFun(slots, p.src, sigma), FinFun(slots, ops, theta), FinFun(ops, q.tgt, tau)};
  return c;
}

Polynomial compose_polys(const Polynomial& q, const Polynomial& p) { return compose_polys_detailed(q, p).poly; }

// ---------------------------------------------------------------------------
// Squares.

PolySquare make_poly_square(const Polynomial& top, const Polynomial& bottom, const FinFun& u, const FinFun& v,
                            const FinFun& phi, const FinFun& phibar) {
  PolySquare s{top, bottom, u, v, phi, phibar};
  if (auto e = PolyDouble().check_square(s)) throw CompositionError("not a polynomial square: " + *e);
  return s;
}

PolySquare PolyDouble::id_square_ver(const FinFun& u) const {
  return PolySquare{id_poly(u.dom()), id_poly(u.cod()), u, u, u, u};
}

PolySquare PolyDouble::id_square_hor(const Polynomial& f) const {
  return PolySquare{f, f, FinFun::identity(f.src), FinFun::identity(f.tgt), FinFun::identity(f.ops), FinFun::identity(f.slots)};
}

PolySquare PolyDouble::hcomp(const PolySquare& b, const PolySquare& a) const {
  if (!(a.v == b.u)) throw CompositionError("squares are not horizontally composable: shared vertical arrows differ");
  PolyComposite top = compose_polys_detailed(b.top, a.top);
  PolyComposite bottom = compose_polys_detailed(b.bottom, a.bottom);
  std::vector<std::size_t> phi(top.poly.ops.size()), phibar(top.poly.slots.size());
  for (std::size_t o = 0; o < phi.size(); ++o) {
    std::size_t q = top.op_outer[o];
    std::size_t q2 = b.phi(q);
    std::vector<std::size_t> js = b.top.slots_of(q), js2 = b.bottom.slots_of(q2);
    if (js.size() != js2.size()) throw CompositionError("hcomp: right square is not cartesian");
    std::vector<std::size_t> inner(js.size());
    for (std::size_t jpos = 0; jpos < js.size(); ++jpos) inner[position(js2, b.phibar(js[jpos]))] = a.phi(top.op_inner[o][jpos]);
    auto o2 = bottom.find_op(q2, inner);
    if (!o2) throw CompositionError("hcomp: image op is missing from the bottom composite");
    phi[o] = *o2;
  }
  for (std::size_t s = 0; s < phibar.size(); ++s) {
    phibar[s] = bottom.find_slot(phi[top.slot_op[s]], b.phibar(top.slot_outer[s]), a.phibar(top.slot_inner[s]));
  }
  return PolySquare{top.poly, bottom.poly, a.u, b.v, FinFun(top.poly.ops, bottom.poly.ops, std::move(phi)),
                    FinFun(top.poly.slots, bottom.poly.slots, std::move(phibar))};
}

PolySquare PolyDouble::vcomp(const PolySquare& lower, const PolySquare& upper) const {
  if (!(upper.bottom == lower.top)) throw CompositionError("squares are not vertically composable: shared horizontal arrows differ");
  return PolySquare{upper.top, lower.bottom, compose_fun(lower.u, upper.u), compose_fun(lower.v, upper.v),
                    compose_fun(lower.phi, upper.phi), compose_fun(lower.phibar, upper.phibar)};
}

PolySquare PolyDouble::associator(const Polynomial& h, const Polynomial& g, const Polynomial& f) const {
  PolyComposite hg = compose_polys_detailed(h, g);
  PolyComposite src = compose_polys_detailed(hg.poly, f);
  PolyComposite gf = compose_polys_detailed(g, f);
  PolyComposite tgt = compose_polys_detailed(h, gf.poly);
  std::vector<std::size_t> phi(src.poly.ops.size()), phibar(src.poly.slots.size());
  // For each source op, the gf op chosen for every h slot.
  std::vector<std::map<std::size_t, std::size_t>> qp_of(src.poly.ops.size());
  for (std::size_t o = 0; o < phi.size(); ++o) {
    std::size_t rq = src.op_outer[o];
    std::vector<std::size_t> rq_slots = hg.poly.slots_of(rq);
    std::size_t r = hg.op_outer[rq];
    std::vector<std::size_t> js = h.slots_of(r);
    std::vector<std::size_t> outer_inner;
    for (std::size_t jpos = 0; jpos < js.size(); ++jpos) {
      std::size_t qj = hg.op_inner[rq][jpos];
      std::vector<std::size_t> ps;
      for (std::size_t eq : g.slots_of(qj)) {
        std::size_t s = hg.find_slot(rq, js[jpos], eq);
        ps.push_back(src.op_inner[o][position(rq_slots, s)]);
      }
      auto qp = gf.find_op(qj, ps);
      if (!qp) throw CompositionError("associator: inner composite op is missing");
      outer_inner.push_back(*qp);
      qp_of[o][js[jpos]] = *qp;
    }
    auto o2 = tgt.find_op(r, outer_inner);
    if (!o2) throw CompositionError("associator: outer composite op is missing");
    phi[o] = *o2;
  }
  for (std::size_t s = 0; s < phibar.size(); ++s) {
    std::size_t o = src.slot_op[s];
    std::size_t k = src.slot_outer[s];  // slot of hg
    std::size_t j = hg.slot_outer[k];
    std::size_t qp = qp_of[o].at(j);
    phibar[s] = tgt.find_slot(phi[o], j, gf.find_slot(qp, hg.slot_inner[k], src.slot_inner[s]));
  }
  return PolySquare{src.poly, tgt.poly, FinFun::identity(f.src), FinFun::identity(h.tgt),
                    FinFun(src.poly.ops, tgt.poly.ops, std::move(phi)), FinFun(src.poly.slots, tgt.poly.slots, std::move(phibar))};
}

PolySquare PolyDouble::left_unitor(const Polynomial& f) const {
  PolyComposite c = compose_polys_detailed(id_poly(f.tgt), f);
  std::vector<std::size_t> phi, phibar;
  for (std::size_t o = 0; o < c.poly.ops.size(); ++o) phi.push_back(c.op_inner[o].at(0));
  for (std::size_t s = 0; s < c.poly.slots.size(); ++s) phibar.push_back(c.slot_inner[s]);
  return PolySquare{c.poly, f, FinFun::identity(f.src), FinFun::identity(f.tgt), FinFun(c.poly.ops, f.ops, phi),
                    FinFun(c.poly.slots, f.slots, phibar)};
}

PolySquare PolyDouble::right_unitor(const Polynomial& f) const {
  PolyComposite c = compose_polys_detailed(f, id_poly(f.src));
  std::vector<std::size_t> phibar(c.poly.slots.size());
  for (std::size_t s = 0; s < phibar.size(); ++s) phibar[s] = c.slot_outer[s];
  return PolySquare{c.poly, f, FinFun::identity(f.src), FinFun::identity(f.tgt), FinFun(c.poly.ops, f.ops, c.op_outer),
                    FinFun(c.poly.slots, f.slots, phibar)};
}

std::optional<PolySquare> PolyDouble::invert_globular(const PolySquare& s) const {
  if (!is_globular(*this, s)) return std::nullopt;
  auto phi = s.phi.inverse();
  auto phibar = s.phibar.inverse();
  if (!phi || !phibar) return std::nullopt;
  return PolySquare{s.bottom, s.top, s.u, s.v, *phi, *phibar};
}

std::optional<std::string> PolyDouble::check_square(const PolySquare& s) const {
  for (const Polynomial* p : {&s.top, &s.bottom}) {
    if (!(p->sigma.dom() == p->slots) || !(p->theta.dom() == p->slots) || !(p->theta.cod() == p->ops) ||
        !(p->tau.dom() == p->ops) || !(p->sigma.cod() == p->src) || !(p->tau.cod() == p->tgt)) {
      return "polynomial maps do not match the polynomial's sets";
    }
  }
  if (!(s.u.dom() == s.top.src) || !(s.u.cod() == s.bottom.src)) return "left vertical arrow has the wrong boundary";
  if (!(s.v.dom() == s.top.tgt) || !(s.v.cod() == s.bottom.tgt)) return "right vertical arrow has the wrong boundary";
  if (!(s.phi.dom() == s.top.ops) || !(s.phi.cod() == s.bottom.ops)) return "op map has the wrong boundary";
  if (!(s.phibar.dom() == s.top.slots) || !(s.phibar.cod() == s.bottom.slots)) return "slot map has the wrong boundary";
  for (std::size_t e = 0; e < s.top.slots.size(); ++e) {
    if (s.bottom.sigma(s.phibar(e)) != s.u(s.top.sigma(e))) return "sigma region does not commute at " + s.top.slots[e];
    if (s.bottom.theta(s.phibar(e)) != s.phi(s.top.theta(e))) return "theta region does not commute at " + s.top.slots[e];
  }
  for (std::size_t b = 0; b < s.top.ops.size(); ++b) {
    if (s.bottom.tau(s.phi(b)) != s.v(s.top.tau(b))) return "tau region does not commute at " + s.top.ops[b];
    // Central pullback: slots of b map bijectively onto slots of phi(b).
    std::vector<std::size_t> fib = s.top.slots_of(b);
    std::set<std::size_t> image;
    for (std::size_t e : fib) image.insert(s.phibar(e));
    if (image.size() != fib.size() || s.bottom.arity(s.phi(b)) != fib.size()) {
      return "central square is not a pullback at op " + s.top.ops[b];
    }
  }
  return std::nullopt;
}

std::string describe_poly_ops(const Polynomial& p) {
  std::string out;
  for (std::size_t b = 0; b < p.ops.size(); ++b) {
    if (b) out += ", ";
    out += p.ops[b] + ":";
    for (std::size_t e : p.slots_of(b)) out += " " + p.src[p.sigma(e)];
    out += " -> " + p.tgt[p.tau(b)];
  }
  return out;
}

std::string PolyDouble::describe_hor(const Polynomial& f) const {
  return "poly " + f.src.to_string() + " -> " + f.tgt.to_string() + " {" + describe_poly_ops(f) + "}";
}

std::string PolyDouble::describe(const PolySquare& s) const {
  return "square{top=" + describe_hor(s.top) + "; bottom=" + describe_hor(s.bottom) + "; u=" + s.u.to_string() +
         "; v=" + s.v.to_string() + "; phi=" + s.phi.to_string() + "; phibar=" + s.phibar.to_string() + "}";
}

// ---------------------------------------------------------------------------
// Framed structure.

Polynomial PolyDouble::companion(const FinFun& u) const {
  auto one = FinFun::identity(u.dom());
  return Polynomial{u.dom(), u.cod(), u.dom(), u.dom(), one, one, u};
}

Polynomial PolyDouble::conjoint(const FinFun& u) const {
  auto one = FinFun::identity(u.dom());
  return Polynomial{u.cod(), u.dom(), u.dom(), u.dom(), u, one, one};
}

PolySquare PolyDouble::alpha(const FinFun& u) const {
  return PolySquare{companion(u), id_poly(u.cod()), u, FinFun::identity(u.cod()), u, u};
}

PolySquare PolyDouble::beta(const FinFun& u) const {
  return PolySquare{conjoint(u), id_poly(u.cod()), FinFun::identity(u.cod()), u, u, u};
}

PolySquare PolyDouble::gamma(const FinFun& u) const {
  auto one = FinFun::identity(u.dom());
  return PolySquare{id_poly(u.dom()), conjoint(u), u, one, one, one};
}

PolySquare PolyDouble::delta(const FinFun& u) const {
  auto one = FinFun::identity(u.dom());
  return PolySquare{id_poly(u.dom()), companion(u), one, u, one, one};
}

std::optional<FinFun> PolyDouble::as_conjoint(const Polynomial& f) const {
  if (!(f.ops == f.tgt) || !(f.slots == f.tgt)) return std::nullopt;
  auto one = FinFun::identity(f.tgt);
  if (!(f.theta == one) || !(f.tau == one)) return std::nullopt;
  return f.sigma;
}

// ---------------------------------------------------------------------------
// Coproducts and equalizers.

HorCoproduct<PolyDouble> PolyDouble::coproduct(const Polynomial& f, const Polynomial& g) const {
  if (!(f.src == g.src) || !(f.tgt == g.tgt)) throw CompositionError("coproduct of non-parallel polynomials");
  Coproduct ops = dcmonad::coproduct(f.ops, g.ops);
  Coproduct slots = dcmonad::coproduct(f.slots, g.slots);
  std::vector<std::size_t> sigma(f.sigma.table()), theta(f.theta.table()), tau(f.tau.table());
  sigma.insert(sigma.end(), g.sigma.table().begin(), g.sigma.table().end());
  for (std::size_t t : g.theta.table()) theta.push_back(t + f.ops.size());
  tau.insert(tau.end(), g.tau.table().begin(), g.tau.table().end());
  Polynomial sum{f.src, f.tgt, slots.sum, ops.sum, FinFun(slots.sum, f.src, sigma), FinFun(slots.sum, ops.sum, theta),
                 FinFun(ops.sum, f.tgt, tau)};
  auto one_x = FinFun::identity(f.src);
  auto one_y = FinFun::identity(f.tgt);
  return HorCoproduct<PolyDouble>{sum, PolySquare{f, sum, one_x, one_y, ops.inl, slots.inl},
                                  PolySquare{g, sum, one_x, one_y, ops.inr, slots.inr}};
}

PolySquare PolyDouble::copair(const HorCoproduct<PolyDouble>& cp, const PolySquare& s, const PolySquare& t) const {
  if (!(s.top == cp.inl.top) || !(t.top == cp.inr.top) || !(s.bottom == t.bottom) || !is_globular(*this, s) ||
      !is_globular(*this, t)) {
    throw CompositionError("copair: squares do not match the coproduct");
  }
  std::vector<std::size_t> phi(s.phi.table()), phibar(s.phibar.table());
  phi.insert(phi.end(), t.phi.table().begin(), t.phi.table().end());
  phibar.insert(phibar.end(), t.phibar.table().begin(), t.phibar.table().end());
  return PolySquare{cp.sum, s.bottom, s.u, s.v, FinFun(cp.sum.ops, s.bottom.ops, phi), FinFun(cp.sum.slots, s.bottom.slots, phibar)};
}

C1Equalizer<PolyDouble> PolyDouble::equalizer(const PolySquare& s, const PolySquare& t) const {
  if (!(s.top == t.top) || !(s.bottom == t.bottom) || !(s.u == t.u) || !(s.v == t.v)) {
    throw CompositionError("equalizer of non-parallel squares");
  }
  const Polynomial& p = s.top;
  std::vector<std::string> op_names, slot_names;
  std::vector<std::size_t> op_incl, slot_incl, sigma, theta, tau;
  for (std::size_t b = 0; b < p.ops.size(); ++b) {
    std::vector<std::size_t> fib = p.slots_of(b);
    bool agree = s.phi(b) == t.phi(b) && std::all_of(fib.begin(), fib.end(), [&](std::size_t e) { return s.phibar(e) == t.phibar(e); });
    if (!agree) continue;
    std::size_t nb = op_names.size();
    op_names.push_back(p.ops[b]);
    op_incl.push_back(b);
    tau.push_back(p.tau(b));
    for (std::size_t e : fib) {
      slot_names.push_back(p.slots[e]);
      slot_incl.push_back(e);
      sigma.push_back(p.sigma(e));
      theta.push_back(nb);
    }
  }
  FinSet ops(op_names), slots(slot_names);
  Polynomial e{p.src, p.tgt, slots, ops, FinFun(slots, p.src, sigma), FinFun(slots, ops, theta), FinFun(ops, p.tgt, tau)};
  PolySquare incl{e, p, FinFun::identity(p.src), FinFun::identity(p.tgt), FinFun(ops, p.ops, op_incl), FinFun(slots, p.slots, slot_incl)};
  return C1Equalizer<PolyDouble>{e, incl};
}

std::optional<PolySquare> PolyDouble::factor_through(const PolySquare& inclusion, const PolySquare& s) const {
  if (!(s.bottom == inclusion.bottom)) throw CompositionError("factor_through: square does not land on the equalized arrow");
  if (!inclusion.phi.is_injective() || !inclusion.phibar.is_injective()) throw CompositionError("factor_through: not a monic square");
  std::vector<std::optional<std::size_t>> op_pre(inclusion.bottom.ops.size()), slot_pre(inclusion.bottom.slots.size());
  for (std::size_t i = 0; i < inclusion.phi.dom().size(); ++i) op_pre[inclusion.phi(i)] = i;
  for (std::size_t i = 0; i < inclusion.phibar.dom().size(); ++i) slot_pre[inclusion.phibar(i)] = i;
  std::vector<std::size_t> phi, phibar;
  for (std::size_t b = 0; b < s.top.ops.size(); ++b) {
    if (!op_pre[s.phi(b)]) return std::nullopt;
    phi.push_back(*op_pre[s.phi(b)]);
  }
  for (std::size_t e = 0; e < s.top.slots.size(); ++e) {
    if (!slot_pre[s.phibar(e)]) return std::nullopt;
    phibar.push_back(*slot_pre[s.phibar(e)]);
  }
  PolySquare out{s.top, inclusion.top, s.u, s.v, FinFun(s.top.ops, inclusion.top.ops, phi),
                 FinFun(s.top.slots, inclusion.top.slots, phibar)};
  if (check_square(out)) return std::nullopt;
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation.

PolyEvaluation evaluate_poly_detailed(const Polynomial& p, const SliceObject& x) {
  if (!(x.base() == p.src)) throw CompositionError("evaluate_poly: slice is not over the polynomial's source");
  Pullback pb = pullback(p.sigma, x.proj);
  DependentProduct dp = dependent_product_sections(p.theta, SliceObject{pb.p1});
  PolyEvaluation out{SliceObject{compose_fun(p.tau, dp.slice.proj)}, {}, {}};
  for (std::size_t i = 0; i < dp.slice.total().size(); ++i) {
    out.op.push_back(dp.slice.proj(i));
    std::vector<std::size_t> ch;
    for (std::size_t k : dp.sections[i]) ch.push_back(pb.p2(k));
    out.choice.push_back(std::move(ch));
  }
  return out;
}

SliceObject evaluate_poly(const Polynomial& p, const SliceObject& x) { return evaluate_poly_detailed(p, x).slice; }

std::optional<FinFun> composition_bijection(const Polynomial& q, const Polynomial& p, const SliceObject& x) {
  PolyComposite qp = compose_polys_detailed(q, p);
  PolyEvaluation lhs = evaluate_poly_detailed(qp.poly, x);
  PolyEvaluation inner = evaluate_poly_detailed(p, x);
  PolyEvaluation rhs = evaluate_poly_detailed(q, inner.slice);
  std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> inner_index, rhs_index;
  for (std::size_t i = 0; i < inner.op.size(); ++i) inner_index.emplace(std::pair{inner.op[i], inner.choice[i]}, i);
  for (std::size_t i = 0; i < rhs.op.size(); ++i) rhs_index.emplace(std::pair{rhs.op[i], rhs.choice[i]}, i);
  std::vector<std::size_t> table;
  for (std::size_t i = 0; i < lhs.op.size(); ++i) {
    std::size_t o = lhs.op[i];
    std::vector<std::size_t> comp_slots = qp.poly.slots_of(o);
    std::vector<std::size_t> picks;
    std::size_t cursor = 0;
    for (std::size_t pj : qp.op_inner[o]) {
      std::size_t arity = p.arity(pj);
      std::vector<std::size_t> ch(lhs.choice[i].begin() + cursor, lhs.choice[i].begin() + cursor + arity);
      cursor += arity;
      auto it = inner_index.find({pj, ch});
      if (it == inner_index.end()) return std::nullopt;
      picks.push_back(it->second);
    }
    if (cursor != comp_slots.size()) return std::nullopt;
    auto it = rhs_index.find({qp.op_outer[o], picks});
    if (it == rhs_index.end()) return std::nullopt;
    table.push_back(it->second);
  }
  FinFun beta(lhs.slice.total(), rhs.slice.total(), table);
  if (!beta.is_bijective() || !(compose_fun(rhs.slice.proj, beta) == lhs.slice.proj)) return std::nullopt;
  return beta;
}

// ---------------------------------------------------------------------------
// Trees.

std::optional<std::size_t> FreeTrees::find_node(std::size_t op, const std::vector<std::size_t>& children) const {
  auto it = node_index.find({op, children});
  if (it == node_index.end()) return std::nullopt;
  return it->second;
}

std::string FreeTrees::tree_name(std::size_t t) const { return star.ops[t]; }

std::optional<std::size_t> FreeTrees::graft(std::size_t tree, const std::vector<std::size_t>& subs) const {
  std::size_t k = 0;
  std::function<std::optional<std::size_t>(std::size_t)> rec = [&](std::size_t t) -> std::optional<std::size_t> {
    const Node& n = trees[t];
    if (n.hole) {
      if (k >= subs.size()) throw CompositionError("graft: too few subtrees");
      std::size_t s = subs[k++];
      if (trees[s].output != n.label) throw CompositionError("graft: subtree has the wrong output type");
      return s;
    }
    std::vector<std::size_t> kids;
    for (std::size_t c : n.children) {
      auto r = rec(c);
      if (!r) return std::nullopt;
      kids.push_back(*r);
    }
    return find_node(n.label, kids);
  };
  auto r = rec(tree);
  if (r && k != subs.size()) throw CompositionError("graft: too many subtrees");
  return r;
}

FreePolyResult free_poly_monad(const Polynomial& q, std::size_t max_depth) {
  if (max_depth < 1) throw Error("free_poly_monad: max_depth must be at least 1");
  if (!(q.src == q.tgt)) throw CompositionError("free_poly_monad: polynomial is not an endomorphism");
  auto ft = std::make_shared<FreeTrees>();
  ft->base = q;
  ft->max_depth = max_depth;
  const FinSet& y = q.src;
  std::vector<std::string> names;
  for (std::size_t t = 0; t < y.size(); ++t) {
    ft->trees.push_back(FreeTrees::Node{true, t, {}, t, 0, 1});
    ft->hole_index.push_back(t);
    names.push_back("Hole(" + y[t] + ")");
  }
  bool grows = true;
  for (std::size_t d = 1; d <= max_depth + 1 && grows; ++d) {
    std::vector<FreeTrees::Node> fresh;
    std::vector<std::string> fresh_names;
    std::size_t existing = ft->trees.size();
    for (std::size_t b = 0; b < q.ops.size(); ++b) {
      std::vector<std::vector<std::size_t>> choices;
      for (std::size_t e : q.slots_of(b)) {
        std::vector<std::size_t> c;
        for (std::size_t t = 0; t < existing; ++t) {
          if (ft->trees[t].output == q.sigma(e)) c.push_back(t);
        }
        choices.push_back(std::move(c));
      }
      odometer(choices, [&](const std::vector<std::size_t>& kids) {
        std::size_t depth = 1, leaves = 0;
        for (std::size_t c : kids) {
          depth = std::max(depth, ft->trees[c].depth + 1);
          leaves += ft->trees[c].leaves;
        }
        if (depth != d) return true;
        std::string name = q.ops[b];
        if (!kids.empty()) {
          name += "(";
          for (std::size_t i = 0; i < kids.size(); ++i) name += (i ? "," : "") + names[kids[i]];
          name += ")";
        }
        fresh.push_back(FreeTrees::Node{false, b, kids, q.tau(b), depth, leaves});
        fresh_names.push_back(std::move(name));
        return true;
      });
    }
    grows = !fresh.empty();
    if (d == max_depth + 1) break;
    if (ft->trees.size() + fresh.size() > kMaxTrees) {
      ft->max_depth = d - 1;
      break;
    }
    for (std::size_t i = 0; i < fresh.size(); ++i) {
      ft->node_index.emplace(std::pair{fresh[i].label, fresh[i].children}, ft->trees.size());
      ft->trees.push_back(std::move(fresh[i]));
      names.push_back(std::move(fresh_names[i]));
    }
  }
  ft->exact = !grows;

  // The star polynomial: one op per tree, one slot per leaf.
  FinSet ops(names);
  std::vector<std::string> slot_names;
  std::vector<std::size_t> sigma, theta, tau;
  std::function<void(std::size_t, std::vector<std::size_t>&)> leaf_types = [&](std::size_t t, std::vector<std::size_t>& out) {
    const auto& n = ft->trees[t];
    if (n.hole) {
      out.push_back(n.label);
      return;
    }
    for (std::size_t c : n.children) leaf_types(c, out);
  };
  for (std::size_t t = 0; t < ft->trees.size(); ++t) {
    ft->leaf_offset.push_back(slot_names.size());
    tau.push_back(ft->trees[t].output);
    std::vector<std::size_t> types;
    leaf_types(t, types);
    for (std::size_t k = 0; k < types.size(); ++k) {
      slot_names.push_back(pair_name(names[t], std::to_string(k)));
      sigma.push_back(types[k]);
      theta.push_back(t);
    }
  }
  FinSet slots(slot_names);
  ft->star = Polynomial{y, y, slots, ops, FinFun(slots, y, sigma), FinFun(slots, ops, theta), FinFun(ops, y, tau)};
  const Polynomial& star = ft->star;
  auto one = FinFun::identity(y);

  std::vector<std::size_t> unit_phi, unit_phibar;
  for (std::size_t t = 0; t < y.size(); ++t) {
    unit_phi.push_back(ft->hole_index[t]);
    unit_phibar.push_back(ft->leaf_offset[ft->hole_index[t]]);
  }
  PolySquare unit{id_poly(y), star, one, one, FinFun(y, ops, unit_phi), FinFun(y, slots, unit_phibar)};

  std::vector<std::size_t> iota_phi(q.ops.size()), iota_phibar(q.slots.size());
  for (std::size_t b = 0; b < q.ops.size(); ++b) {
    std::vector<std::size_t> fib = q.slots_of(b), kids;
    for (std::size_t e : fib) kids.push_back(ft->hole_index[q.sigma(e)]);
    auto t = ft->find_node(b, kids);
    if (!t) throw Error("free_poly_monad: depth-one tree is missing");
    iota_phi[b] = *t;
    for (std::size_t k = 0; k < fib.size(); ++k) iota_phibar[fib[k]] = ft->leaf_offset[*t] + k;
  }
  PolySquare iota{q, star, one, one, FinFun(q.ops, ops, iota_phi), FinFun(q.slots, slots, iota_phibar)};

  std::optional<PolySquare> mult;
  if (ft->exact) {
    PolyComposite two = compose_polys_detailed(star, star);
    std::vector<std::size_t> phi(two.poly.ops.size()), phibar(two.poly.slots.size());
    std::vector<std::vector<std::size_t>> offsets(two.poly.ops.size());
    for (std::size_t o = 0; o < phi.size(); ++o) {
      auto g = ft->graft(two.op_outer[o], two.op_inner[o]);
      if (!g) throw Error("free_poly_monad: grafting left an exact tree set");
      phi[o] = *g;
      std::size_t acc = 0;
      for (std::size_t s : two.op_inner[o]) {
        offsets[o].push_back(acc);
        acc += ft->trees[s].leaves;
      }
    }
    for (std::size_t s = 0; s < phibar.size(); ++s) {
      std::size_t o = two.slot_op[s];
      std::size_t t = two.op_outer[o];
      std::size_t k = two.slot_outer[s] - ft->leaf_offset[t];
      std::size_t sub = two.op_inner[o][k];
      std::size_t l = two.slot_inner[s] - ft->leaf_offset[sub];
      phibar[s] = ft->leaf_offset[phi[o]] + offsets[o][k] + l;
    }
    mult = PolySquare{two.poly, star, one, one, FinFun(two.poly.ops, ops, phi), FinFun(two.poly.slots, slots, phibar)};
  }
  std::shared_ptr<const FreeTrees> data = ft;
  return FreePolyResult{data, FreeMonadBundle<PolyDouble>{q, star, mult, unit, iota, data->exact, data}};
}

PolyMonad free_poly_monad_data(const FreePolyResult& r) {
  if (!r.bundle.exact || !r.bundle.mult) throw TruncationError("free polynomial monad was truncated at depth " + std::to_string(r.data->max_depth));
  return PolyMonad{Endomorphism<PolyDouble>{r.data->base.src, r.bundle.star}, *r.bundle.mult, r.bundle.unit};
}

std::vector<EquationCheck> free_poly_pointwise_laws(const FreeTrees& ft) {
  constexpr std::size_t kBudget = 200000;
  std::size_t spent = 0;
  const std::size_t n = ft.trees.size();
  std::vector<std::vector<std::size_t>> leaf_types(n);
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t k = 0; k < ft.trees[t].leaves; ++k) leaf_types[t].push_back(ft.star.sigma(ft.leaf_offset[t] + k));
  }
  auto candidates = [&](const std::vector<std::size_t>& types) {
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t ty : types) {
      std::vector<std::size_t> c;
      for (std::size_t s = 0; s < n; ++s) {
        if (ft.trees[s].output == ty) c.push_back(s);
      }
      out.push_back(std::move(c));
    }
    return out;
  };
  auto names = [&](const std::vector<std::size_t>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + ft.tree_name(v[i]);
    return out + "]";
  };
  EquationCheck unit{"unit laws", true, {}};
  for (std::size_t t = 0; t < n && unit.holds; ++t) {
    std::vector<std::size_t> holes;
    for (std::size_t ty : leaf_types[t]) holes.push_back(ft.hole_index[ty]);
    auto r = ft.graft(t, holes);
    auto l = ft.graft(ft.hole_index[ft.trees[t].output], {t});
    if (!r || !l || *r != t || *l != t) {
      unit.holds = false;
      unit.detail = "holes do not act trivially on " + ft.tree_name(t);
    }
  }
  EquationCheck assoc{"associativity", true, {}};
  for (std::size_t t = 0; t < n && assoc.holds && spent < kBudget; ++t) {
    odometer(candidates(leaf_types[t]), [&](const std::vector<std::size_t>& subs) {
      std::vector<std::size_t> second_types;
      for (std::size_t s : subs) second_types.insert(second_types.end(), leaf_types[s].begin(), leaf_types[s].end());
      return odometer(candidates(second_types), [&](const std::vector<std::size_t>& subs2) {
        if (++spent > kBudget) return false;
        auto ts = ft.graft(t, subs);
        std::optional<std::size_t> lhs = ts ? ft.graft(*ts, subs2) : std::nullopt;
        std::vector<std::size_t> inner;
        std::size_t cursor = 0;
        bool inner_ok = true;
        for (std::size_t s : subs) {
          std::vector<std::size_t> part(subs2.begin() + cursor, subs2.begin() + cursor + ft.trees[s].leaves);
          cursor += ft.trees[s].leaves;
          auto g = ft.graft(s, part);
          if (!g) {
            inner_ok = false;
            break;
          }
          inner.push_back(*g);
        }
        std::optional<std::size_t> rhs = inner_ok ? ft.graft(t, inner) : std::nullopt;
        if (lhs && rhs && *lhs == *rhs) return true;
        assoc.holds = false;
        assoc.detail = "tree " + ft.tree_name(t) + " with " + names(subs) + " then " + names(subs2) + ": " +
                       (lhs ? ft.tree_name(*lhs) : "grafting exceeds max depth " + std::to_string(ft.max_depth)) + " vs " +
                       (rhs ? ft.tree_name(*rhs) : "grafting exceeds max depth " + std::to_string(ft.max_depth));
        return false;
      });
    });
  }
  return {assoc, unit};
}

FreeMonadBundle<PolyDouble> PolyDouble::free_monad(const Polynomial& q) const {
  return free_poly_monad(q, free_max_depth_).bundle;
}

PolySquare PolyDouble::sharp(const FreeMonadBundle<PolyDouble>& b, const Polynomial& m, const PolySquare& mu, const PolySquare& eta,
                             const Polynomial& f, const PolySquare& phi) const {
  if (!b.exact || !b.data) throw TruncationError("sharp needs an exact free polynomial monad");
  const FreeTrees& ft = *b.data;
  const Polynomial& q = b.base;
  if (!(f.src == m.src) || !(f.tgt == q.src)) throw CompositionError("sharp: F does not run from the monad's object to Q's object");
  PolyComposite qf = compose_polys_detailed(q, f);
  PolyComposite fm = compose_polys_detailed(f, m);
  PolyComposite mm = compose_polys_detailed(m, m);
  if (!(phi.top == qf.poly) || !(phi.bottom == fm.poly)) throw CompositionError("sharp: phi has the wrong boundary");
  if (!(mu.top == mm.poly) || !(mu.bottom == m) || !(eta.bottom == m)) throw CompositionError("sharp: monad squares have the wrong boundary");
  PolyComposite top = compose_polys_detailed(ft.star, f);

  std::vector<std::optional<std::size_t>> phibar_inv(fm.poly.slots.size());
  for (std::size_t x = 0; x < qf.poly.slots.size(); ++x) phibar_inv[phi.phibar(x)] = x;

  struct Res {
    std::size_t fop;
    std::vector<std::size_t> mops;  // per slot of fop, in slot order
    // (leaf, F slot) -> (F slot of fop, M slot)
    std::map<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, std::size_t>> slots;
  };
  std::function<Res(std::size_t, const std::vector<std::size_t>&)> rec = [&](std::size_t t, const std::vector<std::size_t>& labels) {
    const FreeTrees::Node& node = ft.trees[t];
    Res r;
    if (node.hole) {
      r.fop = labels.at(0);
      for (std::size_t e : f.slots_of(r.fop)) {
        std::size_t x = f.sigma(e);
        r.mops.push_back(eta.phi(x));
        r.slots[{0, e}] = {e, eta.phibar(x)};
      }
      return r;
    }
    std::vector<std::size_t> bslots = q.slots_of(node.label);
    std::vector<Res> kids;
    std::vector<std::size_t> offset;
    std::size_t cursor = 0;
    std::vector<std::size_t> g;
    for (std::size_t c : node.children) {
      std::vector<std::size_t> part(labels.begin() + cursor, labels.begin() + cursor + ft.trees[c].leaves);
      offset.push_back(cursor);
      cursor += ft.trees[c].leaves;
      kids.push_back(rec(c, part));
      g.push_back(kids.back().fop);
    }
    auto o = qf.find_op(node.label, g);
    if (!o) throw CompositionError("sharp: composite op missing");
    std::size_t o2 = phi.phi(*o);
    r.fop = fm.op_outer[o2];
    std::vector<std::size_t> fslots = f.slots_of(r.fop);
    std::vector<std::size_t> mm_ops(fslots.size());
    for (std::size_t jpos = 0; jpos < fslots.size(); ++jpos) {
      std::size_t mprime = fm.op_inner[o2][jpos];
      std::vector<std::size_t> inner;
      for (std::size_t s : m.slots_of(mprime)) {
        auto x = phibar_inv[fm.find_slot(o2, fslots[jpos], s)];
        if (!x) throw CompositionError("sharp: phi is not cartesian");
        std::size_t i = position(bslots, qf.slot_outer[*x]);
        std::size_t e = qf.slot_inner[*x];
        inner.push_back(kids[i].mops[position(f.slots_of(kids[i].fop), e)]);
      }
      auto mo = mm.find_op(mprime, inner);
      if (!mo) throw CompositionError("sharp: M composite op missing");
      mm_ops[jpos] = *mo;
      r.mops.push_back(mu.phi(*mo));
    }
    for (std::size_t i = 0; i < kids.size(); ++i) {
      for (const auto& [key, val] : kids[i].slots) {
        std::size_t x = qf.find_slot(*o, bslots[i], val.first);
        std::size_t y = phi.phibar(x);
        std::size_t jslot = fm.slot_outer[y];
        std::size_t s = fm.slot_inner[y];
        std::size_t mo = mm_ops[position(fslots, jslot)];
        std::size_t rr = mu.phibar(mm.find_slot(mo, s, val.second));
        r.slots[{offset[i] + key.first, key.second}] = {jslot, rr};
      }
    }
    return r;
  };

  std::vector<std::size_t> out_phi(top.poly.ops.size()), out_phibar(top.poly.slots.size());
  for (std::size_t o = 0; o < out_phi.size(); ++o) {
    std::size_t t = top.op_outer[o];
    Res r = rec(t, top.op_inner[o]);
    auto o2 = fm.find_op(r.fop, r.mops);
    if (!o2) throw CompositionError("sharp: result op missing");
    out_phi[o] = *o2;
    for (std::size_t s : top.poly.slots_of(o)) {
      std::size_t k = top.slot_outer[s] - ft.leaf_offset[t];
      auto [jslot, rr] = r.slots.at({k, top.slot_inner[s]});
      out_phibar[s] = fm.find_slot(*o2, jslot, rr);
    }
  }
  return PolySquare{top.poly, fm.poly, FinFun::identity(f.src), FinFun::identity(f.tgt),
                    FinFun(top.poly.ops, fm.poly.ops, out_phi), FinFun(top.poly.slots, fm.poly.slots, out_phibar)};
}

PolySquare sharp_lift_poly(const PolyMonad& monad, const HorEndoMap<PolyDouble>& endo_map, const FreePolyResult& free) {
  if (!(endo_map.src == monad.endo)) throw CompositionError("sharp_lift_poly: map does not start at the monad");
  if (!(endo_map.tgt.arrow == free.bundle.base)) throw CompositionError("sharp_lift_poly: map does not land on Q");
  return PolyDouble().sharp(free.bundle, monad.endo.arrow, monad.mult, monad.unit, endo_map.arrow, endo_map.phi);
}

PolySquare nu_square(const FreePolyResult& free) {
  if (!free.bundle.mult) throw TruncationError("nu needs an exact free polynomial monad");
  PolyDouble c;
  return c.vcomp(*free.bundle.mult, c.hcomp(free.bundle.iota, c.id_square_hor(free.bundle.star)));
}

// ---------------------------------------------------------------------------
// Enumeration.

void PolyDouble::enumerate_squares(const Polynomial& top, const Polynomial& bottom, const FinFun& u, const FinFun& v,
                                   const std::function<bool(const PolySquare&)>& visit) const {
  if (!(u.dom() == top.src) || !(u.cod() == bottom.src) || !(v.dom() == top.tgt) || !(v.cod() == bottom.tgt)) {
    throw CompositionError("enumerate_squares: vertical arrows do not fit the polynomials");
  }
  std::vector<std::vector<std::size_t>> op_choices(top.ops.size());
  for (std::size_t b = 0; b < top.ops.size(); ++b) {
    for (std::size_t b2 = 0; b2 < bottom.ops.size(); ++b2) {
      if (bottom.tau(b2) == v(top.tau(b)) && bottom.arity(b2) == top.arity(b)) op_choices[b].push_back(b2);
    }
  }
  std::vector<std::size_t> phibar(top.slots.size());
  odometer(op_choices, [&](const std::vector<std::size_t>& phi) {
    // Per op, every bijection of its slots onto the image op's slots respecting sigma.
    std::function<bool(std::size_t)> per_op = [&](std::size_t b) -> bool {
      if (b == top.ops.size()) {
        return visit(PolySquare{top, bottom, u, v, FinFun(top.ops, bottom.ops, phi), FinFun(top.slots, bottom.slots, phibar)});
      }
      std::vector<std::size_t> fib = top.slots_of(b), fib2 = bottom.slots_of(phi[b]);
      std::vector<std::size_t> perm(fib2.size());
      std::iota(perm.begin(), perm.end(), std::size_t{0});
      do {
        bool ok = true;
        for (std::size_t k = 0; k < fib.size() && ok; ++k) ok = bottom.sigma(fib2[perm[k]]) == u(top.sigma(fib[k]));
        if (!ok) continue;
        for (std::size_t k = 0; k < fib.size(); ++k) phibar[fib[k]] = fib2[perm[k]];
        if (!per_op(b + 1)) return false;
      } while (std::next_permutation(perm.begin(), perm.end()));
      return true;
    };
    return per_op(0);
  });
}

void PolyDouble::enumerate_globular_isos(const Polynomial& f, const Polynomial& g,
                                         const std::function<bool(const PolySquare&)>& visit) const {
  if (!(f.src == g.src) || !(f.tgt == g.tgt) || f.ops.size() != g.ops.size() || f.slots.size() != g.slots.size()) return;
  enumerate_squares(f, g, FinFun::identity(f.src), FinFun::identity(f.tgt), [&](const PolySquare& s) {
    if (!s.phi.is_bijective()) return true;
    return visit(s);
  });
}

PolyMonad make_unary_poly_monad(const FinSet& y, const std::vector<std::pair<std::string, std::pair<std::string, std::string>>>& unary,
                                const std::vector<std::string>& identities,
                                const std::function<std::string(const std::string&, const std::string&)>& comp,
                                const std::vector<std::pair<std::string, std::string>>& constants,
                                const std::function<std::string(const std::string&, const std::string&)>& act) {
  std::vector<std::pair<std::string, std::pair<std::vector<std::string>, std::string>>> ops;
  for (const auto& [name, ends] : unary) ops.push_back({name, {{ends.first}, ends.second}});
  for (const auto& [name, type] : constants) ops.push_back({name, {{}, type}});
  Polynomial p = poly_from_ops(y, y, ops);
  if (identities.size() != y.size()) throw Error("make_unary_poly_monad: one identity per object is required");
  auto one = FinFun::identity(y);
  std::vector<std::size_t> eta_phi, eta_phibar;
  for (const auto& id : identities) {
    std::size_t b = p.ops.index_of(id);
    eta_phi.push_back(b);
    eta_phibar.push_back(p.slots_of(b).at(0));
  }
  PolySquare eta{id_poly(y), p, one, one, FinFun(y, p.ops, eta_phi), FinFun(y, p.slots, eta_phibar)};
  PolyComposite two = compose_polys_detailed(p, p);
  std::vector<std::size_t> phi, phibar;
  for (std::size_t o = 0; o < two.poly.ops.size(); ++o) {
    const std::string& outer = p.ops[two.op_outer[o]];
    if (two.op_inner[o].empty()) {
      phi.push_back(two.op_outer[o]);
      continue;
    }
    std::size_t inner = two.op_inner[o][0];
    const std::string& in = p.ops[inner];
    phi.push_back(p.ops.index_of(p.arity(inner) == 1 ? comp(in, outer) : act(outer, in)));
  }
  for (std::size_t s = 0; s < two.poly.slots.size(); ++s) phibar.push_back(p.slots_of(phi[two.slot_op[s]]).at(0));
  PolySquare mu{two.poly, p, one, one, FinFun(two.poly.ops, p.ops, phi), FinFun(two.poly.slots, p.slots, phibar)};
  if (auto e = PolyDouble().check_square(mu)) throw CompositionError("make_unary_poly_monad: multiplication " + *e);
  if (auto e = PolyDouble().check_square(eta)) throw CompositionError("make_unary_poly_monad: unit " + *e);
  return PolyMonad{Endomorphism<PolyDouble>{y, p}, mu, eta};
}

void enumerate_unary_poly_monads(const FinSet& y, std::size_t max_unary, std::size_t max_constants,
                                 const std::function<bool(const PolyMonad&)>& visit) {
  bool stop = false;
  SpanDouble spans;
  enumerate_categories(
      y, max_unary,
      [&](const FinCategory& cat) {
        const Span& arrows = cat.endo.arrow;
        const std::size_t n = arrows.apex.size();
        SpanComposite two = compose_spans_detailed(arrows, arrows);
        std::vector<std::optional<std::size_t>> comp(n * n);
        for (std::size_t i = 0; i < two.span.apex.size(); ++i) comp[two.first(i) * n + two.second(i)] = cat.mult.mid(i);
        std::vector<bool> is_id(n, false);
        std::vector<std::string> ids;
        for (std::size_t x = 0; x < y.size(); ++x) {
          is_id[cat.unit.mid(x)] = true;
          ids.push_back(arrows.apex[cat.unit.mid(x)]);
        }
        std::vector<std::pair<std::string, std::pair<std::string, std::string>>> unary;
        for (std::size_t f = 0; f < n; ++f) unary.push_back({arrows.apex[f], {y[arrows.left(f)], y[arrows.right(f)]}});
        auto comp_fn = [&](const std::string& a, const std::string& b) {
          return arrows.apex[*comp[arrows.apex.index_of(a) * n + arrows.apex.index_of(b)]];
        };
        for (std::size_t nc = 0; nc <= max_constants && !stop; ++nc) {
          std::set<std::vector<std::size_t>> seen;
          std::vector<std::vector<std::size_t>> type_choices(nc);
          for (auto& t : type_choices) {
            t.resize(y.size());
            std::iota(t.begin(), t.end(), std::size_t{0});
          }
          odometer(type_choices, [&](const std::vector<std::size_t>& type) {
            if (!std::is_sorted(type.begin(), type.end())) return true;
            // act[f * nc + c], defined where the constant's type is the source of f.
            std::vector<std::vector<std::size_t>> choices;
            std::vector<std::pair<std::size_t, std::size_t>> cells;
            for (std::size_t f = 0; f < n; ++f) {
              for (std::size_t c = 0; c < nc; ++c) {
                if (type[c] != arrows.left(f)) continue;
                cells.emplace_back(f, c);
                std::vector<std::size_t> opts;
                for (std::size_t d = 0; d < nc; ++d) {
                  if (is_id[f] ? d == c : type[d] == arrows.right(f)) opts.push_back(d);
                }
                choices.push_back(std::move(opts));
              }
            }
            return odometer(choices, [&](const std::vector<std::size_t>& vals) {
              std::vector<std::size_t> act(n * nc, nc);
              for (std::size_t i = 0; i < cells.size(); ++i) act[cells[i].first * nc + cells[i].second] = vals[i];
              for (std::size_t f = 0; f < n; ++f) {
                for (std::size_t g = 0; g < n; ++g) {
                  if (!comp[f * n + g]) continue;
                  for (std::size_t c = 0; c < nc; ++c) {
                    if (type[c] != arrows.left(f)) continue;
                    if (act[*comp[f * n + g] * nc + c] != act[g * nc + act[f * nc + c]]) return true;
                  }
                }
              }
              // Canonical form over renamings of the constants that keep types sorted.
              std::vector<std::size_t> perm(nc), best;
              std::iota(perm.begin(), perm.end(), std::size_t{0});
              do {
                bool keeps = true;
                for (std::size_t c = 0; c < nc && keeps; ++c) keeps = type[perm[c]] == type[c];
                if (!keeps) continue;
                std::vector<std::size_t> key(n * nc, nc);
                for (std::size_t f = 0; f < n; ++f) {
                  for (std::size_t c = 0; c < nc; ++c) {
                    if (act[f * nc + c] < nc) key[f * nc + perm[c]] = perm[act[f * nc + c]];
                  }
                }
                if (best.empty() || key < best) best = key;
              } while (std::next_permutation(perm.begin(), perm.end()));
              best.insert(best.end(), type.begin(), type.end());
              if (!seen.insert(best).second) return true;
              FinSet names = numbered_set("k", nc);
              std::vector<std::pair<std::string, std::string>> constants;
              for (std::size_t c = 0; c < nc; ++c) constants.push_back({names[c], y[type[c]]});
              PolyMonad m = make_unary_poly_monad(y, unary, ids, comp_fn, constants, [&](const std::string& f, const std::string& c) {
                return names[act[arrows.apex.index_of(f) * nc + names.index_of(c)]];
              });
              if (!visit(m)) stop = true;
              return !stop;
            });
          });
        }
        return !stop;
      },
      true);
}

Polynomial random_poly(std::mt19937_64& rng, const FinSet& x, const FinSet& y, std::size_t max_ops, std::size_t max_arity,
                       const std::string& prefix) {
  std::vector<std::pair<std::string, std::pair<std::vector<std::string>, std::string>>> ops;
  if (!y.empty()) {
    std::size_t count = std::uniform_int_distribution<std::size_t>(0, max_ops)(rng);
    for (std::size_t b = 0; b < count; ++b) {
      std::size_t arity = x.empty() ? 0 : std::uniform_int_distribution<std::size_t>(0, max_arity)(rng);
      std::vector<std::string> ins;
      for (std::size_t k = 0; k < arity; ++k) ins.push_back(x[std::uniform_int_distribution<std::size_t>(0, x.size() - 1)(rng)]);
      ops.push_back({prefix + std::to_string(b), {ins, y[std::uniform_int_distribution<std::size_t>(0, y.size() - 1)(rng)]}});
    }
  }
  return poly_from_ops(x, y, ops);
}

std::optional<PolySquare> random_poly_square_over(std::mt19937_64& rng, const Polynomial& top, const FinFun& u, const FinFun& v,
                                                  std::size_t extra_ops, const std::string& prefix) {
  const FinSet& x2 = u.cod();
  const FinSet& y2 = v.cod();
  using Profile = std::pair<std::vector<std::size_t>, std::size_t>;
  std::vector<Profile> profiles;
  std::vector<std::size_t> phi;
  for (std::size_t b = 0; b < top.ops.size(); ++b) {
    Profile p;
    for (std::size_t e : top.slots_of(b)) p.first.push_back(u(top.sigma(e)));
    p.second = v(top.tau(b));
    std::vector<std::size_t> same;
    for (std::size_t i = 0; i < profiles.size(); ++i) {
      if (profiles[i] == p) same.push_back(i);
    }
    if (!same.empty() && std::bernoulli_distribution(0.5)(rng)) {
      phi.push_back(same[std::uniform_int_distribution<std::size_t>(0, same.size() - 1)(rng)]);
    } else {
      phi.push_back(profiles.size());
      profiles.push_back(p);
    }
  }
  if (!y2.empty()) {
    std::size_t extra = std::uniform_int_distribution<std::size_t>(0, extra_ops)(rng);
    for (std::size_t i = 0; i < extra; ++i) {
      Profile p;
      std::size_t arity = x2.empty() ? 0 : std::uniform_int_distribution<std::size_t>(0, 2)(rng);
      for (std::size_t k = 0; k < arity; ++k) p.first.push_back(std::uniform_int_distribution<std::size_t>(0, x2.size() - 1)(rng));
      p.second = std::uniform_int_distribution<std::size_t>(0, y2.size() - 1)(rng);
      profiles.push_back(p);
    }
  }
  std::vector<std::pair<std::string, std::pair<std::vector<std::string>, std::string>>> ops;
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    std::vector<std::string> ins;
    for (std::size_t t : profiles[i].first) ins.push_back(x2[t]);
    ops.push_back({prefix + std::to_string(i), {ins, y2[profiles[i].second]}});
  }
  Polynomial bottom = poly_from_ops(x2, y2, ops);
  std::vector<std::size_t> phibar(top.slots.size());
  for (std::size_t b = 0; b < top.ops.size(); ++b) {
    std::vector<std::size_t> fib = top.slots_of(b), fib2 = bottom.slots_of(phi[b]);
    for (std::size_t k = 0; k < fib.size(); ++k) phibar[fib[k]] = fib2[k];
  }
  PolySquare s{top, bottom, u, v, FinFun(top.ops, bottom.ops, phi), FinFun(top.slots, bottom.slots, phibar)};
  if (PolyDouble().check_square(s)) return std::nullopt;
  return s;
}

}  // namespace dcmonad
