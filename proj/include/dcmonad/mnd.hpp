#pragma once

// Endomorphisms and monads in a double category, the cells between them, and
// the constructions that only need a framed instance: base change, cofolding,
// and the assembly of free monads from free monads in the horizontal bicategory.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dcmonad/doublecat.hpp"

namespace dcmonad {

template <DoubleCategory C>
struct Endomorphism {
  typename C::Object object;
  typename C::Hor arrow;

  friend bool operator==(const Endomorphism& a, const Endomorphism& b) {
    return a.object == b.object && a.arrow == b.arrow;
  }
};

template <DoubleCategory C>
struct MonadData {
  Endomorphism<C> endo;
  typename C::Square mult;
  typename C::Square unit;

  friend bool operator==(const MonadData& a, const MonadData& b) {
    return a.endo == b.endo && a.mult == b.mult && a.unit == b.unit;
  }
};

// (F, phi) : (X,P) -> (Y,Q) with phi : [F, Q] => [P, F].
template <DoubleCategory C>
struct HorEndoMap {
  Endomorphism<C> src;
  Endomorphism<C> tgt;
  typename C::Hor arrow;
  typename C::Square phi;

  friend bool operator==(const HorEndoMap& a, const HorEndoMap& b) {
    return a.src == b.src && a.tgt == b.tgt && a.arrow == b.arrow && a.phi == b.phi;
  }
};

// (u, ubar) : (X,P) -> (X',P') with ubar : P => P' over (u, u).
template <DoubleCategory C>
struct VertEndoMap {
  Endomorphism<C> src;
  Endomorphism<C> tgt;
  typename C::Ver arrow;
  typename C::Square square;

  friend bool operator==(const VertEndoMap& a, const VertEndoMap& b) {
    return a.src == b.src && a.tgt == b.tgt && a.arrow == b.arrow && a.square == b.square;
  }
};

template <DoubleCategory C>
struct EndoSquare {
  HorEndoMap<C> top;
  HorEndoMap<C> bottom;
  VertEndoMap<C> left;
  VertEndoMap<C> right;
  typename C::Square square;

  friend bool operator==(const EndoSquare& a, const EndoSquare& b) {
    return a.top == b.top && a.bottom == b.bottom && a.left == b.left && a.right == b.right && a.square == b.square;
  }
};

template <DoubleCategory C>
struct HorMonadMap {
  MonadData<C> src;
  MonadData<C> tgt;
  typename C::Hor arrow;
  typename C::Square phi;
};

template <DoubleCategory C>
struct VertMonadMap {
  MonadData<C> src;
  MonadData<C> tgt;
  typename C::Ver arrow;
  typename C::Square square;
};

template <DoubleCategory C>
struct MonadSquare {
  HorMonadMap<C> top;
  HorMonadMap<C> bottom;
  VertMonadMap<C> left;
  VertMonadMap<C> right;
  typename C::Square square;
};

// The forgetful double functor U : Mnd -> End.
template <DoubleCategory C>
HorEndoMap<C> forget(const HorMonadMap<C>& m) {
  return HorEndoMap<C>{m.src.endo, m.tgt.endo, m.arrow, m.phi};
}

template <DoubleCategory C>
VertEndoMap<C> forget(const VertMonadMap<C>& m) {
  return VertEndoMap<C>{m.src.endo, m.tgt.endo, m.arrow, m.square};
}

template <DoubleCategory C>
EndoSquare<C> forget(const MonadSquare<C>& s) {
  return EndoSquare<C>{forget(s.top), forget(s.bottom), forget(s.left), forget(s.right), s.square};
}

// One displayed equation evaluated on concrete cells.
struct EquationCheck {
  std::string name;
  bool holds = false;
  // Both sides, serialized, when the equation fails.
  std::string detail;
};

inline bool all_hold(const std::vector<EquationCheck>& checks) {
  for (const auto& c : checks) {
    if (!c.holds) return false;
  }
  return true;
}

template <DoubleCategory C>
EquationCheck compare_pastings(const C& c, const std::string& name, const std::function<Cell<C>()>& lhs,
                               const std::function<Cell<C>()>& rhs) {
  EquationCheck out{name, false, {}};
  std::optional<Cell<C>> l, r;
  try {
    l = lhs();
  } catch (const Error& e) {
    out.detail = "left side does not paste: " + std::string(e.what());
    return out;
  }
  try {
    r = rhs();
  } catch (const Error& e) {
    out.detail = "right side does not paste: " + std::string(e.what());
    return out;
  }
  out.holds = (*l == *r);
  if (!out.holds) out.detail = "lhs=" + describe_cell(c, *l) + " rhs=" + describe_cell(c, *r);
  return out;
}

// ---------------------------------------------------------------------------
// Cells for the data above.

template <DoubleCategory C>
HPath<C> endo_path(const C& c, const Endomorphism<C>& e) {
  return path_of(c, e.arrow);
}

template <DoubleCategory C>
Cell<C> mult_cell(const C& c, const MonadData<C>& m) {
  const auto& p = m.endo.arrow;
  return make_cell(c, m.mult, path_from(c, std::vector{p, p}), path_of(c, p));
}

template <DoubleCategory C>
Cell<C> unit_cell(const C& c, const MonadData<C>& m) {
  return make_cell(c, m.unit, empty_path(c, m.endo.object), path_of(c, m.endo.arrow));
}

template <DoubleCategory C>
Cell<C> phi_cell(const C& c, const HorEndoMap<C>& h) {
  return make_cell(c, h.phi, path_from(c, std::vector{h.arrow, h.tgt.arrow}),
                   path_from(c, std::vector{h.src.arrow, h.arrow}));
}

template <DoubleCategory C>
Cell<C> vert_cell(const C& c, const VertEndoMap<C>& v) {
  return make_cell(c, v.square, path_of(c, v.src.arrow), path_of(c, v.tgt.arrow));
}

template <DoubleCategory C>
Cell<C> square_cell(const C& c, const EndoSquare<C>& s) {
  return make_cell(c, s.square, path_of(c, s.top.arrow), path_of(c, s.bottom.arrow));
}

template <DoubleCategory C>
MonadData<C> identity_monad(const C& c, const typename C::Object& x) {
  auto one = c.hor_id(x);
  return MonadData<C>{Endomorphism<C>{x, one}, c.left_unitor(one), c.id_square_hor(one)};
}

// ---------------------------------------------------------------------------
// Shape and law checks.

template <DoubleCategory C>
std::optional<std::string> endo_shape_error(const C& c, const Endomorphism<C>& e) {
  if (!(c.hor_src(e.arrow) == e.object) || !(c.hor_tgt(e.arrow) == e.object)) return "arrow is not an endomorphism of the object";
  return std::nullopt;
}

template <DoubleCategory C>
std::vector<EquationCheck> monad_laws(const C& c, const MonadData<C>& m) {
  std::vector<EquationCheck> out;
  const auto& p = m.endo.arrow;
  auto shape = [&]() -> std::optional<std::string> {
    if (auto e = endo_shape_error(c, m.endo)) return e;
    if (auto e = c.check_square(m.mult)) return "multiplication: " + *e;
    if (auto e = c.check_square(m.unit)) return "unit: " + *e;
    if (!is_globular(c, m.mult) || !is_globular(c, m.unit)) return "multiplication and unit must be globular";
    if (!(c.top(m.mult) == c.hor_compose(p, p)) || !(c.bottom(m.mult) == p)) return "multiplication has the wrong boundary";
    if (!(c.top(m.unit) == c.hor_id(m.endo.object)) || !(c.bottom(m.unit) == p)) return "unit has the wrong boundary";
    return std::nullopt;
  }();
  if (shape) {
    out.push_back({"monad shape", false, *shape});
    return out;
  }
  auto mu = [&] { return mult_cell(c, m); };
  auto eta = [&] { return unit_cell(c, m); };
  auto idp = [&] { return id_cell(c, p); };
  out.push_back(compare_pastings<C>(
      c, "associativity", [&] { return paste(c, {{mu(), idp()}, {mu()}}); },
      [&] { return paste(c, {{idp(), mu()}, {mu()}}); }));
  out.push_back(compare_pastings<C>(
      c, "left unit", [&] { return paste(c, {{eta(), idp()}, {mu()}}); }, [&] { return idp(); }));
  out.push_back(compare_pastings<C>(
      c, "right unit", [&] { return paste(c, {{idp(), eta()}, {mu()}}); }, [&] { return idp(); }));
  return out;
}

template <DoubleCategory C>
std::optional<std::string> hor_map_shape_error(const C& c, const HorEndoMap<C>& h) {
  if (!(c.hor_src(h.arrow) == h.src.object) || !(c.hor_tgt(h.arrow) == h.tgt.object)) return "arrow does not connect the endomorphisms";
  if (auto e = c.check_square(h.phi)) return "phi: " + *e;
  if (!is_globular(c, h.phi)) return "phi must be globular";
  if (!(c.top(h.phi) == c.hor_compose(h.tgt.arrow, h.arrow)) || !(c.bottom(h.phi) == c.hor_compose(h.arrow, h.src.arrow))) {
    return "phi has the wrong boundary";
  }
  return std::nullopt;
}

template <DoubleCategory C>
std::optional<std::string> vert_map_shape_error(const C& c, const VertEndoMap<C>& v) {
  if (auto e = c.check_square(v.square)) return "square: " + *e;
  if (!(c.top(v.square) == v.src.arrow) || !(c.bottom(v.square) == v.tgt.arrow)) return "square has the wrong horizontal boundary";
  if (!(c.left(v.square) == v.arrow) || !(c.right(v.square) == v.arrow)) return "square has the wrong vertical boundary";
  return std::nullopt;
}

template <DoubleCategory C>
std::vector<EquationCheck> hor_monad_map_laws(const C& c, const HorMonadMap<C>& h) {
  auto endo = forget(h);
  if (auto e = hor_map_shape_error(c, endo)) return {{"horizontal map shape", false, *e}};
  auto phi = [&] { return phi_cell(c, endo); };
  auto idf = [&] { return id_cell(c, h.arrow); };
  auto idp = [&] { return id_cell(c, h.src.endo.arrow); };
  auto idq = [&] { return id_cell(c, h.tgt.endo.arrow); };
  std::vector<EquationCheck> out;
  out.push_back(compare_pastings<C>(
      c, "horizontal map multiplication", [&] { return paste(c, {{idf(), mult_cell(c, h.tgt)}, {phi()}}); },
      [&] { return paste(c, {{phi(), idq()}, {idp(), phi()}, {mult_cell(c, h.src), idf()}}); }));
  out.push_back(compare_pastings<C>(
      c, "horizontal map unit", [&] { return paste(c, {{idf(), unit_cell(c, h.tgt)}, {phi()}}); },
      [&] { return paste(c, {{unit_cell(c, h.src), idf()}}); }));
  return out;
}

template <DoubleCategory C>
std::vector<EquationCheck> vert_monad_map_laws(const C& c, const VertMonadMap<C>& v) {
  auto endo = forget(v);
  if (auto e = vert_map_shape_error(c, endo)) return {{"vertical map shape", false, *e}};
  auto sq = [&] { return vert_cell(c, endo); };
  std::vector<EquationCheck> out;
  out.push_back(compare_pastings<C>(
      c, "vertical map multiplication", [&] { return paste(c, {{mult_cell(c, v.src)}, {sq()}}); },
      [&] { return paste(c, {{sq(), sq()}, {mult_cell(c, v.tgt)}}); }));
  out.push_back(compare_pastings<C>(
      c, "vertical map unit", [&] { return paste(c, {{unit_cell(c, v.src)}, {sq()}}); },
      [&] { return paste(c, {{ver_cell(c, v.arrow)}, {unit_cell(c, v.tgt)}}); }));
  return out;
}

template <DoubleCategory C>
std::vector<EquationCheck> endo_square_condition(const C& c, const EndoSquare<C>& s) {
  const auto& a = s.square;
  std::optional<std::string> shape;
  if (auto e = c.check_square(a)) shape = *e;
  else if (!(c.top(a) == s.top.arrow) || !(c.bottom(a) == s.bottom.arrow)) shape = "square has the wrong horizontal boundary";
  else if (!(c.left(a) == s.left.arrow) || !(c.right(a) == s.right.arrow)) shape = "square has the wrong vertical boundary";
  else if (!(s.top.src == s.left.src) || !(s.top.tgt == s.right.src) || !(s.bottom.src == s.left.tgt) || !(s.bottom.tgt == s.right.tgt)) {
    shape = "boundary maps do not meet at the corners";
  }
  if (shape) return {{"endomorphism square shape", false, *shape}};
  return {compare_pastings<C>(
      c, "endomorphism square condition",
      [&] { return paste(c, {{phi_cell(c, s.top)}, {vert_cell(c, s.left), square_cell(c, s)}}); },
      [&] { return paste(c, {{square_cell(c, s), vert_cell(c, s.right)}, {phi_cell(c, s.bottom)}}); })};
}

// ---------------------------------------------------------------------------
// End and Mnd as double categories. Cells compose by pasting in the
// underlying instance.

template <DoubleCategory C>
class EndDouble {
 public:
  explicit EndDouble(const C& base) : base_(&base) {}

  const C& base() const { return *base_; }

  HorEndoMap<C> hor_id(const Endomorphism<C>& e) const {
    const C& c = *base_;
    auto one = c.hor_id(e.object);
    // [1, P] => [P, 1] through the unitors.
    auto phi = c.vcomp(invert_or_throw(c, c.left_unitor(e.arrow)), c.right_unitor(e.arrow));
    return HorEndoMap<C>{e, e, one, phi};
  }

  // g after f: the composite arrow is hor_compose(G, F) and its square pastes
  // [[1_F, psi], [phi, 1_G]].
  HorEndoMap<C> hor_compose(const HorEndoMap<C>& g, const HorEndoMap<C>& f) const {
    const C& c = *base_;
    if (!(f.tgt == g.src)) throw CompositionError("horizontal endomorphism maps are not composable");
    Cell<C> pasted = paste(c, {{id_cell(c, f.arrow), phi_cell(c, g)}, {phi_cell(c, f), id_cell(c, g.arrow)}});
    auto fg = path_from(c, std::vector{f.arrow, g.arrow});
    Cell<C> framed = reframe(c, pasted, {fg, path_of(c, g.tgt.arrow)}, {path_of(c, f.src.arrow), fg});
    return HorEndoMap<C>{f.src, g.tgt, c.hor_compose(g.arrow, f.arrow), framed.square};
  }

  VertEndoMap<C> ver_id(const Endomorphism<C>& e) const {
    const C& c = *base_;
    return VertEndoMap<C>{e, e, c.ver_id(e.object), c.id_square_hor(e.arrow)};
  }

  VertEndoMap<C> ver_compose(const VertEndoMap<C>& g, const VertEndoMap<C>& f) const {
    const C& c = *base_;
    if (!(f.tgt == g.src)) throw CompositionError("vertical endomorphism maps are not composable");
    return VertEndoMap<C>{f.src, g.tgt, c.ver_compose(g.arrow, f.arrow), c.vcomp(g.square, f.square)};
  }

  EndoSquare<C> id_square_hor(const HorEndoMap<C>& h) const {
    const C& c = *base_;
    return EndoSquare<C>{h, h, ver_id(h.src), ver_id(h.tgt), c.id_square_hor(h.arrow)};
  }

  EndoSquare<C> id_square_ver(const VertEndoMap<C>& v) const {
    const C& c = *base_;
    return EndoSquare<C>{hor_id(v.src), hor_id(v.tgt), v, v, c.id_square_ver(v.arrow)};
  }

  EndoSquare<C> hcomp(const EndoSquare<C>& b, const EndoSquare<C>& a) const {
    const C& c = *base_;
    if (!(a.right == b.left)) throw CompositionError("endomorphism squares are not horizontally composable");
    return EndoSquare<C>{hor_compose(b.top, a.top), hor_compose(b.bottom, a.bottom), a.left, b.right,
                         c.hcomp(b.square, a.square)};
  }

  EndoSquare<C> vcomp(const EndoSquare<C>& lower, const EndoSquare<C>& upper) const {
    const C& c = *base_;
    if (!(upper.bottom == lower.top)) throw CompositionError("endomorphism squares are not vertically composable");
    return EndoSquare<C>{upper.top, lower.bottom, ver_compose(lower.left, upper.left), ver_compose(lower.right, upper.right),
                         c.vcomp(lower.square, upper.square)};
  }

  Endomorphism<C> hor_src(const HorEndoMap<C>& h) const { return h.src; }
  Endomorphism<C> hor_tgt(const HorEndoMap<C>& h) const { return h.tgt; }

 private:
  const C* base_;
};

template <DoubleCategory C>
EndDouble<C> build_end(const C& c) {
  return EndDouble<C>(c);
}

// Mnd reuses End's compositions and forgets to it via U.
template <DoubleCategory C>
class MndDouble {
 public:
  explicit MndDouble(const C& base) : end_(base) {}

  const EndDouble<C>& forgetful_target() const { return end_; }

  HorMonadMap<C> hor_id(const MonadData<C>& m) const {
    auto h = end_.hor_id(m.endo);
    return HorMonadMap<C>{m, m, h.arrow, h.phi};
  }

  HorMonadMap<C> hor_compose(const HorMonadMap<C>& g, const HorMonadMap<C>& f) const {
    auto h = end_.hor_compose(forget(g), forget(f));
    return HorMonadMap<C>{f.src, g.tgt, h.arrow, h.phi};
  }

  VertMonadMap<C> ver_id(const MonadData<C>& m) const {
    auto v = end_.ver_id(m.endo);
    return VertMonadMap<C>{m, m, v.arrow, v.square};
  }

  VertMonadMap<C> ver_compose(const VertMonadMap<C>& g, const VertMonadMap<C>& f) const {
    auto v = end_.ver_compose(forget(g), forget(f));
    return VertMonadMap<C>{f.src, g.tgt, v.arrow, v.square};
  }

  EndoSquare<C> underlying(const MonadSquare<C>& s) const { return forget(s); }

 private:
  EndDouble<C> end_;
};

template <DoubleCategory C>
MndDouble<C> build_mnd(const C& c) {
  return MndDouble<C>(c);
}

// ---------------------------------------------------------------------------
// Framed constructions.

template <DoubleCategory C>
void require_framed(const C& c) {
  if constexpr (FramedDouble<C>) {
    require_capability(c, c.capabilities().framed, "framed");
  } else {
    throw CapabilityError("framed");
  }
}

template <FramedDouble C>
Cell<C> alpha_cell(const C& c, const typename C::Ver& u) { return to_empty(c, c.alpha(u)); }
template <FramedDouble C>
Cell<C> beta_cell(const C& c, const typename C::Ver& u) { return to_empty(c, c.beta(u)); }
template <FramedDouble C>
Cell<C> gamma_cell(const C& c, const typename C::Ver& u) { return from_empty(c, c.gamma(u)); }
template <FramedDouble C>
Cell<C> delta_cell(const C& c, const typename C::Ver& u) { return from_empty(c, c.delta(u)); }

// eta_u : 1_X => [companion, conjoint]
template <FramedDouble C>
Cell<C> eta_cell(const C& c, const typename C::Ver& u) {
  return beside(c, delta_cell(c, u), gamma_cell(c, u));
}

// eps_u : [conjoint, companion] => 1_X'
template <FramedDouble C>
Cell<C> epsilon_cell(const C& c, const typename C::Ver& u) {
  return beside(c, beta_cell(c, u), alpha_cell(c, u));
}

// The five companion/conjoint equalities and the two triangle identities.
template <FramedDouble C>
std::vector<EquationCheck> framed_equalities(const C& c, const typename C::Ver& u) {
  require_framed(c);
  auto comp = [&] { return id_cell(c, c.companion(u)); };
  auto conj = [&] { return id_cell(c, c.conjoint(u)); };
  auto alpha_over_delta = [&] { return paste(c, {{delta_cell(c, u)}, {alpha_cell(c, u)}}); };
  auto beta_over_gamma = [&] { return paste(c, {{gamma_cell(c, u)}, {beta_cell(c, u)}}); };
  auto id_u = [&] { return ver_cell(c, u); };
  std::vector<EquationCheck> out;
  out.push_back(compare_pastings<C>(c, "delta over alpha is the identity on u", alpha_over_delta, id_u));
  out.push_back(compare_pastings<C>(c, "gamma over beta is the identity on u", beta_over_gamma, id_u));
  out.push_back(compare_pastings<C>(c, "delta over alpha equals gamma over beta", alpha_over_delta, beta_over_gamma));
  out.push_back(compare_pastings<C>(
      c, "delta beside alpha is the identity on the companion",
      [&] { return beside(c, delta_cell(c, u), alpha_cell(c, u)); }, comp));
  out.push_back(compare_pastings<C>(
      c, "beta beside gamma is the identity on the conjoint",
      [&] { return beside(c, beta_cell(c, u), gamma_cell(c, u)); }, conj));
  out.push_back(compare_pastings<C>(
      c, "conjoint triangle identity",
      [&] { return paste(c, {{conj(), eta_cell(c, u)}, {epsilon_cell(c, u), conj()}}); }, conj));
  out.push_back(compare_pastings<C>(
      c, "companion triangle identity",
      [&] { return paste(c, {{eta_cell(c, u), comp()}, {comp(), epsilon_cell(c, u)}}); }, comp));
  return out;
}

template <DoubleCategory C>
struct BaseChange {
  Endomorphism<C> endo;
  VertEndoMap<C> lift;
};

// Base change of (X',P') along u : X -> X' is [companion, P', conjoint].
template <DoubleCategory C>
BaseChange<C> base_change_endo(const C& c, const typename C::Ver& u, const Endomorphism<C>& target) {
  require_framed(c);
  if constexpr (FramedDouble<C>) {
    if (!(c.ver_tgt(u) == target.object)) throw CompositionError("base change: vertical arrow does not land on the endomorphism");
    auto comp = c.companion(u);
    auto conj = c.conjoint(u);
    auto seg = path_from(c, std::vector{comp, target.arrow, conj});
    Cell<C> row = paste(c, {{alpha_cell(c, u), id_cell(c, target.arrow), beta_cell(c, u)}});
    Cell<C> lift = reframe(c, row, {seg}, {path_of(c, target.arrow)});
    Endomorphism<C> endo{c.ver_src(u), canon(c, seg)};
    return BaseChange<C>{endo, VertEndoMap<C>{endo, target, u, lift.square}};
  }
}

template <DoubleCategory C>
struct MonadBaseChange {
  MonadData<C> monad;
  VertMonadMap<C> lift;
};

template <DoubleCategory C>
MonadBaseChange<C> base_change_monad(const C& c, const typename C::Ver& u, const MonadData<C>& target) {
  auto bc = base_change_endo(c, u, target.endo);
  if constexpr (FramedDouble<C>) {
    auto comp = c.companion(u);
    auto conj = c.conjoint(u);
    const auto& p = target.endo.arrow;
    auto seg = path_from(c, std::vector{comp, p, conj});
    Cell<C> mu = paste(c, {{id_cell(c, comp), id_cell(c, p), epsilon_cell(c, u), id_cell(c, p), id_cell(c, conj)},
                           {id_cell(c, comp), mult_cell(c, target), id_cell(c, conj)}});
    mu = reframe(c, mu, {seg, seg}, {seg});
    Cell<C> eta = paste(c, {{eta_cell(c, u)}, {id_cell(c, comp), unit_cell(c, target), id_cell(c, conj)}});
    eta = reframe(c, eta, {}, {seg});
    MonadData<C> m{bc.endo, mu.square, eta.square};
    return MonadBaseChange<C>{m, VertMonadMap<C>{m, target, u, bc.lift.square}};
  }
}

// (u, ubar) : (X,P) -> (X',P')  becomes  (conjoint u, phi_u) : (X',P') -> (X,P).
template <DoubleCategory C>
HorEndoMap<C> cofold(const C& c, const VertEndoMap<C>& m) {
  require_framed(c);
  if constexpr (FramedDouble<C>) {
    if (auto e = vert_map_shape_error(c, m)) throw CompositionError("cofold: " + *e);
    const auto& u = m.arrow;
    Cell<C> row = paste(c, {{beta_cell(c, u), vert_cell(c, m), gamma_cell(c, u)}});
    return HorEndoMap<C>{m.tgt, m.src, c.conjoint(u), row.square};
  }
}

template <DoubleCategory C>
VertEndoMap<C> uncofold(const C& c, const HorEndoMap<C>& h) {
  require_framed(c);
  if constexpr (FramedDouble<C>) {
    auto u = c.as_conjoint(h.arrow);
    if (!u) throw Error("uncofold: horizontal component is not a conjoint");
    if (auto e = hor_map_shape_error(c, h)) throw CompositionError("uncofold: " + *e);
    const auto& p = h.tgt.arrow;
    const auto& p2 = h.src.arrow;
    Cell<C> pasted = paste(c, {{gamma_cell(c, *u), id_cell(c, p)}, {phi_cell(c, h)}, {id_cell(c, p2), beta_cell(c, *u)}});
    return VertEndoMap<C>{h.tgt, h.src, *u, pasted.square};
  }
}

template <DoubleCategory C>
HorMonadMap<C> cofold(const C& c, const VertMonadMap<C>& m) {
  auto h = cofold(c, forget(m));
  return HorMonadMap<C>{m.tgt, m.src, h.arrow, h.phi};
}

template <DoubleCategory C>
VertMonadMap<C> uncofold(const C& c, const HorMonadMap<C>& h) {
  auto v = uncofold(c, forget(h));
  return VertMonadMap<C>{h.tgt, h.src, v.arrow, v.square};
}

// ---------------------------------------------------------------------------
// Free monads.

template <DoubleCategory C>
void require_free_monads(const C& c) {
  if constexpr (WithFreeMonads<C>) {
    require_capability(c, c.capabilities().free_monads_in_h, "free_monads_in_H");
  } else {
    throw CapabilityError("free_monads_in_H");
  }
}

template <DoubleCategory C>
struct FreeMonadAdjunction {
  Endomorphism<C> endo;
  FreeMonadBundle<C> free;
  MonadData<C> monad;
  // (1_X, iota_P) : (X,P) -> (X,P*)
  VertEndoMap<C> unit;
};

template <DoubleCategory C>
FreeMonadAdjunction<C> free_monad_adjunction(const C& c, const Endomorphism<C>& e) {
  require_free_monads(c);
  require_framed(c);
  if constexpr (WithFreeMonads<C>) {
    FreeMonadBundle<C> b = c.free_monad(e.arrow);
    if (!b.exact || !b.mult) throw TruncationError("free monad on " + std::string(c.describe_hor(e.arrow)) + " was truncated");
    MonadData<C> m{Endomorphism<C>{e.object, b.star}, *b.mult, b.unit};
    VertEndoMap<C> unit{e, m.endo, c.ver_id(e.object), b.iota};
    return FreeMonadAdjunction<C>{e, b, m, unit};
  }
}

template <DoubleCategory C>
Cell<C> iota_cell(const C& c, const FreeMonadAdjunction<C>& a) {
  return make_cell(c, a.free.iota, path_of(c, a.endo.arrow), path_of(c, a.free.star));
}

// nu : [P*, P] => [P*], the pasting of iota_P after P* with mu.
template <DoubleCategory C>
Cell<C> nu_cell(const C& c, const FreeMonadAdjunction<C>& a) {
  return paste(c, {{id_cell(c, a.free.star), iota_cell(c, a)}, {mult_cell(c, a.monad)}});
}

// Horizontal sharp: (F, phi) : (A,M) -> (X,P) with M a monad becomes
// (F, phi#) : (A,M) -> (X,P*).
template <DoubleCategory C>
HorMonadMap<C> horizontal_sharp(const C& c, const FreeMonadAdjunction<C>& a, const MonadData<C>& m, const HorEndoMap<C>& h) {
  if constexpr (WithFreeMonads<C>) {
    if (!(h.src == m.endo) || !(h.tgt == a.endo)) throw CompositionError("horizontal sharp: map does not run from the monad to the free endomorphism");
    auto sq = c.sharp(a.free, m.endo.arrow, m.mult, m.unit, h.arrow, h.phi);
    return HorMonadMap<C>{m, a.monad, h.arrow, sq};
  } else {
    throw CapabilityError("free_monads_in_H");
  }
}

// (u, ubar) : (X,P) -> (X',P') into a monad factors through the unit via
// the vertical monad map (u, ubar#) obtained by cofolding.
template <DoubleCategory C>
VertMonadMap<C> vertical_sharp(const C& c, const FreeMonadAdjunction<C>& a, const MonadData<C>& target, const VertEndoMap<C>& m) {
  if (!(m.src == a.endo) || !(m.tgt == target.endo)) throw CompositionError("vertical sharp: map does not run from the free endomorphism to the monad");
  auto folded = cofold(c, m);
  auto sharp = horizontal_sharp(c, a, target, folded);
  auto back = uncofold(c, HorEndoMap<C>{target.endo, a.monad.endo, sharp.arrow, sharp.phi});
  return VertMonadMap<C>{a.monad, target, back.arrow, back.square};
}

// phi* for (F, phi) : (X,P) -> (Y,Q), the sharp of [[phi], [iota_P, 1_F]].
template <DoubleCategory C>
HorMonadMap<C> hor_star(const C& c, const FreeMonadAdjunction<C>& src, const FreeMonadAdjunction<C>& tgt, const HorEndoMap<C>& h) {
  if (!(h.src == src.endo) || !(h.tgt == tgt.endo)) throw CompositionError("star: map does not connect the free endomorphisms");
  Cell<C> psi = paste(c, {{phi_cell(c, h)}, {iota_cell(c, src), id_cell(c, h.arrow)}});
  HorEndoMap<C> lifted{src.monad.endo, tgt.endo, h.arrow, psi.square};
  return horizontal_sharp(c, tgt, src.monad, lifted);
}

// iota_(F,phi) is the identity square on F.
template <DoubleCategory C>
EndoSquare<C> iota_square(const C& c, const FreeMonadAdjunction<C>& src, const FreeMonadAdjunction<C>& tgt, const HorEndoMap<C>& h) {
  auto star = hor_star(c, src, tgt, h);
  return EndoSquare<C>{h, forget(star), src.unit, tgt.unit, c.id_square_hor(h.arrow)};
}

// alpha# is alpha itself, read as a square between the starred maps.
template <DoubleCategory C>
MonadSquare<C> general_sharp(const C& c, const FreeMonadAdjunction<C>& src, const FreeMonadAdjunction<C>& tgt,
                             const EndoSquare<C>& alpha, const MonadData<C>& bottom_src, const MonadData<C>& bottom_tgt) {
  auto top = hor_star(c, src, tgt, alpha.top);
  auto left = vertical_sharp(c, src, bottom_src, alpha.left);
  auto right = vertical_sharp(c, tgt, bottom_tgt, alpha.right);
  HorMonadMap<C> bottom{bottom_src, bottom_tgt, alpha.bottom.arrow, alpha.bottom.phi};
  return MonadSquare<C>{top, bottom, left, right, alpha.square};
}

// ---------------------------------------------------------------------------
// The equalizer argument for compatibility of alpha# with the starred maps.

template <DoubleCategory C>
struct EqualizerWitness {
  typename C::Hor object;
  Cell<C> theta;  // [E] => [F, Q*]
  Cell<C> lambda;  // [F] => [E]
  Cell<C> rho;  // [E, Q] => [E]
  std::optional<typename C::Square> theta_inverse;
  std::optional<typename C::Square> algebra;  // copair (lambda, rho) : F + QE => E
  std::vector<EquationCheck> checks;
};

template <DoubleCategory C>
struct PipelineInput {
  FreeMonadAdjunction<C> src;  // on (X,P)
  FreeMonadAdjunction<C> tgt;  // on (Y,Q)
  MonadData<C> bottom_src;  // (X',P')
  MonadData<C> bottom_tgt;  // (Y',Q')
  EndoSquare<C> alpha;  // (F,phi) over (F',phi') with verticals (u,ubar), (v,vbar)
};

template <DoubleCategory C>
struct PipelineCells {
  HorMonadMap<C> phi_star;
  VertMonadMap<C> u_sharp;
  VertMonadMap<C> v_sharp;
};

template <DoubleCategory C>
PipelineCells<C> pipeline_cells(const C& c, const PipelineInput<C>& in) {
  return PipelineCells<C>{hor_star(c, in.src, in.tgt, in.alpha.top), vertical_sharp(c, in.src, in.bottom_src, in.alpha.left),
                          vertical_sharp(c, in.tgt, in.bottom_tgt, in.alpha.right)};
}

template <DoubleCategory C>
EqualizerWitness<C> equalizer_witness(const C& c, const PipelineInput<C>& in, const PipelineCells<C>& pc) {
  std::optional<EqualizerWitness<C>> out;
  if constexpr (WithC1Equalizers<C> && WithLocalCoproducts<C>) {
    require_capability(c, c.capabilities().c1_equalizers, "c1_equalizers");
    require_capability(c, c.capabilities().local_coproducts, "local_coproducts");
    const auto& f = in.alpha.top.arrow;
    const auto& q = in.tgt.endo.arrow;
    const auto& qstar = in.tgt.free.star;
    HorEndoMap<C> phi_star_endo = forget(pc.phi_star);
    auto phistar = [&] { return phi_cell(c, phi_star_endo); };
    auto alpha = [&] { return square_cell(c, in.alpha); };
    auto usharp = [&] { return vert_cell(c, forget(pc.u_sharp)); };
    auto vsharp = [&] { return vert_cell(c, forget(pc.v_sharp)); };
    auto phi2 = [&] { return phi_cell(c, in.alpha.bottom); };
    Cell<C> lhs = paste(c, {{phistar()}, {usharp(), alpha()}});
    Cell<C> rhs = paste(c, {{alpha(), vsharp()}, {phi2()}});
    if (!(lhs.top == rhs.top) || !(lhs.bottom == rhs.bottom) || !(c.left(lhs.square) == c.left(rhs.square)) ||
        !(c.right(lhs.square) == c.right(rhs.square))) {
      throw CompositionError("equalizer: the two pastings are not parallel");
    }
    C1Equalizer<C> eq = c.equalizer(lhs.square, rhs.square);
    if (!is_globular(c, eq.inclusion)) throw CompositionError("equalizer: inclusion is not globular");
    auto fq = path_from(c, std::vector{f, qstar});
    Cell<C> theta = make_cell(c, eq.inclusion, path_of(c, eq.object), fq);
    std::vector<EquationCheck> checks;
    checks.push_back(compare_pastings<C>(
        c, "indhyp", [&] { return paste(c, {{theta}, {phistar()}, {usharp(), alpha()}}); },
        [&] { return paste(c, {{theta}, {alpha(), vsharp()}, {phi2()}}); }));

    Cell<C> eta_f = paste(c, {{id_cell(c, f), unit_cell(c, in.tgt.monad)}});
    Cell<C> nu_theta = paste(c, {{theta, id_cell(c, q)}, {id_cell(c, f), nu_cell(c, in.tgt)}});
    checks.push_back(compare_pastings<C>(
        c, "Id", [&] { return paste(c, {{eta_f}, {phistar()}, {usharp(), alpha()}}); },
        [&] { return paste(c, {{eta_f}, {alpha(), vsharp()}, {phi2()}}); }));
    checks.push_back(compare_pastings<C>(
        c, "Q+", [&] { return paste(c, {{nu_theta}, {phistar()}, {usharp(), alpha()}}); },
        [&] { return paste(c, {{nu_theta}, {alpha(), vsharp()}, {phi2()}}); }));

    auto lambda_sq = c.factor_through(eq.inclusion, eta_f.square);
    auto rho_sq = c.factor_through(eq.inclusion, nu_theta.square);
    checks.push_back({"lambda factors through the equalizer", lambda_sq.has_value(),
                      lambda_sq ? "" : "eta_{Q*}F does not land in E: " + std::string(c.describe(eta_f.square))});
    checks.push_back({"rho factors through the equalizer", rho_sq.has_value(),
                      rho_sq ? "" : "nu_{Q*}F . Q theta does not land in E: " + std::string(c.describe(nu_theta.square))});
    auto e_path = path_of(c, eq.object);
    Cell<C> lambda = lambda_sq ? make_cell(c, *lambda_sq, path_of(c, f), e_path) : eta_f;
    Cell<C> rho = rho_sq ? make_cell(c, *rho_sq, path_from(c, std::vector{eq.object, q}), e_path) : nu_theta;

    std::optional<typename C::Square> algebra;
    if (lambda_sq && rho_sq) {
      auto cp = c.coproduct(f, c.hor_compose(q, eq.object));
      algebra = c.copair(cp, *lambda_sq, *rho_sq);
      bool ok = c.vcomp(*algebra, cp.inl) == *lambda_sq && c.vcomp(*algebra, cp.inr) == *rho_sq;
      checks.push_back({"copair restricts to lambda and rho", ok, ok ? "" : c.describe(*algebra)});
    }

    auto inverse = c.invert_globular(eq.inclusion);
    checks.push_back({"theta is an isomorphism", inverse.has_value(),
                      inverse ? "" : "equalizer inclusion has no inverse: " + std::string(c.describe(eq.inclusion))});
    if (inverse && lambda_sq && rho_sq) {
      // theta^{-1} is then the algebra map out of the initial algebra Q*F.
      Cell<C> inv = make_cell(c, *inverse, fq, e_path);
      checks.push_back(compare_pastings<C>(
          c, "theta inverse preserves the unit", [&] { return above(c, eta_f, inv); }, [&] { return lambda; }));
      checks.push_back(compare_pastings<C>(
          c, "theta inverse preserves the action",
          [&] { return paste(c, {{id_cell(c, f), nu_cell(c, in.tgt)}, {inv}}); },
          [&] { return paste(c, {{inv, id_cell(c, q)}, {rho}}); }));
    }
    out = EqualizerWitness<C>{eq.object, theta, lambda, rho, inverse, algebra, checks};
  } else {
    throw CapabilityError("c1_equalizers");
  }
  return *out;
}

// Every displayed equation of the construction, evaluated on the given cells.
template <DoubleCategory C>
std::vector<EquationCheck> theorem_pipeline(const C& c, const PipelineInput<C>& in) {
  std::vector<EquationCheck> out;
  auto hyp = endo_square_condition(c, in.alpha);
  for (auto& h : hyp) h.name = "hypothesisalpha: " + h.name;
  out.insert(out.end(), hyp.begin(), hyp.end());
  if (!all_hold(hyp)) return out;

  PipelineCells<C> pc = pipeline_cells(c, in);
  const auto& f = in.alpha.top.arrow;
  auto phistar = [&] { return phi_cell(c, forget(pc.phi_star)); };
  auto alpha = [&] { return square_cell(c, in.alpha); };
  auto usharp = [&] { return vert_cell(c, forget(pc.u_sharp)); };
  auto vsharp = [&] { return vert_cell(c, forget(pc.v_sharp)); };
  auto phi2 = [&] { return phi_cell(c, in.alpha.bottom); };

  auto transpose = [&](const std::string& tag, const FreeMonadAdjunction<C>& a, const MonadData<C>& target,
                       const VertEndoMap<C>& m, const VertMonadMap<C>& sharp) {
    auto sq = [&] { return vert_cell(c, forget(sharp)); };
    out.push_back(compare_pastings<C>(
        c, "transposefirst (" + tag + ")", [&] { return paste(c, {{unit_cell(c, a.monad)}, {sq()}}); },
        [&] { return paste(c, {{ver_cell(c, m.arrow)}, {unit_cell(c, target)}}); }));
    out.push_back(compare_pastings<C>(
        c, "transposesecond (" + tag + ")", [&] { return paste(c, {{nu_cell(c, a)}, {sq()}}); },
        [&] { return paste(c, {{sq(), vert_cell(c, m)}, {mult_cell(c, target)}}); }));
    out.push_back(compare_pastings<C>(
        c, "factorization through the unit (" + tag + ")", [&] { return paste(c, {{iota_cell(c, a)}, {sq()}}); },
        [&] { return vert_cell(c, m); }));
    for (auto& law : vert_monad_map_laws(c, sharp)) {
      law.name += " (" + tag + ")";
      out.push_back(law);
    }
  };
  transpose("u", in.src, in.bottom_src, in.alpha.left, pc.u_sharp);
  transpose("v", in.tgt, in.bottom_tgt, in.alpha.right, pc.v_sharp);

  const auto& h = in.alpha.top;
  out.push_back(compare_pastings<C>(
      c, "phistar", [&] { return paste(c, {{phi_cell(c, h)}, {iota_cell(c, in.src), id_cell(c, f)}}); },
      [&] { return paste(c, {{id_cell(c, f), iota_cell(c, in.tgt)}, {phistar()}}); }));
  out.push_back(compare_pastings<C>(
      c, "phistarfirst", [&] { return paste(c, {{id_cell(c, f), unit_cell(c, in.tgt.monad)}, {phistar()}}); },
      [&] { return paste(c, {{unit_cell(c, in.src.monad), id_cell(c, f)}}); }));
  out.push_back(compare_pastings<C>(
      c, "phistarsecond", [&] { return paste(c, {{id_cell(c, f), nu_cell(c, in.tgt)}, {phistar()}}); },
      [&] {
        return paste(c, {{phistar(), id_cell(c, in.tgt.endo.arrow)},
                         {id_cell(c, in.src.free.star), phi_cell(c, h)},
                         {nu_cell(c, in.src), id_cell(c, f)}});
      }));
  for (auto& law : hor_monad_map_laws(c, pc.phi_star)) out.push_back(law);

  EndoSquare<C> iota_sq = iota_square(c, in.src, in.tgt, h);
  out.push_back(compare_pastings<C>(
      c, "previous", [&] { return paste(c, {{phi_cell(c, h)}, {iota_cell(c, in.src), square_cell(c, iota_sq)}}); },
      [&] { return paste(c, {{square_cell(c, iota_sq), iota_cell(c, in.tgt)}, {phistar()}}); }));
  MonadSquare<C> sharp = general_sharp(c, in.src, in.tgt, in.alpha, in.bottom_src, in.bottom_tgt);
  out.push_back(compare_pastings<C>(
      c, "unitaxiom", [&] { return square_cell(c, in.alpha); },
      [&] { return paste(c, {{square_cell(c, iota_sq)}, {square_cell(c, forget(sharp))}}); }));
  out.push_back(compare_pastings<C>(
      c, "compatibilityfinal", [&] { return paste(c, {{phistar()}, {usharp(), alpha()}}); },
      [&] { return paste(c, {{alpha(), vsharp()}, {phi2()}}); }));

  EqualizerWitness<C> w = equalizer_witness(c, in, pc);
  out.insert(out.end(), w.checks.begin(), w.checks.end());
  return out;
}

}  // namespace dcmonad
