#pragma once

// Pseudo double categories as C++ concepts, plus a pasting engine for
// rectangular grids of squares.
//
// Horizontal composition is only associative up to the instance's coherence
// squares. Pasting therefore works on cells that remember the list of
// horizontal atoms along their top and bottom edges. A cell's square always
// has the canonical left-nested composite of those atoms as its boundary, so
// two pastings of the same atoms are comparable by strict equality.

#include <concepts>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dcmonad/error.hpp"

namespace dcmonad {

struct Capabilities {
  bool framed = false;
  bool local_coproducts = false;
  bool c1_equalizers = false;
  bool free_monads_in_h = false;
  bool enumeration = false;
};

// hor_compose(g, f) is "f then g"; hcomp(beta, alpha) puts alpha on the left;
// vcomp(lower, upper) puts upper on top.
template <class C>
concept DoubleCategory = requires(const C& c, const typename C::Object& x, const typename C::Hor& f,
                                  const typename C::Ver& u, const typename C::Square& s) {
  { c.name() } -> std::convertible_to<std::string>;
  { c.capabilities() } -> std::same_as<Capabilities>;
  { c.hor_id(x) } -> std::same_as<typename C::Hor>;
  { c.hor_compose(f, f) } -> std::same_as<typename C::Hor>;
  { c.hor_src(f) } -> std::convertible_to<typename C::Object>;
  { c.hor_tgt(f) } -> std::convertible_to<typename C::Object>;
  { c.ver_id(x) } -> std::same_as<typename C::Ver>;
  { c.ver_compose(u, u) } -> std::same_as<typename C::Ver>;
  { c.ver_src(u) } -> std::convertible_to<typename C::Object>;
  { c.ver_tgt(u) } -> std::convertible_to<typename C::Object>;
  { c.id_square_ver(u) } -> std::same_as<typename C::Square>;
  { c.id_square_hor(f) } -> std::same_as<typename C::Square>;
  { c.hcomp(s, s) } -> std::same_as<typename C::Square>;
  { c.vcomp(s, s) } -> std::same_as<typename C::Square>;
  { c.top(s) } -> std::convertible_to<typename C::Hor>;
  { c.bottom(s) } -> std::convertible_to<typename C::Hor>;
  { c.left(s) } -> std::convertible_to<typename C::Ver>;
  { c.right(s) } -> std::convertible_to<typename C::Ver>;
  { c.associator(f, f, f) } -> std::same_as<typename C::Square>;
  { c.left_unitor(f) } -> std::same_as<typename C::Square>;
  { c.right_unitor(f) } -> std::same_as<typename C::Square>;
  { c.invert_globular(s) } -> std::same_as<std::optional<typename C::Square>>;
  { c.check_square(s) } -> std::same_as<std::optional<std::string>>;
  { c.describe(s) } -> std::convertible_to<std::string>;
  { c.describe_hor(f) } -> std::convertible_to<std::string>;
  { c.describe_ver(u) } -> std::convertible_to<std::string>;
  { x == x } -> std::convertible_to<bool>;
  { f == f } -> std::convertible_to<bool>;
  { u == u } -> std::convertible_to<bool>;
  { s == s } -> std::convertible_to<bool>;
};

// Companion and conjoint of every vertical arrow with their four binding squares:
//   alpha(u): companion => id, verticals (u, 1)
//   beta(u):  conjoint  => id, verticals (1, u)
//   gamma(u): id => conjoint,  verticals (u, 1)
//   delta(u): id => companion, verticals (1, u)
template <class C>
concept FramedDouble = DoubleCategory<C> && requires(const C& c, const typename C::Ver& u, const typename C::Hor& f) {
  { c.companion(u) } -> std::same_as<typename C::Hor>;
  { c.conjoint(u) } -> std::same_as<typename C::Hor>;
  { c.alpha(u) } -> std::same_as<typename C::Square>;
  { c.beta(u) } -> std::same_as<typename C::Square>;
  { c.gamma(u) } -> std::same_as<typename C::Square>;
  { c.delta(u) } -> std::same_as<typename C::Square>;
  { c.as_conjoint(f) } -> std::same_as<std::optional<typename C::Ver>>;
};

template <class C>
struct HorCoproduct {
  typename C::Hor sum;
  typename C::Square inl;
  typename C::Square inr;
};

template <class C>
concept WithLocalCoproducts = DoubleCategory<C> && requires(const C& c, const typename C::Hor& f, const typename C::Square& s,
                                                             const HorCoproduct<C>& cp) {
  { c.coproduct(f, f) } -> std::same_as<HorCoproduct<C>>;
  { c.copair(cp, s, s) } -> std::same_as<typename C::Square>;
};

// Equalizer in the category of horizontal arrows and squares.
template <class C>
struct C1Equalizer {
  typename C::Hor object;
  typename C::Square inclusion;
};

template <class C>
concept WithC1Equalizers = DoubleCategory<C> && requires(const C& c, const typename C::Square& s) {
  { c.equalizer(s, s) } -> std::same_as<C1Equalizer<C>>;
  // factor_through(inclusion, s) returns t with vcomp(inclusion, t) == s.
  { c.factor_through(s, s) } -> std::same_as<std::optional<typename C::Square>>;
};

// Free monad on a horizontal endomorphism, computed in the horizontal bicategory.
// `mult` is absent when the construction had to be truncated.
template <class C>
struct FreeMonadBundle {
  typename C::Hor base;
  typename C::Hor star;
  std::optional<typename C::Square> mult;
  typename C::Square unit;
  typename C::Square iota;
  bool exact = false;
  typename C::FreeData data;
};

template <class C>
concept WithFreeMonads = DoubleCategory<C> && requires(const C& c, const typename C::Hor& f, const typename C::Square& s,
                                                        const FreeMonadBundle<C>& b) {
  typename C::FreeData;
  { c.free_monad(f) } -> std::same_as<FreeMonadBundle<C>>;
  // sharp(bundle on (X,P), monad (A,M) given by m, mu, eta, F : A -> X,
  //       phi : [F,P] => [M,F]) returns phi# : [F,P*] => [M,F].
  { c.sharp(b, f, s, s, f, s) } -> std::same_as<typename C::Square>;
};

template <class C>
concept WithEnumeration = DoubleCategory<C> && requires(const C& c, const typename C::Hor& f, const typename C::Ver& u,
                                                         const std::function<bool(const typename C::Square&)>& visit) {
  { c.enumerate_squares(f, f, u, u, visit) };
  { c.enumerate_globular_isos(f, f, visit) };
};

template <DoubleCategory C>
void require_capability(const C& c, bool present, const std::string& capability) {
  (void)c;
  if (!present) throw CapabilityError(capability);
}

template <DoubleCategory C>
bool is_globular(const C& c, const typename C::Square& s) {
  return c.left(s) == c.ver_id(c.hor_src(c.top(s))) && c.right(s) == c.ver_id(c.hor_tgt(c.top(s)));
}

// ---------------------------------------------------------------------------
// Paths of horizontal atoms and cells.

template <DoubleCategory C>
struct HPath {
  typename C::Object src;
  typename C::Object tgt;
  std::vector<typename C::Hor> atoms;

  bool empty() const { return atoms.empty(); }
  friend bool operator==(const HPath& a, const HPath& b) {
    return a.src == b.src && a.tgt == b.tgt && a.atoms == b.atoms;
  }
};

template <DoubleCategory C>
HPath<C> path_of(const C& c, const typename C::Hor& f) {
  return HPath<C>{c.hor_src(f), c.hor_tgt(f), {f}};
}

template <DoubleCategory C>
HPath<C> empty_path(const C&, const typename C::Object& x) {
  return HPath<C>{x, x, {}};
}

template <DoubleCategory C>
HPath<C> path_from(const C& c, const std::vector<typename C::Hor>& atoms) {
  if (atoms.empty()) throw CompositionError("path_from needs at least one atom");
  HPath<C> p{c.hor_src(atoms.front()), c.hor_tgt(atoms.back()), atoms};
  for (std::size_t i = 1; i < atoms.size(); ++i) {
    if (!(c.hor_tgt(atoms[i - 1]) == c.hor_src(atoms[i]))) {
      throw CompositionError("path atoms " + std::to_string(i - 1) + " and " + std::to_string(i) + " are not composable");
    }
  }
  return p;
}

template <DoubleCategory C>
HPath<C> concat(const C& c, const HPath<C>& p, const HPath<C>& q) {
  if (!(p.tgt == q.src)) throw CompositionError("paths are not composable");
  (void)c;
  HPath<C> r{p.src, q.tgt, p.atoms};
  r.atoms.insert(r.atoms.end(), q.atoms.begin(), q.atoms.end());
  return r;
}

// Left-nested composite: [a1..an] -> hor_compose(an, ... hor_compose(a2, a1)).
template <DoubleCategory C>
typename C::Hor canon(const C& c, const HPath<C>& p) {
  if (p.atoms.empty()) return c.hor_id(p.src);
  typename C::Hor h = p.atoms.front();
  for (std::size_t i = 1; i < p.atoms.size(); ++i) h = c.hor_compose(p.atoms[i], h);
  return h;
}

template <DoubleCategory C>
typename C::Square invert_or_throw(const C& c, const typename C::Square& s) {
  auto inv = c.invert_globular(s);
  if (!inv) throw CompositionError("coherence square is not invertible: " + std::string(c.describe(s)));
  return *inv;
}

// Iso hor_compose(canon q, canon p) => canon(p ++ q); nullopt when it is the identity.
template <DoubleCategory C>
std::optional<typename C::Square> regroup(const C& c, const HPath<C>& p, const HPath<C>& q) {
  if (q.atoms.empty()) return c.left_unitor(canon(c, p));
  if (p.atoms.empty()) return c.right_unitor(canon(c, q));
  if (q.atoms.size() == 1) return std::nullopt;
  HPath<C> q_init{q.src, c.hor_src(q.atoms.back()), {q.atoms.begin(), q.atoms.end() - 1}};
  const auto& last = q.atoms.back();
  typename C::Square assoc = c.associator(last, canon(c, q_init), canon(c, p));
  auto inner = regroup(c, p, q_init);
  if (!inner) return assoc;
  return c.vcomp(c.hcomp(c.id_square_hor(last), *inner), assoc);
}

// Iso canon(s1 ++ ... ++ sk) => canon([canon s1, ..., canon sk]).
template <DoubleCategory C>
std::optional<typename C::Square> group_iso(const C& c, const std::vector<HPath<C>>& segments) {
  if (segments.size() <= 1) return std::nullopt;
  HPath<C> flat = segments.front();
  std::optional<typename C::Square> acc;  // canon(flat) => canon(chunks so far)
  std::vector<typename C::Hor> chunks{canon(c, segments.front())};
  for (std::size_t k = 1; k < segments.size(); ++k) {
    const HPath<C>& seg = segments[k];
    typename C::Hor chunk = canon(c, seg);
    HPath<C> chunk_path{seg.src, seg.tgt, {chunk}};
    HPath<C> next = concat(c, flat, seg);
    // canon(next) => hor_compose(canon seg, canon flat)
    std::optional<typename C::Square> split;
    if (auto r = regroup(c, flat, seg)) split = invert_or_throw(c, *r);
    // hor_compose(canon seg, canon flat) => hor_compose(chunk, canon(chunks))
    std::optional<typename C::Square> whisk;
    if (acc) whisk = c.hcomp(c.id_square_hor(chunk), *acc);
    std::optional<typename C::Square> step;
    if (split && whisk) step = c.vcomp(*whisk, *split);
    else if (split) step = split;
    else step = whisk;
    acc = step;
    chunks.push_back(chunk);
    flat = next;
  }
  return acc;
}

template <DoubleCategory C>
struct Cell {
  HPath<C> top;
  HPath<C> bottom;
  typename C::Square square;
};

template <DoubleCategory C>
bool operator==(const Cell<C>& a, const Cell<C>& b) {
  return a.top == b.top && a.bottom == b.bottom && a.square == b.square;
}

template <DoubleCategory C>
Cell<C> make_cell(const C& c, const typename C::Square& s, HPath<C> top, HPath<C> bottom) {
  if (!(c.top(s) == canon(c, top))) throw CompositionError("cell top does not match its path");
  if (!(c.bottom(s) == canon(c, bottom))) throw CompositionError("cell bottom does not match its path");
  if (!(c.ver_src(c.left(s)) == top.src) || !(c.ver_tgt(c.left(s)) == bottom.src) ||
      !(c.ver_src(c.right(s)) == top.tgt) || !(c.ver_tgt(c.right(s)) == bottom.tgt)) {
    throw CompositionError("cell corners do not match its vertical arrows");
  }
  return Cell<C>{std::move(top), std::move(bottom), s};
}

// The square as a cell with single-atom top and bottom.
template <DoubleCategory C>
Cell<C> atom(const C& c, const typename C::Square& s) {
  return Cell<C>{path_of(c, c.top(s)), path_of(c, c.bottom(s)), s};
}

template <DoubleCategory C>
Cell<C> id_cell(const C& c, const typename C::Hor& f) {
  return Cell<C>{path_of(c, f), path_of(c, f), c.id_square_hor(f)};
}

template <DoubleCategory C>
Cell<C> id_cell(const C& c, const HPath<C>& p) {
  return Cell<C>{p, p, c.id_square_hor(canon(c, p))};
}

// Identity square on a vertical arrow, with empty top and bottom.
template <DoubleCategory C>
Cell<C> ver_cell(const C& c, const typename C::Ver& u) {
  return Cell<C>{empty_path(c, c.ver_src(u)), empty_path(c, c.ver_tgt(u)), c.id_square_ver(u)};
}

// Square with empty top (e.g. a unit) and a single bottom atom.
template <DoubleCategory C>
Cell<C> from_empty(const C& c, const typename C::Square& s) {
  return make_cell(c, s, empty_path(c, c.hor_src(c.top(s))), path_of(c, c.bottom(s)));
}

// Square with a single top atom and empty bottom (e.g. a counit).
template <DoubleCategory C>
Cell<C> to_empty(const C& c, const typename C::Square& s) {
  return make_cell(c, s, path_of(c, c.top(s)), empty_path(c, c.hor_src(c.bottom(s))));
}

template <DoubleCategory C>
Cell<C> beside(const C& c, const Cell<C>& a, const Cell<C>& b) {
  if (!(c.right(a.square) == c.left(b.square))) throw CompositionError("adjacent cells disagree on their shared vertical arrow");
  if (!(a.top.tgt == b.top.src) || !(a.bottom.tgt == b.bottom.src)) throw CompositionError("adjacent cells have mismatched corners");
  typename C::Square s = c.hcomp(b.square, a.square);
  if (auto r = regroup(c, a.top, b.top)) s = c.vcomp(s, invert_or_throw(c, *r));
  if (auto r = regroup(c, a.bottom, b.bottom)) s = c.vcomp(*r, s);
  return Cell<C>{concat(c, a.top, b.top), concat(c, a.bottom, b.bottom), s};
}

template <DoubleCategory C>
Cell<C> above(const C& c, const Cell<C>& upper, const Cell<C>& lower) {
  if (!(upper.bottom == lower.top)) throw CompositionError("stacked cells have different shared edges");
  return Cell<C>{upper.top, lower.bottom, c.vcomp(lower.square, upper.square)};
}

template <DoubleCategory C>
using Row = std::vector<Cell<C>>;

// Rows are composed horizontally, then stacked top to bottom.
template <DoubleCategory C>
Cell<C> paste(const C& c, const std::vector<Row<C>>& rows) {
  if (rows.empty()) throw PastingError(0, 0, "empty grid");
  std::optional<Cell<C>> acc;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].empty()) throw PastingError(r, 0, "empty row");
    Cell<C> row = rows[r].front();
    for (std::size_t k = 1; k < rows[r].size(); ++k) {
      try {
        row = beside(c, row, rows[r][k]);
      } catch (const CompositionError& e) {
        throw PastingError(r, k, e.what());
      }
    }
    if (!acc) {
      acc = row;
      continue;
    }
    try {
      acc = above(c, *acc, row);
    } catch (const CompositionError& e) {
      throw PastingError(r, 0, e.what());
    }
  }
  return *acc;
}

// Columns are composed vertically, then placed side by side.
template <DoubleCategory C>
Cell<C> paste_columns(const C& c, const std::vector<std::vector<Cell<C>>>& columns) {
  if (columns.empty()) throw PastingError(0, 0, "empty grid");
  std::optional<Cell<C>> acc;
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if (columns[k].empty()) throw PastingError(0, k, "empty column");
    Cell<C> col = columns[k].front();
    for (std::size_t r = 1; r < columns[k].size(); ++r) {
      try {
        col = above(c, col, columns[k][r]);
      } catch (const CompositionError& e) {
        throw PastingError(r, k, e.what());
      }
    }
    if (!acc) {
      acc = col;
      continue;
    }
    try {
      acc = beside(c, *acc, col);
    } catch (const CompositionError& e) {
      throw PastingError(0, k, e.what());
    }
  }
  return *acc;
}

// Regroups the atoms of a cell: each segment of the old path becomes one atom,
// its canonical composite.
template <DoubleCategory C>
Cell<C> reframe(const C& c, const Cell<C>& cell, const std::vector<HPath<C>>& top_segments,
                const std::vector<HPath<C>>& bottom_segments) {
  auto rebuild = [&](const HPath<C>& path, const std::vector<HPath<C>>& segments, bool is_top) {
    HPath<C> flat{path.src, path.src, {}};
    HPath<C> grouped{path.src, path.src, {}};
    for (const auto& seg : segments) {
      if (seg.atoms.empty()) throw CompositionError("reframe: empty segment");
      flat = concat(c, flat, seg);
      grouped = concat(c, grouped, HPath<C>{seg.src, seg.tgt, {canon(c, seg)}});
    }
    if (!(flat == path)) throw CompositionError(std::string("reframe: ") + (is_top ? "top" : "bottom") + " segments do not cover the path");
    if (segments.empty()) return std::pair{path, std::optional<typename C::Square>{}};
    return std::pair{grouped, group_iso(c, segments)};
  };
  auto [new_top, top_iso] = rebuild(cell.top, top_segments, true);
  auto [new_bottom, bottom_iso] = rebuild(cell.bottom, bottom_segments, false);
  typename C::Square s = cell.square;
  if (top_iso) s = c.vcomp(s, invert_or_throw(c, *top_iso));
  if (bottom_iso) s = c.vcomp(*bottom_iso, s);
  return Cell<C>{new_top, new_bottom, s};
}

template <DoubleCategory C>
std::string describe_path(const C& c, const HPath<C>& p) {
  if (p.atoms.empty()) return "[]";
  std::string out = "[";
  for (std::size_t i = 0; i < p.atoms.size(); ++i) {
    if (i) out += " ; ";
    out += c.describe_hor(p.atoms[i]);
  }
  return out + "]";
}

template <DoubleCategory C>
std::string describe_cell(const C& c, const Cell<C>& cell) {
  return "cell{top=" + describe_path(c, cell.top) + ", bottom=" + describe_path(c, cell.bottom) +
         ", square=" + std::string(c.describe(cell.square)) + "}";
}

// Equality up to invertible globular squares on the horizontal boundaries.
// Needs exhaustive iso enumeration from the instance.
template <WithEnumeration C>
bool squares_equal_mod_coherence(const C& c, const typename C::Square& s1, const typename C::Square& s2) {
  if (!(c.left(s1) == c.left(s2)) || !(c.right(s1) == c.right(s2))) {
    throw Error("squares_equal_mod_coherence: vertical boundaries differ");
  }
  if (s1 == s2) return true;
  bool top_iso = false;
  bool bottom_iso = false;
  bool found = false;
  c.enumerate_globular_isos(c.top(s2), c.top(s1), [&](const typename C::Square& t) {
    top_iso = true;
    typename C::Square conj = c.vcomp(s1, t);
    c.enumerate_globular_isos(c.bottom(s1), c.bottom(s2), [&](const typename C::Square& b) {
      bottom_iso = true;
      if (c.vcomp(b, conj) == s2) found = true;
      return !found;
    });
    return !found;
  });
  if (!found && (!top_iso || !bottom_iso)) {
    throw Error("squares_equal_mod_coherence: horizontal boundaries are not isomorphic");
  }
  return found;
}

}  // namespace dcmonad
