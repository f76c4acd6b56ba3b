#pragma once

// Finite 2-categories and the double category with only identity vertical
// arrows built from one.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dcmonad/doublecat.hpp"
#include "dcmonad/mnd.hpp"
#include "dcmonad/span.hpp"

namespace dcmonad {

// comp1(g, f) is "f then g"; hcomp2(b, a) whiskers a on the left.
template <class K>
concept TwoCategory = requires(const K& k, const typename K::Object& x, const typename K::One& f, const typename K::Two& a) {
  { k.name() } -> std::convertible_to<std::string>;
  { k.id1(x) } -> std::same_as<typename K::One>;
  { k.comp1(f, f) } -> std::same_as<typename K::One>;
  { k.src1(f) } -> std::convertible_to<typename K::Object>;
  { k.tgt1(f) } -> std::convertible_to<typename K::Object>;
  { k.id2(f) } -> std::same_as<typename K::Two>;
  { k.vcomp2(a, a) } -> std::same_as<typename K::Two>;
  { k.hcomp2(a, a) } -> std::same_as<typename K::Two>;
  { k.dom2(a) } -> std::convertible_to<typename K::One>;
  { k.cod2(a) } -> std::convertible_to<typename K::One>;
  { k.associator(f, f, f) } -> std::same_as<typename K::Two>;
  { k.left_unitor(f) } -> std::same_as<typename K::Two>;
  { k.right_unitor(f) } -> std::same_as<typename K::Two>;
  { k.invert2(a) } -> std::same_as<std::optional<typename K::Two>>;
  { k.check2(a) } -> std::same_as<std::optional<std::string>>;
  { k.describe2(a) } -> std::convertible_to<std::string>;
  { k.describe1(f) } -> std::convertible_to<std::string>;
  { x == x } -> std::convertible_to<bool>;
  { f == f } -> std::convertible_to<bool>;
  { a == a } -> std::convertible_to<bool>;
};

// One object, one 1-cell, one 2-cell.
class TerminalTwoCat {
 public:
  struct Cell {
    friend bool operator==(const Cell&, const Cell&) = default;
  };
  using Object = Cell;
  using One = Cell;
  using Two = Cell;

  std::string name() const { return "terminal"; }
  Cell id1(const Cell&) const { return {}; }
  Cell comp1(const Cell&, const Cell&) const { return {}; }
  Cell src1(const Cell&) const { return {}; }
  Cell tgt1(const Cell&) const { return {}; }
  Cell id2(const Cell&) const { return {}; }
  Cell vcomp2(const Cell&, const Cell&) const { return {}; }
  Cell hcomp2(const Cell&, const Cell&) const { return {}; }
  Cell dom2(const Cell&) const { return {}; }
  Cell cod2(const Cell&) const { return {}; }
  Cell associator(const Cell&, const Cell&, const Cell&) const { return {}; }
  Cell left_unitor(const Cell&) const { return {}; }
  Cell right_unitor(const Cell&) const { return {}; }
  std::optional<Cell> invert2(const Cell&) const { return Cell{}; }
  std::optional<std::string> check2(const Cell&) const { return std::nullopt; }
  std::string describe2(const Cell&) const { return "*"; }
  std::string describe1(const Cell&) const { return "*"; }
  void enumerate_cells(const Cell&, const Cell&, const std::function<bool(const Cell&)>& visit) const { visit(Cell{}); }
};

// Spans and globular span squares.
class SpanHorizontal {
 public:
  using Object = FinSet;
  using One = Span;
  using Two = SpanSquare;

  std::string name() const { return "span-horizontal"; }
  Span id1(const FinSet& x) const { return id_span(x); }
  Span comp1(const Span& g, const Span& f) const { return compose_spans(g, f); }
  const FinSet& src1(const Span& f) const { return f.src; }
  const FinSet& tgt1(const Span& f) const { return f.tgt; }
  SpanSquare id2(const Span& f) const { return c_.id_square_hor(f); }
  SpanSquare vcomp2(const SpanSquare& b, const SpanSquare& a) const { return c_.vcomp(b, a); }
  SpanSquare hcomp2(const SpanSquare& b, const SpanSquare& a) const { return c_.hcomp(b, a); }
  const Span& dom2(const SpanSquare& a) const { return a.top; }
  const Span& cod2(const SpanSquare& a) const { return a.bottom; }
  SpanSquare associator(const Span& h, const Span& g, const Span& f) const { return c_.associator(h, g, f); }
  SpanSquare left_unitor(const Span& f) const { return c_.left_unitor(f); }
  SpanSquare right_unitor(const Span& f) const { return c_.right_unitor(f); }
  std::optional<SpanSquare> invert2(const SpanSquare& a) const { return c_.invert_globular(a); }
  std::optional<std::string> check2(const SpanSquare& a) const {
    if (auto e = c_.check_square(a)) return e;
    if (!is_globular(c_, a)) return std::string("2-cell is not globular");
    return std::nullopt;
  }
  std::string describe2(const SpanSquare& a) const { return c_.describe(a); }
  std::string describe1(const Span& f) const { return c_.describe_hor(f); }
  void enumerate_cells(const Span& f, const Span& g, const std::function<bool(const SpanSquare&)>& visit) const {
    c_.enumerate_squares(f, g, FinFun::identity(f.src), FinFun::identity(f.tgt), visit);
  }

 private:
  SpanDouble c_;
};

static_assert(TwoCategory<TerminalTwoCat>);
static_assert(TwoCategory<SpanHorizontal>);

// The double category with K as horizontal 2-category and identity vertical arrows.
template <TwoCategory K>
class TrivialVertical {
 public:
  using Object = typename K::Object;
  using Hor = typename K::One;
  struct Ver {
    Object object;
    friend bool operator==(const Ver&, const Ver&) = default;
  };
  using Square = typename K::Two;

  explicit TrivialVertical(K k = K()) : k_(std::move(k)) {}

  const K& two_category() const { return k_; }
  std::string name() const { return "H(" + std::string(k_.name()) + ")"; }
  Capabilities capabilities() const { return {}; }

  Hor hor_id(const Object& x) const { return k_.id1(x); }
  Hor hor_compose(const Hor& g, const Hor& f) const { return k_.comp1(g, f); }
  Object hor_src(const Hor& f) const { return k_.src1(f); }
  Object hor_tgt(const Hor& f) const { return k_.tgt1(f); }

  Ver ver_id(const Object& x) const { return Ver{x}; }
  Ver ver_compose(const Ver& g, const Ver& f) const {
    if (!(g == f)) throw CompositionError("identity vertical arrows on different objects");
    return f;
  }
  Object ver_src(const Ver& u) const { return u.object; }
  Object ver_tgt(const Ver& u) const { return u.object; }

  Square id_square_ver(const Ver& u) const { return k_.id2(k_.id1(u.object)); }
  Square id_square_hor(const Hor& f) const { return k_.id2(f); }
  Square hcomp(const Square& b, const Square& a) const { return k_.hcomp2(b, a); }
  Square vcomp(const Square& lower, const Square& upper) const { return k_.vcomp2(lower, upper); }
  Hor top(const Square& s) const { return k_.dom2(s); }
  Hor bottom(const Square& s) const { return k_.cod2(s); }
  Ver left(const Square& s) const { return Ver{k_.src1(k_.dom2(s))}; }
  Ver right(const Square& s) const { return Ver{k_.tgt1(k_.dom2(s))}; }

  Square associator(const Hor& h, const Hor& g, const Hor& f) const { return k_.associator(h, g, f); }
  Square left_unitor(const Hor& f) const { return k_.left_unitor(f); }
  Square right_unitor(const Hor& f) const { return k_.right_unitor(f); }
  std::optional<Square> invert_globular(const Square& s) const { return k_.invert2(s); }
  std::optional<std::string> check_square(const Square& s) const { return k_.check2(s); }

  std::string describe(const Square& s) const { return k_.describe2(s); }
  std::string describe_hor(const Hor& f) const { return k_.describe1(f); }
  std::string describe_ver(const Ver&) const { return "1"; }

 private:
  K k_;
};

static_assert(DoubleCategory<TrivialVertical<TerminalTwoCat>>);
static_assert(DoubleCategory<TrivialVertical<SpanHorizontal>>);

// Monad laws written directly with 2-cell operations, without the pasting engine:
//   mu . hcomp2(mu, 1) = mu . hcomp2(1, mu) . associator
//   mu . hcomp2(eta, 1) = left unitor,  mu . hcomp2(1, eta) = right unitor
template <TwoCategory K>
std::vector<EquationCheck> two_monad_laws(const K& k, const typename K::One& t, const typename K::Two& mu,
                                          const typename K::Two& eta) {
  std::vector<EquationCheck> out;
  auto eq = [&](const std::string& name, const std::function<typename K::Two()>& lhs, const std::function<typename K::Two()>& rhs) {
    try {
      auto l = lhs();
      auto r = rhs();
      out.push_back({name, l == r, l == r ? "" : k.describe2(l) + " vs " + k.describe2(r)});
    } catch (const Error& e) {
      out.push_back({name, false, e.what()});
    }
  };
  for (const auto* cell : {&mu, &eta}) {
    if (auto e = k.check2(*cell)) {
      out.push_back({"well formed", false, *e});
      return out;
    }
  }
  auto one = k.id2(t);
  eq("associativity", [&] { return k.vcomp2(mu, k.hcomp2(mu, one)); },
     [&] { return k.vcomp2(mu, k.vcomp2(k.hcomp2(one, mu), k.associator(t, t, t))); });
  eq("left unit", [&] { return k.vcomp2(mu, k.hcomp2(eta, one)); }, [&] { return k.left_unitor(t); });
  eq("right unit", [&] { return k.vcomp2(mu, k.hcomp2(one, eta)); }, [&] { return k.right_unitor(t); });
  return out;
}

// Counts monads on x whose underlying 1-cell is one of `arrows`, by
// enumerating 2-cells. Returns (2-categorical count, double-categorical count
// in TrivialVertical<K>, number of triples where the two verdicts differ).
struct MonadComparison {
  std::size_t two_categorical = 0;
  std::size_t double_categorical = 0;
  std::size_t disagreements = 0;
};

template <TwoCategory K>
MonadComparison compare_monad_notions(const K& k, const typename K::Object& x, const std::vector<typename K::One>& arrows) {
  MonadComparison out;
  TrivialVertical<K> h(k);
  for (const auto& t : arrows) {
    auto tt = k.comp1(t, t);
    k.enumerate_cells(k.id1(x), t, [&](const typename K::Two& eta) {
      k.enumerate_cells(tt, t, [&](const typename K::Two& mu) {
        bool two = all_hold(two_monad_laws(k, t, mu, eta));
        bool dbl = all_hold(monad_laws(h, MonadData<TrivialVertical<K>>{Endomorphism<TrivialVertical<K>>{x, t}, mu, eta}));
        out.two_categorical += two;
        out.double_categorical += dbl;
        out.disagreements += two != dbl;
        return true;
      });
      return true;
    });
  }
  return out;
}

}  // namespace dcmonad
