#pragma once

// The double category of spans of finite sets.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dcmonad/doublecat.hpp"
#include "dcmonad/finset.hpp"
#include "dcmonad/mnd.hpp"

namespace dcmonad {

// X <-left- apex -right-> Y
struct Span {
  FinSet src;
  FinSet tgt;
  FinSet apex;
  FinFun left;
  FinFun right;

  friend bool operator==(const Span&, const Span&) = default;
};

Span make_span(FinFun left, FinFun right);

struct SpanSquare {
  Span top;
  Span bottom;
  FinFun u;
  FinFun v;
  FinFun mid;

  friend bool operator==(const SpanSquare&, const SpanSquare&) = default;
};

// A span X -> Y, then its composite with g : Y -> Z, remembering the projections.
struct SpanComposite {
  Span span;
  FinFun first;  // apex -> f.apex
  FinFun second;  // apex -> g.apex
};

SpanComposite compose_spans_detailed(const Span& g, const Span& f);
Span compose_spans(const Span& g, const Span& f);
Span id_span(const FinSet& x);

struct Graph {
  FinSet nodes;
  Span edges;
};

Graph make_graph(const FinSet& nodes, const std::vector<std::string>& edge_names,
                 const std::vector<std::pair<std::string, std::string>>& ends);

// Paths of a graph up to a length bound, with concatenation where it stays in bounds.
struct FreeCategory {
  Graph graph;
  std::size_t max_len = 0;
  bool exact = false;
  std::vector<std::vector<std::size_t>> paths;  // edge indices, diagrammatic order
  FinSet morphisms;
  FinFun src;
  FinFun tgt;
  // Indexed by the apex of hor_compose(star, star); nullopt where the
  // concatenation is longer than max_len.
  std::vector<std::optional<std::size_t>> mult;

  std::optional<std::size_t> find_path(const std::vector<std::size_t>& edges) const;
};

class SpanDouble {
 public:
  using Object = FinSet;
  using Hor = Span;
  using Ver = FinFun;
  using Square = SpanSquare;
  using FreeData = std::shared_ptr<const FreeCategory>;

  // Bounds used by free_monad when called through the generic interface.
  explicit SpanDouble(std::size_t free_max_len = 16) : free_max_len_(free_max_len) {}

  std::string name() const { return "span"; }
  Capabilities capabilities() const { return {true, true, true, true, true}; }

  Span hor_id(const FinSet& x) const { return id_span(x); }
  Span hor_compose(const Span& g, const Span& f) const { return compose_spans(g, f); }
  const FinSet& hor_src(const Span& f) const { return f.src; }
  const FinSet& hor_tgt(const Span& f) const { return f.tgt; }

  FinFun ver_id(const FinSet& x) const { return FinFun::identity(x); }
  FinFun ver_compose(const FinFun& g, const FinFun& f) const { return compose_fun(g, f); }
  const FinSet& ver_src(const FinFun& u) const { return u.dom(); }
  const FinSet& ver_tgt(const FinFun& u) const { return u.cod(); }

  SpanSquare id_square_ver(const FinFun& u) const;
  SpanSquare id_square_hor(const Span& f) const;
  SpanSquare hcomp(const SpanSquare& b, const SpanSquare& a) const;
  SpanSquare vcomp(const SpanSquare& lower, const SpanSquare& upper) const;
  const Span& top(const SpanSquare& s) const { return s.top; }
  const Span& bottom(const SpanSquare& s) const { return s.bottom; }
  const FinFun& left(const SpanSquare& s) const { return s.u; }
  const FinFun& right(const SpanSquare& s) const { return s.v; }

  SpanSquare associator(const Span& h, const Span& g, const Span& f) const;
  SpanSquare left_unitor(const Span& f) const;
  SpanSquare right_unitor(const Span& f) const;
  std::optional<SpanSquare> invert_globular(const SpanSquare& s) const;
  std::optional<std::string> check_square(const SpanSquare& s) const;

  std::string describe(const SpanSquare& s) const;
  std::string describe_hor(const Span& f) const;
  std::string describe_ver(const FinFun& u) const { return u.to_string(); }

  // framed
  Span companion(const FinFun& u) const;
  Span conjoint(const FinFun& u) const;
  SpanSquare alpha(const FinFun& u) const;
  SpanSquare beta(const FinFun& u) const;
  SpanSquare gamma(const FinFun& u) const;
  SpanSquare delta(const FinFun& u) const;
  std::optional<FinFun> as_conjoint(const Span& f) const;

  // local coproducts
  HorCoproduct<SpanDouble> coproduct(const Span& f, const Span& g) const;
  SpanSquare copair(const HorCoproduct<SpanDouble>& cp, const SpanSquare& s, const SpanSquare& t) const;

  // equalizers of parallel squares
  C1Equalizer<SpanDouble> equalizer(const SpanSquare& s, const SpanSquare& t) const;
  std::optional<SpanSquare> factor_through(const SpanSquare& inclusion, const SpanSquare& s) const;

  // free monads
  FreeMonadBundle<SpanDouble> free_monad(const Span& p) const;
  SpanSquare sharp(const FreeMonadBundle<SpanDouble>& b, const Span& m, const SpanSquare& mu, const SpanSquare& eta,
                   const Span& f, const SpanSquare& phi) const;

  // enumeration
  void enumerate_squares(const Span& top, const Span& bottom, const FinFun& u, const FinFun& v,
                         const std::function<bool(const SpanSquare&)>& visit) const;
  void enumerate_globular_isos(const Span& f, const Span& g, const std::function<bool(const SpanSquare&)>& visit) const;

 private:
  std::size_t free_max_len_;
};

static_assert(DoubleCategory<SpanDouble>);
static_assert(FramedDouble<SpanDouble>);
static_assert(WithLocalCoproducts<SpanDouble>);
static_assert(WithC1Equalizers<SpanDouble>);
static_assert(WithFreeMonads<SpanDouble>);
static_assert(WithEnumeration<SpanDouble>);

// Throws CompositionError when the data does not form a square.
SpanSquare make_span_square(const Span& top, const Span& bottom, const FinFun& u, const FinFun& v, const FinFun& mid);

using FinCategory = MonadData<SpanDouble>;

// Throws Error when max_len is zero.
FreeCategory free_category_data(const Graph& g, std::size_t max_len);

struct FreeCategoryResult {
  std::shared_ptr<const FreeCategory> data;
  FreeMonadBundle<SpanDouble> bundle;
};

FreeCategoryResult free_category(const Graph& g, std::size_t max_len);

// The category structure of an exact free category. Throws TruncationError otherwise.
FinCategory free_category_monad(const FreeCategoryResult& r);

// Pointwise associativity and unit checks on a possibly truncated free
// category; each failure names the offending paths.
std::vector<EquationCheck> free_category_pointwise_laws(const FreeCategory& fc);

std::string path_name(const Graph& g, const std::vector<std::size_t>& edges, const std::string& node);

// phi# for an exact free category; see SpanDouble::sharp.
SpanSquare sharp_lift_span(const FinCategory& monad, const HorEndoMap<SpanDouble>& endo_map, const FreeCategoryResult& free);

// A category given by composition and identity tables over a graph.
// comp maps composable pairs (f, g), f then g, to their composite.
FinCategory make_category(const Graph& g, const std::vector<std::string>& identities,
                          const std::function<std::string(const std::string&, const std::string&)>& comp);

// Every monad (category) on `objects` whose morphism set is {m0, ..., m(n-1)}
// for some n <= max_morphisms. With up_to_relabeling, structures that differ
// only by a renaming of morphisms are listed once.
void enumerate_categories(const FinSet& objects, std::size_t max_morphisms,
                          const std::function<bool(const FinCategory&)>& visit, bool up_to_relabeling = false);

// Brute-force count of (span, mu, eta) triples on `objects` with apex of size
// exactly n passing the generic monad laws. Independent of enumerate_categories.
std::size_t brute_force_monad_count(const FinSet& objects, std::size_t n);

// Random cells for property tests.
FinSet random_set(std::mt19937_64& rng, std::size_t max_size, const std::string& prefix, std::size_t min_size = 0);
FinFun random_fun(std::mt19937_64& rng, const FinSet& dom, const FinSet& cod);
Span random_span(std::mt19937_64& rng, const FinSet& x, const FinSet& y, std::size_t max_apex, const std::string& prefix = "e");
// A random square with the given top and verticals, if any bottom apex map exists.
std::optional<SpanSquare> random_square_over(std::mt19937_64& rng, const Span& top, const FinFun& u, const FinFun& v,
                                             std::size_t max_apex, const std::string& prefix = "s");

std::string describe_category(const FinCategory& c);

}  // namespace dcmonad
