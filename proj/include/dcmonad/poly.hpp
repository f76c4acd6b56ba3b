#pragma once

// The double category of polynomials over finite sets, with cartesian squares.
//
//   X <-sigma- slots -theta-> ops -tau-> Y
//
// Composite ops are an outer op with one inner op per slot; the symbolic
// associator and unitors work directly on that decomposition.

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dcmonad/doublecat.hpp"
#include "dcmonad/finset.hpp"
#include "dcmonad/mnd.hpp"

namespace dcmonad {

struct Polynomial {
  FinSet src;
  FinSet tgt;
  FinSet slots;
  FinSet ops;
  FinFun sigma;
  FinFun theta;
  FinFun tau;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  // Slots of op b in slot order.
  std::vector<std::size_t> slots_of(std::size_t b) const { return fiber_indices(theta, b); }
  std::size_t arity(std::size_t b) const { return slots_of(b).size(); }
};

Polynomial make_polynomial(FinFun sigma, FinFun theta, FinFun tau);
Polynomial id_poly(const FinSet& x);

// op name -> (input types, output type)
Polynomial poly_from_ops(const FinSet& x, const FinSet& y,
                         const std::vector<std::pair<std::string, std::pair<std::vector<std::string>, std::string>>>& ops);

struct PolySquare {
  Polynomial top;
  Polynomial bottom;
  FinFun u;
  FinFun v;
  FinFun phi;  // ops -> ops'
  FinFun phibar;  // slots -> slots'

  friend bool operator==(const PolySquare&, const PolySquare&) = default;
};

// Q after P with its decomposition.
struct PolyComposite {
  Polynomial poly;
  std::vector<std::size_t> op_outer;  // Q op
  std::vector<std::vector<std::size_t>> op_inner;  // P op per slot of the Q op, in slot order
  std::vector<std::size_t> slot_op;  // composite op of each slot
  std::vector<std::size_t> slot_outer;  // Q slot
  std::vector<std::size_t> slot_inner;  // P slot
  std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> op_index;
  std::map<std::array<std::size_t, 3>, std::size_t> slot_index;  // (op, Q slot, P slot)

  std::optional<std::size_t> find_op(std::size_t outer, const std::vector<std::size_t>& inner) const;
  std::size_t find_slot(std::size_t op, std::size_t outer, std::size_t inner) const;
};

PolyComposite compose_polys_detailed(const Polynomial& q, const Polynomial& p);
Polynomial compose_polys(const Polynomial& q, const Polynomial& p);

// Trees of profile Q up to a depth bound.
struct FreeTrees {
  Polynomial base;
  std::size_t max_depth = 0;
  bool exact = false;
  struct Node {
    bool hole = false;
    std::size_t label = 0;  // output type for a hole, op of Q otherwise
    std::vector<std::size_t> children;  // tree indices, one per slot of the op
    std::size_t output = 0;
    std::size_t depth = 0;
    std::size_t leaves = 0;
  };
  std::vector<Node> trees;
  std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> node_index;  // (op, children)
  std::vector<std::size_t> hole_index;  // per type
  Polynomial star;
  std::vector<std::size_t> leaf_offset;  // first star slot of each tree

  // Substitutes subs[k] for the k-th leaf; nullopt if the result is not in the set.
  std::optional<std::size_t> graft(std::size_t tree, const std::vector<std::size_t>& subs) const;
  std::optional<std::size_t> find_node(std::size_t op, const std::vector<std::size_t>& children) const;
  std::string tree_name(std::size_t t) const;
};

class PolyDouble {
 public:
  using Object = FinSet;
  using Hor = Polynomial;
  using Ver = FinFun;
  using Square = PolySquare;
  using FreeData = std::shared_ptr<const FreeTrees>;

  explicit PolyDouble(std::size_t free_max_depth = 8) : free_max_depth_(free_max_depth) {}

  std::string name() const { return "poly"; }
  Capabilities capabilities() const { return {true, true, true, true, true}; }

  Polynomial hor_id(const FinSet& x) const { return id_poly(x); }
  Polynomial hor_compose(const Polynomial& g, const Polynomial& f) const { return compose_polys(g, f); }
  const FinSet& hor_src(const Polynomial& f) const { return f.src; }
  const FinSet& hor_tgt(const Polynomial& f) const { return f.tgt; }

  FinFun ver_id(const FinSet& x) const { return FinFun::identity(x); }
  FinFun ver_compose(const FinFun& g, const FinFun& f) const { return compose_fun(g, f); }
  const FinSet& ver_src(const FinFun& u) const { return u.dom(); }
  const FinSet& ver_tgt(const FinFun& u) const { return u.cod(); }

  PolySquare id_square_ver(const FinFun& u) const;
  PolySquare id_square_hor(const Polynomial& f) const;
  PolySquare hcomp(const PolySquare& b, const PolySquare& a) const;
  PolySquare vcomp(const PolySquare& lower, const PolySquare& upper) const;
  const Polynomial& top(const PolySquare& s) const { return s.top; }
  const Polynomial& bottom(const PolySquare& s) const { return s.bottom; }
  const FinFun& left(const PolySquare& s) const { return s.u; }
  const FinFun& right(const PolySquare& s) const { return s.v; }

  PolySquare associator(const Polynomial& h, const Polynomial& g, const Polynomial& f) const;
  PolySquare left_unitor(const Polynomial& f) const;
  PolySquare right_unitor(const Polynomial& f) const;
  std::optional<PolySquare> invert_globular(const PolySquare& s) const;
  // Includes the central pullback condition.
  std::optional<std::string> check_square(const PolySquare& s) const;

  std::string describe(const PolySquare& s) const;
  std::string describe_hor(const Polynomial& f) const;
  std::string describe_ver(const FinFun& u) const { return u.to_string(); }

  Polynomial companion(const FinFun& u) const;
  Polynomial conjoint(const FinFun& u) const;
  PolySquare alpha(const FinFun& u) const;
  PolySquare beta(const FinFun& u) const;
  PolySquare gamma(const FinFun& u) const;
  PolySquare delta(const FinFun& u) const;
  std::optional<FinFun> as_conjoint(const Polynomial& f) const;

  HorCoproduct<PolyDouble> coproduct(const Polynomial& f, const Polynomial& g) const;
  PolySquare copair(const HorCoproduct<PolyDouble>& cp, const PolySquare& s, const PolySquare& t) const;

  C1Equalizer<PolyDouble> equalizer(const PolySquare& s, const PolySquare& t) const;
  std::optional<PolySquare> factor_through(const PolySquare& inclusion, const PolySquare& s) const;

  FreeMonadBundle<PolyDouble> free_monad(const Polynomial& q) const;
  PolySquare sharp(const FreeMonadBundle<PolyDouble>& b, const Polynomial& m, const PolySquare& mu, const PolySquare& eta,
                   const Polynomial& f, const PolySquare& phi) const;

  void enumerate_squares(const Polynomial& top, const Polynomial& bottom, const FinFun& u, const FinFun& v,
                         const std::function<bool(const PolySquare&)>& visit) const;
  void enumerate_globular_isos(const Polynomial& f, const Polynomial& g,
                               const std::function<bool(const PolySquare&)>& visit) const;

 private:
  std::size_t free_max_depth_;
};

static_assert(DoubleCategory<PolyDouble>);
static_assert(FramedDouble<PolyDouble>);
static_assert(WithLocalCoproducts<PolyDouble>);
static_assert(WithC1Equalizers<PolyDouble>);
static_assert(WithFreeMonads<PolyDouble>);
static_assert(WithEnumeration<PolyDouble>);

PolySquare make_poly_square(const Polynomial& top, const Polynomial& bottom, const FinFun& u, const FinFun& v,
                            const FinFun& phi, const FinFun& phibar);

// Sigma_tau Pi_theta Delta_sigma applied to a slice over P.src. Each element
// records its op and, per slot of that op, the chosen element of x.
struct PolyEvaluation {
  SliceObject slice;
  std::vector<std::size_t> op;
  std::vector<std::vector<std::size_t>> choice;
};

PolyEvaluation evaluate_poly_detailed(const Polynomial& p, const SliceObject& x);
SliceObject evaluate_poly(const Polynomial& p, const SliceObject& x);

// The regrouping bijection evaluate(Q after P, x) -> evaluate(Q, evaluate(P, x)),
// checked to be bijective and to commute with the projections.
std::optional<FinFun> composition_bijection(const Polynomial& q, const Polynomial& p, const SliceObject& x);

using PolyMonad = MonadData<PolyDouble>;

struct FreePolyResult {
  std::shared_ptr<const FreeTrees> data;
  FreeMonadBundle<PolyDouble> bundle;
};

// Throws Error when max_depth is zero.
FreePolyResult free_poly_monad(const Polynomial& q, std::size_t max_depth);
PolyMonad free_poly_monad_data(const FreePolyResult& r);

// Grafting laws checked tree by tree; usable on truncated results.
std::vector<EquationCheck> free_poly_pointwise_laws(const FreeTrees& ft);

PolySquare sharp_lift_poly(const PolyMonad& monad, const HorEndoMap<PolyDouble>& endo_map, const FreePolyResult& free);

// nu : Q after Q* => Q*, grafting under a root op.
PolySquare nu_square(const FreePolyResult& free);

// A polynomial monad with only nullary and unary ops: a category on Y (the
// unary ops, slot type to output) acting on a family of constants.
// comp(f, g) is "f then g" on unary ops; act(f, c) applies f to constant c.
PolyMonad make_unary_poly_monad(const FinSet& y, const std::vector<std::pair<std::string, std::pair<std::string, std::string>>>& unary,
                                const std::vector<std::string>& identities,
                                const std::function<std::string(const std::string&, const std::string&)>& comp,
                                const std::vector<std::pair<std::string, std::string>>& constants,
                                const std::function<std::string(const std::string&, const std::string&)>& act);

// Every polynomial monad on y whose ops have arity at most one, with at most
// max_unary unary ops and max_constants constants, listed once per relabeling class.
void enumerate_unary_poly_monads(const FinSet& y, std::size_t max_unary, std::size_t max_constants,
                                 const std::function<bool(const PolyMonad&)>& visit);

Polynomial random_poly(std::mt19937_64& rng, const FinSet& x, const FinSet& y, std::size_t max_ops, std::size_t max_arity,
                       const std::string& prefix = "b");
std::optional<PolySquare> random_poly_square_over(std::mt19937_64& rng, const Polynomial& top, const FinFun& u, const FinFun& v,
                                                  std::size_t extra_ops, const std::string& prefix = "s");

std::string describe_poly_ops(const Polynomial& p);

}  // namespace dcmonad
