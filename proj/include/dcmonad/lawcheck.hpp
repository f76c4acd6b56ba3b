#pragma once

// Property-test engine: samplers for random cells, exhaustive enumerators for
// small ones, and named suites that paste both sides of every law and record
// failures with the offending cells.

#include <chrono>
#include <concepts>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "dcmonad/doublecat.hpp"
#include "dcmonad/mnd.hpp"
#include "dcmonad/poly.hpp"
#include "dcmonad/span.hpp"

namespace dcmonad {

struct LawFailure {
  std::string check;
  std::string cells;  // the offending cells
  std::string detail;  // both sides, or the error raised while pasting
};

class LawReport {
 public:
  LawReport(std::string suite, std::uint64_t seed);

  const std::string& suite() const { return suite_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t checks() const { return checks_; }
  const std::vector<LawFailure>& failures() const { return failures_; }
  const std::vector<std::string>& notes() const { return notes_; }
  bool partial() const { return partial_; }
  double elapsed_seconds() const { return elapsed_; }
  bool passed() const { return failures_.empty(); }

  void expect(const std::string& check, bool holds, const std::function<std::string()>& cells, const std::string& detail = "");
  void add(const std::vector<EquationCheck>& checks, const std::function<std::string()>& cells);
  void fail(const std::string& check, const std::string& cells, const std::string& detail);
  void note(const std::string& text) { notes_.push_back(text); }
  void mark_partial(const std::string& why);
  void finish();

  // SUITE <name> PASS|FAIL <checks> <failures> seed=<n>
  std::string line() const;
  std::string text() const;

 private:
  std::string suite_;
  std::uint64_t seed_;
  std::size_t checks_ = 0;
  std::vector<LawFailure> failures_;
  std::vector<std::string> notes_;
  bool partial_ = false;
  double elapsed_ = 0;
  std::chrono::steady_clock::time_point started_;
};

// ---------------------------------------------------------------------------
// Samplers.

struct SamplerBounds {
  std::size_t max_set = 3;
  std::size_t max_apex = 3;  // span apex, or ops of a polynomial
  std::size_t max_arity = 2;
  std::size_t extra_ops = 1;  // fresh bottom ops in a random poly square
};

template <DoubleCategory C>
struct InstanceSampler {
  C instance;
  SamplerBounds bounds;
  std::uint64_t seed = 0;
};

inline Span sample_hor(const SpanDouble&, std::mt19937_64& rng, const FinSet& x, const FinSet& y, const SamplerBounds& b,
                       const std::string& prefix) {
  return random_span(rng, x, y, b.max_apex, prefix);
}

inline std::optional<SpanSquare> sample_square(const SpanDouble&, std::mt19937_64& rng, const Span& top, const FinFun& u,
                                               const FinFun& v, const SamplerBounds& b, const std::string& prefix) {
  return random_square_over(rng, top, u, v, b.max_apex, prefix);
}

inline Polynomial sample_hor(const PolyDouble&, std::mt19937_64& rng, const FinSet& x, const FinSet& y, const SamplerBounds& b,
                             const std::string& prefix) {
  return random_poly(rng, x, y, b.max_apex, b.max_arity, prefix);
}

inline std::optional<PolySquare> sample_square(const PolyDouble&, std::mt19937_64& rng, const Polynomial& top, const FinFun& u,
                                               const FinFun& v, const SamplerBounds& b, const std::string& prefix) {
  return random_poly_square_over(rng, top, u, v, b.extra_ops, prefix);
}

// Size of the set exhaustive searches range over.
inline std::size_t search_size(const Span& f) { return f.apex.size(); }
inline std::size_t search_size(const Polynomial& p) { return p.ops.size(); }

inline constexpr std::size_t kUniquenessSearchLimit = 8;

template <class C>
concept FinSetVerticals = DoubleCategory<C> && std::same_as<typename C::Object, FinSet> && std::same_as<typename C::Ver, FinFun>;

// ---------------------------------------------------------------------------
// Fault injection: the instance with one operation corrupted.

enum class Fault { none, id_square_hor, id_square_ver, associator, alpha, beta, gamma, delta, sharp };

std::string fault_name(Fault f);

// Changes one entry of a square. Spans: the apex map at its first element.
// Polys: two slots of one op are sent to the same slot (breaking the
// pullback), or else the first op is moved.
SpanSquare mutate_square(const SpanSquare& s);
PolySquare mutate_square(const PolySquare& s);

template <class C>
class Faulty : public C {
 public:
  using typename C::Hor;
  using typename C::Object;
  using typename C::Square;
  using typename C::Ver;
  using FreeData = typename C::FreeData;

  Faulty(C base, Fault fault) : C(std::move(base)), fault_(fault) {}

  const C& base() const { return *this; }
  Fault fault() const { return fault_; }
  std::string name() const { return C::name() + "+" + fault_name(fault_); }

  Square id_square_hor(const Hor& f) const { return hit(Fault::id_square_hor, C::id_square_hor(f)); }
  Square id_square_ver(const Ver& u) const { return hit(Fault::id_square_ver, C::id_square_ver(u)); }
  Square associator(const Hor& h, const Hor& g, const Hor& f) const { return hit(Fault::associator, C::associator(h, g, f)); }
  Square alpha(const Ver& u) const { return hit(Fault::alpha, C::alpha(u)); }
  Square beta(const Ver& u) const { return hit(Fault::beta, C::beta(u)); }
  Square gamma(const Ver& u) const { return hit(Fault::gamma, C::gamma(u)); }
  Square delta(const Ver& u) const { return hit(Fault::delta, C::delta(u)); }

  HorCoproduct<Faulty> coproduct(const Hor& f, const Hor& g) const {
    auto cp = C::coproduct(f, g);
    return HorCoproduct<Faulty>{cp.sum, cp.inl, cp.inr};
  }
  Square copair(const HorCoproduct<Faulty>& cp, const Square& s, const Square& t) const {
    return C::copair(HorCoproduct<C>{cp.sum, cp.inl, cp.inr}, s, t);
  }
  C1Equalizer<Faulty> equalizer(const Square& s, const Square& t) const {
    auto e = C::equalizer(s, t);
    return C1Equalizer<Faulty>{e.object, e.inclusion};
  }
  FreeMonadBundle<Faulty> free_monad(const Hor& p) const {
    auto b = C::free_monad(p);
    return FreeMonadBundle<Faulty>{b.base, b.star, b.mult, b.unit, b.iota, b.exact, b.data};
  }
  Square sharp(const FreeMonadBundle<Faulty>& b, const Hor& m, const Square& mu, const Square& eta, const Hor& f,
               const Square& phi) const {
    FreeMonadBundle<C> inner{b.base, b.star, b.mult, b.unit, b.iota, b.exact, b.data};
    return hit(Fault::sharp, C::sharp(inner, m, mu, eta, f, phi));
  }

 private:
  Square hit(Fault f, Square s) const { return f == fault_ ? mutate_square(s) : s; }

  Fault fault_;
};

static_assert(WithFreeMonads<Faulty<SpanDouble>> && FramedDouble<Faulty<SpanDouble>> && WithEnumeration<Faulty<SpanDouble>>);
static_assert(WithFreeMonads<Faulty<PolyDouble>> && FramedDouble<Faulty<PolyDouble>> && WithEnumeration<Faulty<PolyDouble>>);

// The same monad seen from an instance sharing its cell types, e.g. a Faulty wrapper.
template <DoubleCategory To, DoubleCategory From>
  requires std::same_as<typename To::Hor, typename From::Hor> && std::same_as<typename To::Square, typename From::Square>
MonadData<To> recast_monad(const MonadData<From>& m) {
  return MonadData<To>{Endomorphism<To>{m.endo.object, m.endo.arrow}, m.mult, m.unit};
}

template <DoubleCategory C>
MonadData<C> with_mutated_mult(const MonadData<C>& m) {
  return MonadData<C>{m.endo, mutate_square(m.mult), m.unit};
}

// ---------------------------------------------------------------------------
// Serialization of cells for counterexamples.

template <DoubleCategory C>
std::string describe_endo(const C& c, const Endomorphism<C>& e) {
  return "endo{" + std::string(c.describe_hor(e.arrow)) + "}";
}

template <DoubleCategory C>
std::string describe_monad(const C& c, const MonadData<C>& m) {
  return "monad{arrow=" + std::string(c.describe_hor(m.endo.arrow)) + ", mult=" + std::string(c.describe(m.mult)) +
         ", unit=" + std::string(c.describe(m.unit)) + "}";
}

template <DoubleCategory C>
std::string describe_vert_map(const C& c, const VertEndoMap<C>& v) {
  return "vertical{arrow=" + std::string(c.describe_ver(v.arrow)) + ", square=" + std::string(c.describe(v.square)) + "}";
}

template <DoubleCategory C>
std::string describe_hor_map(const C& c, const HorEndoMap<C>& h) {
  return "horizontal{arrow=" + std::string(c.describe_hor(h.arrow)) + ", phi=" + std::string(c.describe(h.phi)) + "}";
}

namespace detail {

template <DoubleCategory C>
void expect_equal(LawReport& r, const C& c, const std::string& name, const std::function<typename C::Square()>& lhs,
                  const std::function<typename C::Square()>& rhs, const std::function<std::string()>& cells) {
  std::string detail;
  bool holds = false;
  try {
    auto l = lhs();
    auto rr = rhs();
    holds = l == rr;
    if (!holds) detail = "lhs=" + std::string(c.describe(l)) + " rhs=" + std::string(c.describe(rr));
  } catch (const Error& e) {
    detail = e.what();
  }
  r.expect(name, holds, cells, detail);
}

template <DoubleCategory C>
void expect_valid(LawReport& r, const C& c, const std::string& name, const std::function<typename C::Square()>& make) {
  std::string cells;
  std::optional<std::string> err;
  try {
    auto s = make();
    err = c.check_square(s);
    if (err) cells = c.describe(s);
  } catch (const Error& e) {
    err = e.what();
  }
  r.expect(name, !err, [&] { return cells; }, err ? *err : "");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Double category axioms on random configurations.

template <DoubleCategory C>
LawReport check_double_axioms(const InstanceSampler<C>& s, std::size_t trials) {
  LawReport r("double-axioms", s.seed);
  const C& c = s.instance;
  std::mt19937_64 rng(s.seed);
  using Sq = typename C::Square;
  std::size_t done = 0;
  for (std::size_t attempt = 0; done < trials && attempt < trials * 20; ++attempt) {
    auto set = [&](const std::string& p) { return random_set(rng, s.bounds.max_set, p, 1); };
    FinSet x = set("x"), y = set("y"), z = set("z"), w = set("w"), t = set("t");
    FinSet x2 = set("x"), y2 = set("y"), z2 = set("z"), w2 = set("w");
    FinSet x3 = set("x"), y3 = set("y"), z3 = set("z");
    FinFun ux = random_fun(rng, x, x2), uy = random_fun(rng, y, y2), uz = random_fun(rng, z, z2), uw = random_fun(rng, w, w2);
    FinFun vx = random_fun(rng, x2, x3), vy = random_fun(rng, y2, y3), vz = random_fun(rng, z2, z3);
    auto f = sample_hor(c, rng, x, y, s.bounds, "f");
    auto g = sample_hor(c, rng, y, z, s.bounds, "g");
    auto h = sample_hor(c, rng, z, w, s.bounds, "h");
    auto k = sample_hor(c, rng, w, t, s.bounds, "k");
    auto a = sample_square(c, rng, f, ux, uy, s.bounds, "a");
    auto b = sample_square(c, rng, g, uy, uz, s.bounds, "b");
    auto d = sample_square(c, rng, h, uz, uw, s.bounds, "d");
    if (!a || !b || !d) continue;
    auto a2 = sample_square(c, rng, c.bottom(*a), vx, vy, s.bounds, "a");
    auto b2 = sample_square(c, rng, c.bottom(*b), vy, vz, s.bounds, "b");
    if (!a2 || !b2) continue;
    ++done;
    auto grid = [&] {
      return "a=" + std::string(c.describe(*a)) + " b=" + std::string(c.describe(*b)) + " a2=" + std::string(c.describe(*a2)) +
             " b2=" + std::string(c.describe(*b2));
    };
    auto cells_a = [&] { return "a=" + std::string(c.describe(*a)); };
    auto cells_abd = [&] {
      return "a=" + std::string(c.describe(*a)) + " b=" + std::string(c.describe(*b)) + " d=" + std::string(c.describe(*d));
    };
    auto arrows = [&] {
      return "f=" + std::string(c.describe_hor(f)) + " g=" + std::string(c.describe_hor(g)) + " h=" + std::string(c.describe_hor(h)) +
             " k=" + std::string(c.describe_hor(k));
    };

    for (const Sq* sq : {&*a, &*b, &*d, &*a2, &*b2}) {
      detail::expect_valid<C>(r, c, "sampled square is valid", [&] { return *sq; });
    }
    detail::expect_valid<C>(r, c, "horizontal composite is valid", [&] { return c.hcomp(*b, *a); });
    detail::expect_valid<C>(r, c, "vertical composite is valid", [&] { return c.vcomp(*a2, *a); });
    detail::expect_equal<C>(
        r, c, "interchange", [&] { return c.vcomp(c.hcomp(*b2, *a2), c.hcomp(*b, *a)); },
        [&] { return c.hcomp(c.vcomp(*b2, *b), c.vcomp(*a2, *a)); }, grid);
    detail::expect_equal<C>(
        r, c, "vertical associativity", [&] { return c.vcomp(c.vcomp(c.id_square_hor(c.bottom(*a2)), *a2), *a); },
        [&] { return c.vcomp(c.id_square_hor(c.bottom(*a2)), c.vcomp(*a2, *a)); }, grid);
    detail::expect_equal<C>(
        r, c, "identity square is a lower unit", [&] { return c.vcomp(c.id_square_hor(c.bottom(*a)), *a); }, [&] { return *a; },
        cells_a);
    detail::expect_equal<C>(
        r, c, "identity square is an upper unit", [&] { return c.vcomp(*a, c.id_square_hor(c.top(*a))); }, [&] { return *a; },
        cells_a);
    detail::expect_equal<C>(
        r, c, "identity squares compose horizontally", [&] { return c.hcomp(c.id_square_hor(g), c.id_square_hor(f)); },
        [&] { return c.id_square_hor(c.hor_compose(g, f)); }, arrows);
    detail::expect_equal<C>(
        r, c, "vertical identity squares compose", [&] { return c.vcomp(c.id_square_ver(vx), c.id_square_ver(ux)); },
        [&] { return c.id_square_ver(c.ver_compose(vx, ux)); },
        [&] { return "u=" + std::string(c.describe_ver(ux)) + " v=" + std::string(c.describe_ver(vx)); });
    detail::expect_equal<C>(
        r, c, "left unitor is natural",
        [&] { return c.vcomp(c.left_unitor(c.bottom(*a)), c.hcomp(c.id_square_ver(uy), *a)); },
        [&] { return c.vcomp(*a, c.left_unitor(c.top(*a))); }, cells_a);
    detail::expect_equal<C>(
        r, c, "right unitor is natural",
        [&] { return c.vcomp(c.right_unitor(c.bottom(*a)), c.hcomp(*a, c.id_square_ver(ux))); },
        [&] { return c.vcomp(*a, c.right_unitor(c.top(*a))); }, cells_a);
    detail::expect_equal<C>(
        r, c, "associator is natural",
        [&] { return c.vcomp(c.associator(c.bottom(*d), c.bottom(*b), c.bottom(*a)), c.hcomp(c.hcomp(*d, *b), *a)); },
        [&] { return c.vcomp(c.hcomp(*d, c.hcomp(*b, *a)), c.associator(h, g, f)); }, cells_abd);
    detail::expect_equal<C>(
        r, c, "triangle",
        [&] { return c.vcomp(c.hcomp(c.id_square_hor(g), c.left_unitor(f)), c.associator(g, c.hor_id(y), f)); },
        [&] { return c.hcomp(c.right_unitor(g), c.id_square_hor(f)); }, arrows);
    if (search_size(f) * search_size(g) * search_size(h) * search_size(k) <= 256) {
      detail::expect_equal<C>(
          r, c, "pentagon",
          [&] { return c.vcomp(c.associator(k, h, c.hor_compose(g, f)), c.associator(c.hor_compose(k, h), g, f)); },
          [&] {
            return c.vcomp(c.hcomp(c.id_square_hor(k), c.associator(h, g, f)),
                           c.vcomp(c.associator(k, c.hor_compose(h, g), f), c.hcomp(c.associator(k, h, g), c.id_square_hor(f))));
          },
          arrows);
    }
    for (const Sq& coh : {c.associator(h, g, f), c.left_unitor(f), c.right_unitor(g)}) {
      auto inv = c.invert_globular(coh);
      r.expect("coherence square is invertible", inv.has_value(), [&] { return c.describe(coh); });
      if (!inv) continue;
      detail::expect_equal<C>(
          r, c, "inverse on the left", [&] { return c.vcomp(*inv, coh); }, [&] { return c.id_square_hor(c.top(coh)); },
          [&] { return c.describe(coh); });
      detail::expect_equal<C>(
          r, c, "inverse on the right", [&] { return c.vcomp(coh, *inv); }, [&] { return c.id_square_hor(c.bottom(coh)); },
          [&] { return c.describe(coh); });
    }
  }
  if (done < trials) r.mark_partial("only " + std::to_string(done) + " of " + std::to_string(trials) + " configurations sampled");
  r.finish();
  return r;
}

// ---------------------------------------------------------------------------
// Companion and conjoint equalities for every vertical arrow within bounds.

template <class C>
  requires FramedDouble<C> && FinSetVerticals<C>
LawReport check_framed(const C& c, std::size_t max_set) {
  LawReport r("framed", 0);
  for (std::size_t n = 0; n <= max_set; ++n) {
    for (std::size_t m = 0; m <= max_set; ++m) {
      for_each_function(numbered_set("a", n), numbered_set("b", m), {}, [&](const FinFun& u) {
        try {
          r.add(framed_equalities(c, u), [&] { return "u=" + u.to_string(); });
        } catch (const Error& e) {
          r.fail("framed equalities", "u=" + u.to_string(), e.what());
        }
        return true;
      });
    }
  }
  r.finish();
  return r;
}

// ---------------------------------------------------------------------------
// Single-cell suites.

template <DoubleCategory C>
LawReport check_monad_laws(const C& c, const MonadData<C>& m) {
  LawReport r("monad-laws", 0);
  r.add(monad_laws(c, m), [&] { return describe_monad(c, m); });
  r.finish();
  return r;
}

// A free category, exact or not: the generic laws when the multiplication
// exists, and the path-by-path laws always.
LawReport check_monad_laws(const FreeCategoryResult& fc);
LawReport check_monad_laws(const FreePolyResult& fp);

template <DoubleCategory C>
LawReport check_hor_map(const C& c, const HorMonadMap<C>& h) {
  LawReport r("horizontal-map", 0);
  r.add(hor_monad_map_laws(c, h), [&] { return describe_hor_map(c, forget(h)); });
  r.finish();
  return r;
}

template <DoubleCategory C>
LawReport check_vert_map(const C& c, const VertMonadMap<C>& v) {
  LawReport r("vertical-map", 0);
  r.add(vert_monad_map_laws(c, v), [&] { return describe_vert_map(c, forget(v)); });
  r.finish();
  return r;
}

template <DoubleCategory C>
LawReport check_endo_square(const C& c, const EndoSquare<C>& s) {
  LawReport r("endo-square", 0);
  r.add(endo_square_condition(c, s), [&] { return "square=" + std::string(c.describe(s.square)); });
  r.finish();
  return r;
}

// ---------------------------------------------------------------------------
// Universal property of the unit (X,P) -> (X,P*): every vertical map into a
// monad factors through it via exactly one vertical monad map.

template <class C>
  requires WithFreeMonads<C> && WithEnumeration<C> && FinSetVerticals<C>
LawReport check_universal_property(const C& c, const FreeMonadAdjunction<C>& a, const std::vector<MonadData<C>>& targets) {
  LawReport r("universal-property", 0);
  const auto& p = a.endo.arrow;
  const auto& star = a.free.star;
  const bool searchable = search_size(star) <= kUniquenessSearchLimit;
  if (!searchable) r.mark_partial("free monad too large for exhaustive uniqueness search; uniqueness not checked");
  std::size_t maps = 0;
  for (const auto& t : targets) {
    for_each_function(a.endo.object, t.endo.object, {}, [&](const FinFun& u) {
      // Lawful candidates P* => T over (u, u), with their restriction along iota.
      std::vector<std::pair<typename C::Square, typename C::Square>> lawful;
      if (searchable) {
        try {
          auto unit_image = c.vcomp(t.unit, c.id_square_ver(u));
          c.enumerate_squares(star, t.endo.arrow, u, u, [&](const typename C::Square& k) {
            if (!(c.vcomp(k, a.monad.unit) == unit_image)) return true;
            VertMonadMap<C> cand{a.monad, t, u, k};
            if (all_hold(vert_monad_map_laws(c, cand))) lawful.emplace_back(k, c.vcomp(k, a.free.iota));
            return true;
          });
        } catch (const Error& e) {
          r.fail("candidate search", "u=" + u.to_string() + " target=" + describe_monad(c, t), e.what());
        }
      }
      c.enumerate_squares(p, t.endo.arrow, u, u, [&](const typename C::Square& ubar) {
        ++maps;
        VertEndoMap<C> m{a.endo, t.endo, u, ubar};
        auto cells = [&] { return describe_vert_map(c, m) + " target=" + describe_monad(c, t); };
        try {
          VertMonadMap<C> s = vertical_sharp(c, a, t, m);
          auto laws = vert_monad_map_laws(c, s);
          bool ok = all_hold(laws);
          std::string why;
          for (const auto& l : laws) {
            if (!l.holds) why += l.name + ": " + l.detail + "; ";
          }
          r.expect("sharp is a vertical monad map", ok, cells, why);
          auto restricted = c.vcomp(s.square, a.free.iota);
          r.expect("sharp factors through the unit", restricted == ubar, cells,
                   "sharp=" + std::string(c.describe(s.square)) + " restricted=" + std::string(c.describe(restricted)));
          if (searchable) {
            std::size_t count = 0;
            bool sharp_listed = false;
            for (const auto& [k, rest] : lawful) {
              if (!(rest == ubar)) continue;
              ++count;
              sharp_listed = sharp_listed || k == s.square;
            }
            r.expect("factorization is unique", count == 1, cells, std::to_string(count) + " factorizations");
            r.expect("sharp is the factorization found by search", sharp_listed, cells,
                     "sharp=" + std::string(c.describe(s.square)));
          }
        } catch (const Error& e) {
          r.fail("sharp exists", cells(), e.what());
        }
        return true;
      });
      return true;
    });
  }
  r.note(std::to_string(maps) + " vertical maps into " + std::to_string(targets.size()) + " monads");
  r.finish();
  return r;
}

// ---------------------------------------------------------------------------
// The equation chain of the construction of alpha#, on concrete scenarios.

template <DoubleCategory C>
struct NamedPipeline {
  std::string name;
  PipelineInput<C> input;
};

template <DoubleCategory C>
LawReport check_theorem_pipeline(const C& c, const std::vector<NamedPipeline<C>>& scenarios) {
  LawReport r("theorem-pipeline", 0);
  for (const auto& sc : scenarios) {
    auto cells = [&] { return "scenario " + sc.name + ": alpha=" + std::string(c.describe(sc.input.alpha.square)); };
    try {
      auto checks = theorem_pipeline(c, sc.input);
      bool iso = false;
      for (const auto& ch : checks) iso = iso || (ch.name == "theta is an isomorphism" && ch.holds);
      r.add(checks, cells);
      r.expect("theta inverse found", iso, cells);
    } catch (const Error& e) {
      r.fail("pipeline runs", cells(), e.what());
    }
  }
  r.finish();
  return r;
}

// ---------------------------------------------------------------------------
// Cofolding.

namespace detail {

// Every globular [F, Q] => [P, F], up to `cap` of them.
template <class C>
  requires WithEnumeration<C>
std::vector<typename C::Square> hor_map_squares(const C& c, const Endomorphism<C>& src, const Endomorphism<C>& tgt,
                                                const typename C::Hor& f, std::size_t cap) {
  std::vector<typename C::Square> out;
  auto top = c.hor_compose(tgt.arrow, f);
  auto bottom = c.hor_compose(f, src.arrow);
  if (search_size(top) > kUniquenessSearchLimit) return out;
  c.enumerate_squares(top, bottom, c.ver_id(src.object), c.ver_id(tgt.object), [&](const typename C::Square& s) {
    out.push_back(s);
    return out.size() < cap;
  });
  return out;
}

}  // namespace detail

template <class C>
  requires FramedDouble<C> && WithEnumeration<C> && FinSetVerticals<C>
LawReport check_cofold(const InstanceSampler<C>& s, std::size_t samples, const std::vector<MonadData<C>>& monads) {
  LawReport r("cofold", s.seed);
  const C& c = s.instance;
  std::mt19937_64 rng(s.seed);
  std::size_t done = 0;
  for (std::size_t attempt = 0; done < samples && attempt < samples * 20; ++attempt) {
    FinSet x = random_set(rng, s.bounds.max_set, "x", 1), x2 = random_set(rng, s.bounds.max_set, "y", 1);
    Endomorphism<C> e{x, sample_hor(c, rng, x, x, s.bounds, "p")};
    FinFun u = random_fun(rng, x, x2);
    auto ubar = sample_square(c, rng, e.arrow, u, u, s.bounds, "q");
    if (!ubar) continue;
    ++done;
    VertEndoMap<C> m{e, Endomorphism<C>{x2, c.bottom(*ubar)}, u, *ubar};
    auto cells = [&] { return describe_vert_map(c, m); };
    try {
      auto h = cofold(c, m);
      r.expect("cofold is a conjoint map", h.arrow == c.conjoint(u), cells);
      auto back = uncofold(c, h);
      r.expect("uncofold after cofold", back == m, cells, describe_vert_map(c, back));
      auto phis = detail::hor_map_squares(c, m.tgt, m.src, c.conjoint(u), 16);
      if (!phis.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, phis.size() - 1);
        HorEndoMap<C> h2{m.tgt, m.src, c.conjoint(u), phis[pick(rng)]};
        auto again = cofold(c, uncofold(c, h2));
        r.expect("cofold after uncofold", again == h2, [&] { return describe_hor_map(c, h2); }, describe_hor_map(c, again));
      }
    } catch (const Error& e) {
      r.fail("cofold roundtrip", cells(), e.what());
    }
  }
  if (done < samples) r.mark_partial("only " + std::to_string(done) + " maps sampled");
  r.note(std::to_string(done) + " sampled vertical maps");

  std::size_t monad_maps = 0;
  for (const auto& src : monads) {
    for (const auto& tgt : monads) {
      for_each_function(src.endo.object, tgt.endo.object, {}, [&](const FinFun& u) {
        if (search_size(src.endo.arrow) > kUniquenessSearchLimit) return false;
        c.enumerate_squares(src.endo.arrow, tgt.endo.arrow, u, u, [&](const typename C::Square& sq) {
          VertMonadMap<C> v{src, tgt, u, sq};
          auto cells = [&] { return describe_vert_map(c, forget(v)); };
          try {
            if (!all_hold(vert_monad_map_laws(c, v))) return true;
            ++monad_maps;
            auto h = cofold(c, v);
            r.add(hor_monad_map_laws(c, h), cells);
            auto back = uncofold(c, h);
            r.expect("monad map roundtrip", forget(back) == forget(v), cells);
          } catch (const Error& e) {
            r.fail("cofold of a monad map", cells(), e.what());
          }
          return true;
        });
        // Horizontal monad maps on the conjoint fold back to vertical ones.
        for (const auto& phi : detail::hor_map_squares(c, tgt.endo, src.endo, c.conjoint(u), 64)) {
          HorMonadMap<C> h{tgt, src, c.conjoint(u), phi};
          auto cells = [&] { return describe_hor_map(c, forget(h)); };
          try {
            if (!all_hold(hor_monad_map_laws(c, h))) continue;
            r.add(vert_monad_map_laws(c, uncofold(c, h)), cells);
          } catch (const Error& e) {
            r.fail("uncofold of a monad map", cells(), e.what());
          }
        }
        return true;
      });
    }
  }
  r.note(std::to_string(monad_maps) + " vertical monad maps folded");
  r.finish();
  return r;
}

// ---------------------------------------------------------------------------
// Base change lifts are cartesian for the projection End -> C0, and the
// monad lift forgets to the endomorphism lift.

template <class C>
  requires FramedDouble<C> && WithEnumeration<C> && FinSetVerticals<C>
LawReport check_fibration(const InstanceSampler<C>& s, std::size_t endos_per_set, const std::vector<MonadData<C>>& monads) {
  LawReport r("fibration", s.seed);
  const C& c = s.instance;
  std::mt19937_64 rng(s.seed);
  const std::size_t n_max = std::min<std::size_t>(s.bounds.max_set, 2);
  auto endos_on = [&](const FinSet& x, const std::string& prefix) {
    std::vector<Endomorphism<C>> out;
    for (std::size_t i = 0; i < endos_per_set; ++i) out.push_back({x, sample_hor(c, rng, x, x, s.bounds, prefix)});
    return out;
  };
  std::vector<FinSet> sets;
  for (std::size_t n = 0; n <= n_max; ++n) sets.push_back(numbered_set("x", n));
  std::vector<std::vector<Endomorphism<C>>> sources;  // (Z, R) per set
  for (const auto& z : sets) sources.push_back(endos_on(z, "r"));
  for (const auto& x2 : sets) {
    for (const auto& target : endos_on(x2, "p")) {
      for (const auto& x : sets) {
        for_each_function(x, x2, {}, [&](const FinFun& u) {
          auto base_cells = [&] { return "u=" + u.to_string() + " target=" + describe_endo(c, target); };
          std::optional<BaseChange<C>> made;
          try {
            made = base_change_endo(c, u, target);
            r.expect("lift is a valid square", !c.check_square(made->lift.square), base_cells,
                     c.check_square(made->lift.square).value_or(""));
          } catch (const Error& e) {
            r.fail("base change", base_cells(), e.what());
            return true;
          }
          const BaseChange<C>& bc = *made;
          if (search_size(bc.endo.arrow) > kUniquenessSearchLimit) {
            r.mark_partial("base change too large to search");
            return true;
          }
          for (std::size_t zi = 0; zi < sets.size(); ++zi) {
            for (const auto& src : sources[zi]) {
              for_each_function(sets[zi], x, {}, [&](const FinFun& v) {
                FinFun w = compose_fun(u, v);
                c.enumerate_squares(src.arrow, target.arrow, w, w, [&](const typename C::Square& sq) {
                  std::size_t count = 0;
                  c.enumerate_squares(src.arrow, bc.endo.arrow, v, v, [&](const typename C::Square& t) {
                    count += c.vcomp(bc.lift.square, t) == sq;
                    return true;
                  });
                  r.expect("lift factors uniquely", count == 1,
                           [&] { return base_cells() + " v=" + v.to_string() + " s=" + std::string(c.describe(sq)); },
                           std::to_string(count) + " factorizations");
                  return true;
                });
                return true;
              });
            }
          }
          return true;
        });
      }
    }
  }
  for (const auto& t : monads) {
    for (const auto& x : sets) {
      for_each_function(x, t.endo.object, {}, [&](const FinFun& u) {
        auto cells = [&] { return "u=" + u.to_string() + " target=" + describe_monad(c, t); };
        try {
          auto bm = base_change_monad(c, u, t);
          auto be = base_change_endo(c, u, t.endo);
          r.expect("monad lift forgets to the endomorphism lift", forget(bm.lift) == be.lift, cells);
          r.add(monad_laws(c, bm.monad), cells);
          r.add(vert_monad_map_laws(c, bm.lift), cells);
        } catch (const Error& e) {
          r.fail("monad base change", cells(), e.what());
        }
        return true;
      });
    }
  }
  r.finish();
  return r;
}

// ---------------------------------------------------------------------------
// Fixed scenarios.

// The graph a -> b -> c.
Graph chain_graph();
// The monoid {1, t, t2} with t.t = t2 and t2 absorbing.
FinCategory three_element_monoid();
// The polynomial {c : -> y}.
Polynomial constant_poly();
// The monad on {a} with a unary identity 1 and one constant k.
PolyMonad pointed_poly_monad();


// Two scenarios per instance: the identity square on a map into a target
// monad, and a square whose top is the conjoint of a map between free
// endomorphisms.
template <class C>
  requires std::derived_from<C, SpanDouble>
std::vector<NamedPipeline<C>> span_pipeline_scenarios(const C& c) {
  std::vector<NamedPipeline<C>> out;
  EndDouble<C> end(c);
  Graph g = chain_graph();
  Endomorphism<C> e{g.nodes, g.edges};
  auto adj = free_monad_adjunction(c, e);
  MonadData<C> t = recast_monad<C>(three_element_monoid());
  FinFun u = FinFun::constant(g.nodes, t.endo.object, 0);

  // A: the identity square on a map of the chain into the monoid.
  FinFun ubar = FinFun::constant(g.edges.apex, t.endo.arrow.apex, 1);
  VertEndoMap<C> m{e, t.endo, u, make_span_square(e.arrow, t.endo.arrow, u, u, ubar)};
  out.push_back({"chain-identity", PipelineInput<C>{adj, adj, t, t, end.id_square_ver(m)}});

  // B: a square whose top is the conjoint of a map from a two-branch graph.
  Graph dag = make_graph(FinSet{"p", "q", "r"}, {"e1", "e2"}, {{"p", "q"}, {"p", "r"}});
  Endomorphism<C> d{dag.nodes, dag.edges};
  auto adjd = free_monad_adjunction(c, d);
  FinFun w = FinFun::from_names(dag.nodes, g.nodes, {{"p", "a"}, {"q", "b"}, {"r", "b"}});
  VertEndoMap<C> wm{d, e, w, make_span_square(d.arrow, e.arrow, w, w, FinFun::constant(dag.edges.apex, g.edges.apex, 0))};
  EndoSquare<C> beta{cofold(c, wm), end.hor_id(e), end.ver_id(e), wm, c.beta(w)};
  FinFun ubar2 = FinFun::from_names(g.edges.apex, t.endo.arrow.apex, {{"f", "t"}, {"g", "1"}});
  VertEndoMap<C> m2{e, t.endo, u, make_span_square(e.arrow, t.endo.arrow, u, u, ubar2)};
  out.push_back({"chain-conjoint", PipelineInput<C>{adj, adjd, t, t, end.vcomp(end.id_square_ver(m2), beta)}});
  return out;
}

template <class C>
  requires std::derived_from<C, PolyDouble>
std::vector<NamedPipeline<C>> poly_pipeline_scenarios(const C& c) {
  std::vector<NamedPipeline<C>> out;
  EndDouble<C> end(c);
  FinSet y{"y"};
  Polynomial q = constant_poly();
  Endomorphism<C> e{y, q};
  auto adj = free_monad_adjunction(c, e);
  MonadData<C> t = recast_monad<C>(pointed_poly_monad());
  FinFun u = FinFun::constant(y, t.endo.object, 0);
  VertEndoMap<C> m{e, t.endo, u,
                            make_poly_square(q, t.endo.arrow, u, u, FinFun::from_names(q.ops, t.endo.arrow.ops, {{"c", "k"}}),
                                             FinFun(q.slots, t.endo.arrow.slots, {}))};
  out.push_back({"constant-identity", PipelineInput<C>{adj, adj, t, t, end.id_square_ver(m)}});

  FinSet x{"x1", "x2"};
  Polynomial p = poly_from_ops(x, x, {{"c1", {{}, "x1"}}, {"c2", {{}, "x2"}}});
  Endomorphism<C> ep{x, p};
  auto adjp = free_monad_adjunction(c, ep);
  FinFun w = FinFun::constant(y, x, 0);
  VertEndoMap<C> wm{e, ep, w,
                             make_poly_square(q, p, w, w, FinFun::from_names(q.ops, p.ops, {{"c", "c1"}}), FinFun(q.slots, p.slots, {}))};
  EndoSquare<C> beta{cofold(c, wm), end.hor_id(ep), end.ver_id(ep), wm, c.beta(w)};
  FinFun ux = FinFun::constant(x, t.endo.object, 0);
  VertEndoMap<C> mx{ep, t.endo, ux,
                             make_poly_square(p, t.endo.arrow, ux, ux, FinFun::constant(p.ops, t.endo.arrow.ops, 1),
                                              FinFun(p.slots, t.endo.arrow.slots, {}))};
  out.push_back({"constant-conjoint", PipelineInput<C>{adjp, adj, t, t, end.vcomp(end.id_square_ver(mx), beta)}});
  return out;
}

// Categories on 1..max_objects objects with at most max_morphisms morphisms, up to relabeling.
std::vector<FinCategory> small_categories(std::size_t max_objects, std::size_t max_morphisms);
// Polynomial monads on 1..max_objects types with arity at most one.
std::vector<PolyMonad> small_poly_monads(std::size_t max_objects, std::size_t max_unary, std::size_t max_constants);

// The identity square on the first vertical map from the free endomorphism into
// one of the targets, as pipeline input.
template <class C>
  requires WithEnumeration<C> && FinSetVerticals<C>
std::optional<PipelineInput<C>> identity_pipeline(const C& c, const FreeMonadAdjunction<C>& a, const std::vector<MonadData<C>>& targets) {
  std::optional<PipelineInput<C>> out;
  EndDouble<C> end(c);
  for (const auto& t : targets) {
    for_each_function(a.endo.object, t.endo.object, {}, [&](const FinFun& u) {
      c.enumerate_squares(a.endo.arrow, t.endo.arrow, u, u, [&](const typename C::Square& ubar) {
        VertEndoMap<C> m{a.endo, t.endo, u, ubar};
        out = PipelineInput<C>{a, a, t, t, end.id_square_ver(m)};
        return false;
      });
      return !out;
    });
    if (out) break;
  }
  return out;
}

}  // namespace dcmonad
