#include "dcmonad/lawcheck.hpp"

#include <sstream>

namespace dcmonad {

LawReport::LawReport(std::string suite, std::uint64_t seed)
    : suite_(std::move(suite)), seed_(seed), started_(std::chrono::steady_clock::now()) {}

void LawReport::expect(const std::string& check, bool holds, const std::function<std::string()>& cells, const std::string& detail) {
  ++checks_;
  if (!holds) failures_.push_back({check, cells(), detail});
}

void LawReport::add(const std::vector<EquationCheck>& checks, const std::function<std::string()>& cells) {
  for (const auto& c : checks) expect(c.name, c.holds, cells, c.detail);
}

void LawReport::fail(const std::string& check, const std::string& cells, const std::string& detail) {
  ++checks_;
  failures_.push_back({check, cells, detail});
}

void LawReport::mark_partial(const std::string& why) {
  if (!partial_) notes_.push_back("partial: " + why);
  partial_ = true;
}

void LawReport::finish() {
  elapsed_ = std::chrono::duration<double>(std::chrono::steady_clock::now() - started_).count();
}

std::string LawReport::line() const {
  return "SUITE " + suite_ + " " + (passed() ? "PASS" : "FAIL") + " " + std::to_string(checks_) + " " +
         std::to_string(failures_.size()) + " seed=" + std::to_string(seed_);
}

std::string LawReport::text() const {
  std::ostringstream out;
  out << line() << "\n";
  out << "  elapsed: " << elapsed_ << "s\n";
  for (const auto& n : notes_) out << "  note: " << n << "\n";
  for (const auto& f : failures_) {
    out << "  FAILED " << f.check << "\n";
    out << "    cells: " << f.cells << "\n";
    if (!f.detail.empty()) out << "    detail: " << f.detail << "\n";
  }
  return out.str();
}

std::string fault_name(Fault f) {
  switch (f) {
    case Fault::none: return "none";
    case Fault::id_square_hor: return "id-square-hor";
    case Fault::id_square_ver: return "id-square-ver";
    case Fault::associator: return "associator";
    case Fault::alpha: return "alpha";
    case Fault::beta: return "beta";
    case Fault::gamma: return "gamma";
    case Fault::delta: return "delta";
    case Fault::sharp: return "sharp";
  }
  return "?";
}

SpanSquare mutate_square(const SpanSquare& s) {
  if (s.top.apex.empty() || s.bottom.apex.size() < 2) return s;
  auto table = s.mid.table();
  table[0] = (table[0] + 1) % s.bottom.apex.size();
  return SpanSquare{s.top, s.bottom, s.u, s.v, FinFun(s.top.apex, s.bottom.apex, table)};
}

PolySquare mutate_square(const PolySquare& s) {
  for (std::size_t b = 0; b < s.top.ops.size(); ++b) {
    auto slots = s.top.slots_of(b);
    if (slots.size() < 2) continue;
    auto table = s.phibar.table();
    table[slots[0]] = table[slots[1]];
    return PolySquare{s.top, s.bottom, s.u, s.v, s.phi, FinFun(s.top.slots, s.bottom.slots, table)};
  }
  if (s.top.ops.empty() || s.bottom.ops.size() < 2) return s;
  auto table = s.phi.table();
  table[0] = (table[0] + 1) % s.bottom.ops.size();
  return PolySquare{s.top, s.bottom, s.u, s.v, FinFun(s.top.ops, s.bottom.ops, table), s.phibar};
}

LawReport check_monad_laws(const FreeCategoryResult& fc) {
  LawReport r("monad-laws", 0);
  auto cells = [&] { return "free category " + fc.data->morphisms.to_string() + " max length " + std::to_string(fc.data->max_len); };
  if (fc.data->exact) {
    r.add(monad_laws(SpanDouble(fc.data->max_len), free_category_monad(fc)), cells);
  } else {
    r.note("truncated at max length " + std::to_string(fc.data->max_len) + "; multiplication is partial");
  }
  r.add(free_category_pointwise_laws(*fc.data), cells);
  r.finish();
  return r;
}

LawReport check_monad_laws(const FreePolyResult& fp) {
  LawReport r("monad-laws", 0);
  auto cells = [&] { return "free monad " + fp.data->star.ops.to_string() + " max depth " + std::to_string(fp.data->max_depth); };
  if (fp.data->exact) {
    r.add(monad_laws(PolyDouble(fp.data->max_depth), free_poly_monad_data(fp)), cells);
  } else {
    r.note("truncated at max depth " + std::to_string(fp.data->max_depth) + "; multiplication is partial");
  }
  r.add(free_poly_pointwise_laws(*fp.data), cells);
  r.finish();
  return r;
}

Graph chain_graph() { return make_graph(FinSet{"a", "b", "c"}, {"f", "g"}, {{"a", "b"}, {"b", "c"}}); }

FinCategory three_element_monoid() {
  Graph g = make_graph(FinSet{"*"}, {"1", "t", "t2"}, {{"*", "*"}, {"*", "*"}, {"*", "*"}});
  return make_category(g, {"1"}, [](const std::string& p, const std::string& q) {
    if (p == "1") return q;
    if (q == "1") return p;
    return std::string("t2");
  });
}

Polynomial constant_poly() {
  FinSet y{"y"};
  return poly_from_ops(y, y, {{"c", {{}, "y"}}});
}

PolyMonad pointed_poly_monad() {
  return make_unary_poly_monad(
      FinSet{"a"}, {{"1", {"a", "a"}}}, {"1"}, [](const std::string&, const std::string&) { return std::string("1"); },
      {{"k", "a"}}, [](const std::string&, const std::string& k) { return k; });
}

std::vector<FinCategory> small_categories(std::size_t max_objects, std::size_t max_morphisms) {
  std::vector<FinCategory> out;
  for (std::size_t n = 1; n <= max_objects; ++n) {
    enumerate_categories(numbered_set("o", n), max_morphisms, [&](const FinCategory& c) {
      out.push_back(c);
      return true;
    }, true);
  }
  return out;
}

std::vector<PolyMonad> small_poly_monads(std::size_t max_objects, std::size_t max_unary, std::size_t max_constants) {
  std::vector<PolyMonad> out;
  for (std::size_t n = 1; n <= max_objects; ++n) {
    enumerate_unary_poly_monads(numbered_set("a", n), max_unary, max_constants, [&](const PolyMonad& m) {
      out.push_back(m);
      return true;
    });
  }
  return out;
}

}  // namespace dcmonad
