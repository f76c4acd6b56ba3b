#include "dcmonad/finset.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace dcmonad {

FinSet::FinSet() : FinSet(std::vector<std::string>{}) {}

FinSet::FinSet(std::initializer_list<std::string> elements)
    : FinSet(std::vector<std::string>(elements)) {}

FinSet::FinSet(std::vector<std::string> elements) {
  auto data = std::make_shared<Data>();
  data->index.reserve(elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (!data->index.emplace(elements[i], i).second) {
      throw Error("duplicate element in finite set: " + elements[i]);
    }
  }
  data->elements = std::move(elements);
  data_ = std::move(data);
}

std::optional<std::size_t> FinSet::find(std::string_view name) const {
  auto it = data_->index.find(std::string(name));
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

std::size_t FinSet::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw Error("element not in set: " + std::string(name));
}

bool operator==(const FinSet& a, const FinSet& b) {
  return a.data_ == b.data_ || a.data_->elements == b.data_->elements;
}

std::string FinSet::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < size(); ++i) {
    if (i) out += ", ";
    out += (*this)[i];
  }
  return out + "}";
}

FinFun::FinFun(FinSet dom, FinSet cod, std::vector<std::size_t> table)
    : dom_(std::move(dom)), cod_(std::move(cod)), table_(std::move(table)) {
  if (table_.size() != dom_.size()) {
    throw CompositionError("function table has " + std::to_string(table_.size()) +
                           " entries for a domain of size " + std::to_string(dom_.size()));
  }
  for (std::size_t v : table_) {
    if (v >= cod_.size()) throw CompositionError("function value outside codomain");
  }
}

FinFun FinFun::identity(const FinSet& set) {
  std::vector<std::size_t> table(set.size());
  std::iota(table.begin(), table.end(), std::size_t{0});
  return FinFun(set, set, std::move(table));
}

FinFun FinFun::constant(const FinSet& dom, const FinSet& cod, std::size_t value) {
  return FinFun(dom, cod, std::vector<std::size_t>(dom.size(), value));
}

FinFun FinFun::from_names(const FinSet& dom, const FinSet& cod,
                          const std::vector<std::pair<std::string, std::string>>& graph) {
  std::vector<std::size_t> table(dom.size(), cod.size());
  for (const auto& [x, y] : graph) table[dom.index_of(x)] = cod.index_of(y);
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i] == cod.size()) throw CompositionError("function undefined on " + dom[i]);
  }
  return FinFun(dom, cod, std::move(table));
}

const std::string& FinFun::apply(std::string_view name) const {
  return cod_[table_[dom_.index_of(name)]];
}

bool FinFun::is_injective() const {
  std::vector<bool> hit(cod_.size(), false);
  for (std::size_t v : table_) {
    if (hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

bool FinFun::is_surjective() const {
  std::vector<bool> hit(cod_.size(), false);
  for (std::size_t v : table_) hit[v] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

std::optional<FinFun> FinFun::inverse() const {
  if (!is_bijective()) return std::nullopt;
  std::vector<std::size_t> inv(table_.size());
  for (std::size_t i = 0; i < table_.size(); ++i) inv[table_[i]] = i;
  return FinFun(cod_, dom_, std::move(inv));
}

bool operator==(const FinFun& a, const FinFun& b) {
  return a.table_ == b.table_ && a.dom_ == b.dom_ && a.cod_ == b.cod_;
}

std::string FinFun::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < dom_.size(); ++i) {
    if (i) out += ", ";
    out += dom_[i] + "->" + cod_[table_[i]];
  }
  return out + "]";
}

FinFun compose_fun(const FinFun& g, const FinFun& f) {
  if (!(f.cod() == g.dom())) {
    throw CompositionError("cannot compose: codomain " + f.cod().to_string() +
                           " does not match domain " + g.dom().to_string());
  }
  std::vector<std::size_t> table(f.dom().size());
  for (std::size_t i = 0; i < table.size(); ++i) table[i] = g(f(i));
  return FinFun(f.dom(), g.cod(), std::move(table));
}

std::string pair_name(std::string_view a, std::string_view b) {
  std::string out;
  out.reserve(a.size() + b.size() + 3);
  out += '(';
  out += a;
  out += ',';
  out += b;
  out += ')';
  return out;
}

Pullback pullback(const FinFun& f, const FinFun& g) {
  if (!(f.cod() == g.cod())) throw CompositionError("pullback of functions with different codomains");
  // Bucket g's domain by image so the scan stays linear in the output.
  std::vector<std::vector<std::size_t>> by_value(g.cod().size());
  for (std::size_t b = 0; b < g.dom().size(); ++b) by_value[g(b)].push_back(b);
  std::vector<std::string> names;
  std::vector<std::size_t> left, right;
  for (std::size_t a = 0; a < f.dom().size(); ++a) {
    for (std::size_t b : by_value[f(a)]) {
      names.push_back(pair_name(f.dom()[a], g.dom()[b]));
      left.push_back(a);
      right.push_back(b);
    }
  }
  FinSet object(std::move(names));
  return Pullback{object, FinFun(object, f.dom(), std::move(left)),
                  FinFun(object, g.dom(), std::move(right))};
}

Equalizer equalizer(const FinFun& f, const FinFun& g) {
  if (!(f.dom() == g.dom()) || !(f.cod() == g.cod())) {
    throw CompositionError("equalizer of non-parallel functions");
  }
  std::vector<std::string> names;
  std::vector<std::size_t> incl;
  for (std::size_t a = 0; a < f.dom().size(); ++a) {
    if (f(a) == g(a)) {
      names.push_back(f.dom()[a]);
      incl.push_back(a);
    }
  }
  FinSet object(std::move(names));
  return Equalizer{object, FinFun(object, f.dom(), std::move(incl))};
}

Coproduct coproduct(const FinSet& a, const FinSet& b) {
  std::vector<std::string> names;
  names.reserve(a.size() + b.size());
  for (const auto& x : a.elements()) names.push_back("inl(" + x + ")");
  for (const auto& y : b.elements()) names.push_back("inr(" + y + ")");
  FinSet sum(std::move(names));
  std::vector<std::size_t> l(a.size()), r(b.size());
  std::iota(l.begin(), l.end(), std::size_t{0});
  std::iota(r.begin(), r.end(), a.size());
  return Coproduct{sum, FinFun(a, sum, std::move(l)), FinFun(b, sum, std::move(r))};
}

std::vector<std::size_t> fiber_indices(const FinFun& f, std::size_t c) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < f.dom().size(); ++i) {
    if (f(i) == c) out.push_back(i);
  }
  return out;
}

FinSet fiber(const FinFun& f, std::string_view c) {
  auto ci = f.cod().find(c);
  if (!ci) throw Error("fiber: " + std::string(c) + " is not in the codomain");
  std::vector<std::string> names;
  for (std::size_t i : fiber_indices(f, *ci)) names.push_back(f.dom()[i]);
  return FinSet(std::move(names));
}

DependentProduct dependent_product_sections(const FinFun& theta, const SliceObject& s) {
  if (!(s.base() == theta.dom())) throw CompositionError("dependent product: slice base mismatch");
  std::vector<std::vector<std::size_t>> over(theta.dom().size());
  for (std::size_t x = 0; x < s.total().size(); ++x) over[s.proj(x)].push_back(x);

  std::vector<std::string> names;
  std::vector<std::size_t> proj;
  std::vector<std::vector<std::size_t>> sections;
  for (std::size_t b = 0; b < theta.cod().size(); ++b) {
    const auto fib = fiber_indices(theta, b);
    // Odometer over the choice of one s-element per fiber point.
    std::vector<std::size_t> pos(fib.size(), 0);
    bool any = std::all_of(fib.begin(), fib.end(), [&](std::size_t e) { return !over[e].empty(); });
    while (any) {
      std::vector<std::size_t> chosen(fib.size());
      std::string name = "(" + theta.cod()[b] + ",{";
      for (std::size_t k = 0; k < fib.size(); ++k) {
        chosen[k] = over[fib[k]][pos[k]];
        if (k) name += ',';
        name += theta.dom()[fib[k]] + ":" + s.total()[chosen[k]];
      }
      name += "})";
      names.push_back(std::move(name));
      proj.push_back(b);
      sections.push_back(std::move(chosen));
      std::size_t k = fib.size();
      while (k > 0) {
        --k;
        if (++pos[k] < over[fib[k]].size()) break;
        pos[k] = 0;
        if (k == 0) any = false;
      }
      if (fib.empty()) any = false;
    }
  }
  FinSet total(std::move(names));
  return DependentProduct{SliceObject{FinFun(total, theta.cod(), std::move(proj))}, std::move(sections)};
}

SliceObject dependent_product(const FinFun& theta, const SliceObject& s) {
  return dependent_product_sections(theta, s).slice;
}

SliceObject pullback_slice(const FinFun& f, const SliceObject& s) {
  auto pb = pullback(f, s.proj);
  return SliceObject{pb.p1};
}

namespace {

struct BijectionSearch {
  const FinSet& a;
  const FinSet& b;
  std::span<const BijectionConstraint> constraints;
  const std::function<bool(const FinFun&)>& visit;
  std::vector<std::size_t> table;
  std::vector<bool> used;

  bool compatible(std::size_t x, std::size_t y) const {
    for (const auto& [f, g] : constraints) {
      if (f(x) != g(y)) return false;
    }
    return true;
  }

  // Returns false once the visitor asks to stop.
  bool run(std::size_t x) {
    if (x == a.size()) return visit(FinFun(a, b, table));
    for (std::size_t y = 0; y < b.size(); ++y) {
      if (used[y] || !compatible(x, y)) continue;
      used[y] = true;
      table[x] = y;
      bool go_on = run(x + 1);
      used[y] = false;
      if (!go_on) return false;
    }
    return true;
  }
};

void check_constraints(const FinSet& a, const FinSet& b, std::span<const BijectionConstraint> constraints) {
  for (const auto& [f, g] : constraints) {
    if (!(f.dom() == a) || !(g.dom() == b) || !(f.cod() == g.cod())) {
      throw CompositionError("bijection constraint has mismatched boundaries");
    }
  }
}

}  // namespace

void for_each_commuting_bijection(const FinSet& a, const FinSet& b,
                                  std::span<const BijectionConstraint> constraints,
                                  const std::function<bool(const FinFun&)>& visit) {
  if (a.size() != b.size()) return;
  if (a.size() > kBijectionSearchLimit) {
    throw SearchLimitError("bijection search refused: " + std::to_string(a.size()) +
                           " elements exceeds the limit of " + std::to_string(kBijectionSearchLimit));
  }
  check_constraints(a, b, constraints);
  BijectionSearch search{a, b, constraints, visit, std::vector<std::size_t>(a.size()),
                         std::vector<bool>(b.size(), false)};
  search.run(0);
}

std::optional<FinFun> find_commuting_bijection(const FinSet& a, const FinSet& b,
                                               std::span<const BijectionConstraint> constraints) {
  std::optional<FinFun> found;
  for_each_commuting_bijection(a, b, constraints, [&](const FinFun& f) {
    found = f;
    return false;
  });
  return found;
}

void for_each_function(const FinSet& dom, const FinSet& cod,
                       const std::vector<std::vector<std::size_t>>& allowed,
                       const std::function<bool(const FinFun&)>& visit) {
  std::vector<std::vector<std::size_t>> choices;
  if (allowed.empty()) {
    std::vector<std::size_t> all(cod.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    choices.assign(dom.size(), all);
  } else {
    if (allowed.size() != dom.size()) throw Error("for_each_function: allowed list has wrong length");
    choices = allowed;
  }
  for (const auto& c : choices) {
    if (c.empty()) return;
  }
  std::vector<std::size_t> pos(dom.size(), 0);
  std::vector<std::size_t> table(dom.size());
  while (true) {
    for (std::size_t i = 0; i < dom.size(); ++i) table[i] = choices[i][pos[i]];
    if (!visit(FinFun(dom, cod, table))) return;
    std::size_t k = dom.size();
    while (true) {
      if (k == 0) return;
      --k;
      if (++pos[k] < choices[k].size()) break;
      pos[k] = 0;
    }
  }
}

FinSet numbered_set(std::string_view prefix, std::size_t n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::string(prefix) + std::to_string(i));
  return FinSet(std::move(names));
}

}  // namespace dcmonad

std::size_t std::hash<dcmonad::FinSet>::operator()(const dcmonad::FinSet& s) const noexcept {
  std::size_t h = s.size();
  for (const auto& e : s.elements()) h = h * 1000003u ^ std::hash<std::string>{}(e);
  return h;
}
