#pragma once

// The ambient category of finite sets. Elements are opaque strings held in a
// fixed order; every derived construction names its elements deterministically
// from its inputs so that building the same thing twice gives equal values.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dcmonad/error.hpp"

namespace dcmonad {

class FinSet {
 public:
  FinSet();
  explicit FinSet(std::vector<std::string> elements);
  FinSet(std::initializer_list<std::string> elements);

  std::size_t size() const noexcept { return data_->elements.size(); }
  bool empty() const noexcept { return size() == 0; }
  const std::string& operator[](std::size_t i) const { return data_->elements[i]; }
  const std::vector<std::string>& elements() const noexcept { return data_->elements; }

  std::optional<std::size_t> find(std::string_view name) const;
  // Throws Error when the name is absent.
  std::size_t index_of(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name).has_value(); }

  friend bool operator==(const FinSet& a, const FinSet& b);

  std::string to_string() const;

 private:
  struct Data {
    std::vector<std::string> elements;
    std::unordered_map<std::string, std::size_t> index;
  };
  std::shared_ptr<const Data> data_;
};

class FinFun {
 public:
  FinFun() = default;
  // Throws CompositionError if the table is not a total function dom -> cod.
  FinFun(FinSet dom, FinSet cod, std::vector<std::size_t> table);

  static FinFun identity(const FinSet& set);
  static FinFun constant(const FinSet& dom, const FinSet& cod, std::size_t value);
  static FinFun from_names(const FinSet& dom, const FinSet& cod,
                           const std::vector<std::pair<std::string, std::string>>& graph);

  const FinSet& dom() const noexcept { return dom_; }
  const FinSet& cod() const noexcept { return cod_; }
  const std::vector<std::size_t>& table() const noexcept { return table_; }

  std::size_t operator()(std::size_t i) const { return table_[i]; }
  const std::string& apply(std::string_view name) const;

  bool is_injective() const;
  bool is_surjective() const;
  bool is_bijective() const { return is_injective() && is_surjective(); }
  std::optional<FinFun> inverse() const;

  friend bool operator==(const FinFun& a, const FinFun& b);

  std::string to_string() const;

 private:
  FinSet dom_;
  FinSet cod_;
  std::vector<std::size_t> table_;
};

// An object of the slice over `base()`.
struct SliceObject {
  FinFun proj;

  const FinSet& total() const noexcept { return proj.dom(); }
  const FinSet& base() const noexcept { return proj.cod(); }

  friend bool operator==(const SliceObject&, const SliceObject&) = default;
};

// g after f.
FinFun compose_fun(const FinFun& g, const FinFun& f);

struct Pullback {
  FinSet object;
  FinFun p1;
  FinFun p2;
};

// Elements are "(a,b)" with f(a) = g(b), ordered by (index of a, index of b).
Pullback pullback(const FinFun& f, const FinFun& g);

struct Equalizer {
  FinSet object;
  FinFun inclusion;
};

Equalizer equalizer(const FinFun& f, const FinFun& g);

struct Coproduct {
  FinSet sum;
  FinFun inl;
  FinFun inr;
};

// Tagged copies "inl(a)" then "inr(b)".
Coproduct coproduct(const FinSet& a, const FinSet& b);

// Indices of f's domain mapped to c, in domain order.
std::vector<std::size_t> fiber_indices(const FinFun& f, std::size_t c);
FinSet fiber(const FinFun& f, std::string_view c);

// Sections over each base point, kept alongside the slice so callers can decode
// elements without parsing names.
struct DependentProduct {
  SliceObject slice;
  // For every element of slice.total(): the chosen s.total() index for each
  // element of the fiber of theta, in fiber order.
  std::vector<std::vector<std::size_t>> sections;
};

// Right adjoint to pullback along theta. The fiber over b is the set of
// sections of s over theta^{-1}(b), named "(b,{e1:x1,e2:x2})".
DependentProduct dependent_product_sections(const FinFun& theta, const SliceObject& s);
SliceObject dependent_product(const FinFun& theta, const SliceObject& s);

// Pullback of a slice along f: the slice over f.dom() with total Pullback(f, s.proj).
SliceObject pullback_slice(const FinFun& f, const SliceObject& s);

// Largest domain find_commuting_bijection will search exhaustively.
inline constexpr std::size_t kBijectionSearchLimit = 8;

// (f out of A, g out of B) with f.cod() == g.cod(); the bijection beta must
// satisfy g . beta = f.
using BijectionConstraint = std::pair<FinFun, FinFun>;

// Exhaustive backtracking; throws SearchLimitError when |A| > kBijectionSearchLimit.
std::optional<FinFun> find_commuting_bijection(const FinSet& a, const FinSet& b,
                                               std::span<const BijectionConstraint> constraints);

// Visits every commuting bijection; the visitor returns false to stop early.
void for_each_commuting_bijection(const FinSet& a, const FinSet& b,
                                  std::span<const BijectionConstraint> constraints,
                                  const std::function<bool(const FinFun&)>& visit);

// Visits every function dom -> cod whose value at i lies in allowed[i] (all of
// cod when `allowed` is empty). The visitor returns false to stop early.
void for_each_function(const FinSet& dom, const FinSet& cod,
                       const std::vector<std::vector<std::size_t>>& allowed,
                       const std::function<bool(const FinFun&)>& visit);

// Canonical small sets "<prefix>0", "<prefix>1", ...
FinSet numbered_set(std::string_view prefix, std::size_t n);

std::string pair_name(std::string_view a, std::string_view b);

}  // namespace dcmonad

template <>
struct std::hash<dcmonad::FinSet> {
  std::size_t operator()(const dcmonad::FinSet& s) const noexcept;
};
