#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pjlab/space.hpp"

namespace pjlab {

struct BuiltinSpec {
  std::string name;  // const0 const1 dictator or and parity majority threshold tribes
  int param = 0;     // dictator: 0-based index; threshold: t; tribes: width; parity: target bit
};

// A real- or Boolean-valued function on X^n. Tables are indexed in the
// space's enumeration order; builtins above the enumeration cap stay lazy.
template <class R>
class FunctionRep {
 public:
  static FunctionRep bool_table(SpacePtr<R> sp, std::vector<std::uint8_t> values);
  static FunctionRep real_table(SpacePtr<R> sp, std::vector<R> values);
  static FunctionRep builtin(SpacePtr<R> sp, BuiltinSpec spec);

  const SpacePtr<R>& space() const { return space_; }
  bool is_boolean() const { return boolean_; }
  bool has_table() const { return !btab_.empty() || !rtab_.empty(); }
  const std::optional<BuiltinSpec>& builtin_spec() const { return builtin_; }
  const std::vector<std::uint8_t>& bool_values() const;
  const std::vector<R>& real_values() const;

  // value by full-grid index (table-backed reps)
  R value(std::uint64_t idx) const;
  int bvalue(std::uint64_t idx) const;
  // value at an explicit point; works for lazy builtins and lazy restrictions
  int bvalue_at(const Point& x) const;

  // g(x) = f(y, x) on the coordinates outside T
  FunctionRep restrict(Mask T, const PartialPoint& y) const;

  bool increasing() const;  // binary alphabets only
  bool decreasing() const;

 private:
  FunctionRep() = default;
  void materialize_if_small();

  SpacePtr<R> space_;
  bool boolean_ = true;
  std::vector<std::uint8_t> btab_;
  std::vector<R> rtab_;
  std::optional<BuiltinSpec> builtin_;
  // lazy restriction chain (used only above the enumeration cap)
  std::shared_ptr<const FunctionRep<R>> parent_;
  PartialPoint fixed_;
};

int eval_builtin(const BuiltinSpec& spec, const Point& x);
void validate_builtin(const BuiltinSpec& spec, int n, bool binary);

// ---- integrals -------------------------------------------------------------

// integral of f over X^n
template <class R>
R integral(const FunctionRep<R>& f);

// ||f - g||_1 (for Boolean f, g this is Pr[f != g])
template <class R>
R l1_distance(const FunctionRep<R>& f, const FunctionRep<R>& g);

// ||f||_2^2
template <class R>
R l2sq_norm(const FunctionRep<R>& f);

// ||f - g||_2^2
template <class R>
R l2sq_distance(const FunctionRep<R>& f, const FunctionRep<R>& g);

// E[f | x_A = y] for every y in X^A, in enumeration order of X^A
template <class R>
std::vector<R> conditional_means(const FunctionRep<R>& f, Mask A);

template <class R>
R conditional_mean(const FunctionRep<R>& f, const PartialPoint& y);

// ---- implementation --------------------------------------------------------

template <class R>
FunctionRep<R> FunctionRep<R>::bool_table(SpacePtr<R> sp, std::vector<std::uint8_t> values) {
  require(sp->indexable() && values.size() == sp->outcome_count(), Errc::TableLengthMismatch,
          "table length " + std::to_string(values.size()) + " != outcome count");
  for (auto v : values)
    require(v == 0 || v == 1, Errc::NonBooleanValue, "boolean table entry not in {0,1}");
  FunctionRep f;
  f.space_ = std::move(sp);
  f.boolean_ = true;
  f.btab_ = std::move(values);
  return f;
}

template <class R>
FunctionRep<R> FunctionRep<R>::real_table(SpacePtr<R> sp, std::vector<R> values) {
  require(sp->indexable() && values.size() == sp->outcome_count(), Errc::TableLengthMismatch,
          "table length " + std::to_string(values.size()) + " != outcome count");
  FunctionRep f;
  f.space_ = std::move(sp);
  f.boolean_ = false;
  f.rtab_ = std::move(values);
  return f;
}

template <class R>
FunctionRep<R> FunctionRep<R>::builtin(SpacePtr<R> sp, BuiltinSpec spec) {
  validate_builtin(spec, sp->n(), sp->is_binary());
  FunctionRep f;
  f.space_ = std::move(sp);
  f.boolean_ = true;
  f.builtin_ = std::move(spec);
  f.materialize_if_small();
  return f;
}

template <class R>
void FunctionRep<R>::materialize_if_small() {
  if (!space_->indexable() || space_->outcome_count() > enum_cap()) return;
  std::vector<std::uint8_t> tab(space_->outcome_count());
  Point x;
  for (std::uint64_t idx = 0; idx < tab.size(); ++idx) {
    space_->grid().decode(idx, x);
    tab[idx] = static_cast<std::uint8_t>(bvalue_at(x));
  }
  btab_ = std::move(tab);
}

template <class R>
const std::vector<std::uint8_t>& FunctionRep<R>::bool_values() const {
  require(!btab_.empty(), Errc::DomainError, "function has no boolean table");
  return btab_;
}

template <class R>
const std::vector<R>& FunctionRep<R>::real_values() const {
  require(!rtab_.empty(), Errc::DomainError, "function has no real table");
  return rtab_;
}

template <class R>
R FunctionRep<R>::value(std::uint64_t idx) const {
  if (!btab_.empty()) return R(int(btab_[idx]));
  if (!rtab_.empty()) return rtab_[idx];
  return R(bvalue_at(space_->point_at(idx)));
}

template <class R>
int FunctionRep<R>::bvalue(std::uint64_t idx) const {
  require(boolean_, Errc::NonBooleanValue, "function is real-valued");
  if (!btab_.empty()) return btab_[idx];
  return bvalue_at(space_->point_at(idx));
}

template <class R>
int FunctionRep<R>::bvalue_at(const Point& x) const {
  require(boolean_, Errc::NonBooleanValue, "function is real-valued");
  if (!btab_.empty()) return btab_[space_->index_of(x)];
  if (parent_) {
    // re-embed the reduced point into the parent space
    Point full(parent_->space()->n());
    auto fixed_coords = mask_coords(fixed_.support);
    std::size_t xi = 0;
    for (int c = 0, fi = 0; c < parent_->space()->n(); ++c) {
      if (fi < static_cast<int>(fixed_coords.size()) && fixed_coords[fi] == c)
        full[c] = fixed_.sym[fi++];
      else
        full[c] = x[xi++];
    }
    return parent_->bvalue_at(full);
  }
  return eval_builtin(*builtin_, x);
}

template <class R>
FunctionRep<R> FunctionRep<R>::restrict(Mask T, const PartialPoint& y) const {
  require(y.support == T, Errc::SupportMismatch, "restriction point must live on T");
  require(subset_of(T, full_mask(space_->n())), Errc::SupportMismatch,
          "T exceeds coordinate count");
  if (T == 0) return *this;
  space_->measure(y);  // validates symbols
  Mask rest = full_mask(space_->n()) & ~T;
  require(rest != 0, Errc::EmptySpace, "cannot restrict away every coordinate");
  auto rsp = space_->subspace(rest);

  FunctionRep g;
  g.space_ = rsp;
  g.boolean_ = boolean_;
  if (has_table()) {
    if (boolean_) g.btab_.reserve(rsp->outcome_count());
    else g.rtab_.reserve(rsp->outcome_count());
    SubGrid tg = space_->subgrid(T);
    std::uint64_t y_idx = tg.index(y.sym);
    for_fiber(*space_, T, y_idx, [&](std::uint64_t idx) {
      if (boolean_) g.btab_.push_back(btab_[idx]);
      else g.rtab_.push_back(rtab_[idx]);
    });
  } else {
    g.parent_ = std::make_shared<FunctionRep<R>>(*this);
    g.fixed_ = y;
    g.materialize_if_small();
  }
  return g;
}

template <class R>
bool FunctionRep<R>::increasing() const {
  require(space_->is_binary(), Errc::AlphabetNotBinary, "monotonicity needs binary alphabets");
  const auto& sp = *space_;
  if (!has_table() && builtin_) {
    // lazy builtins above the cap: answer from the definition
    return builtin_->name != "parity";
  }
  sp.require_enumerable(sp.outcome_count());
  // all covering pairs: flip each 0 to 1
  for (std::uint64_t idx = 0; idx < sp.outcome_count(); ++idx) {
    for (int i = 0; i < sp.n(); ++i) {
      if (sp.symbol_at(idx, i) != 0) continue;
      std::uint64_t up = idx + sp.grid().strides[i];
      if (boolean_) {
        if (bvalue(idx) > bvalue(up)) return false;
      } else {
        if (value(idx) > value(up)) return false;
      }
    }
  }
  return true;
}

template <class R>
bool FunctionRep<R>::decreasing() const {
  require(space_->is_binary(), Errc::AlphabetNotBinary, "monotonicity needs binary alphabets");
  const auto& sp = *space_;
  if (!has_table() && builtin_) {
    return builtin_->name == "const0" || builtin_->name == "const1";
  }
  sp.require_enumerable(sp.outcome_count());
  for (std::uint64_t idx = 0; idx < sp.outcome_count(); ++idx) {
    for (int i = 0; i < sp.n(); ++i) {
      if (sp.symbol_at(idx, i) != 0) continue;
      std::uint64_t up = idx + sp.grid().strides[i];
      if (boolean_) {
        if (bvalue(idx) < bvalue(up)) return false;
      } else {
        if (value(idx) < value(up)) return false;
      }
    }
  }
  return true;
}

template <class R>
R integral(const FunctionRep<R>& f) {
  const auto& sp = *f.space();
  sp.require_enumerable(sp.outcome_count());
  if constexpr (kExact<R>) {
    if (f.is_boolean() && f.has_table()) {
      const auto& nums = sp.point_numerators();
      const auto& tab = f.bool_values();
      Int acc = 0;
      for (std::uint64_t idx = 0; idx < tab.size(); ++idx)
        if (tab[idx]) acc += nums[idx];
      return Rat(acc, sp.total_den());
    }
  }
  R acc = 0;
  for (std::uint64_t idx = 0; idx < sp.outcome_count(); ++idx)
    acc += sp.point_measure(idx) * f.value(idx);
  return acc;
}

template <class R>
R l1_distance(const FunctionRep<R>& f, const FunctionRep<R>& g) {
  const auto& sp = *f.space();
  require(g.space()->outcome_count() == sp.outcome_count() &&
              g.space()->radices() == sp.radices(),
          Errc::SupportMismatch, "functions live on different spaces");
  sp.require_enumerable(sp.outcome_count());
  R acc = 0;
  for (std::uint64_t idx = 0; idx < sp.outcome_count(); ++idx)
    acc += sp.point_measure(idx) * abs_val(R(f.value(idx) - g.value(idx)));
  return acc;
}

template <class R>
R l2sq_norm(const FunctionRep<R>& f) {
  const auto& sp = *f.space();
  sp.require_enumerable(sp.outcome_count());
  if (f.is_boolean()) return integral(f);  // f^2 = f
  R acc = 0;
  for (std::uint64_t idx = 0; idx < sp.outcome_count(); ++idx) {
    R v = f.value(idx);
    acc += sp.point_measure(idx) * v * v;
  }
  return acc;
}

template <class R>
R l2sq_distance(const FunctionRep<R>& f, const FunctionRep<R>& g) {
  const auto& sp = *f.space();
  sp.require_enumerable(sp.outcome_count());
  R acc = 0;
  for (std::uint64_t idx = 0; idx < sp.outcome_count(); ++idx) {
    R d = f.value(idx) - g.value(idx);
    acc += sp.point_measure(idx) * d * d;
  }
  return acc;
}

template <class R>
std::vector<R> conditional_means(const FunctionRep<R>& f, Mask A) {
  const auto& sp = *f.space();
  sp.require_enumerable(sp.outcome_count());
  SubGrid g = sp.subgrid(A);
  std::vector<R> out;
  out.reserve(g.count);
  if constexpr (kExact<R>) {
    if (f.is_boolean() && f.has_table()) {
      const auto& nums = sp.point_numerators();
      const auto& tab = f.bool_values();
      for (std::uint64_t y = 0; y < g.count; ++y) {
        Int acc = 0;
        for_fiber(sp, A, y, [&](std::uint64_t idx) {
          if (tab[idx]) acc += nums[idx];
        });
        out.push_back(Rat(acc, sp.total_den()) / sp.sub_measure(g, y));
      }
      return out;
    }
  }
  for (std::uint64_t y = 0; y < g.count; ++y) {
    R acc = 0;
    for_fiber(sp, A, y, [&](std::uint64_t idx) { acc += sp.point_measure(idx) * f.value(idx); });
    out.push_back(acc / sp.sub_measure(g, y));
  }
  return out;
}

template <class R>
R conditional_mean(const FunctionRep<R>& f, const PartialPoint& y) {
  const auto& sp = *f.space();
  SubGrid g = sp.subgrid(y.support);
  std::uint64_t y_idx = g.index(y.sym);
  if constexpr (kExact<R>) {
    if (f.is_boolean() && f.has_table()) {
      const auto& nums = sp.point_numerators();
      const auto& tab = f.bool_values();
      Int acc = 0;
      for_fiber(sp, y.support, y_idx, [&](std::uint64_t idx) {
        if (tab[idx]) acc += nums[idx];
      });
      return Rat(acc, sp.total_den()) / sp.measure(y);
    }
  }
  R acc = 0;
  for_fiber(sp, y.support, y_idx,
            [&](std::uint64_t idx) { acc += sp.point_measure(idx) * f.value(idx); });
  return acc / sp.measure(y);
}

}  // namespace pjlab
