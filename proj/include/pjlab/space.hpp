#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "pjlab/errors.hpp"
#include "pjlab/rational.hpp"
#include "pjlab/rng.hpp"
#include "pjlab/subset.hpp"

namespace pjlab {

// Outcome-count cap for exact enumeration, configurable via PJLAB_ENUM_CAP.
std::uint64_t enum_cap();
void set_enum_cap(std::uint64_t cap);  // 0 restores the env/default value

using Point = std::vector<std::uint8_t>;

// A point of X^S: one symbol per set bit of support, ascending coordinate order.
struct PartialPoint {
  Mask support = 0;
  std::vector<std::uint8_t> sym;

  static PartialPoint empty() { return {}; }
};

// Composes two partial points with disjoint supports.
PartialPoint compose(const PartialPoint& a, const PartialPoint& b);

// Mixed-radix indexing of X^S: coords ascending, first coordinate most
// significant, so enumeration order is lexicographic in (coordinate, symbol).
struct SubGrid {
  std::vector<int> coords;
  std::vector<int> radix;
  std::vector<std::uint64_t> strides;
  std::uint64_t count = 1;

  SubGrid() = default;
  SubGrid(const std::vector<int>& space_radices, Mask S);

  std::uint64_t index(std::span<const std::uint8_t> symbols) const;
  void decode(std::uint64_t idx, std::vector<std::uint8_t>& out) const;
  std::vector<std::uint8_t> decode(std::uint64_t idx) const;
  int symbol(std::uint64_t idx, std::size_t pos) const {
    return static_cast<int>((idx / strides[pos]) % static_cast<std::uint64_t>(radix[pos]));
  }
};

template <class R>
class ProductSpace {
 public:
  using Ptr = std::shared_ptr<const ProductSpace<R>>;

  // Validates and builds a space; throws EmptySpace / NonPositiveWeight /
  // WeightsNotNormalized.
  static Ptr make(std::vector<std::vector<R>> coords);
  static Ptr pbiased(int n, const R& p);

  int n() const { return static_cast<int>(coords_.size()); }
  int m(int i) const { return static_cast<int>(coords_[i].size()); }
  const R& weight(int i, int a) const { return coords_[i][a]; }
  const std::vector<std::vector<R>>& coords() const { return coords_; }
  std::vector<int> radices() const;

  std::uint64_t outcome_count() const { return outcome_count_; }
  bool indexable() const { return indexable_; }
  const SubGrid& grid() const { return grid_; }
  SubGrid subgrid(Mask S) const { return SubGrid(radices(), S); }

  bool is_binary() const;
  // p when every coordinate is binary with the same Pr[1] = p
  std::optional<R> common_bias() const;

  std::uint64_t index_of(const Point& x) const;
  Point point_at(std::uint64_t idx) const { return grid_.decode(idx); }
  int symbol_at(std::uint64_t idx, int i) const { return grid_.symbol(idx, i); }

  // mu of a partial point (empty support -> 1); throws SymbolOutOfRange
  R measure(const PartialPoint& y) const;
  R point_measure(std::uint64_t idx) const;
  // measure of a point of the subgrid of S
  R sub_measure(const SubGrid& g, std::uint64_t idx) const;

  void require_enumerable(std::uint64_t needed_points) const;

  // Exact-arithmetic integerization: weight(i,a) == weight_num(i,a) / coord_den(i).
  // Available only for R = Rat.
  const Int& weight_num(int i, int a) const { return wnum_[i][a]; }
  const Int& coord_den(int i) const { return wden_[i]; }
  const Int& total_den() const { return total_den_; }
  // Per-point measure numerators over the full grid (lazy; cap-guarded).
  const std::vector<Int>& point_numerators() const;

  // The product space over the coordinates in S, in ascending order.
  Ptr subspace(Mask S) const;

 private:
  ProductSpace() = default;

  std::vector<std::vector<R>> coords_;
  SubGrid grid_;
  std::uint64_t outcome_count_ = 0;
  bool indexable_ = false;

  std::vector<std::vector<Int>> wnum_;
  std::vector<Int> wden_;
  Int total_den_ = 1;
  mutable std::once_flag point_num_once_;
  mutable std::vector<Int> point_num_;
};

template <class R>
using SpacePtr = typename ProductSpace<R>::Ptr;

// Every point of X^S with its measure, in enumeration order.
template <class R>
std::vector<std::pair<PartialPoint, R>> enumerate_points(const ProductSpace<R>& sp, Mask S);

// count i.i.d. points, deterministic per seed.
template <class R>
std::vector<Point> sample_points(const ProductSpace<R>& sp, std::uint64_t seed, std::uint64_t count);

// Iterates the fiber {x : x_F = fixed} in enumeration order of the free
// coordinates, passing the full-grid index of each point.
template <class R, class Fn>
void for_fiber(const ProductSpace<R>& sp, Mask fixed_mask, std::uint64_t fixed_sub_idx, Fn&& fn) {
  const SubGrid fixed = sp.subgrid(fixed_mask);
  const SubGrid free = sp.subgrid(full_mask(sp.n()) & ~fixed_mask);
  std::uint64_t base = 0;
  for (std::size_t pos = 0; pos < fixed.coords.size(); ++pos)
    base += static_cast<std::uint64_t>(fixed.symbol(fixed_sub_idx, pos)) *
            sp.grid().strides[fixed.coords[pos]];
  // odometer over the free coordinates
  std::vector<int> sym(free.coords.size(), 0);
  std::uint64_t idx = base;
  const std::size_t k = free.coords.size();
  if (k == 0) {
    fn(idx);
    return;
  }
  while (true) {
    fn(idx);
    std::size_t pos = k;
    while (pos > 0) {
      --pos;
      int c = free.coords[pos];
      std::uint64_t st = sp.grid().strides[c];
      if (++sym[pos] < free.radix[pos]) {
        idx += st;
        break;
      }
      idx -= st * static_cast<std::uint64_t>(free.radix[pos] - 1);
      sym[pos] = 0;
      if (pos == 0) return;
    }
  }
}

extern template class ProductSpace<Rat>;
extern template class ProductSpace<double>;
extern template std::vector<std::pair<PartialPoint, Rat>> enumerate_points<Rat>(
    const ProductSpace<Rat>&, Mask);
extern template std::vector<std::pair<PartialPoint, double>> enumerate_points<double>(
    const ProductSpace<double>&, Mask);
extern template std::vector<Point> sample_points<Rat>(const ProductSpace<Rat>&, std::uint64_t,
                                                      std::uint64_t);
extern template std::vector<Point> sample_points<double>(const ProductSpace<double>&,
                                                         std::uint64_t, std::uint64_t);

}  // namespace pjlab
