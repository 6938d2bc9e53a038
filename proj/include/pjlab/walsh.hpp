#pragma once

#include <map>
#include <vector>

#include "pjlab/boolfn.hpp"
#include "pjlab/space.hpp"

namespace pjlab {

// The generalized Walsh (Hoeffding / Efron-Stein) expansion f = sum_S F_S,
// with F_S depending only on the coordinates in S and mean-zero in each of
// them. Components are stored as tables over X^S only.
template <class R>
struct WalshExpansion {
  SpacePtr<R> space;
  std::vector<R> base;                        // f itself, full-grid order
  std::map<Mask, std::vector<R>> components;  // S -> F_S over X^S
  std::map<Mask, R> l2sq;                     // ||F_S||_2^2
  std::map<Mask, R> linf;                     // ||F_S||_inf

  R component_at(Mask S, std::uint64_t full_idx) const {
    const auto& tab = components.at(S);
    SubGrid g = space->subgrid(S);
    std::uint64_t sub = 0;
    for (std::size_t pos = 0; pos < g.coords.size(); ++pos)
      sub += static_cast<std::uint64_t>(space->symbol_at(full_idx, g.coords[pos])) *
             g.strides[pos];
    return tab[sub];
  }

  R reconstruct(std::uint64_t full_idx) const {
    R acc = 0;
    for (const auto& [S, tab] : components) {
      (void)tab;
      acc += component_at(S, full_idx);
    }
    return acc;
  }
};

// Integrates coordinate c out of a table on X^A; returns a table on X^{A\{c}}.
template <class R>
std::vector<R> integrate_coord(const ProductSpace<R>& sp, Mask A, const std::vector<R>& table,
                               int c) {
  SubGrid g(sp.radices(), A);
  std::size_t pos = popcount(A & ((Mask(1) << c) - 1));
  std::uint64_t stride = g.strides[pos];
  std::uint64_t m = sp.m(c);
  std::vector<R> out(g.count / m, R(0));
  for (std::uint64_t idx = 0; idx < g.count; ++idx) {
    int a = static_cast<int>((idx / stride) % m);
    std::uint64_t out_idx = (idx / (stride * m)) * stride + idx % stride;
    out[out_idx] += sp.weight(c, a) * table[idx];
  }
  return out;
}

// Integrates out every coordinate in D from a table on X^A.
template <class R>
std::vector<R> integrate_out(const ProductSpace<R>& sp, Mask A, std::vector<R> table, Mask D) {
  for (int c : mask_coords(D)) {
    table = integrate_coord(sp, A, table, c);
    A &= ~(Mask(1) << c);
  }
  return table;
}

// Core expansion of an arbitrary real table via the inclusion-exclusion
// formula, with marginals int f dx_{[n]\T} precomputed for every T.
template <class R>
WalshExpansion<R> walsh_expand_table(SpacePtr<R> sp, std::vector<R> values) {
  const int n = sp->n();
  unsigned __int128 lattice = 1;
  for (int i = 0; i < n; ++i) lattice *= static_cast<unsigned>(sp->m(i) + 1);
  require(lattice <= enum_cap(), Errc::EnumerationCapExceeded,
          "subset lattice exceeds the enumeration cap");
  require(values.size() == sp->outcome_count(), Errc::TableLengthMismatch,
          "table length != outcome count");

  const Mask full = full_mask(n);
  std::vector<std::vector<R>> marg(std::size_t(1) << n);
  marg[full] = values;
  // masks in decreasing popcount order; each T integrates one coordinate out
  // of a previously computed superset
  std::vector<Mask> order;
  order.reserve(std::size_t(1) << n);
  for (Mask T = 0; T <= full; ++T) order.push_back(T);
  std::sort(order.begin(), order.end(),
            [](Mask a, Mask b) { return popcount(a) > popcount(b); });
  for (Mask T : order) {
    if (T == full) continue;
    int c = std::countr_zero(full & ~T);
    Mask parent = T | (Mask(1) << c);
    marg[T] = integrate_coord(*sp, parent, marg[parent], c);
  }

  WalshExpansion<R> e;
  e.space = sp;
  e.base = std::move(values);
  for (Mask S = 0; S <= full; ++S) {
    SubGrid gS = sp->subgrid(S);
    std::vector<R> F(gS.count, R(0));
    std::vector<std::uint8_t> sym;
    for (std::uint64_t y = 0; y < gS.count; ++y) {
      gS.decode(y, sym);
      R acc = 0;
      for_subsets_of(S, [&](Mask T) {
        // index of y_T inside X^T
        SubGrid gT = sp->subgrid(T);
        std::uint64_t ti = 0;
        std::size_t tpos = 0;
        for (std::size_t pos = 0; pos < gS.coords.size(); ++pos) {
          if (T & (Mask(1) << gS.coords[pos])) {
            ti += static_cast<std::uint64_t>(sym[pos]) * gT.strides[tpos];
            ++tpos;
          }
        }
        R term = marg[T][ti];
        if (popcount(S & ~T) % 2 == 1)
          acc -= term;
        else
          acc += term;
      });
      F[y] = acc;
    }
    R norm2 = 0, ninf = 0;
    for (std::uint64_t y = 0; y < gS.count; ++y) {
      norm2 += sp->sub_measure(gS, y) * F[y] * F[y];
      R a = abs_val(F[y]);
      if (a > ninf) ninf = a;
    }
    e.l2sq[S] = norm2;
    e.linf[S] = ninf;
    e.components[S] = std::move(F);
  }
  return e;
}

template <class R>
WalshExpansion<R> walsh_expand(const FunctionRep<R>& f) {
  const auto& sp = *f.space();
  sp.require_enumerable(sp.outcome_count());
  std::vector<R> values(sp.outcome_count());
  for (std::uint64_t idx = 0; idx < values.size(); ++idx) values[idx] = f.value(idx);
  return walsh_expand_table(f.space(), std::move(values));
}

template <class R>
struct ParsevalReport {
  R lhs;  // ||f||_2^2
  R rhs;  // sum_S ||F_S||_2^2
  R residual;
};

template <class R>
ParsevalReport<R> parseval_report(const WalshExpansion<R>& e) {
  R lhs = 0;
  for (std::uint64_t idx = 0; idx < e.base.size(); ++idx)
    lhs += e.space->point_measure(idx) * e.base[idx] * e.base[idx];
  R rhs = 0;
  for (const auto& [S, v] : e.l2sq) {
    (void)S;
    rhs += v;
  }
  return {lhs, rhs, R(lhs - rhs)};
}

// The p-biased product basis r with r(0) = -sqrt(p/(1-p)), r(1) = sqrt((1-p)/p)
// and the coefficients f_hat(S) with F_S = f_hat(S) prod_{i in S} r(x_i).
// In exact mode coefficients are carried as signed square roots of rationals.
template <class R>
struct PBiasedBasis {
  using Coeff = std::conditional_t<kExact<R>, SqrtRat, double>;
  R p;
  Coeff r0, r1;
  std::map<Mask, Coeff> coeff;
};

template <class R>
PBiasedBasis<R> pbiased_basis(const WalshExpansion<R>& e) {
  auto bias = e.space->common_bias();
  require(bias.has_value(), Errc::AlphabetNotBinary,
          "p-biased coefficients need binary alphabets with a common bias");
  PBiasedBasis<R> b;
  b.p = *bias;
  if constexpr (kExact<R>) {
    Rat q = b.p / (1 - b.p);
    b.r0 = SqrtRat::sqrt_of(q, -1);
    b.r1 = SqrtRat::sqrt_of(Rat(1) / q, +1);
    for (const auto& [S, tab] : e.components) {
      // |f_hat(S)| = ||F_S||_2, and prod r(1) > 0 fixes the sign at all-ones
      const R& at_ones = tab.back();
      int sign = at_ones > 0 ? 1 : (at_ones < 0 ? -1 : 0);
      b.coeff[S] = SqrtRat::sqrt_of(e.l2sq.at(S), sign);
    }
  } else {
    double p = b.p;
    b.r0 = -std::sqrt(p / (1 - p));
    b.r1 = std::sqrt((1 - p) / p);
    for (const auto& [S, tab] : e.components) {
      double at_ones = tab.back();
      double norm = std::sqrt(e.l2sq.at(S));
      b.coeff[S] = at_ones >= 0 ? norm : -norm;
    }
  }
  return b;
}

template <class R>
PBiasedBasis<R> pbiased_coefficients(const FunctionRep<R>& f) {
  return pbiased_basis(walsh_expand(f));
}

}  // namespace pjlab
