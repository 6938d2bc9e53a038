#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "pjlab/boolfn.hpp"
#include "pjlab/rng.hpp"
#include "pjlab/walsh.hpp"

namespace pjlab {

// Pr over (x, y_j) that resampling coordinate j changes f. Computed by
// grouping points into fibers over coordinate j: within a fiber the flip
// probability is sum_{a != b} w(a) w(b) [f_a != f_b].
template <class R>
R influence_exact(const FunctionRep<R>& f, int j) {
  const auto& sp = *f.space();
  require(j >= 0 && j < sp.n(), Errc::SymbolOutOfRange, "coordinate out of range");
  sp.require_enumerable(sp.outcome_count());
  const int m = sp.m(j);
  const std::uint64_t stride = sp.grid().strides[j];

  if constexpr (kExact<R>) {
    if (f.is_boolean() && f.has_table()) {
      const auto& nums = sp.point_numerators();
      const auto& tab = f.bool_values();
      // for each unordered symbol pair (a, b): mass of fibers where f_a != f_b
      Int acc = 0;
      std::vector<std::uint64_t> offs(m);
      for (int a = 0; a < m; ++a) offs[a] = stride * a;
      for_fiber(sp, Mask(1) << j, 0, [&](std::uint64_t base) {
        for (int a = 0; a < m; ++a) {
          for (int b = a + 1; b < m; ++b) {
            if (tab[base + offs[a]] != tab[base + offs[b]]) {
              // nums includes w(a); multiply in w(b) and count both orders
              acc += nums[base + offs[a]] * sp.weight_num(j, b) * 2;
            }
          }
        }
      });
      return Rat(acc, sp.total_den() * sp.coord_den(j));
    }
  }
  R acc = 0;
  for_fiber(sp, Mask(1) << j, 0, [&](std::uint64_t base) {
    R fiber_mu = sp.point_measure(base) / sp.weight(j, 0);
    for (int a = 0; a < m; ++a) {
      for (int b = a + 1; b < m; ++b) {
        R va = f.value(base + stride * a);
        R vb = f.value(base + stride * b);
        if (!(va == vb)) acc += fiber_mu * sp.weight(j, a) * sp.weight(j, b) * 2;
      }
    }
  });
  return acc;
}

template <class R>
R influence_spectral(const WalshExpansion<R>& e, int j) {
  R acc = 0;
  for (const auto& [S, v] : e.l2sq)
    if (S & (Mask(1) << j)) acc += v;
  return R(2 * acc);
}

template <class R>
R total_influence_spectral(const WalshExpansion<R>& e) {
  R acc = 0;
  for (const auto& [S, v] : e.l2sq) acc += R(popcount(S)) * v;
  return R(2 * acc);
}

template <class R>
struct InfluenceReport {
  std::vector<R> per_coord;
  R total;
  std::string method;  // exact-definitional | exact-spectral | monte-carlo
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  std::vector<double> std_error;
};

template <class R>
InfluenceReport<R> influence_exact_all(const FunctionRep<R>& f) {
  InfluenceReport<R> rep;
  rep.method = "exact-definitional";
  rep.total = 0;
  for (int j = 0; j < f.space()->n(); ++j) {
    rep.per_coord.push_back(influence_exact(f, j));
    rep.total += rep.per_coord.back();
  }
  return rep;
}

template <class R>
InfluenceReport<R> influence_spectral_all(const WalshExpansion<R>& e) {
  InfluenceReport<R> rep;
  rep.method = "exact-spectral";
  rep.total = 0;
  for (int j = 0; j < e.space->n(); ++j) {
    rep.per_coord.push_back(influence_spectral(e, j));
    rep.total += rep.per_coord.back();
  }
  return rep;
}

struct McEstimate {
  double estimate;
  double std_error;
  std::uint64_t samples;
  std::uint64_t seed;
};

// Unbiased estimator of I_f(j), deterministic per seed.
template <class R>
McEstimate influence_mc(const FunctionRep<R>& f, int j, std::uint64_t seed,
                        std::uint64_t samples) {
  const auto& sp = *f.space();
  require(j >= 0 && j < sp.n(), Errc::SymbolOutOfRange, "coordinate out of range");
  require(samples >= 1, Errc::DomainError, "need samples >= 1");
  std::vector<std::vector<double>> cum(sp.n());
  for (int i = 0; i < sp.n(); ++i) {
    double acc = 0;
    for (int a = 0; a < sp.m(i); ++a) {
      acc += to_double(sp.weight(i, a));
      cum[i].push_back(acc);
    }
    cum[i].back() = 1.0;
  }
  Rng rng(derive_seed(seed, 0x696e666c75656eULL ^ static_cast<std::uint64_t>(j)));
  auto draw = [&](int i) {
    double u = rng.uniform01();
    int a = 0;
    while (u >= cum[i][a]) ++a;
    return static_cast<std::uint8_t>(a);
  };
  std::uint64_t hits = 0;
  Point x(sp.n());
  for (std::uint64_t t = 0; t < samples; ++t) {
    for (int i = 0; i < sp.n(); ++i) x[i] = draw(i);
    std::uint8_t yj = draw(j);
    int v0 = f.bvalue_at(x);
    std::uint8_t old = x[j];
    x[j] = yj;
    int v1 = f.bvalue_at(x);
    x[j] = old;
    if (v0 != v1) ++hits;
  }
  double q = static_cast<double>(hits) / static_cast<double>(samples);
  double se = std::sqrt(q * (1 - q) / static_cast<double>(samples));
  return {q, se, samples, seed};
}

// ---- Margulis-Russo sweep ---------------------------------------------------

template <class R>
struct RussoRow {
  R p;
  R mu;               // mu_p(f)
  R total_influence;  // I_f at p
  R lhs;              // 2p(1-p) * (mu(p+h) - mu(p-h)) / (2h)
  R residual;         // |lhs - I_f|
};

// Rebuilds f's table over the p-biased space with bias p.
template <class R>
FunctionRep<R> rebias(const FunctionRep<R>& f, const R& p) {
  auto sp = ProductSpace<R>::pbiased(f.space()->n(), p);
  std::vector<std::uint8_t> tab(sp->outcome_count());
  for (std::uint64_t idx = 0; idx < tab.size(); ++idx)
    tab[idx] = static_cast<std::uint8_t>(f.bvalue(idx));
  return FunctionRep<R>::bool_table(sp, std::move(tab));
}

template <class R>
std::vector<RussoRow<R>> russo_sweep(const FunctionRep<R>& f, const std::vector<R>& grid,
                                     const R& h) {
  require(f.space()->is_binary(), Errc::AlphabetNotBinary, "the sweep needs binary alphabets");
  require(f.increasing(), Errc::NotIncreasing, "Margulis-Russo needs an increasing function");
  require(h > 0, Errc::DomainError, "need h > 0");
  std::vector<RussoRow<R>> rows;
  for (const R& p : grid) {
    require(p > 0 && p < 1 && p - h > 0 && p + h < 1, Errc::DomainError,
            "grid point (with h-neighborhood) must lie in (0,1)");
    auto fp = rebias(f, p);
    R mu = integral(fp);
    R infl = influence_exact_all(fp).total;
    R mu_hi = integral(rebias(f, R(p + h)));
    R mu_lo = integral(rebias(f, R(p - h)));
    R lhs = 2 * p * (1 - p) * (mu_hi - mu_lo) / (2 * h);
    rows.push_back({p, mu, infl, lhs, abs_val(R(lhs - infl))});
  }
  return rows;
}

}  // namespace pjlab
