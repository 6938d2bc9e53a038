#pragma once

#include <map>
#include <vector>

#include "pjlab/pseudojunta.hpp"
#include "pjlab/schedule.hpp"
#include "pjlab/walsh.hpp"

namespace pjlab {

template <class R>
R pow_scalar(const R& base, long long e) {
  if constexpr (kExact<R>) {
    return rat_pow(base, e);
  } else {
    return std::pow(base, static_cast<double>(e));
  }
}

// S = {S : |S| <= k, ||F_S||_inf > eps1}
template <class R>
std::vector<Mask> select_pbiased(const WalshExpansion<R>& e, const Rat& k, const R& eps1) {
  std::vector<Mask> out;
  for (const auto& [S, ninf] : e.linf)
    if (Rat(popcount(S)) <= k && ninf > eps1) out.push_back(S);
  return out;
}

// S = {S : |S| <= k, int F_S^2 1[|F_S| <= eps1] <= (eps0/k) int F_S^2},
// excluding S with F_S == 0.
template <class R>
std::vector<Mask> select_general(const WalshExpansion<R>& e, const Rat& k, const R& eps0,
                                 const R& eps1) {
  std::vector<Mask> out;
  const R ratio = eps0 / scalar_cast<R>(k);
  for (const auto& [S, tab] : e.components) {
    if (!(Rat(popcount(S)) <= k)) continue;
    const R& norm = e.l2sq.at(S);
    if (!(norm > 0)) continue;
    SubGrid g = e.space->subgrid(S);
    R small = 0;
    for (std::uint64_t y = 0; y < g.count; ++y)
      if (!(abs_val(tab[y]) > eps1)) small += e.space->sub_measure(g, y) * tab[y] * tab[y];
    if (!(small > ratio * norm)) out.push_back(S);
  }
  return out;
}

// p-biased main step: J_T(y) = 1 iff sum_{S in sel, S >= T} int 1[|F_S| >= eps1]
// >= delta mu(y). The sum does not depend on y, so J_T is a measure threshold.
template <class R>
JuntaCollection<R> build_J_pbiased(const WalshExpansion<R>& e, const std::vector<Mask>& sel,
                                   const Rat& k, const R& delta, const R& eps1) {
  const auto& sp = *e.space;
  JuntaCollection<R> J(e.space);
  // activation mass of each selected component
  std::map<Mask, R> comp_mass;
  for (Mask S : sel) {
    SubGrid g = sp.subgrid(S);
    const auto& tab = e.components.at(S);
    R mass = 0;
    for (std::uint64_t y = 0; y < g.count; ++y)
      if (!(abs_val(tab[y]) < eps1)) mass += sp.sub_measure(g, y);
    comp_mass[S] = mass;
  }
  // candidate T: subsets of selected S with |T| <= k
  std::map<Mask, R> mass_T;
  for (Mask S : sel)
    for_subsets_of(S, [&](Mask T) {
      if (Rat(popcount(T)) <= k) mass_T[T] += comp_mass[S];
    });
  for (const auto& [T, mass] : mass_T) {
    SubGrid g = sp.subgrid(T);
    std::vector<std::uint8_t> tab(g.count, 0);
    for (std::uint64_t y = 0; y < g.count; ++y)
      tab[y] = !(mass < delta * sp.sub_measure(g, y)) ? 1 : 0;
    J.set_entry(T, std::move(tab));
  }
  return J;
}

// psi_S(y) = 1 iff max_{T subseteq S} delta^(-2|S\T|)
//            int 1[|F_S(y_T, x_{S\T})| > eps1] dx_{S\T} >= 1
template <class R>
std::vector<std::uint8_t> psi_table(const WalshExpansion<R>& e, Mask S, const R& delta,
                                    const R& eps1) {
  const auto& sp = *e.space;
  SubGrid gS = sp.subgrid(S);
  const auto& FS = e.components.at(S);
  std::vector<R> ind(gS.count);
  for (std::uint64_t y = 0; y < gS.count; ++y) ind[y] = abs_val(FS[y]) > eps1 ? R(1) : R(0);

  std::vector<std::uint8_t> psi(gS.count, 0);
  for_subsets_of(S, [&](Mask T) {
    std::vector<R> IT = integrate_out(sp, S, ind, S & ~T);  // table over X^T
    R bar = pow_scalar(delta, 2 * popcount(S & ~T));
    SubGrid gT = sp.subgrid(T);
    std::vector<std::uint8_t> sym;
    for (std::uint64_t y = 0; y < gS.count; ++y) {
      if (psi[y]) continue;
      gS.decode(y, sym);
      std::uint64_t ti = 0;
      std::size_t tpos = 0;
      for (std::size_t pos = 0; pos < gS.coords.size(); ++pos)
        if (T & (Mask(1) << gS.coords[pos]))
          ti += static_cast<std::uint64_t>(sym[pos]) * gT.strides[tpos++];
      if (!(IT[ti] < bar)) psi[y] = 1;
    }
  });
  return psi;
}

// generalized Walsh expansion of F_S psi_S over X^S; keys are global masks
template <class R>
std::map<Mask, std::vector<R>> modified_component(const WalshExpansion<R>& e, Mask S,
                                                  const std::vector<std::uint8_t>& psi) {
  const auto& sp = *e.space;
  if (S == 0) {
    // X^emptyset is a single point; the expansion of a constant is itself
    R v = psi[0] ? e.components.at(0)[0] : R(0);
    return {{Mask(0), std::vector<R>{v}}};
  }
  auto sub = sp.subspace(S);
  const auto& FS = e.components.at(S);
  std::vector<R> values(FS.size());
  for (std::size_t i = 0; i < FS.size(); ++i) values[i] = psi[i] ? FS[i] : R(0);
  auto es = walsh_expand_table(sub, std::move(values));
  // remap reduced-position masks to global coordinate masks
  auto coords = mask_coords(S);
  std::map<Mask, std::vector<R>> out;
  for (auto& [rT, tab] : es.components) {
    Mask T = 0;
    for (std::size_t j = 0; j < coords.size(); ++j)
      if (rT & (Mask(1) << j)) T |= Mask(1) << coords[j];
    out[T] = std::move(tab);
  }
  return out;
}

// a_S(y) = 2^(3k) delta^(-2k) sum_{T subseteq S}
//          int 1[|F_S(y_{S\T}, x_T)| > eps1] dx_T
template <class R>
std::vector<R> a_weight_table(const WalshExpansion<R>& e, Mask S, long long k, const R& delta,
                              const R& eps1) {
  const auto& sp = *e.space;
  SubGrid gS = sp.subgrid(S);
  const auto& FS = e.components.at(S);
  std::vector<R> ind(gS.count);
  for (std::uint64_t y = 0; y < gS.count; ++y) ind[y] = abs_val(FS[y]) > eps1 ? R(1) : R(0);

  std::vector<R> a(gS.count, R(0));
  for_subsets_of(S, [&](Mask T) {
    std::vector<R> AT = integrate_out(sp, S, ind, T);  // table over X^{S\T}
    Mask F = S & ~T;
    SubGrid gF = sp.subgrid(F);
    std::vector<std::uint8_t> sym;
    for (std::uint64_t y = 0; y < gS.count; ++y) {
      gS.decode(y, sym);
      std::uint64_t fi = 0;
      std::size_t fpos = 0;
      for (std::size_t pos = 0; pos < gS.coords.size(); ++pos)
        if (F & (Mask(1) << gS.coords[pos]))
          fi += static_cast<std::uint64_t>(sym[pos]) * gF.strides[fpos++];
      a[y] += AT[fi];
    }
  });
  const R scale = pow_scalar(R(2), 3 * k) * pow_scalar(delta, -2 * k);
  for (auto& v : a) v *= scale;
  return a;
}

// xi_T(y) = 1 iff sum_{R subseteq T} sum_{S in sel, S >= T}
//           int a_S(y_R, x_{S\R}) dx_{S\R} > eps2;
// J_T(y) = 1 iff max_{R subseteq T} delta0^(-2|T\R|)
//           int xi_T(y_R, x_{T\R}) dx_{T\R} >= 1.
template <class R>
JuntaCollection<R> build_J_general(const SpacePtr<R>& space, const std::vector<Mask>& sel,
                                   const std::map<Mask, std::vector<R>>& a_tables, const Rat& k,
                                   const R& delta0, const R& eps2,
                                   std::map<Mask, std::vector<std::uint8_t>>* xi_out) {
  const auto& sp = *space;
  JuntaCollection<R> J(space);
  // B[S][R] = int a_S dx_{S\R}, a table over X^R
  std::map<Mask, std::map<Mask, std::vector<R>>> B;
  for (Mask S : sel) {
    const auto& aS = a_tables.at(S);
    for_subsets_of(S, [&](Mask Rm) { B[S][Rm] = integrate_out(sp, S, aS, S & ~Rm); });
  }
  // candidate T: subsets of selected S with |T| <= k
  std::vector<Mask> cand;
  {
    std::map<Mask, bool> seen;
    for (Mask S : sel)
      for_subsets_of(S, [&](Mask T) {
        if (Rat(popcount(T)) <= k && !seen[T]) {
          seen[T] = true;
          cand.push_back(T);
        }
      });
    std::sort(cand.begin(), cand.end());
  }
  for (Mask T : cand) {
    SubGrid gT = sp.subgrid(T);
    // xi_T
    std::vector<std::uint8_t> xi(gT.count, 0);
    std::vector<std::uint8_t> sym;
    for (std::uint64_t y = 0; y < gT.count; ++y) {
      gT.decode(y, sym);
      R total = 0;
      for_subsets_of(T, [&](Mask Rm) {
        SubGrid gR = sp.subgrid(Rm);
        std::uint64_t ri = 0;
        std::size_t rpos = 0;
        for (std::size_t pos = 0; pos < gT.coords.size(); ++pos)
          if (Rm & (Mask(1) << gT.coords[pos]))
            ri += static_cast<std::uint64_t>(sym[pos]) * gR.strides[rpos++];
        for (Mask S : sel)
          if (subset_of(T, S)) total += B.at(S).at(Rm)[ri];
      });
      xi[y] = total > eps2 ? 1 : 0;
    }
    if (xi_out) (*xi_out)[T] = xi;
    // J_T from xi_T
    std::vector<R> xiR(xi.begin(), xi.end());
    std::vector<std::uint8_t> jt(gT.count, 0);
    for_subsets_of(T, [&](Mask Rm) {
      std::vector<R> CR = integrate_out(sp, T, xiR, T & ~Rm);  // over X^R
      R bar = pow_scalar(delta0, 2 * popcount(T & ~Rm));
      SubGrid gR = sp.subgrid(Rm);
      std::vector<std::uint8_t> s2;
      for (std::uint64_t y = 0; y < gT.count; ++y) {
        if (jt[y]) continue;
        gT.decode(y, s2);
        std::uint64_t ri = 0;
        std::size_t rpos = 0;
        for (std::size_t pos = 0; pos < gT.coords.size(); ++pos)
          if (Rm & (Mask(1) << gT.coords[pos]))
            ri += static_cast<std::uint64_t>(s2[pos]) * gR.strides[rpos++];
        if (!(CR[ri] < bar)) jt[y] = 1;
      }
    });
    J.set_entry(T, std::move(jt));
  }
  return J;
}

template <class R>
struct ConstructResult {
  ParameterSchedule schedule;
  R alpha;                    // int f
  std::vector<Mask> selected; // the set family S
  std::map<Mask, std::vector<std::uint8_t>> psi;  // general mode
  std::map<Mask, std::vector<R>> G;               // general mode: G_S = top component
  std::map<Mask, std::vector<R>> a;               // general mode
  std::map<Mask, std::vector<std::uint8_t>> xi;   // general mode
  JuntaCollection<R> collection;
  FunctionRep<R> condexp;  // E[f | F_J]
  FunctionRep<R> h;
  R l1;    // measured ||f - h||_1
  R cost;  // int |J_J|
};

// Full pipeline: expand -> select -> [modify] -> build J -> E[f|F_J] -> round.
// With the unoverridden paper schedule this refuses execution via
// ScheduleInfeasible; overrides make it runnable at desk scale.
template <class R>
ConstructResult<R> construct(const FunctionRep<R>& f, const Rat& epsilon, Mode mode,
                             const std::map<std::string, Rat>& overrides = {},
                             std::size_t bit_budget = 1000000) {
  require(f.is_boolean(), Errc::NonBooleanValue, "construct needs a Boolean function");
  if (mode == Mode::PBiased)
    require(f.space()->common_bias().has_value(), Errc::AlphabetNotBinary,
            "p-biased mode needs a p-biased space");

  auto e = walsh_expand(f);
  Rat infl = [&] {
    if constexpr (kExact<R>) {
      return total_influence_spectral(e);
    } else {
      // float mode: conservative rational ceiling of the double value
      return Rat(Int(std::llround(std::ceil(total_influence_spectral(e) - 1e-12))), 1);
    }
  }();
  Int cnum = numerator(infl), cden = denominator(infl);
  Int cc = (cnum + cden - 1) / cden;  // ceil
  long long C = cc < 1 ? 1 : cc.convert_to<long long>();

  ConstructResult<R> res{make_schedule(mode, C, epsilon, overrides, bit_budget),
                         integral(f),
                         {},
                         {},
                         {},
                         {},
                         {},
                         JuntaCollection<R>(f.space()),
                         f,
                         f,
                         R(0),
                         R(0)};
  const ParameterSchedule& sch = res.schedule;
  const Rat k = sch.need(sch.k);
  const R eps1 = scalar_cast<R>(sch.need(sch.eps1));
  const R delta = scalar_cast<R>(sch.need(sch.delta));

  if (mode == Mode::PBiased) {
    res.selected = select_pbiased(e, k, eps1);
    res.collection = build_J_pbiased(e, res.selected, k, delta, eps1);
  } else {
    const R eps0 = scalar_cast<R>(sch.need(sch.eps0));
    const R delta0 = scalar_cast<R>(sch.need(sch.delta0));
    const R eps2 = scalar_cast<R>(sch.need(sch.eps2));
    auto ki = as_integer(sch.need(sch.k));
    require(ki.has_value(), Errc::DomainError,
            "the general pipeline needs an integer k (override k)");
    res.selected = select_general(e, k, eps0, eps1);
    for (Mask S : res.selected) {
      res.psi[S] = psi_table(e, S, delta, eps1);
      auto H = modified_component(e, S, res.psi[S]);
      res.G[S] = std::move(H.at(S));
      res.a[S] = a_weight_table(e, S, *ki, delta, eps1);
    }
    res.collection =
        build_J_general(f.space(), res.selected, res.a, k, delta0, eps2, &res.xi);
  }

  res.condexp = conditional_expectation(f, res.collection);
  res.h = round_half(res.condexp);
  res.l1 = l1_distance(f, res.h);
  res.cost = junta_cost(res.collection);
  return res;
}

}  // namespace pjlab
