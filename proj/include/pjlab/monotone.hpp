#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pjlab/boolfn.hpp"
#include "pjlab/pseudojunta.hpp"

namespace pjlab {

template <class R>
struct BoostReport {
  Mask S = 0;
  R conditional = R(0);  // E[f | x_S = all-ones], measured
  R alpha = R(0);        // int f
  std::string method;    // brute-force | atom-based
};

// E[f | x_S = all-ones] on a binary space.
template <class R>
R allones_conditional(const FunctionRep<R>& f, Mask S) {
  require(f.space()->is_binary(), Errc::AlphabetNotBinary, "needs binary alphabets");
  PartialPoint y;
  y.support = S;
  y.sym.assign(popcount(S), 1);
  return conditional_mean(f, y);
}

// Smallest S (by size, then lexicographic) with |S| <= max_size whose all-ones
// restriction reaches 1 - eps; search order makes the result deterministic.
// No monotonicity gate: used directly by the non-increasing negative controls.
template <class R>
std::optional<BoostReport<R>> boost_scan(const FunctionRep<R>& f, const R& eps, int max_size) {
  const R bar = R(1) - eps;
  R alpha = integral(f);
  for (Mask S : subsets_by_size_lex(f.space()->n(), max_size)) {
    R value = allones_conditional(f, S);
    if (!(value < bar)) {
      BoostReport<R> rep;
      rep.S = S;
      rep.conditional = value;
      rep.alpha = alpha;
      rep.method = "brute-force";
      return rep;
    }
  }
  return std::nullopt;
}

// The largest all-ones conditional over |S| <= max_size (ties: first in
// (size, lex) order); the negative-control probe.
template <class R>
BoostReport<R> best_allones_conditional(const FunctionRep<R>& f, int max_size) {
  BoostReport<R> best;
  best.alpha = integral(f);
  best.method = "brute-force";
  bool first = true;
  for (Mask S : subsets_by_size_lex(f.space()->n(), max_size)) {
    R value = allones_conditional(f, S);
    if (first || value > best.conditional) {
      best.S = S;
      best.conditional = value;
      first = false;
    }
  }
  return best;
}

// Corollary-style boosting restriction for an increasing f at p <= 1/2.
template <class R>
std::optional<BoostReport<R>> boost_bruteforce(const FunctionRep<R>& f, const R& eps,
                                               int max_size) {
  require(f.increasing(), Errc::NotIncreasing, "boost needs an increasing function");
  auto p = f.space()->common_bias();
  require(p.has_value() && !(*p > scalar_cast<R>(Rat(1, 2))), Errc::DomainError,
          "boost needs a common bias p <= 1/2");
  return boost_scan(f, eps, max_size);
}

// Proof-following route: pick the densest qualifying atom (S, y0) of F_J with
// E[f | x_S = y0, J_J = S] >= 1 - eps, then measure E[f | x_S = all-ones]
// directly. Atoms are ranked by (density desc, |S| asc, S lex, y0 asc).
template <class R>
BoostReport<R> boost_via_atoms(const FunctionRep<R>& f, const JuntaCollection<R>& J,
                               const R& eps) {
  require(f.increasing(), Errc::NotIncreasing, "boost needs an increasing function");
  auto p = f.space()->common_bias();
  require(p.has_value() && !(*p > scalar_cast<R>(Rat(1, 2))), Errc::DomainError,
          "boost needs a common bias p <= 1/2");
  const auto& sp = *f.space();
  auto part = atoms(J);
  const R bar = R(1) - eps;

  struct Cand {
    R density;
    Mask S;
    std::uint64_t y;
  };
  std::vector<Cand> cands;
  for (const auto& atom : part.atoms) {
    R mass_f = 0;
    for (auto idx : atom.members) mass_f += sp.point_measure(idx) * f.value(idx);
    R density = mass_f / atom.mass;
    if (!(density < bar)) cands.push_back({density, atom.A, atom.y_index});
  }
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    if (!(a.density == b.density)) return a.density > b.density;
    int pa = popcount(a.S), pb = popcount(b.S);
    if (pa != pb) return pa < pb;
    if (a.S != b.S) return lex_less(a.S, b.S);
    return a.y < b.y;
  });
  R alpha = integral(f);
  for (const auto& c : cands) {
    R value = allones_conditional(f, c.S);
    if (!(value < bar)) {
      BoostReport<R> rep;
      rep.S = c.S;
      rep.conditional = value;
      rep.alpha = alpha;
      rep.method = "atom-based";
      return rep;
    }
  }
  fail(Errc::NoQualifyingAtom, "no atom reaches the 1 - eps density");
}

template <class R>
struct FkgReport {
  R product_integral;       // int g1 g2
  R integral_product;       // (int g1)(int g2)
  bool pass;                // int g1 g2 <= (int g1)(int g2)
};

// Increasing g1 against decreasing g2 are nonpositively correlated.
template <class R>
FkgReport<R> fkg_check(const FunctionRep<R>& g1, const FunctionRep<R>& g2) {
  require(g1.increasing(), Errc::MonotonicityViolated, "g1 must be increasing");
  require(g2.decreasing(), Errc::MonotonicityViolated, "g2 must be decreasing");
  const auto& sp = *g1.space();
  sp.require_enumerable(sp.outcome_count());
  R both = 0;
  for (std::uint64_t idx = 0; idx < sp.outcome_count(); ++idx)
    both += sp.point_measure(idx) * g1.value(idx) * g2.value(idx);
  R prod = integral(g1) * integral(g2);
  return {both, prod, !(both > prod)};
}

}  // namespace pjlab
