#pragma once

#include <string>
#include <vector>

#include "pjlab/boolfn.hpp"
#include "pjlab/pseudojunta.hpp"
#include "pjlab/rng.hpp"
#include "pjlab/space.hpp"

namespace pjlab {

struct SuiteResult {
  std::string name;
  int trials = 0;
  int passes = 0;
  std::vector<std::string> failures;  // first few failure notes
  bool ok() const { return passes == trials; }
};

std::vector<std::string> verify_suite_names();

// Runs one named invariant battery in exact arithmetic.
SuiteResult run_suite(const std::string& name, int n, int trials, std::uint64_t seed);

// A rational strictly above 1/(2e); values in [bound, 1 - bound] certify
// membership in [1/(2e), 1 - 1/(2e)].
inline Rat half_inv_e_upper() { return Rat(Int("18393972058572118"), Int("100000000000000000")); }

// ---- deterministic random instances (exact mode) ----------------------------

inline Rat rotate_bias(std::uint64_t i) {
  switch (i % 3) {
    case 0: return Rat(1, 4);
    case 1: return Rat(1, 3);
    default: return Rat(1, 2);
  }
}

inline SpacePtr<Rat> random_space(Rng& rng, int n, bool allow_nonbinary = true) {
  if (!allow_nonbinary || rng.below(3) != 0) {
    return ProductSpace<Rat>::pbiased(n, rotate_bias(rng.below(3)));
  }
  std::vector<std::vector<Rat>> coords;
  for (int i = 0; i < n; ++i) {
    int m = 2 + static_cast<int>(rng.below(2));  // 2 or 3 symbols
    std::vector<Rat> w;
    Rat sum = 0;
    for (int a = 0; a < m; ++a) {
      Rat x(1 + static_cast<long long>(rng.below(4)));
      w.push_back(x);
      sum += x;
    }
    for (auto& x : w) x /= sum;
    coords.push_back(std::move(w));
  }
  return ProductSpace<Rat>::make(std::move(coords));
}

inline FunctionRep<Rat> random_bool_function(Rng& rng, SpacePtr<Rat> sp) {
  std::vector<std::uint8_t> tab(sp->outcome_count());
  for (auto& v : tab) v = static_cast<std::uint8_t>(rng.below(2));
  return FunctionRep<Rat>::bool_table(std::move(sp), std::move(tab));
}

inline JuntaCollection<Rat> random_collection(Rng& rng, SpacePtr<Rat> sp, int max_arity,
                                              int entries) {
  JuntaCollection<Rat> J(sp);
  for (int t = 0; t < entries; ++t) {
    Mask S = static_cast<Mask>(rng.below(std::uint64_t(1) << sp->n()));
    if (popcount(S) > max_arity || S == 0) continue;
    SubGrid g = sp->subgrid(S);
    std::vector<std::uint8_t> tab(g.count);
    for (auto& v : tab) v = static_cast<std::uint8_t>(rng.below(2));
    J.set_entry(S, std::move(tab));
  }
  return J;
}

// random F_J-measurable Boolean function: one random bit per atom
inline FunctionRep<Rat> random_measurable(Rng& rng, const JuntaCollection<Rat>& J) {
  auto part = atoms(J);
  std::vector<std::uint8_t> bit(part.atoms.size());
  for (auto& b : bit) b = static_cast<std::uint8_t>(rng.below(2));
  std::vector<std::uint8_t> tab(J.space()->outcome_count());
  for (std::uint64_t idx = 0; idx < tab.size(); ++idx) tab[idx] = bit[part.atom_of[idx]];
  return FunctionRep<Rat>::bool_table(J.space(), std::move(tab));
}

// upward closure of a random table: an increasing Boolean function
inline FunctionRep<Rat> random_increasing(Rng& rng, SpacePtr<Rat> sp) {
  std::vector<std::uint8_t> tab(sp->outcome_count());
  for (auto& v : tab) v = rng.below(4) == 0 ? 1 : 0;
  const auto& g = sp->grid();
  for (std::uint64_t idx = 0; idx < tab.size(); ++idx) {
    if (!tab[idx]) continue;
    for (int i = 0; i < sp->n(); ++i)
      if (sp->symbol_at(idx, i) == 0) tab[idx + g.strides[i]] = 1;
  }
  return FunctionRep<Rat>::bool_table(std::move(sp), std::move(tab));
}

}  // namespace pjlab
