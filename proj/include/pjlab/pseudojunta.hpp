#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "pjlab/boolfn.hpp"
#include "pjlab/influence.hpp"
#include "pjlab/space.hpp"

namespace pjlab {

// A collection J = {J_S} of Boolean detectors J_S : X^S -> {0,1}, stored
// sparsely (absent S means J_S == 0). J_J(x) is the union of the S whose
// detector fires on x_S.
template <class R>
class JuntaCollection {
 public:
  struct Entry {
    std::vector<std::uint8_t> table;  // over X^S, enumeration order
    SubGrid grid;
  };

  explicit JuntaCollection(SpacePtr<R> space) : space_(std::move(space)) {}

  const SpacePtr<R>& space() const { return space_; }
  const std::map<Mask, Entry>& entries() const { return entries_; }

  void set_entry(Mask S, std::vector<std::uint8_t> table) {
    require(subset_of(S, full_mask(space_->n())), Errc::SupportMismatch,
            "entry mask exceeds coordinate count");
    SubGrid g = space_->subgrid(S);
    require(table.size() == g.count, Errc::TableLengthMismatch,
            "J_S table length != |X^S|");
    bool any = false;
    for (auto v : table) {
      require(v == 0 || v == 1, Errc::NonBooleanValue, "J_S entry not in {0,1}");
      any = any || v;
    }
    if (!any) {
      entries_.erase(S);  // sparse: all-zero equals absent
      return;
    }
    entries_[S] = Entry{std::move(table), std::move(g)};
  }

  void set_all_ones_indicator(Mask S) {
    SubGrid g = space_->subgrid(S);
    std::vector<std::uint8_t> tab(g.count, 0);
    std::vector<std::uint8_t> sym;
    for (std::uint64_t idx = 0; idx < g.count; ++idx) {
      g.decode(idx, sym);
      bool ones = true;
      for (auto s : sym) ones = ones && s == 1;
      tab[idx] = ones ? 1 : 0;
    }
    set_entry(S, std::move(tab));
  }

  void set_const_one(Mask S) {
    SubGrid g = space_->subgrid(S);
    set_entry(S, std::vector<std::uint8_t>(g.count, 1));
  }

  int max_arity() const {
    int k = 0;
    for (const auto& [S, e] : entries_) {
      (void)e;
      k = std::max(k, popcount(S));
    }
    return k;
  }

  // J_J(x), by full-grid index
  Mask map_at(std::uint64_t full_idx) const {
    Mask out = 0;
    for (const auto& [S, e] : entries_)
      if (e.table[sub_index(e, full_idx)]) out |= S;
    return out;
  }

  std::uint64_t sub_index(const Entry& e, std::uint64_t full_idx) const {
    std::uint64_t sub = 0;
    for (std::size_t pos = 0; pos < e.grid.coords.size(); ++pos)
      sub += static_cast<std::uint64_t>(space_->symbol_at(full_idx, e.grid.coords[pos])) *
             e.grid.strides[pos];
    return sub;
  }

 private:
  SpacePtr<R> space_;
  std::map<Mask, Entry> entries_;
};

template <class R>
Mask junta_map(const JuntaCollection<R>& J, const Point& x) {
  return J.map_at(J.space()->index_of(x));
}

// int |J_J(x)| dx, exactly
template <class R>
R junta_cost(const JuntaCollection<R>& J) {
  const auto& sp = *J.space();
  sp.require_enumerable(sp.outcome_count());
  R acc = 0;
  for (std::uint64_t idx = 0; idx < sp.outcome_count(); ++idx)
    acc += sp.point_measure(idx) * R(popcount(J.map_at(idx)));
  return acc;
}

// Monte Carlo cost estimate, deterministic per seed.
template <class R>
McEstimate junta_cost_mc(const JuntaCollection<R>& J, std::uint64_t seed, std::uint64_t samples) {
  auto pts = sample_points(*J.space(), derive_seed(seed, 0x636f7374ULL), samples);
  double acc = 0, acc2 = 0;
  for (const auto& x : pts) {
    double v = popcount(junta_map(J, x));
    acc += v;
    acc2 += v * v;
  }
  double mean = acc / static_cast<double>(samples);
  double var = acc2 / static_cast<double>(samples) - mean * mean;
  double se = std::sqrt(std::max(0.0, var) / static_cast<double>(samples));
  return {mean, se, samples, seed};
}

// The atoms of F_J: classes of the map x -> (J_J(x), x_{J_J(x)}).
template <class R>
struct Atom {
  Mask A = 0;
  std::uint64_t y_index = 0;  // index of x_A within X^A
  std::vector<std::uint64_t> members;
  R mass = R(0);
};

template <class R>
struct AtomPartition {
  SpacePtr<R> space;
  std::vector<Atom<R>> atoms;            // sorted by (A, y_index)
  std::vector<std::uint32_t> atom_of;    // full-grid index -> atom position
};

template <class R>
AtomPartition<R> atoms(const JuntaCollection<R>& J) {
  const auto& sp = *J.space();
  sp.require_enumerable(sp.outcome_count());
  AtomPartition<R> part;
  part.space = J.space();
  std::map<std::pair<Mask, std::uint64_t>, std::uint32_t> key_to_atom;
  part.atom_of.assign(sp.outcome_count(), 0);
  for (std::uint64_t idx = 0; idx < sp.outcome_count(); ++idx) {
    Mask A = J.map_at(idx);
    SubGrid g = sp.subgrid(A);
    std::uint64_t y = 0;
    for (std::size_t pos = 0; pos < g.coords.size(); ++pos)
      y += static_cast<std::uint64_t>(sp.symbol_at(idx, g.coords[pos])) * g.strides[pos];
    auto key = std::make_pair(A, y);
    auto it = key_to_atom.find(key);
    if (it == key_to_atom.end()) {
      it = key_to_atom.emplace(key, static_cast<std::uint32_t>(part.atoms.size())).first;
      Atom<R> a;
      a.A = A;
      a.y_index = y;
      part.atoms.push_back(std::move(a));
    }
    part.atoms[it->second].members.push_back(idx);
    part.atoms[it->second].mass += sp.point_measure(idx);
    part.atom_of[idx] = it->second;
  }
  // canonical order: ascending (A, y); std::map already iterates that way,
  // but atoms were appended in first-encounter order, so reorder
  std::vector<std::uint32_t> perm(part.atoms.size());
  std::uint32_t next = 0;
  for (const auto& [key, pos] : key_to_atom) {
    (void)key;
    perm[pos] = next++;
  }
  std::vector<Atom<R>> sorted(part.atoms.size());
  for (std::uint32_t old = 0; old < part.atoms.size(); ++old)
    sorted[perm[old]] = std::move(part.atoms[old]);
  part.atoms = std::move(sorted);
  for (auto& a : part.atom_of) a = perm[a];
  return part;
}

// E[f | F_J]: constant on each atom, the mass-weighted average of f there.
template <class R>
FunctionRep<R> conditional_expectation(const FunctionRep<R>& f, const JuntaCollection<R>& J) {
  const auto& sp = *f.space();
  auto part = atoms(J);
  std::vector<R> avg(part.atoms.size(), R(0));
  for (std::size_t a = 0; a < part.atoms.size(); ++a) {
    R acc = 0;
    for (auto idx : part.atoms[a].members) acc += sp.point_measure(idx) * f.value(idx);
    avg[a] = acc / part.atoms[a].mass;
  }
  std::vector<R> table(sp.outcome_count());
  for (std::uint64_t idx = 0; idx < sp.outcome_count(); ++idx)
    table[idx] = avg[part.atom_of[idx]];
  return FunctionRep<R>::real_table(f.space(), std::move(table));
}

template <class R>
bool is_measurable(const FunctionRep<R>& h, const JuntaCollection<R>& J) {
  auto part = atoms(J);
  for (const auto& atom : part.atoms) {
    R first = h.value(atom.members.front());
    for (auto idx : atom.members)
      if (!(h.value(idx) == first)) return false;
  }
  return true;
}

// h = 1 where g > 1/2, else 0 (the boundary goes to 0).
template <class R>
FunctionRep<R> round_half(const FunctionRep<R>& g) {
  const auto& sp = *g.space();
  const R half = scalar_cast<R>(Rat(1, 2));
  std::vector<std::uint8_t> tab(sp.outcome_count());
  for (std::uint64_t idx = 0; idx < sp.outcome_count(); ++idx)
    tab[idx] = g.value(idx) > half ? 1 : 0;
  return FunctionRep<R>::bool_table(g.space(), std::move(tab));
}

template <class R>
struct PropDirectReport {
  R total_influence;
  R twice_cost;
  bool pass;
};

// Proposition check: an F_J-measurable Boolean h has I_h <= 2 int |J_J|.
template <class R>
PropDirectReport<R> check_prop_direct(const JuntaCollection<R>& J, const FunctionRep<R>& h) {
  require(h.is_boolean(), Errc::NonBooleanValue, "h must be Boolean");
  require(is_measurable(h, J), Errc::NotMeasurable, "h is not F_J-measurable");
  R infl = influence_exact_all(h).total;
  R twice = 2 * junta_cost(J);
  return {infl, twice, !(infl > twice)};
}

}  // namespace pjlab
