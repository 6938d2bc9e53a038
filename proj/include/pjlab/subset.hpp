#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

namespace pjlab {

// Coordinate subsets as bitmasks over [n], bit i == coordinate i (0-based).
using Mask = std::uint32_t;

inline int popcount(Mask m) { return std::popcount(m); }

inline Mask full_mask(int n) { return n >= 32 ? ~Mask(0) : ((Mask(1) << n) - 1); }

inline bool subset_of(Mask a, Mask b) { return (a & ~b) == 0; }

// Calls fn on every subset of s, including 0 and s itself.
template <class Fn>
void for_subsets_of(Mask s, Fn&& fn) {
  Mask t = s;
  while (true) {
    fn(t);
    if (t == 0) break;
    t = (t - 1) & s;
  }
}

// Calls fn on every proper subset of s (excludes s itself).
template <class Fn>
void for_proper_subsets_of(Mask s, Fn&& fn) {
  for_subsets_of(s, [&](Mask t) {
    if (t != s) fn(t);
  });
}

inline std::vector<int> mask_coords(Mask m) {
  std::vector<int> out;
  for (int i = 0; m; ++i, m >>= 1)
    if (m & 1) out.push_back(i);
  return out;
}

inline Mask mask_from_coords(const std::vector<int>& coords) {
  Mask m = 0;
  for (int c : coords) m |= Mask(1) << c;
  return m;
}

inline bool lex_less(Mask a, Mask b) {
  // compare sorted coordinate lists elementwise
  while (a && b) {
    int ca = std::countr_zero(a), cb = std::countr_zero(b);
    if (ca != cb) return ca < cb;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0 && b != 0;
}

// All subsets of [n] with at most max_size elements, ordered by size then by
// lexicographic coordinate list.
inline std::vector<Mask> subsets_by_size_lex(int n, int max_size) {
  std::vector<Mask> out;
  out.push_back(0);
  std::vector<Mask> cur{0};
  for (int size = 1; size <= max_size && size <= n; ++size) {
    std::vector<Mask> next;
    for (Mask m : cur) {
      int lo = m ? 31 - std::countl_zero(m) : -1;
      for (int c = lo + 1; c < n; ++c) next.push_back(m | (Mask(1) << c));
    }
    // growing by the largest coordinate keeps each size class lex-sorted only
    // partially; sort to make the order explicit
    std::sort(next.begin(), next.end(), lex_less);
    out.insert(out.end(), next.begin(), next.end());
    cur = std::move(next);
  }
  return out;
}

}  // namespace pjlab
