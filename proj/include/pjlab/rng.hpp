#pragma once

#include <cstdint>
#include <random>

namespace pjlab {

// Seed splitting: every randomized routine derives its own stream from the
// master seed with splitmix64 over (seed, stream tag), so parallel sweeps and
// repeated runs stay reproducible.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(splitmix64(master) ^ stream);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t bits() { return eng_(); }

  // uniform in [0, 1) with 53 random bits
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // uniform integer in [0, n)
  std::uint64_t below(std::uint64_t n) {
    // rejection-free modulo is biased; keep rejection for determinism across platforms
    std::uint64_t limit = n * ((~std::uint64_t(0)) / n);
    std::uint64_t v;
    do { v = eng_(); } while (v >= limit);
    return v % n;
  }

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 eng_;  // bit-exact output sequence is pinned by the standard
};

}  // namespace pjlab
