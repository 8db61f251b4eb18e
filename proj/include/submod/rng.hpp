#pragma once

#include <cmath>
#include <cstdint>

namespace submod {

// splitmix64; used for seed derivation and counter-based noise streams.
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline uint64_t derive_seed(uint64_t seed, uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream * 0x9e3779b97f4a7c15ull + 1));
}

// xoshiro256** with explicit distribution code so results are identical
// across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed = 0) {
    uint64_t x = seed;
    for (auto& si : s_) {
      x = splitmix64(x);
      si = x;
    }
  }

  uint64_t next() {
    const uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [lo, hi] inclusive.
  int uniform_int(int lo, int hi) {
    const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next() % span);
  }

  // Box-Muller; no cached spare so draws stay aligned with call counts.
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  Rng fork(uint64_t stream) {
    return Rng(derive_seed(splitmix64(s_[0] ^ s_[3]), stream));
  }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  uint64_t s_[4];
};

// Counter-based uniform in [0, 1); independent draws for distinct counters.
inline double hash_u01(uint64_t seed, uint64_t a, uint64_t b, uint64_t c, uint64_t d) {
  uint64_t h = splitmix64(seed ^ 0x2545f4914f6cdd1dull);
  h = splitmix64(h ^ splitmix64(a + 1));
  h = splitmix64(h ^ splitmix64(b + 0x100000001ull));
  h = splitmix64(h ^ splitmix64(c + 0x200000002ull));
  h = splitmix64(h ^ splitmix64(d + 0x300000003ull));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

inline double hash_normal(uint64_t seed, uint64_t a, uint64_t b, uint64_t c, uint64_t d) {
  double u1 = hash_u01(seed, a, b, c, 2 * d);
  while (u1 <= 0.0) u1 = 0x1.0p-53;
  const double u2 = hash_u01(seed, a, b, c, 2 * d + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

}  // namespace submod
