#pragma once

#include <cassert>
#include <cstdint>
#include <random>

namespace lexnav {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream seed for (master, lane a, lane b). Used to give every
// sweep cell / trial its own stream so parallel schedules cannot change results.
inline uint64_t derive_seed(uint64_t master, uint64_t a, uint64_t b = 0) {
  uint64_t h = splitmix64(master ^ 0x6a09e667f3bcc909ULL);
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ b);
  return h;
}

// mt19937_64 with hand-rolled draws: std::uniform_*_distribution output is
// not pinned by the standard, and identical seeds must give identical files.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next() { return eng_(); }

  // Unbiased integer in [0, n).
  uint64_t below(uint64_t n) {
    assert(n > 0);
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return x % n;
  }

  // Uniform in [0, 1), 53-bit resolution.
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace lexnav
