#pragma once

#include <cstdint>

namespace ramp1 {

// Deterministic, platform-independent generator (xoshiro256** seeded via
// splitmix64). std::uniform_int_distribution is implementation-defined,
// so all randomized code paths in the library and tests go through this.
class Rng {
public:
  explicit Rng(uint64_t seed) {
    uint64_t x = seed;
    for (auto& w : s_) w = splitmix(x);
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

  // uniform in [0, n), n >= 1
  uint64_t below(uint64_t n) {
    const uint64_t bound = n ? (~uint64_t{0} - ~uint64_t{0} % n) : 0;
    uint64_t v = next();
    while (v >= bound) v = next();
    return v % n;
  }

  // derive an independent stream (for per-component seeding)
  Rng fork(uint64_t tag) {
    uint64_t x = next() ^ (tag * 0x9e3779b97f4a7c15ULL);
    return Rng(splitmix(x));
  }

private:
  static uint64_t splitmix(uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  static uint64_t rotl(uint64_t v, int p) {
    return (v << p) | (v >> (64 - p));
  }

  uint64_t s_[4];
};

}  // namespace ramp1
