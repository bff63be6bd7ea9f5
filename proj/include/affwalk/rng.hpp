#pragma once

#include "affwalk/fp.hpp"

#include <random>

namespace affwalk {

/// splitmix64 step; used to derive independent seeds from a base seed.
inline u64 mix_seed(u64 z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline u64 derive_seed(u64 base, u64 stream) { return mix_seed(base ^ mix_seed(stream)); }

/// Deterministic RNG wrapper. Only the raw mt19937_64 stream is consumed and
/// all mappings to ranges are spelled out here, so sequences are reproducible
/// across standard libraries (std distributions are not portable).
class Rng {
  public:
    explicit Rng(u64 seed) : eng_(seed) {}

    u64 next_u64() { return eng_(); }

    /// Uniform in [0, 1) with 53 random bits.
    double next_unit() { return double(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [0, n) without modulo bias.
    u64 below(u64 n) {
        if (n == 0) throw std::invalid_argument("below(0)");
        const u64 limit = ~u64(0) - ~u64(0) % n;
        u64 x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

    double uniform(double a, double b) { return a + (b - a) * next_unit(); }

  private:
    std::mt19937_64 eng_;
};

} // namespace affwalk
