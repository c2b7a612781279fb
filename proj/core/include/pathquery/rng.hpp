#pragma once

#include <cstdint>
#include <random>

namespace pathquery {

/// SplitMix64 step; used to derive independent sub-seeds from one 64-bit seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Unbiased draw from [0, n) via masked rejection. Implementation-independent,
/// unlike std::uniform_int_distribution, so transcripts replay across toolchains.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    if (n <= 1)
        return 0;
    std::uint64_t mask = n - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    for (;;) {
        const std::uint64_t draw = rng() & mask;
        if (draw < n)
            return draw;
    }
}

} // namespace pathquery
