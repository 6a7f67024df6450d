#pragma once

#include <cstdint>

namespace cfx {

/// Seedable 64-bit generator (splitmix64). Small state, cheap to derive
/// per-sample streams from, so parallel reports are worker-count independent.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }
};

/// Derives an independent stream seed for sample index i.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t i) {
    SplitMix64 g(seed ^ (0x9e3779b97f4a7c15ull + i * 0xd1b54a32d192ed03ull));
    g.next();
    return g.next();
}

}  // namespace cfx
