#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace ticknoise {

// All stochastic code draws through these helpers so that results depend only
// on the seed, not on the standard library's distribution implementations.
using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Independent per-shard stream seeds derived from one base seed.
inline std::uint64_t shard_seed(std::uint64_t base, std::uint64_t shard) {
    return splitmix64(base ^ splitmix64(shard + 1));
}

// Uniform in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Standard normal via Box-Muller; consumes two uniforms per draw.
inline double normal_draw(Rng& rng) {
    const double u1 = 1.0 - uniform_unit(rng);  // (0, 1], keeps log finite
    const double u2 = uniform_unit(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace ticknoise
