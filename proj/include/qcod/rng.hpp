#pragma once

#include <cstdint>
#include <random>

namespace qcod::rng {

// splitmix64 finalizer (Vigna). Used as the mixing function for stream
// derivation below.
inline std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derived seed for substream `index` of a run seeded with `seed`.
// Scheme: splitmix64(splitmix64(seed) ^ (golden_ratio * (index + 1))).
// Every Monte Carlo replicate gets its own stream, so results do not
// depend on evaluation order or thread scheduling.
inline std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
    return mix(mix(seed) ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
}

inline std::mt19937_64 stream(std::uint64_t seed, std::uint64_t index) {
    return std::mt19937_64(derive(seed, index));
}

} // namespace qcod::rng
