#pragma once

#include <cstdint>
#include <random>

namespace edlab {

/// splitmix64 step; used to derive independent per-stream seeds.
inline std::uint64_t splitmix64(std::uint64_t &state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic engine for stream `index` of a run seeded with `seed`.
/// Streams are independent of the order in which they are consumed.
inline std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s ^= index * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL;
    std::uint64_t b = splitmix64(s);
    return std::mt19937_64(a ^ (b + (index << 1) + 1));
}

} // namespace edlab
