#pragma once

#include <cstdint>
#include <random>

namespace cucgarch {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; decorrelates nearby seeds.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derives the seed for (stream, counter) under a root seed. All randomness
/// in the library flows through this scheme so that parallel replicates are
/// reproducible regardless of scheduling.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream,
                                 std::uint64_t counter = 0) {
    return mix64(mix64(root ^ (stream * 0xd1342543de82ef95ULL)) + counter);
}

}  // namespace cucgarch
