#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace risflow {

using Rng = std::mt19937_64;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Counter-based child seed: the master seed is folded with each key in order,
// so (master, keys...) always maps to the same stream regardless of the order
// in which tasks are executed.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys) {
    std::uint64_t s = mix64(master);
    for (auto k : keys) s = mix64(s ^ mix64(k + 0x632BE59BD9B4E019ULL));
    return s;
}

}  // namespace risflow
