#pragma once

#include <cstdint>
#include <random>

namespace irsa {

using Rng = std::mt19937_64;

// SplitMix64 step: add the golden-ratio increment, then the 64-bit finalizer.
constexpr std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed of the random stream owned by one trial:
///   mix64(mix64(mix64(master) ^ point) ^ trial)
/// where `point` is the index of the sweep point (G value or energy value).
constexpr std::uint64_t trial_seed(std::uint64_t master, std::uint64_t point, std::uint64_t trial)
{
    return mix64(mix64(mix64(master) ^ point) ^ trial);
}

} // namespace irsa
