#pragma once

#include <cstdint>

namespace fpp {

/// SplitMix64 finaliser; the fixed mixing function behind every random draw.
constexpr std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based hash of (key, counter).
constexpr std::uint64_t hash_pair(std::uint64_t key, std::uint64_t counter)
{
    return mix64(key ^ mix64(counter ^ 0x632be59bd9b4e019ULL));
}

/// Top 53 bits mapped to [0, 1).
constexpr double to_unit(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

/// Seed of replication `rep` in stream `stream`: mix(mix(master, stream), rep).
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t rep)
{
    return hash_pair(hash_pair(master, stream), rep);
}

} // namespace fpp
