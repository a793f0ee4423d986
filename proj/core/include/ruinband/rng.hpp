#pragma once

#include <cstdint>
#include <random>

namespace ruinband {

using Engine = std::mt19937_64;

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed of stream `index` under `master_seed`. Streams depend only on the
/// pair, so replicate results do not depend on scheduling.
std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t index) noexcept;

/// Engine seeded from a 64-bit seed through SplitMix64 expansion.
Engine make_engine(std::uint64_t seed);

}  // namespace ruinband
