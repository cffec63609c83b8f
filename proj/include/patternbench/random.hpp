#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace patternbench {

/// The single random engine used across generation and algorithms.
using Rng = std::mt19937_64;

/// 64-bit FNV-1a of a string; stable across platforms and runs.
std::uint64_t stable_hash(std::string_view text) noexcept;

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Derives a child seed from a parent seed and an ordered list of keys.
/// Parallel work items draw their randomness from derive_seed(master, item
/// key), so results do not depend on scheduling.
std::uint64_t derive_seed(std::uint64_t parent, std::initializer_list<std::uint64_t> keys) noexcept;
std::uint64_t derive_seed(std::uint64_t parent, std::string_view key) noexcept;

/// Uniform integer in [lo, hi] (inclusive).
std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi);

/// Uniform real in [0, 1).
double uniform_unit(Rng& rng);

}  // namespace patternbench
