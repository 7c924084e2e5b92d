// Copyright 2026 The covspec Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>

namespace covspec {

/// Engine used for every random draw in the library.
using Engine = std::mt19937_64;

/// SplitMix64 finalizer; a bijection on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed of substream `index` under master `seed`. Depends only on the pair,
/// so replication r draws the same numbers however work is scheduled.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Engine positioned at the start of substream `index`.
Engine make_substream(std::uint64_t seed, std::uint64_t index);

/// Calls body(i) for i in [0, count) on up to `workers` threads
/// (0 = hardware concurrency). Exceptions from body are rethrown
/// after all workers have joined (first one wins).
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& body);

}  // namespace covspec
