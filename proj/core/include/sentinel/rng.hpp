#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace sentinel {

using Rng = std::mt19937_64;

/// 64-bit FNV-1a; stable across platforms, used to turn identifiers into stream keys.
std::uint64_t fnv1a(std::string_view text);

/// Derive an independent generator from a root seed and a named substream.
///
/// All randomness in the project flows through here so that every output is a
/// pure function of (seed, stream name, indices), independent of evaluation order.
Rng make_stream(std::uint64_t seed, std::string_view name, std::uint64_t a = 0, std::uint64_t b = 0,
                std::uint64_t c = 0);

}  // namespace sentinel
