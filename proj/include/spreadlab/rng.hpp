#pragma once

#include <cstdint>
#include <random>

namespace spreadlab {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

// Independent stream for (seed, index); results never depend on which
// thread consumes the stream.
Rng make_stream(std::uint64_t seed, std::uint64_t index);

inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng);
}

}  // namespace spreadlab
