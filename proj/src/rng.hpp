// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

namespace lrctl {

// Deterministic draw helpers on top of std::mt19937_64. The standard
// distributions are implementation-defined, so the mappings are spelled
// out here to keep runs reproducible across toolchains.

/// Uniform double in [0, 1) using the top 53 bits of one draw.
inline double uniformUnit(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform double in [lo, hi).
inline double uniformIn(std::mt19937_64& rng, double lo, double hi)
{
    return lo + (hi - lo) * uniformUnit(rng);
}

/// Standard normal via Box-Muller; consumes two uniform draws.
inline double gaussian(std::mt19937_64& rng)
{
    double u1 = uniformUnit(rng);
    while (u1 <= 0.0) u1 = uniformUnit(rng);
    const double u2 = uniformUnit(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

/// Uniform integer in [0, bound) by rejection, bias-free.
inline std::uint64_t uniformBelow(std::mt19937_64& rng, std::uint64_t bound)
{
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t draw = rng();
    while (draw >= limit) draw = rng();
    return draw % bound;
}

/// Fisher-Yates permutation of {0, ..., n-1}.
inline std::vector<std::size_t> randomPermutation(std::mt19937_64& rng, std::size_t n)
{
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n; i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(uniformBelow(rng, i));
        std::swap(perm[i - 1], perm[j]);
    }
    return perm;
}

}  // namespace lrctl
