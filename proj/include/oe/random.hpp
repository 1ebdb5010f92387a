#pragma once

#include <cstdint>
#include <numbers>
#include <random>

#include "oe/lattice.hpp"

namespace oe {

/// Standard complex Gaussian components from a seeded mt19937_64 via
/// Box-Muller, normalized to the unit sphere in C^N. Fully specified, so
/// runs are bit-reproducible for a given seed.
inline Vector random_unit_complex(Index n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto uniform01 = [&rng]() {
        return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
    };
    auto normal = [&]() {
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return r * std::cos(2.0 * std::numbers::pi * u2);
    };
    Vector v(n);
    for (Index k = 0; k < n; ++k) v(k) = Complex(normal(), normal());
    v /= v.norm();
    return v;
}

}  // namespace oe
