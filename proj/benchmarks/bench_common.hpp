#pragma once

#include "bethe/master_function.hpp"

#include <random>

namespace bench {

// Points spread on a jittered circle, well separated for every n used here.
inline bethe::Configuration spread_points(std::size_t n, std::uint64_t seed = 7) {
    std::mt19937_64 rng(seed);
    std::vector<bethe::Complex> z;
    for (std::size_t i = 0; i < n; ++i) {
        const double jitter = 0.1 * ((rng() >> 11) * 0x1.0p-53);
        z.push_back(std::polar(1.0 + jitter, 6.283185307179586 * static_cast<double>(i) / static_cast<double>(n)));
    }
    return bethe::Configuration(z);
}

}  // namespace bench
