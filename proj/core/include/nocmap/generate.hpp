#pragma once

#include <cstdint>
#include <string>

#include "nocmap/apcg.hpp"

namespace nocmap {

struct GenSpec {
    std::int32_t cores = 8;
    double density = 0.2;  // inclusion probability per ordered core pair, (0,1]
    std::uint64_t volume_min = 50;
    std::uint64_t volume_max = 5000;
    double bandwidth_min = 10.0;
    double bandwidth_max = 1000.0;
    std::uint64_t seed = 1;
    std::string name = "random";
};

/// Random benchmark graph: each ordered pair (i,j), i != j, carries an
/// arc with probability `density`, volume uniform on [volume_min,
/// volume_max], bandwidth uniform on [bandwidth_min, bandwidth_max).
/// Pure function of the spec. Draws are retried (up to 64 attempts,
/// each a fresh stream) until the graph is weakly connected; throws
/// std::runtime_error when every attempt fails.
Apcg generate_apcg(const GenSpec& spec);

} // namespace nocmap
