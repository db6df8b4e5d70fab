#pragma once

#include <cstdint>
#include <optional>

#include "nocmap/apcg.hpp"
#include "nocmap/mapping.hpp"
#include "nocmap/metrics.hpp"
#include "nocmap/topology.hpp"

namespace nocmap {

struct ExhaustiveResult {
    Mapping best;
    double best_value = 0.0;
    std::uint64_t assignments_evaluated = 0;
};

// Number of injective assignments of c cores onto t tiles, t!/(t-c)!.
// Saturates at UINT64_MAX instead of overflowing.
std::uint64_t injective_assignment_count(std::int32_t cores, std::int32_t tiles);

// Enumerates every injective assignment and keeps the best objective
// value. Ties keep the lexicographically smallest assignment vector.
// Refuses instances with more than 8 cores or more than 1e7 assignments
// (SizingError): beyond that the enumeration stops being a practical
// reference point.
ExhaustiveResult exhaustive_search(const Apcg& apcg, const Topology& topology,
                                   Objective objective,
                                   const EnergyParams& params = {});

// Uniform random injective assignment, reproducible from the seed.
Mapping random_mapping(const Apcg& apcg, const Topology& topology,
                       std::uint64_t seed);

} // namespace nocmap
