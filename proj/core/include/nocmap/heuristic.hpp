#pragma once

#include <cstdint>
#include <vector>

#include "nocmap/apcg.hpp"
#include "nocmap/mapping.hpp"
#include "nocmap/topology.hpp"

namespace nocmap {

/// One placement decision. Seed placements (diagonal tiles, or the
/// anchor tile when the mesh has no interior diagonal) carry
/// reference_tile = -1 and a single probed entry.
struct PlacementStep {
    CoreId core = 0;
    std::int32_t reference_tile = -1;
    std::vector<std::int32_t> probed;  // tiles probed, in order, up to the choice
    std::int32_t chosen_tile = -1;
};

using SearchTrace = std::vector<PlacementStep>;

struct HeuristicResult {
    Mapping mapping;
    SearchTrace trace;
};

/// Placement order: descending out-degree, ties by descending rank,
/// remaining ties by ascending core id.
std::vector<CoreId> build_order(const Apcg& apcg);

/// Interior space-diagonal tiles (layer = row = col = i+1 for
/// i = 0..n-3), as linear indices (n^2 + n + 1) * (i + 1). The two
/// diagonal end tiles are left out; empty for n = 2.
std::vector<std::int32_t> diagonal_tiles(std::int32_t n);

/// The unmapped core with the largest total volume to/from the mapped
/// set; ties broken by placement-order position.
CoreId next_core(const Apcg& apcg, const std::vector<CoreId>& unmapped,
                 const std::vector<CoreId>& mapped,
                 const std::vector<CoreId>& placement_order);

/// Normative probe order around a reference tile. Tiles are enumerated
/// in shells of growing distance d = 1..2(n-1): first the in-layer ring
/// of radius d around (row, col), then the same lozenge cross-section in
/// layer+1, layer-1, layer+2, ... (radius shrinking by one per layer
/// step). Within a ring the sweep starts at (row-d, col) and runs
/// clockwise when the reference column is odd, counter-clockwise when
/// even. Tiles beyond the last shell (far corners) follow in ascending
/// linear order. The reference tile itself is excluded.
std::vector<std::int32_t> lozenge_order(const TileCoord& reference, std::int32_t n);

/// First empty tile in lozenge_order(reference, n).
std::int32_t find_empty_tile(const TileCoord& reference,
                             const std::vector<char>& occupied, std::int32_t n);

/// Full placement: order cores, seed the interior diagonal tiles, then
/// repeatedly place the most-communicating unmapped core on the first
/// empty tile around its strongest mapped partner. Deterministic.
HeuristicResult map_heuristic(const Apcg& apcg, const Topology& topology);

} // namespace nocmap
