#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nocmap/apcg.hpp"
#include "nocmap/topology.hpp"

namespace nocmap {

/// Injective assignment of cores to tiles: tiles()[c] is the linear
/// tile index of core c. Construction validates range and injectivity.
class Mapping {
public:
    Mapping(const Topology& topology, std::vector<std::int32_t> tiles);

    const Topology& topology() const { return topology_; }
    std::int32_t core_count() const { return static_cast<std::int32_t>(tiles_.size()); }
    std::span<const std::int32_t> tiles() const { return tiles_; }

    std::int32_t tile_of(CoreId core) const {
        return tiles_[static_cast<std::size_t>(core)];
    }
    TileCoord coord_of_core(CoreId core) const {
        return coord_of(tile_of(core), topology_.n());
    }

    friend bool operator==(const Mapping& a, const Mapping& b) {
        return a.topology_.n() == b.topology_.n() && a.tiles_ == b.tiles_;
    }

private:
    Topology topology_;
    std::vector<std::int32_t> tiles_;
};

} // namespace nocmap
