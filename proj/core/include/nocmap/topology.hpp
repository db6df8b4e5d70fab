#pragma once

#include <cstdint>
#include <vector>

namespace nocmap {

/// Position of a tile in an n x n x n mesh. Linear tile index is
/// layer * n^2 + row * n + col.
struct TileCoord {
    std::int32_t layer = 0;
    std::int32_t row = 0;
    std::int32_t col = 0;

    friend bool operator==(const TileCoord&, const TileCoord&) = default;
};

/// Regular 3D mesh of n^3 tiles, one router+core slot per tile.
/// Channel bandwidth and buffer depth are uniform across the mesh; they
/// are carried as topology data and not consumed by any metric.
class Topology {
public:
    explicit Topology(std::int32_t n, double channel_bandwidth = 1.0,
                      std::int32_t buffer_depth = 1);

    std::int32_t n() const { return n_; }
    std::int32_t tile_count() const { return n_ * n_ * n_; }
    double channel_bandwidth() const { return channel_bandwidth_; }
    std::int32_t buffer_depth() const { return buffer_depth_; }

    bool contains(const TileCoord& c) const {
        return c.layer >= 0 && c.layer < n_ && c.row >= 0 && c.row < n_ &&
               c.col >= 0 && c.col < n_;
    }

private:
    std::int32_t n_;
    double channel_bandwidth_;
    std::int32_t buffer_depth_;
};

std::int32_t linear_index(const TileCoord& coord, std::int32_t n);
TileCoord coord_of(std::int32_t index, std::int32_t n);

/// Hops between two tiles under dimension-ordered (XYZ) routing: the 3D
/// Manhattan distance.
std::int32_t hop_count(const TileCoord& a, const TileCoord& b);

/// Deterministic minimal route from a to b correcting col (X) first,
/// then row (Y), then layer (Z). Returns hop_count(a,b) + 1 tiles.
std::vector<TileCoord> xyz_route(const TileCoord& a, const TileCoord& b);

} // namespace nocmap
