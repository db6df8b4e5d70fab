#include "nocmap/topology.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace nocmap {

Topology::Topology(std::int32_t n, double channel_bandwidth,
                   std::int32_t buffer_depth)
    : n_(n), channel_bandwidth_(channel_bandwidth), buffer_depth_(buffer_depth) {
    if (n < 2) throw std::invalid_argument("mesh dimension must be >= 2");
    if (channel_bandwidth < 0.0)
        throw std::invalid_argument("channel bandwidth must be non-negative");
    if (buffer_depth < 0)
        throw std::invalid_argument("buffer depth must be non-negative");
}

std::int32_t linear_index(const TileCoord& coord, std::int32_t n) {
    return coord.layer * n * n + coord.row * n + coord.col;
}

TileCoord coord_of(std::int32_t index, std::int32_t n) {
    TileCoord c;
    c.layer = index / (n * n);
    c.row = (index / n) % n;
    c.col = index % n;
    return c;
}

std::int32_t hop_count(const TileCoord& a, const TileCoord& b) {
    return std::abs(a.layer - b.layer) + std::abs(a.row - b.row) +
           std::abs(a.col - b.col);
}

std::vector<TileCoord> xyz_route(const TileCoord& a, const TileCoord& b) {
    std::vector<TileCoord> path;
    path.reserve(static_cast<std::size_t>(hop_count(a, b)) + 1);
    TileCoord cur = a;
    path.push_back(cur);
    auto step_toward = [&](std::int32_t TileCoord::*axis) {
        while (cur.*axis != b.*axis) {
            cur.*axis += (b.*axis > cur.*axis) ? 1 : -1;
            path.push_back(cur);
        }
    };
    step_toward(&TileCoord::col);
    step_toward(&TileCoord::row);
    step_toward(&TileCoord::layer);
    return path;
}

} // namespace nocmap
