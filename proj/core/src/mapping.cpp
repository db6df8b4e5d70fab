#include "nocmap/mapping.hpp"

#include <stdexcept>
#include <string>

#include "nocmap/errors.hpp"

namespace nocmap {

Mapping::Mapping(const Topology& topology, std::vector<std::int32_t> tiles)
    : topology_(topology), tiles_(std::move(tiles)) {
    const std::int32_t d = topology_.tile_count();
    if (static_cast<std::int32_t>(tiles_.size()) > d)
        throw SizingError("cannot map " + std::to_string(tiles_.size()) +
                          " cores onto " + std::to_string(d) + " tiles");
    std::vector<char> used(static_cast<std::size_t>(d), 0);
    for (std::size_t c = 0; c < tiles_.size(); ++c) {
        const std::int32_t t = tiles_[c];
        if (t < 0 || t >= d)
            throw std::invalid_argument("core " + std::to_string(c) +
                                        " assigned out-of-range tile " +
                                        std::to_string(t));
        if (used[static_cast<std::size_t>(t)])
            throw std::invalid_argument("tile " + std::to_string(t) +
                                        " assigned to more than one core");
        used[static_cast<std::size_t>(t)] = 1;
    }
}

} // namespace nocmap
