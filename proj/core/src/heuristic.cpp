#include "nocmap/heuristic.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include "nocmap/errors.hpp"

namespace nocmap {

std::vector<CoreId> build_order(const Apcg& apcg) {
    std::vector<CoreId> order(static_cast<std::size_t>(apcg.core_count()));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](CoreId a, CoreId b) {
        if (apcg.out_degree(a) != apcg.out_degree(b))
            return apcg.out_degree(a) > apcg.out_degree(b);
        if (apcg.rank(a) != apcg.rank(b)) return apcg.rank(a) > apcg.rank(b);
        return a < b;
    });
    return order;
}

std::vector<std::int32_t> diagonal_tiles(std::int32_t n) {
    std::vector<std::int32_t> tiles;
    for (std::int32_t i = 0; i + 3 <= n; ++i)
        tiles.push_back((n * n + n + 1) * (i + 1));
    return tiles;
}

CoreId next_core(const Apcg& apcg, const std::vector<CoreId>& unmapped,
                 const std::vector<CoreId>& mapped,
                 const std::vector<CoreId>& placement_order) {
    if (unmapped.empty() || mapped.empty())
        throw std::invalid_argument("next_core needs non-empty mapped and unmapped sets");

    const auto c = static_cast<std::size_t>(apcg.core_count());
    std::vector<std::size_t> pos(c, 0);
    for (std::size_t i = 0; i < placement_order.size(); ++i)
        pos[static_cast<std::size_t>(placement_order[i])] = i;

    const auto vol = apcg.volume_matrix();
    CoreId best = -1;
    std::uint64_t best_comm = 0;
    for (CoreId cand : unmapped) {
        std::uint64_t comm = 0;
        for (CoreId m : mapped)
            comm += vol[static_cast<std::size_t>(cand) * c + static_cast<std::size_t>(m)] +
                    vol[static_cast<std::size_t>(m) * c + static_cast<std::size_t>(cand)];
        if (best < 0 || comm > best_comm ||
            (comm == best_comm &&
             pos[static_cast<std::size_t>(cand)] < pos[static_cast<std::size_t>(best)]))
        {
            best = cand;
            best_comm = comm;
        }
    }
    return best;
}

namespace {

// Cells of the in-layer ring of radius r around (row, col), clockwise
// from the top point (row - r, col). r = 0 yields the center alone.
std::vector<std::pair<std::int32_t, std::int32_t>> ring_cells(std::int32_t row,
                                                              std::int32_t col,
                                                              std::int32_t r) {
    std::vector<std::pair<std::int32_t, std::int32_t>> cells;
    if (r == 0) {
        cells.emplace_back(row, col);
        return cells;
    }
    cells.reserve(static_cast<std::size_t>(4 * r));
    for (std::int32_t t = 0; t < r; ++t) cells.emplace_back(row - r + t, col + t);
    for (std::int32_t t = 0; t < r; ++t) cells.emplace_back(row + t, col + r - t);
    for (std::int32_t t = 0; t < r; ++t) cells.emplace_back(row + r - t, col - t);
    for (std::int32_t t = 0; t < r; ++t) cells.emplace_back(row - t, col - r + t);
    return cells;
}

} // namespace

std::vector<std::int32_t> lozenge_order(const TileCoord& reference, std::int32_t n) {
    const std::int32_t tile_count = n * n * n;
    std::vector<char> seen(static_cast<std::size_t>(tile_count), 0);
    seen[static_cast<std::size_t>(linear_index(reference, n))] = 1;

    std::vector<std::int32_t> out;
    out.reserve(static_cast<std::size_t>(tile_count) - 1);

    // Alpha rotation (clockwise) for odd reference columns, beta
    // (counter-clockwise) for even ones.
    const bool clockwise = (reference.col % 2) != 0;

    auto probe_ring = [&](std::int32_t layer, std::int32_t r) {
        if (layer < 0 || layer >= n) return;
        auto cells = ring_cells(reference.row, reference.col, r);
        if (!clockwise && cells.size() > 1)
            std::reverse(cells.begin() + 1, cells.end());
        for (const auto& [row, col] : cells) {
            if (row < 0 || row >= n || col < 0 || col >= n) continue;
            const std::int32_t idx = linear_index({layer, row, col}, n);
            if (!seen[static_cast<std::size_t>(idx)]) {
                seen[static_cast<std::size_t>(idx)] = 1;
                out.push_back(idx);
            }
        }
    };

    const std::int32_t d_max = 2 * (n - 1);
    for (std::int32_t d = 1; d <= d_max; ++d) {
        probe_ring(reference.layer, d);
        for (std::int32_t k = 1; k <= d && k < n; ++k) {
            probe_ring(reference.layer + k, d - k);
            probe_ring(reference.layer - k, d - k);
        }
    }

    // Tiles whose in-layer distance plus layer offset exceeds the shell
    // bound (far corners): plain index order.
    for (std::int32_t idx = 0; idx < tile_count; ++idx)
        if (!seen[static_cast<std::size_t>(idx)]) out.push_back(idx);

    return out;
}

std::int32_t find_empty_tile(const TileCoord& reference,
                             const std::vector<char>& occupied, std::int32_t n) {
    for (std::int32_t idx : lozenge_order(reference, n))
        if (!occupied[static_cast<std::size_t>(idx)]) return idx;
    throw std::runtime_error("no empty tile in the mesh");
}

HeuristicResult map_heuristic(const Apcg& apcg, const Topology& topology) {
    const std::int32_t c = apcg.core_count();
    const std::int32_t n = topology.n();
    const std::int32_t tile_count = topology.tile_count();
    if (c > tile_count)
        throw SizingError("cannot map " + std::to_string(c) + " cores onto a " +
                          std::to_string(n) + "x" + std::to_string(n) + "x" +
                          std::to_string(n) + " mesh (" +
                          std::to_string(tile_count) + " tiles)");

    const std::vector<CoreId> order = build_order(apcg);
    const auto vol = apcg.volume_matrix();
    const auto cc = static_cast<std::size_t>(c);

    std::vector<std::int32_t> assignment(cc, -1);
    std::vector<char> occupied(static_cast<std::size_t>(tile_count), 0);
    std::vector<CoreId> mapped;        // in placement order
    std::vector<char> is_mapped(cc, 0);
    SearchTrace trace;

    auto place = [&](CoreId core, std::int32_t tile, std::int32_t reference,
                     std::vector<std::int32_t> probed) {
        assignment[static_cast<std::size_t>(core)] = tile;
        occupied[static_cast<std::size_t>(tile)] = 1;
        mapped.push_back(core);
        is_mapped[static_cast<std::size_t>(core)] = 1;
        trace.push_back({core, reference, std::move(probed), tile});
    };

    const std::vector<std::int32_t> diag = diagonal_tiles(n);
    const auto seeds = std::min<std::size_t>(diag.size(), cc);
    for (std::size_t i = 0; i < seeds; ++i)
        place(order[i], diag[i], -1, {diag[i]});

    // A 2x2x2 mesh has no interior diagonal tiles; anchor the first core
    // on the center-most space-diagonal tile instead.
    if (mapped.empty() && c > 0) {
        const std::int32_t m = (n - 1) / 2;
        const std::int32_t anchor = linear_index({m, m, m}, n);
        place(order[0], anchor, -1, {anchor});
    }

    while (static_cast<std::int32_t>(mapped.size()) < c) {
        std::vector<CoreId> unmapped;
        for (CoreId core : order)
            if (!is_mapped[static_cast<std::size_t>(core)]) unmapped.push_back(core);

        const CoreId core = next_core(apcg, unmapped, mapped, order);

        // Anchor the search on the mapped core this one talks to most;
        // ties go to the earliest-mapped.
        CoreId ref_core = mapped.front();
        std::uint64_t best_pair = 0;
        for (CoreId m : mapped) {
            const std::uint64_t pair =
                vol[static_cast<std::size_t>(core) * cc + static_cast<std::size_t>(m)] +
                vol[static_cast<std::size_t>(m) * cc + static_cast<std::size_t>(core)];
            if (pair > best_pair) {
                best_pair = pair;
                ref_core = m;
            }
        }
        const std::int32_t ref_tile = assignment[static_cast<std::size_t>(ref_core)];

        std::vector<std::int32_t> probed;
        std::int32_t chosen = -1;
        for (std::int32_t idx : lozenge_order(coord_of(ref_tile, n), n)) {
            probed.push_back(idx);
            if (!occupied[static_cast<std::size_t>(idx)]) {
                chosen = idx;
                break;
            }
        }
        if (chosen < 0) throw std::runtime_error("no empty tile in the mesh");
        place(core, chosen, ref_tile, std::move(probed));
    }

    return {Mapping(topology, std::move(assignment)), std::move(trace)};
}

} // namespace nocmap
