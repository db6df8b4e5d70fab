#include "nocmap/baselines.hpp"

#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "nocmap/errors.hpp"
#include "nocmap/rng.hpp"

namespace nocmap {

std::uint64_t injective_assignment_count(std::int32_t cores, std::int32_t tiles) {
    if (cores < 0 || tiles < 0 || cores > tiles) return 0;
    std::uint64_t count = 1;
    for (std::int32_t i = 0; i < cores; ++i) {
        const auto factor = static_cast<std::uint64_t>(tiles - i);
        if (count > std::numeric_limits<std::uint64_t>::max() / factor)
            return std::numeric_limits<std::uint64_t>::max();
        count *= factor;
    }
    return count;
}

namespace {

constexpr std::int32_t kMaxCores = 8;
constexpr std::uint64_t kMaxAssignments = 10'000'000;

struct SearchState {
    const Apcg& apcg;
    std::int32_t n;
    Objective objective;
    const EnergyParams& params;
    std::vector<std::int32_t> tiles;
    std::vector<char> used;
    std::vector<std::int32_t> best;
    double best_value = std::numeric_limits<double>::infinity();
    std::uint64_t evaluated = 0;
};

void recurse(SearchState& st, std::size_t core) {
    if (core == st.tiles.size()) {
        ++st.evaluated;
        const double value =
            objective_value(st.apcg, std::span<const std::int32_t>(st.tiles), st.n,
                            st.params, st.objective);
        if (value < st.best_value) {
            st.best_value = value;
            st.best = st.tiles;
        }
        return;
    }
    const auto tile_count = static_cast<std::int32_t>(st.used.size());
    for (std::int32_t t = 0; t < tile_count; ++t) {
        if (st.used[static_cast<std::size_t>(t)]) continue;
        st.used[static_cast<std::size_t>(t)] = 1;
        st.tiles[core] = t;
        recurse(st, core + 1);
        st.used[static_cast<std::size_t>(t)] = 0;
    }
}

} // namespace

ExhaustiveResult exhaustive_search(const Apcg& apcg, const Topology& topology,
                                   Objective objective,
                                   const EnergyParams& params) {
    const std::int32_t c = apcg.core_count();
    const std::int32_t tiles = topology.tile_count();
    if (c > tiles)
        throw SizingError("cannot map " + std::to_string(c) + " cores onto " +
                          std::to_string(tiles) + " tiles");
    const std::uint64_t count = injective_assignment_count(c, tiles);
    if (c > kMaxCores || count > kMaxAssignments)
        throw SizingError("exhaustive search over " + std::to_string(c) +
                          " cores and " + std::to_string(tiles) + " tiles needs " +
                          std::to_string(count) +
                          " assignments; the limit is 8 cores and 10000000 assignments");

    SearchState st{apcg,
                   topology.n(),
                   objective,
                   params,
                   std::vector<std::int32_t>(static_cast<std::size_t>(c), -1),
                   std::vector<char>(static_cast<std::size_t>(tiles), 0),
                   {},
                   std::numeric_limits<double>::infinity(),
                   0};
    recurse(st, 0);

    return {Mapping(topology, std::move(st.best)), st.best_value, st.evaluated};
}

Mapping random_mapping(const Apcg& apcg, const Topology& topology,
                       std::uint64_t seed) {
    const auto c = static_cast<std::size_t>(apcg.core_count());
    const auto tiles = static_cast<std::size_t>(topology.tile_count());
    if (c > tiles)
        throw SizingError("cannot map " + std::to_string(c) + " cores onto " +
                          std::to_string(tiles) + " tiles");

    // Partial Fisher-Yates: after i swaps the prefix holds an unbiased
    // i-element injective sample.
    std::vector<std::int32_t> pool(tiles);
    std::iota(pool.begin(), pool.end(), 0);
    CounterRng rng(CounterRng::derive_key({seed, 0x72616e646d617000ULL}));
    for (std::size_t i = 0; i < c; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.next_index(
                                      static_cast<std::uint64_t>(tiles - i)));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(c);
    return Mapping(topology, std::move(pool));
}

} // namespace nocmap
