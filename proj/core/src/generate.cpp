#include "nocmap/generate.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "nocmap/rng.hpp"

namespace nocmap {

namespace {

constexpr std::uint64_t kTagGen = 0x67656e;
constexpr int kMaxAttempts = 64;

void check(const GenSpec& spec) {
    if (spec.cores < 2) throw std::invalid_argument("generator needs at least 2 cores");
    if (!(spec.density > 0.0 && spec.density <= 1.0))
        throw std::invalid_argument("density must be within (0, 1]");
    if (spec.volume_min > spec.volume_max)
        throw std::invalid_argument("volume range is inverted");
    if (!(spec.bandwidth_min >= 0.0) || !(spec.bandwidth_min <= spec.bandwidth_max) ||
        !std::isfinite(spec.bandwidth_max))
        throw std::invalid_argument("bandwidth range must be finite, non-negative "
                                    "and ordered");
    if (spec.name.empty()) throw std::invalid_argument("graph name must be non-empty");
}

bool weakly_connected(std::int32_t cores, const std::vector<Arc>& arcs) {
    std::vector<std::int32_t> parent(static_cast<std::size_t>(cores));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::int32_t x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (const Arc& arc : arcs)
        parent[static_cast<std::size_t>(find(arc.src))] = find(arc.dst);
    for (std::int32_t i = 1; i < cores; ++i)
        if (find(i) != find(0)) return false;
    return true;
}

} // namespace

Apcg generate_apcg(const GenSpec& spec) {
    check(spec);
    const std::uint64_t volume_width = spec.volume_max - spec.volume_min + 1;

    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        CounterRng rng(CounterRng::derive_key(
            {spec.seed, kTagGen, static_cast<std::uint64_t>(attempt)}));
        std::vector<Arc> arcs;
        for (CoreId src = 0; src < spec.cores; ++src)
            for (CoreId dst = 0; dst < spec.cores; ++dst) {
                if (src == dst) continue;
                if (rng.next_unit() >= spec.density) continue;
                const std::uint64_t volume =
                    spec.volume_min + rng.next_index(volume_width);
                const double bandwidth =
                    rng.next_in(spec.bandwidth_min, spec.bandwidth_max);
                arcs.push_back({src, dst, volume, bandwidth});
            }
        if (weakly_connected(spec.cores, arcs))
            return Apcg(spec.name, spec.cores, std::move(arcs));
    }
    throw std::runtime_error("no weakly connected graph with " +
                             std::to_string(spec.cores) + " cores at density " +
                             std::to_string(spec.density) + " after " +
                             std::to_string(kMaxAttempts) + " attempts");
}

} // namespace nocmap
