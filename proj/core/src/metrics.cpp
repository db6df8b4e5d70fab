#include "nocmap/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nocmap {

namespace {

void check_params(const EnergyParams& p) {
    if (!(p.e_link_bit >= 0.0) || !(p.e_switch_bit >= 0.0) || !(p.rho >= 0.0))
        throw std::invalid_argument("energy parameters must be non-negative");
}

void check_complete(const Apcg& apcg, const Mapping& mapping) {
    if (mapping.core_count() < apcg.core_count())
        throw std::invalid_argument("core " + std::to_string(mapping.core_count()) +
                                    " is unmapped");
    if (mapping.core_count() > apcg.core_count())
        throw std::invalid_argument("mapping has more cores than the graph");
}

inline std::int32_t hops_between(std::int32_t t1, std::int32_t t2, std::int32_t n) {
    const std::int32_t n2 = n * n;
    return std::abs(t1 / n2 - t2 / n2) + std::abs((t1 / n) % n - (t2 / n) % n) +
           std::abs(t1 % n - t2 % n);
}

} // namespace

std::string_view objective_name(Objective o) {
    return o == Objective::energy ? "energy" : "cost";
}

Objective objective_from_name(std::string_view name) {
    if (name == "energy") return Objective::energy;
    if (name == "cost") return Objective::cost;
    throw std::invalid_argument("unknown objective '" + std::string(name) + "'");
}

double bit_energy(std::int32_t hops, const EnergyParams& params) {
    if (hops <= 0) return 0.0;
    return static_cast<double>(hops) * params.e_switch_bit +
           static_cast<double>(hops - 1) * params.e_link_bit;
}

double total_energy(const Apcg& apcg, std::span<const std::int32_t> tiles,
                    std::int32_t n, const EnergyParams& params) {
    double total = 0.0;
    for (const Arc& a : apcg.arcs()) {
        const std::int32_t hops =
            hops_between(tiles[static_cast<std::size_t>(a.src)],
                         tiles[static_cast<std::size_t>(a.dst)], n);
        total += static_cast<double>(a.volume) * bit_energy(hops, params);
    }
    return total;
}

double comm_cost(const Apcg& apcg, std::span<const std::int32_t> tiles,
                 std::int32_t n) {
    double total = 0.0;
    for (const Arc& a : apcg.arcs()) {
        const std::int32_t hops =
            hops_between(tiles[static_cast<std::size_t>(a.src)],
                         tiles[static_cast<std::size_t>(a.dst)], n);
        total += a.bandwidth * static_cast<double>(hops);
    }
    return total;
}

double avg_latency(const Apcg& apcg, std::span<const std::int32_t> tiles,
                   std::int32_t n, const EnergyParams& params) {
    if (apcg.arcs().empty()) return 0.0;
    double numerator = 0.0;
    for (const Arc& a : apcg.arcs()) {
        const std::int32_t hops =
            hops_between(tiles[static_cast<std::size_t>(a.src)],
                         tiles[static_cast<std::size_t>(a.dst)], n);
        numerator += static_cast<double>(hops) * static_cast<double>(a.volume) *
                     params.rho;
    }
    return numerator / static_cast<double>(apcg.arcs().size());
}

double total_energy(const Apcg& apcg, const Mapping& mapping,
                    const EnergyParams& params) {
    check_params(params);
    check_complete(apcg, mapping);
    return total_energy(apcg, mapping.tiles(), mapping.topology().n(), params);
}

double comm_cost(const Apcg& apcg, const Mapping& mapping) {
    check_complete(apcg, mapping);
    return comm_cost(apcg, mapping.tiles(), mapping.topology().n());
}

double avg_latency(const Apcg& apcg, const Mapping& mapping,
                   const EnergyParams& params) {
    check_params(params);
    check_complete(apcg, mapping);
    return avg_latency(apcg, mapping.tiles(), mapping.topology().n(), params);
}

double objective_value(const Apcg& apcg, std::span<const std::int32_t> tiles,
                       std::int32_t n, const EnergyParams& params, Objective o) {
    return o == Objective::energy ? total_energy(apcg, tiles, n, params)
                                  : comm_cost(apcg, tiles, n);
}

double objective_value(const Apcg& apcg, const Mapping& mapping,
                       const EnergyParams& params, Objective o) {
    return o == Objective::energy ? total_energy(apcg, mapping, params)
                                  : comm_cost(apcg, mapping);
}

MetricsReport evaluate_mapping(const Apcg& apcg, const Mapping& mapping,
                               const EnergyParams& params) {
    check_params(params);
    check_complete(apcg, mapping);
    const std::int32_t n = mapping.topology().n();
    MetricsReport report;
    report.per_arc.reserve(apcg.arcs().size());
    for (const Arc& a : apcg.arcs()) {
        const std::int32_t hops =
            hops_between(mapping.tile_of(a.src), mapping.tile_of(a.dst), n);
        report.per_arc.push_back(
            {a.src, a.dst, hops,
             static_cast<double>(a.volume) * bit_energy(hops, params)});
    }
    report.total_energy = total_energy(apcg, mapping.tiles(), n, params);
    report.comm_cost = comm_cost(apcg, mapping.tiles(), n);
    report.avg_latency = avg_latency(apcg, mapping.tiles(), n, params);
    return report;
}

} // namespace nocmap
