#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "nocmap/apcg.hpp"
#include "nocmap/mapping.hpp"

namespace nocmap {

/// Per-bit energies (pJ) and the latency scaling constant.
struct EnergyParams {
    double e_link_bit = 0.449;    // energy per bit per link traversal
    double e_switch_bit = 0.284;  // energy per bit per switch traversal
    double rho = 1.0;             // delay constant per hop*bit

    friend bool operator==(const EnergyParams&, const EnergyParams&) = default;
};

enum class Objective { energy, cost };

std::string_view objective_name(Objective o);
Objective objective_from_name(std::string_view name);

struct ArcMetrics {
    CoreId src = 0;
    CoreId dst = 0;
    std::int32_t hops = 0;
    double energy = 0.0;
};

/// The three figures of merit for one mapping, with per-arc breakdown.
struct MetricsReport {
    double total_energy = 0.0;  // pJ
    double comm_cost = 0.0;     // bandwidth * hops
    double avg_latency = 0.0;   // hops * volume * rho, averaged over arcs
    std::vector<ArcMetrics> per_arc;
};

/// Energy to move one bit across `hops` router-to-router steps:
/// hops * switch + (hops - 1) * link. Zero hops costs nothing.
double bit_energy(std::int32_t hops, const EnergyParams& params);

/// Assignment-level kernels: tiles[c] is the linear tile of core c on an
/// n x n x n mesh. No validation; callers guarantee a complete injective
/// assignment. The Mapping overloads below validate and delegate here,
/// so both routes produce bit-identical sums.
double total_energy(const Apcg& apcg, std::span<const std::int32_t> tiles,
                    std::int32_t n, const EnergyParams& params);
double comm_cost(const Apcg& apcg, std::span<const std::int32_t> tiles,
                 std::int32_t n);
double avg_latency(const Apcg& apcg, std::span<const std::int32_t> tiles,
                   std::int32_t n, const EnergyParams& params);

double total_energy(const Apcg& apcg, const Mapping& mapping,
                    const EnergyParams& params);
double comm_cost(const Apcg& apcg, const Mapping& mapping);
double avg_latency(const Apcg& apcg, const Mapping& mapping,
                   const EnergyParams& params);

double objective_value(const Apcg& apcg, std::span<const std::int32_t> tiles,
                       std::int32_t n, const EnergyParams& params, Objective o);
double objective_value(const Apcg& apcg, const Mapping& mapping,
                       const EnergyParams& params, Objective o);

MetricsReport evaluate_mapping(const Apcg& apcg, const Mapping& mapping,
                               const EnergyParams& params);

} // namespace nocmap
