#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nocmap/apcg.hpp"
#include "nocmap/heuristic.hpp"
#include "nocmap/mapping.hpp"
#include "nocmap/metrics.hpp"
#include "nocmap/swarm.hpp"

namespace nocmap {

/// Shortest decimal form of v that round-trips, exactly as the JSON
/// documents print it. Summaries printed next to a JSON file go
/// through this so both show the same bytes.
std::string json_number(double v);

/// Mapping + metrics document (schema "noc-map/mapping/1").
std::string mapping_document_json(const Apcg& apcg, const std::string& algorithm,
                                  const Mapping& mapping,
                                  const MetricsReport& metrics,
                                  const EnergyParams& params);

struct MappingDocument {
    std::string apcg;
    std::string algorithm;
    std::int32_t mesh = 0;
    std::vector<std::int32_t> assignment;
};

/// Reads back the fields of a mapping document. Throws
/// std::runtime_error on malformed input.
MappingDocument parse_mapping_document(const std::string& text);

/// Totals and the per-arc breakdown as a two-section CSV.
std::string metrics_csv(const MetricsReport& metrics);

/// Swarm run document (schema "noc-map/runresult/1"): config echo (ator
/// appears only for arpso, ch only for qpso), best assignment and
/// fitness, per-simulation counters and convergence. Pure function of
/// the result's deterministic fields, so equal runs serialize to equal
/// bytes; the wall-clock measurement is deliberately left out.
std::string run_result_json(const Apcg& apcg, std::int32_t mesh_n,
                            const RunResult& result);

/// Convergence series of every simulation as CSV (columns: evaluation,
/// best_fitness) with one `# simulation k` marker per block.
std::string convergence_csv(const RunResult& result);

/// Placement trace document (schema "noc-map/trace/1").
std::string trace_json(const SearchTrace& trace);

} // namespace nocmap
