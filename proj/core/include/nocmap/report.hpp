#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nocmap/metrics.hpp"
#include "nocmap/swarm.hpp"

namespace nocmap {

/// One algorithm's outcome on a shared (apcg, mesh) instance. `run` is
/// present for swarm variants only.
struct AlgorithmResult {
    std::string algorithm;
    MetricsReport metrics;
    std::optional<RunResult> run;
};

struct ReportFiles {
    std::string json;
    std::string csv;
};

/// Percentage saved relative to base: (base - value) / base * 100.
/// A zero base yields 0 by convention.
double reduction_pct(double base, double value);

/// Side-by-side report of several algorithms against a named baseline.
/// The JSON document (schema "noc-map/report/1") lists per-algorithm
/// metrics plus reductions for every non-baseline algorithm; the CSV is
/// the same data as one flat table. Every reduction is recomputed from
/// the raw metrics in the document before returning. Throws
/// std::invalid_argument when results is empty or no entry matches
/// `baseline`.
ReportFiles write_report(const std::vector<AlgorithmResult>& results,
                         const std::string& baseline);

} // namespace nocmap
