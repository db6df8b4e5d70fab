#include "nocmap/report.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

#include "nocmap/serialize.hpp"

namespace nocmap {

using ordered_json = nlohmann::ordered_json;

double reduction_pct(double base, double value) {
    if (base == 0.0) return 0.0;
    return (base - value) / base * 100.0;
}

ReportFiles write_report(const std::vector<AlgorithmResult>& results,
                         const std::string& baseline) {
    if (results.empty()) throw std::invalid_argument("report needs at least one result");
    const AlgorithmResult* base = nullptr;
    for (const AlgorithmResult& r : results)
        if (r.algorithm == baseline) {
            base = &r;
            break;
        }
    if (!base)
        throw std::invalid_argument("baseline '" + baseline +
                                    "' is not among the results");

    ordered_json algorithms = ordered_json::array();
    for (const AlgorithmResult& r : results) {
        ordered_json entry;
        entry["algorithm"] = r.algorithm;
        entry["total_energy"] = r.metrics.total_energy;
        entry["comm_cost"] = r.metrics.comm_cost;
        entry["avg_latency"] = r.metrics.avg_latency;
        if (r.run) {
            entry["run"] = {{"variant", std::string(variant_name(r.run->config.variant))},
                            {"hybrid", r.run->config.seed_with_heuristic},
                            {"seed", r.run->config.seed},
                            {"simulations", r.run->config.simulation_count},
                            {"eval_max", r.run->config.eval_max},
                            {"min_cost", r.run->min_cost}};
        }
        algorithms.push_back(std::move(entry));
    }

    ordered_json reductions = ordered_json::array();
    for (const AlgorithmResult& r : results) {
        if (&r == base) continue;
        reductions.push_back(
            {{"algorithm", r.algorithm},
             {"total_energy_pct",
              reduction_pct(base->metrics.total_energy, r.metrics.total_energy)},
             {"comm_cost_pct",
              reduction_pct(base->metrics.comm_cost, r.metrics.comm_cost)},
             {"avg_latency_pct",
              reduction_pct(base->metrics.avg_latency, r.metrics.avg_latency)}});
    }

    ordered_json doc;
    doc["schema"] = "noc-map/report/1";
    doc["baseline"] = baseline;
    doc["algorithms"] = algorithms;
    doc["reductions"] = reductions;

    // Cross-check before anything leaves this function: every reduction
    // must recompute exactly from the raw metrics in the same document.
    for (const auto& red : doc["reductions"]) {
        const ordered_json* raw = nullptr;
        const ordered_json* base_raw = nullptr;
        for (const auto& alg : doc["algorithms"]) {
            if (alg["algorithm"] == red["algorithm"]) raw = &alg;
            if (alg["algorithm"] == baseline) base_raw = &alg;
        }
        if (!raw || !base_raw ||
            red["total_energy_pct"].get<double>() !=
                reduction_pct((*base_raw)["total_energy"].get<double>(),
                              (*raw)["total_energy"].get<double>()) ||
            red["comm_cost_pct"].get<double>() !=
                reduction_pct((*base_raw)["comm_cost"].get<double>(),
                              (*raw)["comm_cost"].get<double>()) ||
            red["avg_latency_pct"].get<double>() !=
                reduction_pct((*base_raw)["avg_latency"].get<double>(),
                              (*raw)["avg_latency"].get<double>()))
            throw std::logic_error("report reductions do not recompute from raw metrics");
    }

    std::string csv =
        "algorithm,total_energy,comm_cost,avg_latency,"
        "total_energy_pct,comm_cost_pct,avg_latency_pct\n";
    for (const AlgorithmResult& r : results) {
        csv += r.algorithm + "," + json_number(r.metrics.total_energy) + "," +
               json_number(r.metrics.comm_cost) + "," +
               json_number(r.metrics.avg_latency) + "," +
               json_number(
                   reduction_pct(base->metrics.total_energy, r.metrics.total_energy)) +
               "," +
               json_number(reduction_pct(base->metrics.comm_cost, r.metrics.comm_cost)) +
               "," +
               json_number(
                   reduction_pct(base->metrics.avg_latency, r.metrics.avg_latency)) +
               "\n";
    }

    return {doc.dump(2) + "\n", std::move(csv)};
}

} // namespace nocmap
