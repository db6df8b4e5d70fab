#include "nocmap/serialize.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

namespace nocmap {

using ordered_json = nlohmann::ordered_json;

std::string json_number(double v) { return ordered_json(v).dump(); }

namespace {

ordered_json params_json(const EnergyParams& params) {
    return {{"e_link_bit", params.e_link_bit},
            {"e_switch_bit", params.e_switch_bit},
            {"rho", params.rho}};
}

ordered_json metrics_json(const MetricsReport& metrics) {
    ordered_json per_arc = ordered_json::array();
    for (const ArcMetrics& arc : metrics.per_arc)
        per_arc.push_back({{"src", arc.src},
                           {"dst", arc.dst},
                           {"hops", arc.hops},
                           {"energy", arc.energy}});
    return {{"total_energy", metrics.total_energy},
            {"comm_cost", metrics.comm_cost},
            {"avg_latency", metrics.avg_latency},
            {"per_arc", std::move(per_arc)}};
}

std::string dump_document(const ordered_json& doc) { return doc.dump(2) + "\n"; }

} // namespace

std::string mapping_document_json(const Apcg& apcg, const std::string& algorithm,
                                  const Mapping& mapping,
                                  const MetricsReport& metrics,
                                  const EnergyParams& params) {
    ordered_json doc;
    doc["schema"] = "noc-map/mapping/1";
    doc["apcg"] = apcg.name();
    doc["algorithm"] = algorithm;
    doc["mesh"] = mapping.topology().n();
    doc["params"] = params_json(params);
    doc["assignment"] = std::vector<std::int32_t>(mapping.tiles().begin(),
                                                  mapping.tiles().end());
    doc["metrics"] = metrics_json(metrics);
    return dump_document(doc);
}

MappingDocument parse_mapping_document(const std::string& text) {
    try {
        const auto doc = ordered_json::parse(text);
        if (doc.at("schema").get<std::string>() != "noc-map/mapping/1")
            throw std::runtime_error("unsupported mapping document schema");
        MappingDocument out;
        out.apcg = doc.at("apcg").get<std::string>();
        out.algorithm = doc.value("algorithm", std::string());
        out.mesh = doc.at("mesh").get<std::int32_t>();
        out.assignment = doc.at("assignment").get<std::vector<std::int32_t>>();
        return out;
    } catch (const ordered_json::exception& e) {
        throw std::runtime_error(std::string("malformed mapping document: ") +
                                 e.what());
    }
}

std::string metrics_csv(const MetricsReport& metrics) {
    std::string out;
    out += "# totals\n";
    out += "total_energy,comm_cost,avg_latency\n";
    out += json_number(metrics.total_energy) + "," + json_number(metrics.comm_cost) +
           "," + json_number(metrics.avg_latency) + "\n";
    out += "# per arc\n";
    out += "src,dst,hops,energy\n";
    for (const ArcMetrics& arc : metrics.per_arc)
        out += std::to_string(arc.src) + "," + std::to_string(arc.dst) + "," +
               std::to_string(arc.hops) + "," + json_number(arc.energy) + "\n";
    return out;
}

std::string run_result_json(const Apcg& apcg, std::int32_t mesh_n,
                            const RunResult& result) {
    const SwarmConfig& config = result.config;
    ordered_json cfg;
    cfg["variant"] = std::string(variant_name(config.variant));
    cfg["hybrid"] = config.seed_with_heuristic;
    cfg["seed"] = config.seed;
    cfg["c1"] = config.c1;
    cfg["c2"] = config.c2;
    cfg["w"] = config.w;
    cfg["swarm_size"] = config.swarm_size;
    cfg["eval_max"] = config.eval_max;
    cfg["simulations"] = config.simulation_count;
    if (config.variant == SwarmVariant::arpso) cfg["ator"] = config.ator;
    if (config.variant == SwarmVariant::qpso) cfg["ch"] = config.ch;

    ordered_json sims = ordered_json::array();
    for (const SimulationStats& stats : result.simulations) {
        ordered_json convergence = ordered_json::array();
        for (const ConvergencePoint& point : stats.convergence)
            convergence.push_back({point.evaluation, point.best_fitness});
        sims.push_back({{"evaluations", stats.evaluations},
                        {"best_fitness", stats.best_fitness},
                        {"attraction_steps", stats.attraction_steps},
                        {"repulsion_steps", stats.repulsion_steps},
                        {"qa_steps", stats.qa_steps},
                        {"convergence", std::move(convergence)}});
    }

    ordered_json doc;
    doc["schema"] = "noc-map/runresult/1";
    doc["apcg"] = apcg.name();
    doc["mesh"] = mesh_n;
    doc["objective"] = std::string(objective_name(result.objective));
    doc["params"] = params_json(result.params);
    doc["config"] = std::move(cfg);
    doc["best"] = {{"fitness", result.min_cost},
                   {"simulation", result.best_simulation},
                   {"assignment", result.best_tiles}};
    doc["simulations"] = std::move(sims);
    return dump_document(doc);
}

std::string convergence_csv(const RunResult& result) {
    std::string out = "evaluation,best_fitness\n";
    for (std::size_t sim = 0; sim < result.simulations.size(); ++sim) {
        out += "# simulation " + std::to_string(sim) + "\n";
        for (const ConvergencePoint& point : result.simulations[sim].convergence)
            out += std::to_string(point.evaluation) + "," +
                   json_number(point.best_fitness) + "\n";
    }
    return out;
}

std::string trace_json(const SearchTrace& trace) {
    ordered_json placements = ordered_json::array();
    for (const PlacementStep& step : trace)
        placements.push_back({{"core", step.core},
                              {"reference_tile", step.reference_tile},
                              {"probed", step.probed},
                              {"chosen_tile", step.chosen_tile}});
    ordered_json doc;
    doc["schema"] = "noc-map/trace/1";
    doc["placements"] = std::move(placements);
    return dump_document(doc);
}

} // namespace nocmap
