#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nocmap/apcg_io.hpp"
#include "nocmap/baselines.hpp"
#include "nocmap/errors.hpp"
#include "nocmap/generate.hpp"
#include "nocmap/heuristic.hpp"
#include "nocmap/report.hpp"
#include "nocmap/serialize.hpp"
#include "nocmap/swarm.hpp"

namespace {

using namespace nocmap;

// Documented default mesh: 3x3x3 for anything that fits (27 cores or
// fewer), otherwise the smallest cube that holds the graph.
std::int32_t default_mesh(std::int32_t cores) {
    std::int32_t n = 3;
    while (n * n * n < cores) ++n;
    return n;
}

double parse_number(std::string_view token) {
    double value = 0.0;
    const char* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc() || ptr != end)
        throw std::invalid_argument("--params expects link=F,switch=F,rho=F");
    return value;
}

EnergyParams parse_params_flag(const std::string& text) {
    EnergyParams params;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        const std::string_view item = std::string_view(text).substr(pos, comma - pos);
        pos = comma + 1;
        const std::size_t eq = item.find('=');
        if (eq == std::string_view::npos)
            throw std::invalid_argument("--params expects link=F,switch=F,rho=F");
        const std::string_view key = item.substr(0, eq);
        const double value = parse_number(item.substr(eq + 1));
        if (key == "link")
            params.e_link_bit = value;
        else if (key == "switch")
            params.e_switch_bit = value;
        else if (key == "rho")
            params.rho = value;
        else
            throw std::invalid_argument("--params: unknown key '" + std::string(key) +
                                        "' (expected link, switch or rho)");
    }
    return params;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << content;
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string bool_name(bool b) { return b ? "true" : "false"; }

std::string assignment_string(std::span<const std::int32_t> tiles) {
    std::string out = "[";
    for (std::size_t i = 0; i < tiles.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(tiles[i]);
    }
    return out + "]";
}

void print_metrics(const MetricsReport& metrics) {
    std::cout << "total_energy: " << json_number(metrics.total_energy) << "\n";
    std::cout << "comm_cost: " << json_number(metrics.comm_cost) << "\n";
    std::cout << "avg_latency: " << json_number(metrics.avg_latency) << "\n";
}

struct AlgorithmSpec {
    std::string name;
    bool is_swarm = false;
    SwarmVariant variant = SwarmVariant::pso;
    bool hybrid = false;
};

AlgorithmSpec algorithm_from_name(const std::string& name) {
    if (name == "heuristic" || name == "random" || name == "exhaustive")
        return {name, false, SwarmVariant::pso, false};
    std::string_view rest = name;
    bool hybrid = false;
    if (!rest.empty() && rest.front() == 'h') {
        hybrid = true;
        rest.remove_prefix(1);
    }
    if (rest == "pso" || rest == "arpso" || rest == "qpso")
        return {name, true, variant_from_name(rest), hybrid};
    throw std::invalid_argument(
        "unknown algorithm '" + name +
        "' (expected heuristic, random, exhaustive, pso, hpso, arpso, harpso, "
        "qpso or hqpso)");
}

struct MapArgs {
    std::string apcg_path;
    std::int32_t mesh = 0;
    std::string objective = "energy";
    std::string params;
    std::string out;
    std::string trace;
};

struct EvaluateArgs {
    std::string apcg_path;
    std::string mapping_path;
    std::int32_t mesh = 0;
    std::string objective = "energy";
    std::string params;
    std::string out;
};

struct OptimizeArgs {
    std::string apcg_path;
    std::int32_t mesh = 0;
    std::string variant = "pso";
    bool hybrid = false;
    std::uint64_t seed = 1;
    std::int64_t evals = 0;
    std::int32_t swarm = 0;
    std::int32_t sims = 0;
    std::int64_t ator = 0;
    double ch = 0.0;
    std::string objective = "energy";
    std::string params;
    std::string out;
};

struct CompareArgs {
    std::string apcg_path;
    std::vector<std::string> algorithms;
    std::string baseline;
    std::int32_t mesh = 0;
    std::uint64_t seed = 1;
    std::int64_t evals = 0;
    std::int32_t swarm = 0;
    std::int32_t sims = 0;
    std::string objective = "energy";
    std::string params;
    std::string out;
    std::string report = "json";
};

struct GenerateArgs {
    GenSpec spec;
    std::string out;
};

void print_header(const Apcg& apcg, std::int32_t mesh, Objective objective) {
    std::cout << "apcg: " << apcg.name() << "\n";
    std::cout << "cores: " << apcg.core_count() << "\n";
    std::cout << "mesh: " << mesh << "\n";
    std::cout << "objective: " << objective_name(objective) << "\n";
}

int cmd_map(const MapArgs& args) {
    const Apcg apcg = load_apcg(args.apcg_path);
    const std::int32_t n = args.mesh > 0 ? args.mesh : default_mesh(apcg.core_count());
    const Objective objective = objective_from_name(args.objective);
    const EnergyParams params = parse_params_flag(args.params);

    const Topology topology(n);
    const HeuristicResult result = map_heuristic(apcg, topology);
    const MetricsReport metrics = evaluate_mapping(apcg, result.mapping, params);

    print_header(apcg, n, objective);
    std::cout << "algorithm: heuristic\n";
    std::cout << "assignment: " << assignment_string(result.mapping.tiles()) << "\n";
    print_metrics(metrics);

    if (!args.out.empty()) {
        write_text_file(args.out, mapping_document_json(apcg, "heuristic",
                                                        result.mapping, metrics, params));
        std::cout << "wrote: " << args.out << "\n";
    }
    if (!args.trace.empty()) {
        write_text_file(args.trace, trace_json(result.trace));
        std::cout << "wrote: " << args.trace << "\n";
    }
    return 0;
}

int cmd_evaluate(const EvaluateArgs& args) {
    const Apcg apcg = load_apcg(args.apcg_path);
    std::ifstream in(args.mapping_path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + args.mapping_path + " for reading");
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    const MappingDocument doc = parse_mapping_document(text);

    const std::int32_t n = args.mesh > 0 ? args.mesh : doc.mesh;
    const Objective objective = objective_from_name(args.objective);
    const EnergyParams params = parse_params_flag(args.params);

    std::optional<Mapping> mapping;
    try {
        mapping.emplace(Topology(n), doc.assignment);
    } catch (const SizingError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error("invalid mapping document: " + std::string(e.what()));
    }
    const MetricsReport metrics = evaluate_mapping(apcg, *mapping, params);

    print_header(apcg, n, objective);
    std::cout << "algorithm: " << (doc.algorithm.empty() ? "unknown" : doc.algorithm)
              << "\n";
    std::cout << "assignment: " << assignment_string(mapping->tiles()) << "\n";
    print_metrics(metrics);
    std::cout << "objective_value: "
              << json_number(objective_value(apcg, *mapping, params, objective)) << "\n";

    if (!args.out.empty()) {
        write_text_file(args.out,
                        mapping_document_json(apcg, doc.algorithm, *mapping, metrics,
                                              params));
        std::cout << "wrote: " << args.out << "\n";
    }
    return 0;
}

void reject_swarm_flags(const CLI::App* cmd,
                        std::initializer_list<const char*> flags,
                        const std::string& variant) {
    for (const char* flag : flags)
        if (cmd->count(flag) > 0)
            throw std::invalid_argument(std::string(flag) + " does not apply to --variant " +
                                        variant);
}

void echo_config(const SwarmConfig& config) {
    std::cout << "variant: " << variant_name(config.variant) << "\n";
    std::cout << "hybrid: " << bool_name(config.seed_with_heuristic) << "\n";
    std::cout << "seed: " << config.seed << "\n";
    std::cout << "c1: " << json_number(config.c1) << "\n";
    std::cout << "c2: " << json_number(config.c2) << "\n";
    std::cout << "w: " << json_number(config.w) << "\n";
    std::cout << "swarm_size: " << config.swarm_size << "\n";
    std::cout << "eval_max: " << config.eval_max << "\n";
    std::cout << "simulations: " << config.simulation_count << "\n";
    if (config.variant == SwarmVariant::arpso)
        std::cout << "ator: " << config.ator << "\n";
    if (config.variant == SwarmVariant::qpso)
        std::cout << "ch: " << json_number(config.ch) << "\n";
}

std::filesystem::path convergence_path(const std::filesystem::path& out) {
    std::filesystem::path sibling = out;
    sibling.replace_extension();
    sibling += ".convergence.csv";
    return sibling;
}

int cmd_optimize(const OptimizeArgs& args, const CLI::App* cmd) {
    const Apcg apcg = load_apcg(args.apcg_path);
    const std::int32_t n = args.mesh > 0 ? args.mesh : default_mesh(apcg.core_count());
    const Objective objective = objective_from_name(args.objective);
    const EnergyParams params = parse_params_flag(args.params);
    const Topology topology(n);

    if (args.variant == "heuristic" || args.variant == "exhaustive" ||
        args.variant == "random") {
        reject_swarm_flags(cmd, {"--hybrid", "--evals", "--swarm", "--sims", "--ator", "--ch"},
                           args.variant);

        std::optional<Mapping> mapping;
        std::optional<std::uint64_t> assignments_evaluated;
        if (args.variant == "heuristic") {
            mapping.emplace(map_heuristic(apcg, topology).mapping);
        } else if (args.variant == "exhaustive") {
            ExhaustiveResult result = exhaustive_search(apcg, topology, objective, params);
            assignments_evaluated = result.assignments_evaluated;
            mapping.emplace(std::move(result.best));
        } else {
            mapping.emplace(random_mapping(apcg, topology, args.seed));
        }
        const MetricsReport metrics = evaluate_mapping(apcg, *mapping, params);

        print_header(apcg, n, objective);
        std::cout << "algorithm: " << args.variant << "\n";
        if (args.variant == "random") std::cout << "seed: " << args.seed << "\n";
        if (assignments_evaluated)
            std::cout << "assignments_evaluated: " << *assignments_evaluated << "\n";
        std::cout << "assignment: " << assignment_string(mapping->tiles()) << "\n";
        print_metrics(metrics);
        std::cout << "objective_value: "
                  << json_number(objective_value(apcg, *mapping, params, objective))
                  << "\n";

        if (!args.out.empty()) {
            write_text_file(args.out, mapping_document_json(apcg, args.variant, *mapping,
                                                            metrics, params));
            std::cout << "wrote: " << args.out << "\n";
        }
        return 0;
    }

    const SwarmVariant variant = variant_from_name(args.variant);
    if (variant != SwarmVariant::arpso && cmd->count("--ator") > 0)
        throw std::invalid_argument("--ator applies to --variant arpso only");
    if (variant != SwarmVariant::qpso && cmd->count("--ch") > 0)
        throw std::invalid_argument("--ch applies to --variant qpso only");

    SwarmConfig config = SwarmConfig::defaults_for(variant);
    config.seed_with_heuristic = args.hybrid;
    config.seed = args.seed;
    if (cmd->count("--evals") > 0) config.eval_max = args.evals;
    if (cmd->count("--swarm") > 0) config.swarm_size = args.swarm;
    if (cmd->count("--sims") > 0) config.simulation_count = args.sims;
    if (cmd->count("--ator") > 0) config.ator = args.ator;
    if (cmd->count("--ch") > 0) config.ch = args.ch;
    config.validate();

    const RunResult result = run_swarm(apcg, topology, config, objective, params);

    print_header(apcg, n, objective);
    echo_config(config);
    std::cout << "best_fitness: " << json_number(result.min_cost) << "\n";
    std::cout << "best_simulation: " << result.best_simulation << "\n";
    std::cout << "assignment: "
              << assignment_string(std::span<const std::int32_t>(result.best_tiles))
              << "\n";
    std::cout << "wall_seconds: " << json_number(result.wall_seconds) << "\n";

    if (!args.out.empty()) {
        write_text_file(args.out, run_result_json(apcg, n, result));
        const std::filesystem::path csv = convergence_path(args.out);
        write_text_file(csv, convergence_csv(result));
        std::cout << "wrote: " << args.out << "\n";
        std::cout << "wrote: " << csv.string() << "\n";
    }
    return 0;
}

int cmd_compare(const CompareArgs& args, const CLI::App* cmd) {
    const Apcg apcg = load_apcg(args.apcg_path);
    const std::int32_t n = args.mesh > 0 ? args.mesh : default_mesh(apcg.core_count());
    const Objective objective = objective_from_name(args.objective);
    const EnergyParams params = parse_params_flag(args.params);
    const Topology topology(n);

    if (args.algorithms.empty())
        throw std::invalid_argument("--algorithms needs at least one name");
    const std::string baseline =
        args.baseline.empty() ? args.algorithms.front() : args.baseline;

    std::vector<AlgorithmResult> results;
    for (const std::string& name : args.algorithms) {
        const AlgorithmSpec spec = algorithm_from_name(name);
        AlgorithmResult entry;
        entry.algorithm = name;
        if (spec.is_swarm) {
            SwarmConfig config = SwarmConfig::defaults_for(spec.variant);
            config.seed_with_heuristic = spec.hybrid;
            config.seed = args.seed;
            if (cmd->count("--evals") > 0) config.eval_max = args.evals;
            if (cmd->count("--swarm") > 0) config.swarm_size = args.swarm;
            if (cmd->count("--sims") > 0) config.simulation_count = args.sims;
            config.validate();
            RunResult run = run_swarm(apcg, topology, config, objective, params);
            entry.metrics =
                evaluate_mapping(apcg, Mapping(topology, run.best_tiles), params);
            entry.run = std::move(run);
        } else if (spec.name == "heuristic") {
            entry.metrics = evaluate_mapping(
                apcg, map_heuristic(apcg, topology).mapping, params);
        } else if (spec.name == "exhaustive") {
            entry.metrics = evaluate_mapping(
                apcg, exhaustive_search(apcg, topology, objective, params).best, params);
        } else {
            entry.metrics =
                evaluate_mapping(apcg, random_mapping(apcg, topology, args.seed), params);
        }
        results.push_back(std::move(entry));
    }

    const ReportFiles report = write_report(results, baseline);
    const std::string& chosen = args.report == "csv" ? report.csv : report.json;

    if (args.out.empty()) {
        std::cout << chosen;
        return 0;
    }

    write_text_file(args.out, chosen);
    print_header(apcg, n, objective);
    std::cout << "baseline: " << baseline << "\n";
    const AlgorithmResult* base = nullptr;
    for (const AlgorithmResult& r : results)
        if (r.algorithm == baseline) base = &r;
    for (const AlgorithmResult& r : results)
        std::cout << r.algorithm << ": total_energy "
                  << json_number(r.metrics.total_energy) << ", reduction "
                  << json_number(reduction_pct(base->metrics.total_energy,
                                               r.metrics.total_energy))
                  << "%\n";
    std::cout << "wrote: " << args.out << "\n";
    return 0;
}

int cmd_generate(const GenerateArgs& args) {
    const Apcg apcg = generate_apcg(args.spec);
    save_apcg(apcg, args.out);
    std::cout << "apcg: " << apcg.name() << "\n";
    std::cout << "cores: " << apcg.core_count() << "\n";
    std::cout << "arcs: " << apcg.arcs().size() << "\n";
    std::cout << "seed: " << args.spec.seed << "\n";
    std::cout << "wrote: " << args.out << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"3D mesh NoC mapping toolkit: heuristic placement, swarm "
                 "optimizers, exact metrics and reports"};
    app.require_subcommand(1);

    MapArgs map_args;
    CLI::App* map_cmd = app.add_subcommand(
        "map", "Place a task graph with the diagonal/lozenge heuristic");
    map_cmd->add_option("apcg", map_args.apcg_path, "APCG file")->required();
    map_cmd->add_option("--mesh", map_args.mesh, "Mesh dimension n (default: 3, or the smallest cube that fits)");
    map_cmd->add_option("--objective", map_args.objective, "Objective to report")
        ->check(CLI::IsMember({"energy", "cost"}));
    map_cmd->add_option("--params", map_args.params,
                        "Energy overrides link=F,switch=F,rho=F");
    map_cmd->add_option("--out", map_args.out, "Write the mapping document here");
    map_cmd->add_option("--trace", map_args.trace, "Write the placement trace here");

    EvaluateArgs eval_args;
    CLI::App* eval_cmd =
        app.add_subcommand("evaluate", "Recompute metrics for a stored mapping");
    eval_cmd->add_option("apcg", eval_args.apcg_path, "APCG file")->required();
    eval_cmd->add_option("--mapping", eval_args.mapping_path, "Mapping document")
        ->required();
    eval_cmd->add_option("--mesh", eval_args.mesh,
                         "Mesh dimension n (default: the document's)");
    eval_cmd->add_option("--objective", eval_args.objective, "Objective to report")
        ->check(CLI::IsMember({"energy", "cost"}));
    eval_cmd->add_option("--params", eval_args.params,
                         "Energy overrides link=F,switch=F,rho=F");
    eval_cmd->add_option("--out", eval_args.out, "Write the recomputed document here");

    OptimizeArgs opt_args;
    CLI::App* opt_cmd =
        app.add_subcommand("optimize", "Search for a low-cost mapping");
    opt_cmd->add_option("apcg", opt_args.apcg_path, "APCG file")->required();
    opt_cmd->add_option("--mesh", opt_args.mesh, "Mesh dimension n (default: 3, or the smallest cube that fits)");
    opt_cmd->add_option("--variant", opt_args.variant, "Search algorithm")
        ->check(CLI::IsMember(
            {"heuristic", "pso", "arpso", "qpso", "exhaustive", "random"}));
    opt_cmd->add_flag("--hybrid", opt_args.hybrid,
                      "Seed particle 0 with the heuristic mapping");
    opt_cmd->add_option("--seed", opt_args.seed, "RNG seed");
    opt_cmd->add_option("--evals", opt_args.evals, "Fitness evaluations per simulation");
    opt_cmd->add_option("--swarm", opt_args.swarm, "Swarm size");
    opt_cmd->add_option("--sims", opt_args.sims, "Independent simulations");
    opt_cmd->add_option("--ator", opt_args.ator,
                        "Evaluations before the repulsion phase (arpso)");
    opt_cmd->add_option("--ch", opt_args.ch, "Fraction of the swarm updated by QA (qpso)");
    opt_cmd->add_option("--objective", opt_args.objective, "Fitness objective")
        ->check(CLI::IsMember({"energy", "cost"}));
    opt_cmd->add_option("--params", opt_args.params,
                        "Energy overrides link=F,switch=F,rho=F");
    opt_cmd->add_option("--out", opt_args.out,
                        "Write the run document here (plus a sibling .convergence.csv)");

    CompareArgs cmp_args;
    CLI::App* cmp_cmd =
        app.add_subcommand("compare", "Run several algorithms and report reductions");
    cmp_cmd->add_option("apcg", cmp_args.apcg_path, "APCG file")->required();
    cmp_cmd->add_option("--algorithms", cmp_args.algorithms,
                        "Comma-separated list: heuristic, random, exhaustive, pso, "
                        "hpso, arpso, harpso, qpso, hqpso")
        ->required()
        ->delimiter(',');
    cmp_cmd->add_option("--baseline", cmp_args.baseline,
                        "Baseline algorithm (default: the first listed)");
    cmp_cmd->add_option("--mesh", cmp_args.mesh, "Mesh dimension n (default: 3, or the smallest cube that fits)");
    cmp_cmd->add_option("--seed", cmp_args.seed, "RNG seed shared by all algorithms");
    cmp_cmd->add_option("--evals", cmp_args.evals,
                        "Fitness evaluations per simulation (swarm algorithms)");
    cmp_cmd->add_option("--swarm", cmp_args.swarm, "Swarm size (swarm algorithms)");
    cmp_cmd->add_option("--sims", cmp_args.sims,
                        "Independent simulations (swarm algorithms)");
    cmp_cmd->add_option("--objective", cmp_args.objective, "Fitness objective")
        ->check(CLI::IsMember({"energy", "cost"}));
    cmp_cmd->add_option("--params", cmp_args.params,
                        "Energy overrides link=F,switch=F,rho=F");
    cmp_cmd->add_option("--out", cmp_args.out, "Write the report here");
    cmp_cmd->add_option("--report", cmp_args.report, "Report format")
        ->check(CLI::IsMember({"json", "csv"}));

    GenerateArgs gen_args;
    CLI::App* gen_cmd =
        app.add_subcommand("generate", "Generate a random benchmark APCG");
    gen_cmd->add_option("--cores", gen_args.spec.cores, "Core count");
    gen_cmd->add_option("--density", gen_args.spec.density,
                        "Arc probability per ordered pair, (0,1]");
    gen_cmd->add_option("--volume-min", gen_args.spec.volume_min, "Volume lower bound");
    gen_cmd->add_option("--volume-max", gen_args.spec.volume_max, "Volume upper bound");
    gen_cmd->add_option("--bandwidth-min", gen_args.spec.bandwidth_min,
                        "Bandwidth lower bound");
    gen_cmd->add_option("--bandwidth-max", gen_args.spec.bandwidth_max,
                        "Bandwidth upper bound");
    gen_cmd->add_option("--seed", gen_args.spec.seed, "RNG seed");
    gen_cmd->add_option("--name", gen_args.spec.name, "Graph name");
    gen_cmd->add_option("--out", gen_args.out, "Destination .apcg file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (map_cmd->parsed()) return cmd_map(map_args);
        if (eval_cmd->parsed()) return cmd_evaluate(eval_args);
        if (opt_cmd->parsed()) return cmd_optimize(opt_args, opt_cmd);
        if (cmp_cmd->parsed()) return cmd_compare(cmp_args, cmp_cmd);
        if (gen_cmd->parsed()) return cmd_generate(gen_args);
        return 2;
    } catch (const SizingError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const ApcgParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
