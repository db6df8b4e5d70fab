#include <benchmark/benchmark.h>

#include <vector>

#include "nocmap/baselines.hpp"
#include "nocmap/generate.hpp"
#include "nocmap/heuristic.hpp"
#include "nocmap/metrics.hpp"
#include "nocmap/rng.hpp"
#include "nocmap/swarm.hpp"

namespace {

using namespace nocmap;

const Apcg& bench_graph() {
    static const Apcg apcg = [] {
        GenSpec spec;
        spec.cores = 27;
        spec.density = 0.1;
        spec.seed = 42;
        spec.name = "bench27";
        return generate_apcg(spec);
    }();
    return apcg;
}

void BM_HeuristicPlacement(benchmark::State& state) {
    const Apcg& apcg = bench_graph();
    const Topology topology(3);
    for (auto _ : state) {
        auto result = map_heuristic(apcg, topology);
        benchmark::DoNotOptimize(result.mapping.tiles().data());
    }
}
BENCHMARK(BM_HeuristicPlacement);

void BM_TotalEnergy(benchmark::State& state) {
    const Apcg& apcg = bench_graph();
    const Topology topology(3);
    const Mapping mapping = map_heuristic(apcg, topology).mapping;
    const EnergyParams params;
    for (auto _ : state) {
        double e = total_energy(apcg, mapping.tiles(), topology.n(), params);
        benchmark::DoNotOptimize(e);
    }
}
BENCHMARK(BM_TotalEnergy);

void BM_Decode(benchmark::State& state) {
    const std::int32_t tiles = 27;
    CounterRng rng(CounterRng::derive_key({7, 0xdec0de}));
    std::vector<double> position(static_cast<std::size_t>(tiles));
    for (double& x : position) x = rng.next_in(-5.0, 31.0);
    for (auto _ : state) {
        auto decoded = decode(position, tiles, tiles);
        benchmark::DoNotOptimize(decoded.data());
    }
}
BENCHMARK(BM_Decode);

void BM_SwarmBatch(benchmark::State& state) {
    const Apcg& apcg = bench_graph();
    const Topology topology(3);
    SwarmConfig config = SwarmConfig::defaults_for(SwarmVariant::pso);
    config.swarm_size = 50;
    config.eval_max = 100;  // one initialization sweep plus one update batch
    config.simulation_count = 1;
    for (auto _ : state) {
        RunResult result = run_swarm(apcg, topology, config);
        benchmark::DoNotOptimize(result.min_cost);
    }
}
BENCHMARK(BM_SwarmBatch);

} // namespace

BENCHMARK_MAIN();
