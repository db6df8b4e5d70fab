#include "nocmap/swarm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "nocmap/errors.hpp"
#include "nocmap/heuristic.hpp"

namespace nocmap {

std::string_view variant_name(SwarmVariant v) {
    switch (v) {
        case SwarmVariant::pso: return "pso";
        case SwarmVariant::arpso: return "arpso";
        case SwarmVariant::qpso: return "qpso";
    }
    throw std::invalid_argument("unknown swarm variant");
}

SwarmVariant variant_from_name(std::string_view name) {
    if (name == "pso") return SwarmVariant::pso;
    if (name == "arpso") return SwarmVariant::arpso;
    if (name == "qpso") return SwarmVariant::qpso;
    throw std::invalid_argument("unknown swarm variant: " + std::string(name));
}

SwarmConfig SwarmConfig::defaults_for(SwarmVariant v) {
    SwarmConfig config;
    config.variant = v;
    switch (v) {
        case SwarmVariant::pso:
            break;
        case SwarmVariant::arpso:
            config.ator = 5000;
            break;
        case SwarmVariant::qpso:
            config.c1 = 2.8;
            config.c2 = 1.3;
            config.w = 0.719;
            config.ch = 0.30;
            break;
    }
    return config;
}

void SwarmConfig::validate() const {
    if (swarm_size < 2)
        throw std::invalid_argument("swarm size must be at least 2");
    if (!std::isfinite(c1) || !std::isfinite(c2) || !std::isfinite(w))
        throw std::invalid_argument("acceleration coefficients and inertia must be finite");
    if (eval_max < 1) throw std::invalid_argument("eval_max must be positive");
    if (simulation_count < 1)
        throw std::invalid_argument("simulation count must be positive");
    if (ator < 0) throw std::invalid_argument("ator must be non-negative");
    if (!(ch >= 0.0 && ch <= 1.0))
        throw std::invalid_argument("ch must be within [0, 1]");
}

std::vector<std::int32_t> decode(std::span<const double> position,
                                 std::int32_t core_count, std::int32_t tile_count) {
    const auto c = static_cast<std::size_t>(core_count);
    const double hi = static_cast<double>(tile_count - 1);

    std::vector<std::int32_t> tiles(c);
    std::vector<char> used(static_cast<std::size_t>(tile_count), 0);
    std::vector<std::size_t> duplicates;
    for (std::size_t i = 0; i < c; ++i) {
        double x = position[i];
        if (!(x >= 0.0)) x = 0.0;  // negatives and NaN both land on 0
        if (x > hi) x = hi;
        const auto t = static_cast<std::int32_t>(std::lround(x));
        tiles[i] = t;
        if (used[static_cast<std::size_t>(t)])
            duplicates.push_back(i);
        else
            used[static_cast<std::size_t>(t)] = 1;
    }

    // Every first occurrence keeps its tile; later duplicates move, in
    // component order, to the smallest tile no first occurrence holds.
    std::int32_t cursor = 0;
    for (std::size_t i : duplicates) {
        while (used[static_cast<std::size_t>(cursor)]) ++cursor;
        tiles[i] = cursor;
        used[static_cast<std::size_t>(cursor)] = 1;
    }
    return tiles;
}

Mapping decode(std::span<const double> position, const Apcg& apcg,
               const Topology& topology) {
    return Mapping(topology,
                   decode(position, apcg.core_count(), topology.tile_count()));
}

namespace {

void step_velocity(Particle& p, std::span<const double> gbest,
                   const SwarmConfig& config, double gbest_sign,
                   std::int32_t core_count, std::int32_t tile_count,
                   UnitSource& rng, const FitnessFn& fitness) {
    const std::size_t d = p.position.size();
    for (std::size_t i = 0; i < d; ++i) {
        const double r1 = rng.next_in(0.0, config.c1);
        const double r2 = rng.next_in(0.0, config.c2);
        p.velocity[i] = config.w * p.velocity[i] + r1 * (p.pbest[i] - p.position[i]) +
                        gbest_sign * r2 * (gbest[i] - p.position[i]);
        p.position[i] += std::floor(p.velocity[i]);
    }
    p.decoded = decode(p.position, core_count, tile_count);
    p.fitness = fitness(p.decoded);
    if (p.fitness < p.pbest_fitness) {
        p.pbest = p.position;
        p.pbest_fitness = p.fitness;
    }
}

} // namespace

void step_pso(Particle& p, std::span<const double> gbest, const SwarmConfig& config,
              std::int32_t core_count, std::int32_t tile_count, UnitSource& rng,
              const FitnessFn& fitness) {
    step_velocity(p, gbest, config, 1.0, core_count, tile_count, rng, fitness);
}

void step_arpso_repulsion(Particle& p, std::span<const double> gbest,
                          const SwarmConfig& config, std::int32_t core_count,
                          std::int32_t tile_count, UnitSource& rng,
                          const FitnessFn& fitness) {
    step_velocity(p, gbest, config, -1.0, core_count, tile_count, rng, fitness);
}

std::optional<double> qa_vertex(double r1, double f1, double r2, double f2,
                                double r3, double f3) {
    const double den = (r2 - r3) * f1 + (r3 - r1) * f2 + (r1 - r2) * f3;
    if (std::abs(den) < 1e-12) return std::nullopt;
    const double num = (r2 * r2 - r3 * r3) * f1 + (r3 * r3 - r1 * r1) * f2 +
                       (r1 * r1 - r2 * r2) * f3;
    return 0.5 * num / den;
}

namespace {

bool spans_equal(std::span<const double> a, std::span<const double> b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin());
}

} // namespace

bool qa_step(std::vector<Particle>& swarm, std::size_t index,
             std::span<const double> gbest, double gbest_fitness,
             const std::vector<std::vector<double>>& snapshot_positions,
             std::span<const double> snapshot_fitness, std::int32_t core_count,
             std::int32_t tile_count, UnitSource& rng, const FitnessFn& fitness) {
    const std::size_t s = snapshot_positions.size();

    auto distinct = [&](std::size_t i2, std::size_t i3) {
        return i2 != i3 && !spans_equal(snapshot_positions[i2], snapshot_positions[i3]) &&
               !spans_equal(snapshot_positions[i2], gbest) &&
               !spans_equal(snapshot_positions[i3], gbest);
    };

    auto pick = [&] { return std::min(s - 1, static_cast<std::size_t>(rng.next_unit() * static_cast<double>(s))); };

    std::size_t i2 = 0, i3 = 0;
    bool found = false;
    for (int attempt = 0; attempt < 8 && !found; ++attempt) {
        i2 = pick();
        i3 = pick();
        found = distinct(i2, i3);
    }
    if (!found) {
        for (std::size_t a = 0; a < s && !found; ++a)
            for (std::size_t b = a + 1; b < s && !found; ++b)
                if (distinct(a, b)) {
                    i2 = a;
                    i3 = b;
                    found = true;
                }
    }
    if (!found) return false;

    Particle& p = swarm[index];
    const std::vector<double>& pos2 = snapshot_positions[i2];
    const std::vector<double>& pos3 = snapshot_positions[i3];
    const double f2 = snapshot_fitness[i2];
    const double f3 = snapshot_fitness[i3];

    std::vector<double> candidate(p.position.size());
    for (std::size_t d = 0; d < candidate.size(); ++d) {
        const auto vertex =
            qa_vertex(gbest[d], gbest_fitness, pos2[d], f2, pos3[d], f3);
        candidate[d] = vertex ? *vertex : p.position[d];
    }

    std::vector<std::int32_t> decoded = decode(candidate, core_count, tile_count);
    const double f = fitness(decoded);
    if (f < p.pbest_fitness) {
        p.position = candidate;
        p.decoded = std::move(decoded);
        p.fitness = f;
        p.pbest = std::move(candidate);
        p.pbest_fitness = f;
    }
    return true;
}

namespace {

constexpr std::uint64_t kTagInit = 0x696e6974;  // particle initialization draws
constexpr std::uint64_t kTagStep = 0x73746570;  // velocity update draws
constexpr std::uint64_t kTagQa = 0x7161;        // QA partner selection draws

} // namespace

RunResult run_swarm(const Apcg& apcg, const Topology& topology,
                    const SwarmConfig& config, Objective objective,
                    const EnergyParams& params) {
    config.validate();
    const std::int32_t c = apcg.core_count();
    const std::int32_t n = topology.n();
    const std::int32_t tile_count = topology.tile_count();
    if (c > tile_count)
        throw SizingError("cannot map " + std::to_string(c) + " cores onto a " +
                          std::to_string(n) + "x" + std::to_string(n) + "x" +
                          std::to_string(n) + " mesh (" +
                          std::to_string(tile_count) + " tiles)");

    const auto start = std::chrono::steady_clock::now();
    const auto d = static_cast<std::size_t>(tile_count);
    const auto s_count = static_cast<std::size_t>(config.swarm_size);

    const FitnessFn fitness = [&](std::span<const std::int32_t> tiles) {
        return objective_value(apcg, tiles, n, params, objective);
    };

    // The heuristic assignment padded with the leftover tiles (ascending)
    // is a permutation of 0..D-1, so it decodes to exactly the heuristic
    // mapping.
    std::vector<double> seed_position;
    if (config.seed_with_heuristic) {
        const Mapping seeded = map_heuristic(apcg, topology).mapping;
        seed_position.reserve(d);
        std::vector<char> taken(d, 0);
        for (std::int32_t tile : seeded.tiles()) {
            seed_position.push_back(static_cast<double>(tile));
            taken[static_cast<std::size_t>(tile)] = 1;
        }
        for (std::int32_t tile = 0; tile < tile_count; ++tile)
            if (!taken[static_cast<std::size_t>(tile)])
                seed_position.push_back(static_cast<double>(tile));
    }

    // QA sub-swarm: the trailing round(ch*S) particles.
    const auto qa_count =
        config.variant == SwarmVariant::qpso
            ? static_cast<std::size_t>(std::llround(config.ch * config.swarm_size))
            : 0;
    const std::size_t velocity_count = s_count - qa_count;

    RunResult result;
    result.config = config;
    result.objective = objective;
    result.params = params;

    std::int32_t best_sim = -1;
    double best_fitness = std::numeric_limits<double>::infinity();

    for (std::int32_t sim = 0; sim < config.simulation_count; ++sim) {
        const auto sim_u = static_cast<std::uint64_t>(sim);
        std::vector<Particle> swarm(s_count);
        std::int64_t nb_eval = 0;
        SimulationStats stats;

        for (std::size_t s = 0; s < s_count; ++s) {
            Particle& p = swarm[s];
            CounterRng rng(CounterRng::derive_key({config.seed, kTagInit, sim_u, 0, s}));
            p.position.resize(d);
            p.velocity.resize(d);
            if (config.seed_with_heuristic && s == 0) {
                p.position = seed_position;
            } else {
                for (std::size_t i = 0; i < d; ++i)
                    p.position[i] = static_cast<double>(
                        rng.next_index(static_cast<std::uint64_t>(tile_count)));
            }
            const double reach = static_cast<double>(tile_count - 1);
            for (std::size_t i = 0; i < d; ++i)
                p.velocity[i] = rng.next_in(-reach, reach);
            p.decoded = decode(p.position, c, tile_count);
            p.fitness = fitness(p.decoded);
            p.pbest = p.position;
            p.pbest_fitness = p.fitness;
            ++nb_eval;
        }

        std::vector<double> gbest;
        double gbest_fitness = std::numeric_limits<double>::infinity();
        auto sweep_gbest = [&] {
            for (const Particle& p : swarm)
                if (p.pbest_fitness < gbest_fitness) {
                    gbest = p.pbest;
                    gbest_fitness = p.pbest_fitness;
                }
        };
        sweep_gbest();
        stats.convergence.push_back({nb_eval, gbest_fitness});

        for (std::uint64_t iter = 1; nb_eval < config.eval_max; ++iter) {
            const std::int64_t batch_start = nb_eval;
            std::int64_t batch_evals = 0;

            // Frozen view of the swarm for this sweep: every update reads
            // the same pre-batch state, so the batch could run in any
            // order (or in parallel) without changing the outcome.
            std::vector<std::vector<double>> snapshot_positions;
            std::vector<double> snapshot_fitness;
            if (qa_count > 0) {
                snapshot_positions.reserve(s_count);
                snapshot_fitness.reserve(s_count);
                for (const Particle& p : swarm) {
                    snapshot_positions.push_back(p.position);
                    snapshot_fitness.push_back(p.fitness);
                }
            }
            const std::vector<double> gbest_frozen = gbest;
            const double gbest_fitness_frozen = gbest_fitness;

            for (std::size_t s = 0; s < velocity_count; ++s) {
                if (nb_eval >= config.eval_max) break;
                CounterRng rng(
                    CounterRng::derive_key({config.seed, kTagStep, sim_u, iter, s}));
                // Attraction until the evaluation budget spent before this
                // particle's turn reaches ator; the phase never switches back.
                const bool repulse = config.variant == SwarmVariant::arpso &&
                                     batch_start + static_cast<std::int64_t>(s) >=
                                         config.ator;
                if (repulse) {
                    step_arpso_repulsion(swarm[s], gbest_frozen, config, c, tile_count,
                                         rng, fitness);
                    ++stats.repulsion_steps;
                } else {
                    step_pso(swarm[s], gbest_frozen, config, c, tile_count, rng,
                             fitness);
                    ++stats.attraction_steps;
                }
                ++nb_eval;
                ++batch_evals;
            }
            for (std::size_t s = velocity_count; s < s_count; ++s) {
                if (nb_eval >= config.eval_max) break;
                CounterRng rng(
                    CounterRng::derive_key({config.seed, kTagQa, sim_u, iter, s}));
                if (qa_step(swarm, s, gbest_frozen, gbest_fitness_frozen,
                            snapshot_positions, snapshot_fitness, c, tile_count, rng,
                            fitness)) {
                    ++stats.qa_steps;
                    ++nb_eval;
                    ++batch_evals;
                }
            }

            sweep_gbest();
            if (gbest_fitness < stats.convergence.back().best_fitness)
                stats.convergence.push_back({nb_eval, gbest_fitness});

            if (batch_evals == 0) break;  // every update degenerated; no progress possible
        }

        stats.evaluations = nb_eval;
        stats.best_fitness = gbest_fitness;
        stats.best_tiles = decode(gbest, c, tile_count);
        result.simulations.push_back(std::move(stats));

        if (gbest_fitness < best_fitness) {
            best_fitness = gbest_fitness;
            best_sim = sim;
        }
    }

    result.best_simulation = best_sim;
    result.best_tiles = result.simulations[static_cast<std::size_t>(best_sim)].best_tiles;
    result.min_cost = best_fitness;

    const double check =
        objective_value(apcg, std::span<const std::int32_t>(result.best_tiles), n,
                        params, objective);
    if (check != result.min_cost)
        throw std::logic_error("best fitness does not match its recomputed objective");

    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

} // namespace nocmap
