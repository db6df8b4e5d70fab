#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "nocmap/apcg.hpp"
#include "nocmap/mapping.hpp"
#include "nocmap/metrics.hpp"
#include "nocmap/rng.hpp"
#include "nocmap/topology.hpp"

namespace nocmap {

enum class SwarmVariant { pso, arpso, qpso };

std::string_view variant_name(SwarmVariant v);
SwarmVariant variant_from_name(std::string_view name);

struct SwarmConfig {
    SwarmVariant variant = SwarmVariant::pso;
    double c1 = 1.2;
    double c2 = 1.3;
    double w = 0.721348;
    std::int32_t swarm_size = 200;
    std::int64_t eval_max = 150000;      // fitness evaluations per simulation
    std::int32_t simulation_count = 100; // independent restarts
    std::int64_t ator = 0;  // arpso: evaluations before the repulsion phase
    double ch = 0.0;        // qpso: fraction of the swarm updated by QA
    bool seed_with_heuristic = false;
    std::uint64_t seed = 1;

    /// Published defaults per variant. pso/arpso: c1=1.2 c2=1.3
    /// w=0.721348, arpso adds ator=5000; qpso: c1=2.8 c2=1.3 w=0.719
    /// ch=0.30. All share S=200, 150000 evaluations, 100 simulations.
    static SwarmConfig defaults_for(SwarmVariant v);

    /// Throws std::invalid_argument unless S >= 2, coefficients finite,
    /// ator >= 0, ch in [0,1], eval_max >= 1, simulation_count >= 1.
    void validate() const;

    friend bool operator==(const SwarmConfig&, const SwarmConfig&) = default;
};

/// One swarm member. position/velocity/pbest all have length D (the
/// tile count); decoded/fitness cache the mapping and objective of the
/// current position.
struct Particle {
    std::vector<double> position;
    std::vector<double> velocity;
    std::vector<double> pbest;
    double pbest_fitness = 0.0;
    std::vector<std::int32_t> decoded;
    double fitness = 0.0;
};

struct ConvergencePoint {
    std::int64_t evaluation = 0;  // evaluations done when this best was reached
    double best_fitness = 0.0;

    friend bool operator==(const ConvergencePoint&, const ConvergencePoint&) = default;
};

struct SimulationStats {
    std::int64_t evaluations = 0;
    double best_fitness = 0.0;
    std::vector<std::int32_t> best_tiles;
    std::vector<ConvergencePoint> convergence;  // non-increasing best_fitness
    std::int64_t attraction_steps = 0;  // velocity updates toward gbest
    std::int64_t repulsion_steps = 0;   // velocity updates away from gbest
    std::int64_t qa_steps = 0;          // quadratic-approximation evaluations
};

struct RunResult {
    SwarmConfig config;
    Objective objective = Objective::energy;
    EnergyParams params;
    std::vector<std::int32_t> best_tiles;  // tile of core c, from the best simulation
    double min_cost = 0.0;                 // equals the objective recomputed on best_tiles
    std::int32_t best_simulation = 0;
    std::vector<SimulationStats> simulations;
    double wall_seconds = 0.0;  // measurement only, never serialized
};

/// Fitness of a decoded assignment (tiles[c] = tile of core c). Lower
/// is better.
using FitnessFn = std::function<double(std::span<const std::int32_t>)>;

/// Repairs a real-valued position into an injective assignment of
/// core_count cores onto tile_count tiles. Each of the first
/// core_count components is clamped to [0, tile_count-1] and rounded
/// half away from zero (non-finite components clamp to 0); collisions
/// keep the first occurrence and reassign later duplicates to the
/// smallest unused tile in ascending order. Total: any real vector
/// with at least core_count components decodes.
std::vector<std::int32_t> decode(std::span<const double> position,
                                 std::int32_t core_count, std::int32_t tile_count);
Mapping decode(std::span<const double> position, const Apcg& apcg,
               const Topology& topology);

/// One velocity/position update:
///   V <- w*V + rand(0,c1)*(pbest - X) + rand(0,c2)*(gbest - X)
///   X <- X + floor(V)
/// Draws come per component in ascending order, the c1 draw before the
/// c2 one. The new position is decoded and evaluated (exactly one
/// fitness call); pbest moves iff the fitness strictly improved.
void step_pso(Particle& p, std::span<const double> gbest, const SwarmConfig& config,
              std::int32_t core_count, std::int32_t tile_count, UnitSource& rng,
              const FitnessFn& fitness);

/// Same update with the gbest term subtracted (repulsion phase):
///   V <- w*V + rand(0,c1)*(pbest - X) - rand(0,c2)*(gbest - X)
void step_arpso_repulsion(Particle& p, std::span<const double> gbest,
                          const SwarmConfig& config, std::int32_t core_count,
                          std::int32_t tile_count, UnitSource& rng,
                          const FitnessFn& fitness);

/// Vertex of the parabola through (r1,f1), (r2,f2), (r3,f3):
///   x* = 1/2 * [(r2^2-r3^2)f1 + (r3^2-r1^2)f2 + (r1^2-r2^2)f3]
///            / [(r2-r3)f1  + (r3-r1)f2  + (r1-r2)f3]
/// nullopt when the denominator's magnitude is below 1e-12.
std::optional<double> qa_vertex(double r1, double f1, double r2, double f2,
                                double r3, double f3);

/// Quadratic-approximation update of swarm[index] against a snapshot of
/// positions/fitnesses taken at the start of the batch. R1 is gbest;
/// R2, R3 are random snapshot members whose positions are pairwise
/// distinct from each other and from gbest (8 random retries, then a
/// deterministic scan). Degenerate components keep the particle's
/// value; degenerate selection skips the update entirely. The
/// candidate replaces position, fitness and pbest iff its decoded
/// fitness beats pbest. Velocity is untouched. Returns whether a
/// fitness evaluation happened.
bool qa_step(std::vector<Particle>& swarm, std::size_t index,
             std::span<const double> gbest, double gbest_fitness,
             const std::vector<std::vector<double>>& snapshot_positions,
             std::span<const double> snapshot_fitness, std::int32_t core_count,
             std::int32_t tile_count, UnitSource& rng, const FitnessFn& fitness);

/// Runs config.simulation_count independent simulations of the
/// configured variant and returns the best across them (strict
/// improvement; the earliest simulation wins ties). Each simulation
/// draws S particles (positions uniform integers in [0, D-1], then
/// velocities uniform in [-(D-1), D-1]); with seed_with_heuristic,
/// particle 0's position is the heuristic assignment extended with the
/// unused tiles in ascending order. Updates are batch-synchronous:
/// gbest moves only between sweeps, so results depend on the seed
/// alone, not on evaluation order. Initialization counts S
/// evaluations; the loop stops once eval_max is reached.
RunResult run_swarm(const Apcg& apcg, const Topology& topology,
                    const SwarmConfig& config,
                    Objective objective = Objective::energy,
                    const EnergyParams& params = {});

} // namespace nocmap
