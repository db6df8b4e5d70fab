#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "nocmap/apcg.hpp"
#include "nocmap/baselines.hpp"
#include "nocmap/generate.hpp"
#include "nocmap/mapping.hpp"
#include "nocmap/metrics.hpp"
#include "nocmap/topology.hpp"

using namespace nocmap;

namespace {

// Independent reference: walk the xyz route of every arc, charge the
// switch energy once per tile entered after the source and the link
// energy once per edge between those switches, then weight by volume.
double route_walk_energy(const Apcg& apcg, const Mapping& m,
                         const EnergyParams& p) {
    double sum = 0.0;
    for (const Arc& a : apcg.arcs()) {
        const auto route = xyz_route(m.coord_of_core(a.src), m.coord_of_core(a.dst));
        const auto switches = static_cast<double>(route.size() - 1);
        const double links = route.size() >= 2 ? static_cast<double>(route.size() - 2) : 0.0;
        sum += static_cast<double>(a.volume) *
               (switches * p.e_switch_bit + links * p.e_link_bit);
    }
    return sum;
}

Apcg single_arc(std::uint64_t volume, double bandwidth) {
    return Apcg("g", 2, {{0, 1, volume, bandwidth}});
}

} // namespace

TEST_CASE("bit energy charges hops switches and hops-1 links") {
    const EnergyParams p;
    CHECK(bit_energy(1, p) == doctest::Approx(0.284).epsilon(1e-12));
    CHECK(bit_energy(3, p) == doctest::Approx(1.750).epsilon(1e-12));
    CHECK(bit_energy(0, p) == 0.0);
    CHECK(bit_energy(-2, p) == 0.0);
    CHECK(bit_energy(5, EnergyParams{0.0, 0.0, 1.0}) == 0.0);
    CHECK(bit_energy(2, EnergyParams{1.0, 10.0, 1.0}) == 21.0);
}

TEST_CASE("total energy sums volume-weighted bit energies") {
    const Topology t(3);
    const EnergyParams p;

    CHECK(total_energy(Apcg("g", 2, {}), Mapping(t, {0, 1}), p) == 0.0);

    // one arc across one hop
    CHECK(total_energy(single_arc(100, 1.0), Mapping(t, {0, 1}), p) ==
          doctest::Approx(28.4).epsilon(1e-12));

    // three cores in a row, both arcs one hop
    const Apcg chain("g", 3, {{0, 1, 10, 1.0}, {1, 2, 20, 1.0}});
    CHECK(total_energy(chain, Mapping(t, {0, 1, 2}), p) ==
          doctest::Approx(8.52).epsilon(1e-12));

    // one-hop arcs traverse a switch but no link
    CHECK(total_energy(chain, Mapping(t, {0, 1, 2}), EnergyParams{0.449, 0.0, 1.0}) == 0.0);
}

TEST_CASE("comm cost sums bandwidth times hops") {
    const Topology t(3);
    CHECK(comm_cost(Apcg("g", 2, {}), Mapping(t, {0, 1})) == 0.0);
    CHECK(comm_cost(single_arc(1, 50.0), Mapping(t, {0, 2})) == 100.0);
    CHECK(comm_cost(single_arc(1, 7.25), Mapping(t, {0, 1})) == 7.25);
}

TEST_CASE("avg latency averages hop-volume products over arcs") {
    const Topology t(3);
    const EnergyParams p;
    CHECK(avg_latency(Apcg("g", 2, {}), Mapping(t, {0, 1}), p) == 0.0);
    CHECK(avg_latency(single_arc(100, 1.0), Mapping(t, {0, 2}), p) == 200.0);

    const Apcg two("g", 3, {{0, 1, 10, 1.0}, {0, 2, 30, 1.0}});
    // arc volumes 10 and 30 at 1 and 3 hops: (10 + 90) / 2
    CHECK(avg_latency(two, Mapping(t, {0, 1, 13}), p) == 50.0);

    EnergyParams scaled = p;
    scaled.rho = 2.0;
    CHECK(avg_latency(two, Mapping(t, {0, 1, 13}), scaled) == 100.0);
}

TEST_CASE("metrics reject incomplete mappings and bad parameters") {
    const Topology t(3);
    const Apcg g("g", 3, {{0, 1, 5, 1.0}});
    CHECK_THROWS_WITH_AS(total_energy(g, Mapping(t, {0, 1}), {}),
                         doctest::Contains("unmapped"), std::invalid_argument);
    CHECK_THROWS_AS(comm_cost(g, Mapping(t, {0, 1, 2, 3})), std::invalid_argument);
    CHECK_THROWS_AS(total_energy(g, Mapping(t, {0, 1, 2}), EnergyParams{-1.0, 0.284, 1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(avg_latency(g, Mapping(t, {0, 1, 2}),
                                EnergyParams{0.449, 0.284, std::nan("")}),
                    std::invalid_argument);
}

TEST_CASE("objective selector matches the named metric") {
    const Topology t(3);
    const Apcg g = generate_apcg({.cores = 6, .density = 0.4, .seed = 7});
    const Mapping m = random_mapping(g, t, 3);
    const EnergyParams p;
    CHECK(objective_value(g, m, p, Objective::energy) == total_energy(g, m, p));
    CHECK(objective_value(g, m, p, Objective::cost) == comm_cost(g, m));
    CHECK(objective_value(g, m.tiles(), t.n(), p, Objective::energy) ==
          total_energy(g, m, p));

    CHECK(objective_name(Objective::energy) == "energy");
    CHECK(objective_name(Objective::cost) == "cost");
    CHECK(objective_from_name("energy") == Objective::energy);
    CHECK(objective_from_name("cost") == Objective::cost);
    CHECK_THROWS_AS(objective_from_name("latency"), std::invalid_argument);
}

TEST_CASE("all three metrics grow with the hop distance of an arc") {
    const Topology t(4);
    const Apcg g = single_arc(40, 3.0);
    const EnergyParams p;
    // walk the destination through tiles at distance 1..6 from tile 0
    const std::vector<std::int32_t> at_distance = {
        linear_index({0, 0, 1}, 4), linear_index({0, 0, 2}, 4),
        linear_index({0, 0, 3}, 4), linear_index({0, 1, 3}, 4),
        linear_index({0, 2, 3}, 4), linear_index({1, 2, 3}, 4)};
    double prev_e = 0.0, prev_c = 0.0, prev_l = 0.0;
    for (std::int32_t dst : at_distance) {
        const Mapping m(t, {0, dst});
        const double e = total_energy(g, m, p);
        const double c = comm_cost(g, m);
        const double l = avg_latency(g, m, p);
        CHECK(e > prev_e);
        CHECK(c > prev_c);
        CHECK(l > prev_l);
        prev_e = e;
        prev_c = c;
        prev_l = l;
    }
}

TEST_CASE("doubling volumes doubles energy and latency exactly") {
    const Topology t(3);
    const Apcg g = generate_apcg({.cores = 10, .density = 0.3, .seed = 21});
    std::vector<Arc> doubled = g.arcs();
    for (Arc& a : doubled) a.volume *= 2;
    const Apcg g2("g2", g.core_count(), doubled);

    std::vector<Arc> wide = g.arcs();
    for (Arc& a : wide) a.bandwidth *= 2.0;
    const Apcg g3("g3", g.core_count(), wide);

    const EnergyParams p;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Mapping m = random_mapping(g, t, seed);
        const Mapping m2(t, std::vector<std::int32_t>(m.tiles().begin(), m.tiles().end()));
        CHECK(total_energy(g2, m2, p) == 2.0 * total_energy(g, m, p));
        CHECK(avg_latency(g2, m2, p) == 2.0 * avg_latency(g, m, p));
        CHECK(comm_cost(g3, m2) == 2.0 * comm_cost(g, m));
    }
}

TEST_CASE("scaling both energy constants rescales totals without reordering") {
    const Topology t(3);
    const Apcg g = generate_apcg({.cores = 9, .density = 0.35, .seed = 33});
    const Mapping a = random_mapping(g, t, 1);
    const Mapping b = random_mapping(g, t, 2);
    const EnergyParams base;
    const double ea = total_energy(g, a, base);
    const double eb = total_energy(g, b, base);
    REQUIRE(ea != eb);

    for (int k : {-2, -1, 1, 2, 5}) {
        EnergyParams scaled = base;
        scaled.e_link_bit = std::ldexp(base.e_link_bit, k);
        scaled.e_switch_bit = std::ldexp(base.e_switch_bit, k);
        CHECK(total_energy(g, a, scaled) == std::ldexp(ea, k));
        CHECK(total_energy(g, b, scaled) == std::ldexp(eb, k));
        CHECK((total_energy(g, a, scaled) < total_energy(g, b, scaled)) == (ea < eb));
    }
}

TEST_CASE("per-arc energies agree with an independent route walk") {
    const EnergyParams p;
    for (std::uint64_t seed = 100; seed < 120; ++seed) {
        const Apcg g = generate_apcg({.cores = 5, .density = 0.4, .seed = seed});
        for (std::int32_t n : {2, 3}) {
            const Topology t(n);
            const Mapping m = random_mapping(g, t, seed);
            const double fast = total_energy(g, m, p);
            const double slow = route_walk_energy(g, m, p);
            CHECK(std::abs(fast - slow) <= 1e-9 * std::max(1.0, std::abs(slow)));
        }
    }
}

TEST_CASE("evaluate_mapping totals equal the sum of its per-arc rows") {
    const Topology t(3);
    const Apcg g = generate_apcg({.cores = 12, .density = 0.25, .seed = 55});
    const Mapping m = random_mapping(g, t, 9);
    const EnergyParams p;
    const MetricsReport r = evaluate_mapping(g, m, p);

    REQUIRE(r.per_arc.size() == g.arcs().size());
    double sum = 0.0;
    for (const ArcMetrics& am : r.per_arc) sum += am.energy;
    CHECK(sum == r.total_energy);

    CHECK(r.total_energy == total_energy(g, m, p));
    CHECK(r.comm_cost == comm_cost(g, m));
    CHECK(r.avg_latency == avg_latency(g, m, p));

    for (std::size_t i = 0; i < r.per_arc.size(); ++i) {
        const Arc& a = g.arcs()[i];
        CHECK(r.per_arc[i].src == a.src);
        CHECK(r.per_arc[i].dst == a.dst);
        CHECK(r.per_arc[i].hops == hop_count(m.coord_of_core(a.src), m.coord_of_core(a.dst)));
    }
}

TEST_CASE("span kernels and mapping overloads agree bit for bit") {
    const Topology t(3);
    const Apcg g = generate_apcg({.cores = 8, .density = 0.3, .seed = 77});
    const EnergyParams p;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Mapping m = random_mapping(g, t, seed);
        CHECK(total_energy(g, m.tiles(), 3, p) == total_energy(g, m, p));
        CHECK(comm_cost(g, m.tiles(), 3) == comm_cost(g, m));
        CHECK(avg_latency(g, m.tiles(), 3, p) == avg_latency(g, m, p));
    }
}
