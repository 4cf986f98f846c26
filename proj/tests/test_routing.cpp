#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "lip/routing.hpp"

using namespace lip;

namespace {

RoutingInstance parallel_arcs(int n, std::vector<std::vector<Rational>> tables,
                              Rational bound) {
    RoutingInstance inst;
    inst.vertices = {"s", "t"};
    for (auto& t : tables) inst.arcs.push_back({0, 1, std::move(t)});
    inst.source = 0;
    inst.sink = 1;
    inst.n = n;
    inst.cost_bound = bound;
    return inst;
}

// Two-player diamond where the unique joint optimum needs both players to
// move at once: a zig-zag profile is a PNE but not an SNE.
RoutingInstance pne_not_sne() {
    RoutingInstance inst;
    inst.vertices = {"s", "a", "b", "t"};
    inst.arcs = {{0, 1, {0, 0, 1}}, {1, 3, {0, 0, 1}}, {0, 2, {0, 0, 1}},
                 {2, 3, {0, 0, 1}}, {2, 1, {1, 1, 1}}, {1, 2, {1, 1, 1}}};
    inst.source = 0;
    inst.sink = 3;
    inst.n = 2;
    inst.cost_bound = 1;
    return inst;
}

bool brute_force_sne(const RoutingInstance& inst, const Profile& x) {
    return is_sne(build_game(to_congestion_model(inst)), x);
}

}  // namespace

TEST_CASE("enumerate_simple_paths: sorted arc sequences, budget enforced") {
    RoutingInstance inst = pne_not_sne();
    auto paths = enumerate_simple_paths(inst);
    REQUIRE(paths.size() == 4);
    CHECK(paths[0] == ArcPath{0, 1});
    CHECK(paths[1] == ArcPath{0, 5, 3});
    CHECK(paths[2] == ArcPath{2, 3});
    CHECK(paths[3] == ArcPath{2, 4, 1});
    CHECK_THROWS_AS(enumerate_simple_paths(inst, 2), BudgetError);
}

TEST_CASE("identical costs: two parallel arcs, three players") {
    RoutingInstance inst = parallel_arcs(3, {{0, 1, 2, 3}, {0, 1, 2, 3}}, 3);
    RoutingSolution sol = sne_identical_costs(inst);
    CHECK(sol.disjoint_paths == 2);
    std::vector<int> loads = sol.arc_loads;
    std::sort(loads.begin(), loads.end());
    CHECK(loads == std::vector<int>{1, 2});
    CHECK(verify_cut_certificate(inst, sol.profile));
    CHECK(brute_force_sne(inst, sol.profile));

    FiniteGame g = build_game(to_congestion_model(inst));
    for (const Rational& c : g.costs(sol.profile))
        CHECK((c == Rational(1) || c == Rational(2)));
}

TEST_CASE("identical costs: trivial balanced cases") {
    // n = m: one player per path, every cost c(1).
    RoutingInstance even = parallel_arcs(2, {{0, 5, 9}, {0, 5, 9}}, 9);
    RoutingSolution sol = sne_identical_costs(even);
    FiniteGame g = build_game(to_congestion_model(even));
    CHECK(g.costs(sol.profile) == std::vector<Rational>{5, 5});

    // n = 1: single path, cost c(1).
    RoutingInstance one = parallel_arcs(1, {{0, 2}, {0, 2}}, 2);
    CHECK(build_game(to_congestion_model(one))
              .costs(sne_identical_costs(one).profile) ==
          std::vector<Rational>{2});
}

TEST_CASE("identical costs: mismatched tables and unreachable sink rejected") {
    RoutingInstance inst = parallel_arcs(2, {{0, 1, 2}, {0, 2, 4}}, 4);
    CHECK_THROWS_AS(sne_identical_costs(inst), ValidationError);

    RoutingInstance dead;
    dead.vertices = {"s", "t", "u"};
    dead.arcs = {{0, 2, {0, 1}}};
    dead.source = 0;
    dead.sink = 1;
    dead.n = 1;
    dead.cost_bound = 1;
    CHECK_THROWS_AS(sne_identical_costs(dead), DomainError);
}

TEST_CASE("cut certificate rejects an unbalanced profile") {
    RoutingInstance inst = parallel_arcs(3, {{0, 1, 2, 3}, {0, 1, 2, 3}}, 3);
    // All three players on the first arc: cut load 3 > ceil(3/2).
    CHECK_FALSE(verify_cut_certificate(inst, Profile{{0, 0, 0}}));
    // n <= m: loads at most 1, trivially fine.
    RoutingInstance small = parallel_arcs(2, {{0, 1, 2}, {0, 1, 2}}, 2);
    CHECK(verify_cut_certificate(small, Profile{{0, 1}}));
}

TEST_CASE("convex solver avoids the zig-zag PNE") {
    RoutingInstance inst = pne_not_sne();
    FiniteGame g = build_game(to_congestion_model(inst));

    // The zig-zag profile (paths 0-a-b-t and 0-b-a-t) is a PNE but not an SNE.
    Profile zigzag{{1, 3}};
    CHECK(is_pne(g, zigzag));
    CHECK_FALSE(is_sne(g, zigzag));

    RoutingSolution sol = sne_convex_costs(inst);
    CHECK(is_sne(g, sol.profile));
    CHECK(g.costs(sol.profile) == std::vector<Rational>{0, 0});
}

TEST_CASE("convex solver splits symmetric parallel demand") {
    RoutingInstance inst = parallel_arcs(2, {{0, 1, 2}, {0, 1, 2}}, 2);
    RoutingSolution sol = sne_convex_costs(inst);
    CHECK(sol.arc_loads == std::vector<int>{1, 1});
    CHECK(brute_force_sne(inst, sol.profile));
}

TEST_CASE("convex solver rejects non-convex tables") {
    RoutingInstance inst = parallel_arcs(2, {{0, 3, 4}, {0, 3, 4}}, 4);
    CHECK_THROWS_AS(sne_convex_costs(inst), ValidationError);
}

TEST_CASE("solution internals are consistent") {
    RoutingInstance inst = pne_not_sne();
    RoutingSolution sol = sne_convex_costs(inst);

    // Decomposition reproduces arc loads exactly.
    std::vector<int> loads(inst.arcs.size(), 0);
    for (const ArcPath& p : sol.player_paths)
        for (int a : p) ++loads[a];
    CHECK(loads == sol.arc_loads);

    // Reported potential equals sum_a (c_a(x_a)/C)^M * x_a.
    Rational expect = 0;
    for (std::size_t a = 0; a < inst.arcs.size(); ++a) {
        if (sol.arc_loads[a] == 0) continue;
        Rational scaled = inst.arcs[a].table[sol.arc_loads[a]] / inst.cost_bound;
        expect += pow_rational(scaled, static_cast<unsigned long>(sol.exponent)) *
                  sol.arc_loads[a];
    }
    CHECK(sol.potential == expect);

    // And it is minimal among all profiles (the power potential argmin).
    auto paths = enumerate_simple_paths(inst);
    for (ProfileIterator it(std::vector<int>(inst.n, static_cast<int>(paths.size())));
         !it.done(); it.advance()) {
        std::vector<int> alt(inst.arcs.size(), 0);
        for (int i = 0; i < inst.n; ++i)
            for (int a : paths[it.current().choices[i]]) ++alt[a];
        Rational value = 0;
        for (std::size_t a = 0; a < inst.arcs.size(); ++a) {
            if (alt[a] == 0) continue;
            Rational scaled = inst.arcs[a].table[alt[a]] / inst.cost_bound;
            value += pow_rational(scaled, static_cast<unsigned long>(sol.exponent)) *
                     alt[a];
        }
        CHECK(sol.potential <= value);
    }
}

TEST_CASE("multiple-SNE instance: convex output is a potential minimizer") {
    // c_1 steps at load n, c_2 steps at load 1: two SNE shapes coexist.
    RoutingInstance inst = parallel_arcs(2, {{0, 0, 1}, {1, 1, 2}}, 2);
    RoutingSolution sol = sne_convex_costs(inst);
    CHECK(brute_force_sne(inst, sol.profile));
}

TEST_CASE("random instances: both algorithms return brute-force SNE") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 8; ++trial) {
        RoutingInstance ident = gen::random_routing_instance(rng, false);
        RoutingSolution sol = sne_identical_costs(ident);
        CHECK(brute_force_sne(ident, sol.profile));
        CHECK(verify_cut_certificate(ident, sol.profile));

        RoutingInstance conv = gen::random_routing_instance(rng, true);
        CHECK(brute_force_sne(conv, sne_convex_costs(conv).profile));
    }
}
