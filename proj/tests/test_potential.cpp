#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "lip/congestion.hpp"
#include "lip/potential.hpp"

using namespace lip;

namespace {

LipFunction phi_pi(const FiniteGame& game) {
    LipFunction f;
    f.q = game.players();
    f.name = "phi_pi";
    f.eval = [&game](const Profile& x) { return game.costs(x); };
    return f;
}

}  // namespace

TEST_CASE("verify_lip: private costs are a certificate on a dominance-solvable game") {
    FiniteGame g({2, 2}, [](const Profile& x) {
        static const std::vector<std::vector<Rational>> rows = {
            {4, 4}, {4, 3}, {3, 4}, {3, 3}};
        return rows[x.choices[0] * 2 + x.choices[1]];
    });
    LipFunction phi = phi_pi(g);
    LipVerdict verdict = verify_lip(g, phi, 2);
    CHECK(verdict.holds);
    CHECK_FALSE(verdict.counterexample.has_value());
}

TEST_CASE("verify_lip: a constant function is rejected with a counterexample") {
    FiniteGame g({2, 2}, [](const Profile& x) {
        static const std::vector<std::vector<Rational>> rows = {
            {4, 4}, {4, 3}, {3, 4}, {3, 3}};
        return rows[x.choices[0] * 2 + x.choices[1]];
    });
    LipFunction constant;
    constant.q = 1;
    constant.name = "custom";
    constant.eval = [](const Profile&) { return CostVector{0}; };

    LipVerdict verdict = verify_lip(g, constant, 2);
    CHECK_FALSE(verdict.holds);
    REQUIRE(verdict.counterexample.has_value());
    const ImprovingMove& cx = *verdict.counterexample;
    // Constant value can't strictly decrease, so the very first improving
    // move enumerated is the witness.
    CHECK(cx.from == Profile{{0, 0}});
    CHECK(cx.coalition == std::vector<int>{0});
    CHECK(cx.to == Profile{{1, 0}});
    // And the reported edge really is improving.
    CHECK(move_improves(g.costs(cx.from), g.costs(cx.to), cx.coalition,
                        MoveMode::Strict));
}

TEST_CASE("compute_exponent on a 2x2 game with unit gaps") {
    FiniteGame g({2, 2}, [](const Profile& x) {
        static const std::vector<std::vector<Rational>> rows = {
            {4, 4}, {4, 3}, {3, 4}, {3, 3}};
        return rows[x.choices[0] * 2 + x.choices[1]];
    });
    PotentialSpec spec = compute_exponent(g, phi_pi(g), 2);
    CHECK(spec.phi_max == Rational(4));
    CHECK(spec.eps_min == Rational(1));
    // ln(2) * 4 / 1 = 2.77..., so M = 3.
    CHECK(spec.exponent == 3);
    CHECK_FALSE(spec.no_moves);
}

TEST_CASE("compute_exponent: edgeless improvement graph defaults to M = 1") {
    FiniteGame g({2, 2}, [](const Profile&) { return std::vector<Rational>{3, 3}; });
    PotentialSpec spec = compute_exponent(g, phi_pi(g), 2);
    CHECK(spec.no_moves);
    CHECK(spec.exponent == 1);
}

TEST_CASE("power_potential sums exact M-th powers") {
    PotentialSpec spec;
    spec.phi.q = 2;
    spec.phi.eval = [](const Profile& x) {
        return x.choices[0] == 0 ? CostVector{2, 1} : CostVector{1, 1};
    };
    spec.exponent = 3;
    CHECK(power_potential(spec, Profile{{0}}) == Rational(9));
    CHECK(power_potential(spec, Profile{{1}}) == Rational(2));

    spec.exponent = 0;
    CHECK_THROWS_AS(power_potential(spec, Profile{{0}}), DomainError);
}

TEST_CASE("spec_from_bounds and path_bound") {
    LipFunction phi;
    phi.q = 2;
    phi.eval = [](const Profile&) { return CostVector{}; };
    PotentialSpec spec = spec_from_bounds(phi, Rational(2), Rational(1, 2));
    // ln(2) * 2 / (1/2) = 2.77..., so M = 3.
    CHECK(spec.exponent == 3);
    // ceil(2 * 2^3 / (1/2)) = 32.
    CHECK(path_bound(spec) == BigInt(32));

    CHECK_THROWS_AS(spec_from_bounds(phi, Rational(2), Rational(0)), DomainError);
}

TEST_CASE("topological_potential labels decrease along improvement edges") {
    FiniteGame g({2, 2}, [](const Profile& x) {
        static const std::vector<std::vector<Rational>> rows = {
            {4, 4}, {4, 3}, {3, 4}, {3, 3}};
        return rows[x.choices[0] * 2 + x.choices[1]];
    });
    TopologicalPotential topo = topological_potential(g, 2);
    REQUIRE(topo.acyclic);
    REQUIRE(topo.labels.size() == 4);
    for (ProfileIterator it(g.strategy_counts()); !it.done(); it.advance()) {
        for (const ImprovingMove& mv :
             improving_moves(g, it.current(), 2, MoveMode::Strict)) {
            CHECK(topo.labels[g.rank(mv.to)] < topo.labels[g.rank(mv.from)]);
        }
    }
}

TEST_CASE("topological_potential returns a genuine cycle when one exists") {
    // Matching-pennies style costs: best responses chase each other forever.
    FiniteGame g({2, 2}, [](const Profile& x) {
        static const std::vector<std::vector<Rational>> rows = {
            {0, 1}, {1, 0}, {1, 0}, {0, 1}};
        return rows[x.choices[0] * 2 + x.choices[1]];
    });
    TopologicalPotential topo = topological_potential(g, 1);
    REQUIRE_FALSE(topo.acyclic);
    REQUIRE(topo.cycle.size() >= 2);
    for (std::size_t i = 0; i < topo.cycle.size(); ++i) {
        Profile from = g.unrank(topo.cycle[i]);
        Profile to = g.unrank(topo.cycle[(i + 1) % topo.cycle.size()]);
        auto moves = improving_moves(g, from, 1, MoveMode::Strict);
        bool edge = false;
        for (const ImprovingMove& mv : moves) edge = edge || mv.to == to;
        CHECK(edge);
    }
}

TEST_CASE("P_M decreases along every improving move of random congestion games") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        auto model = gen::random_congestion_model(rng, 3, 4, 3);
        FiniteGame game = build_game(model);
        LipFunction phi = phi_pi(game);
        PotentialSpec spec = compute_exponent(game, phi, game.players());
        if (spec.no_moves) continue;
        CHECK(verify_lip(game, phi, game.players()).holds);
        for (ProfileIterator it(game.strategy_counts()); !it.done(); it.advance()) {
            Rational here = power_potential(spec, it.current());
            for (const ImprovingMove& mv : improving_moves(
                     game, it.current(), game.players(), MoveMode::Strict)) {
                CHECK(power_potential(spec, mv.to) < here);
            }
        }
    }
}
