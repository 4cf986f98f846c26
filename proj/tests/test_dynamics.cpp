#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "lip/congestion.hpp"
#include "lip/dynamics.hpp"

using namespace lip;

namespace {

FiniteGame cycle_game() {
    // Matching-pennies style costs: unilateral best responses cycle forever.
    return FiniteGame({2, 2}, [](const Profile& x) {
        static const std::vector<std::vector<Rational>> rows = {
            {0, 1}, {1, 0}, {1, 0}, {0, 1}};
        return rows[x.choices[0] * 2 + x.choices[1]];
    });
}

}  // namespace

TEST_CASE("dynamics terminate at an SNE from every start of a bottleneck game") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 10; ++trial) {
        CongestionModel model = gen::random_congestion_model(rng, 3, 4, 3);
        FiniteGame game = build_game(model);
        DynamicsConfig cfg;
        for (ProfileIterator it(game.strategy_counts()); !it.done(); it.advance()) {
            RunReport report = run(game, it.current(), cfg);
            CHECK(report.classification == TerminalKind::Sne);
            CHECK(is_sne(game, report.terminal));
            CHECK(report.steps + 1 == static_cast<std::int64_t>(report.path.size()));
            // phi = pi strictly sorted-lex decreases at every step.
            for (std::size_t s = 0; s + 1 < report.path.size(); ++s)
                CHECK(sorted_lex_compare(game.costs(report.path[s + 1]),
                                         game.costs(report.path[s])) ==
                      Ordering::Less);
        }
    }
}

TEST_CASE("starting at an SNE takes zero steps") {
    CongestionModel model = make_scheduling({{1, 2}, {2, 1}});
    FiniteGame game = build_game(model);
    Profile sne = enumerate_sne(game).front();
    RunReport report = run(game, sne, DynamicsConfig{});
    CHECK(report.steps == 0);
    CHECK(report.terminal == sne);
    CHECK(report.path == std::vector<Profile>{sne});
}

TEST_CASE("cycle game hits the step cap") {
    FiniteGame g = cycle_game();
    DynamicsConfig cfg;
    cfg.max_coalition = 1;
    cfg.step_cap = 25;
    RunReport report = run(g, Profile{{0, 0}}, cfg);
    CHECK(report.classification == TerminalKind::StepCap);
    CHECK(report.steps == 25);
}

TEST_CASE("weak-improvement dynamics certify an SSNE terminal") {
    CongestionModel model = make_scheduling({{1, 2}, {2, 1}});
    FiniteGame game = build_game(model);
    DynamicsConfig cfg;
    cfg.mode = MoveMode::WeakSsne;
    RunReport report = run(game, Profile{{0, 0}}, cfg);
    CHECK(report.classification == TerminalKind::Ssne);
    CHECK(is_ssne(game, report.terminal));
}

TEST_CASE("selection rules: all reach an SNE; random is reproducible") {
    CongestionModel model = make_scheduling({{3, 1}, {2, 2}, {1, 3}});
    FiniteGame game = build_game(model);
    Profile start{{0, 0, 0}};
    for (SelectionRule rule :
         {SelectionRule::First, SelectionRule::BestResponse, SelectionRule::Random}) {
        DynamicsConfig cfg;
        cfg.rule = rule;
        cfg.seed = 99;
        RunReport report = run(game, start, cfg);
        CHECK(is_sne(game, report.terminal));
        if (rule == SelectionRule::Random) {
            RunReport again = run(game, start, cfg);
            CHECK(report.path == again.path);
        }
    }
}

TEST_CASE("path length respects the power potential bound") {
    CongestionModel model = make_scheduling({{2, 5}, {3, 1}});
    FiniteGame game = build_game(model);
    PotentialSpec spec = compute_exponent(game, phi_pi(model), game.players());
    DynamicsConfig cfg;
    for (ProfileIterator it(game.strategy_counts()); !it.done(); it.advance()) {
        RunReport report = run(game, it.current(), cfg, &spec);
        REQUIRE(report.bound.has_value());
        CHECK(BigInt(report.steps) <= *report.bound);
        // The supplied potential strictly decreases along the path.
        for (std::size_t s = 0; s + 1 < report.path.size(); ++s)
            CHECK(power_potential(spec, report.path[s + 1]) <
                  power_potential(spec, report.path[s]));
    }
}

TEST_CASE("improvement graph: acyclic for bottleneck games, cycle otherwise") {
    CongestionModel model = make_scheduling({{2, 5}, {3, 1}});
    FiniteGame game = build_game(model);
    ImprovementGraph g = improvement_graph(game, game.players());
    CHECK(g.acyclic);
    CHECK(longest_path_length(g) >= 1);

    ImprovementGraph bad = improvement_graph(cycle_game(), 1);
    CHECK_FALSE(bad.acyclic);
    CHECK(bad.cycle.size() >= 2);
    CHECK_THROWS_AS(longest_path_length(bad), DomainError);
}

TEST_CASE("longest path: edgeless graph, explicit chain, potential bound") {
    FiniteGame flat({2}, [](const Profile&) { return std::vector<Rational>{1}; });
    ImprovementGraph none = improvement_graph(flat, 1);
    CHECK(none.acyclic);
    CHECK(longest_path_length(none) == 0);

    // Chain of three profiles: costs 3 > 2 > 1, two arcs.
    FiniteGame chain({3}, [](const Profile& x) {
        return std::vector<Rational>{3 - x.choices[0]};
    });
    CHECK(longest_path_length(improvement_graph(chain, 1)) == 2);

    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 10; ++trial) {
        CongestionModel model = gen::random_congestion_model(rng, 3, 4, 3);
        FiniteGame game = build_game(model);
        PotentialSpec spec = compute_exponent(game, phi_pi(model), game.players());
        ImprovementGraph graph = improvement_graph(game, game.players());
        REQUIRE(graph.acyclic);
        if (!spec.no_moves)
            CHECK(BigInt(longest_path_length(graph)) <= path_bound(spec));
    }
}
