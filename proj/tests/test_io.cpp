#include "doctest.h"
#include "lip/io.hpp"

using namespace lip;
using nlohmann::json;

namespace {

std::string fixture(const std::string& name) {
    return std::string(FIXTURES_DIR) + "/" + name;
}

// Parse -> serialize -> parse must be a fixed point, and both parses must
// describe the same finite game where one exists.
void check_round_trip(const GameFile& first) {
    json dumped = to_json(first);
    GameFile second = parse_game_file(dumped);
    CHECK(to_json(second) == dumped);
    if (first.kind == "splittable") return;
    FiniteGame a = build_finite(first);
    FiniteGame b = build_finite(second);
    REQUIRE(a.strategy_counts() == b.strategy_counts());
    for (ProfileIterator it(a.strategy_counts()); !it.done(); it.advance())
        CHECK(a.costs(it.current()) == b.costs(it.current()));
}

}  // namespace

TEST_CASE("round trip: every fixture kind") {
    for (const char* name :
         {"example_root.json", "poa_unbounded.json", "upsilon_counter.json",
          "routing_multi_sne.json", "routing_pne_not_sne.json",
          "splittable_discontinuity.json"}) {
        CAPTURE(name);
        check_round_trip(load_game_file(fixture(name)));
    }
}

TEST_CASE("round trip: scheduling and interference stanzas") {
    json sched = {{"kind", "scheduling"},
                  {"processing_times", {{2, 5}, {3, "0.5"}}}};
    GameFile file = parse_game_file(sched);
    CHECK(file.congestion.has_value());
    check_round_trip(file);

    json inter = {{"kind", "interference"},
                  {"players", 2},
                  {"stations", 2},
                  {"edges", {{{"u", 0}, {"v", 1}, {"weight", "3/2"}}}}};
    check_round_trip(parse_game_file(inter));

    json cong = {{"kind", "congestion"},
                 {"players", 2},
                 {"facilities", 1},
                 {"strategies", {{{0}}, {{0}}}},
                 {"cost", {{"type", "load_table"}, {"tables", {{0, 1, "2.5"}}}}}};
    check_round_trip(parse_game_file(cong));
}

TEST_CASE("decimal strings parse to exact rationals") {
    GameFile file = load_game_file(fixture("example_root.json"));
    FiniteGame g = build_finite(file);
    CHECK(g.costs(Profile{{0, 0, 0}}) ==
          std::vector<Rational>{Rational(99, 100), Rational(99, 100),
                                Rational(99, 100)});
}

TEST_CASE("binary floats are rejected with a pointer to decimal strings") {
    json doc = {{"kind", "normal_form"},
                {"strategy_counts", {2}},
                {"cost_table", {{0.5}, {1}}}};
    CHECK_THROWS_WITH_AS(parse_game_file(doc), doctest::Contains("decimal strings"),
                         ValidationError);
}

TEST_CASE("unknown kinds, malformed documents, and missing files") {
    CHECK_THROWS_WITH_AS(parse_game_file(json{{"kind", "mystery"}}),
                         doctest::Contains("unknown game kind"), ValidationError);
    CHECK_THROWS_AS(load_game_file(fixture("does_not_exist.json")), ValidationError);

    json bad_table = {{"kind", "normal_form"},
                      {"strategy_counts", {2, 2}},
                      {"cost_table", {{1, 2}}}};
    CHECK_THROWS_AS(parse_game_file(bad_table), ValidationError);
}

TEST_CASE("splittable files have no finite bridge") {
    GameFile file = load_game_file(fixture("splittable_discontinuity.json"));
    CHECK_THROWS_AS(build_finite(file), DomainError);
}
