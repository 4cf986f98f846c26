#ifndef LIP_IO_HPP
#define LIP_IO_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "lip/congestion.hpp"
#include "lip/game.hpp"
#include "lip/routing.hpp"
#include "lip/splittable.hpp"

namespace lip {

// Explicit cost-vector table indexed by profile rank (player 0 most
// significant digit of the mixed-radix rank).
struct NormalFormGame {
    std::vector<int> strategy_counts;
    std::vector<std::vector<Rational>> cost_table;

    FiniteGame build() const;
};

// Parsed game file. Exactly one payload is set; scheduling and interference
// kinds normalize into a CongestionModel.
struct GameFile {
    std::string kind;  // normal_form, congestion, scheduling, interference,
                       // routing, splittable
    std::optional<NormalFormGame> normal_form;
    std::optional<CongestionModel> congestion;
    std::optional<RoutingInstance> routing;
    std::optional<SplittableInstance> splittable;
    // Original matrix for scheduling files, kept for round-trip output.
    std::optional<std::vector<std::vector<Rational>>> scheduling_times;
};

GameFile parse_game_file(const nlohmann::json& doc);
GameFile load_game_file(const std::string& path);
nlohmann::json to_json(const GameFile& file);

// Finite game for analysis commands; routing instances go through the
// simple-path congestion bridge. Throws for splittable files.
FiniteGame build_finite(const GameFile& file);

}  // namespace lip

#endif
