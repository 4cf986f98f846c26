#ifndef LIP_CONGESTION_HPP
#define LIP_CONGESTION_HPP

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "lip/game.hpp"
#include "lip/potential.hpp"
#include "lip/rational.hpp"

namespace lip {

// Facility users are encoded as bitmasks over players (n <= 32 at desk scale).
using PlayerSet = std::uint32_t;

// c_f(k) for k = 0..n, non-decreasing.
struct LoadTableCost {
    std::vector<std::vector<Rational>> tables;  // [facility][load]
};

// c_f(S) given explicitly per user set; monotone under set inclusion.
struct SetOracleCost {
    std::vector<std::map<PlayerSet, Rational>> tables;  // [facility][user bitmask]
};

// Weighted interference graph on players; facility j costs the total weight
// of edges whose endpoints both chose j.
struct InterferenceCost {
    struct Edge {
        int u, v;
        Rational weight;
    };
    std::vector<Edge> edges;
};

struct CongestionModel {
    int n = 0;  // players
    int m = 0;  // facilities
    std::vector<std::vector<std::vector<int>>> strategies;  // [player][strategy] -> facilities
    std::variant<LoadTableCost, SetOracleCost, InterferenceCost> cost;

    // Cost of facility f when exactly `users` select it.
    Rational facility_cost(int f, PlayerSet users) const;

    // Checks the three axioms: non-negativity, independence of irrelevant
    // choices (structural), monotonicity. Throws ValidationError naming the
    // axiom and a witness.
    void validate() const;

    PlayerSet users_of(int f, const Profile& x) const;
    std::vector<int> strategy_counts() const;
};

// Bottleneck private costs: pi_i(x) = max over f in x_i of c_f(x).
FiniteGame build_game(const CongestionModel& model);

// LIP certificate functions for the bottleneck game of `model`.
LipFunction phi_pi(const CongestionModel& model);       // dimension n
LipFunction psi_facility(const CongestionModel& model); // dimension n*m, player-major
LipFunction upsilon(const CongestionModel& model);      // dimension m (negative control)

// (facility cost, facility load) pairs for the A-lex order.
PairVector alex_pairs(const CongestionModel& model, const Profile& x);

// Singleton model over `stations` base stations with interference edges.
CongestionModel make_interference(int players, int stations,
                                  std::vector<InterferenceCost::Edge> edges);

// Scheduling on unrelated machines: singleton strategies, machine cost is
// the total processing time of the jobs placed on it.
CongestionModel make_scheduling(const std::vector<std::vector<Rational>>& proc_times);

}  // namespace lip

#endif
