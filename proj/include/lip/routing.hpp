#ifndef LIP_ROUTING_HPP
#define LIP_ROUTING_HPP

#include <string>
#include <vector>

#include "lip/congestion.hpp"
#include "lip/game.hpp"
#include "lip/rational.hpp"

namespace lip {

// Single-commodity bottleneck routing: n unit-demand players route from
// `source` to `sink`; arc a used by k players costs table[k].
struct RoutingInstance {
    struct Arc {
        int tail = 0;
        int head = 0;
        std::vector<Rational> table;  // c_a(k), k = 0..n
    };

    std::vector<std::string> vertices;
    std::vector<Arc> arcs;
    int source = 0;
    int sink = 0;
    int n = 0;                // players
    Rational cost_bound = 1;  // C >= every table entry

    // Checks table shape, non-negativity, monotonicity; with
    // `require_convex`, also second differences >= 0 and entries <= C.
    void validate(bool require_convex) const;
};

// A path is a sequence of arc indices from source to sink.
using ArcPath = std::vector<int>;

struct RoutingSolution {
    Profile profile;                    // indices into enumerate_simple_paths
    std::vector<ArcPath> player_paths;  // one path per player
    std::vector<int> arc_loads;
    long exponent = 0;       // M used by the convex solver
    Rational potential = 0;  // sum_a (c_a(x_a)/C)^M * x_a at the solution
    std::vector<int> cut_arcs;  // min cut (identical-cost algorithm only)
    int disjoint_paths = 0;     // max-flow value m (identical-cost only)
};

// All simple source->sink paths as arc sequences, sorted lexicographically.
// These double as the strategy list for brute-force verification.
std::vector<ArcPath> enumerate_simple_paths(const RoutingInstance& inst,
                                            std::int64_t max_paths = 100'000);

// Identical non-decreasing arc costs: unit-capacity max flow / min cut,
// m arc-disjoint paths, players balanced floor(n/m) / ceil(n/m) across them.
RoutingSolution sne_identical_costs(const RoutingInstance& inst);

// Convex non-decreasing costs bounded by C: integral min-cost flow of value
// n for the objective sum_a (c_a(x_a)/C)^M * x_a via successive shortest
// paths on per-unit incremental costs; exact rational arithmetic.
RoutingSolution sne_convex_costs(const RoutingInstance& inst);

// Recomputes the min cut and confirms every player's bottleneck cost is at
// most c(ceil(n/m)) with cut loads within {floor(n/m), ceil(n/m)}.
bool verify_cut_certificate(const RoutingInstance& inst, const Profile& profile);

// Bottleneck congestion game over the simple-path strategy space; facility
// f is arc f. Used for brute-force SNE checks at desk scale.
CongestionModel to_congestion_model(const RoutingInstance& inst,
                                    std::int64_t max_paths = 100'000);

}  // namespace lip

#endif
