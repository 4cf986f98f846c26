#ifndef TESTS_GENERATORS_HPP
#define TESTS_GENERATORS_HPP

#include <functional>
#include <random>
#include <set>

#include "lip/congestion.hpp"
#include "lip/routing.hpp"
#include "lip/splittable.hpp"

namespace gen {

inline int pick(std::mt19937_64& rng, int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

// Mixed-kind congestion model: load tables, set oracles (additive weights,
// monotone by construction), or interference graphs.
inline lip::CongestionModel random_congestion_model(std::mt19937_64& rng,
                                                    int max_n = 4, int max_m = 6,
                                                    int max_strategies = 5) {
    int kind = pick(rng, 0, 2);
    if (kind == 2) {
        int n = pick(rng, 2, max_n);
        int stations = pick(rng, 2, std::min(max_m, max_strategies));
        std::vector<lip::InterferenceCost::Edge> edges;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (pick(rng, 0, 1)) edges.push_back({u, v, pick(rng, 0, 5)});
        return lip::make_interference(n, stations, std::move(edges));
    }

    lip::CongestionModel model;
    model.n = pick(rng, 2, max_n);
    model.m = pick(rng, 2, max_m);
    for (int i = 0; i < model.n; ++i) {
        int count = pick(rng, 1, max_strategies);
        std::vector<std::vector<int>> list;
        for (int s = 0; s < count; ++s) {
            std::set<int> facilities;
            int size = pick(rng, 1, std::min(3, model.m));
            while (static_cast<int>(facilities.size()) < size)
                facilities.insert(pick(rng, 0, model.m - 1));
            list.emplace_back(facilities.begin(), facilities.end());
        }
        model.strategies.push_back(std::move(list));
    }

    if (kind == 0) {
        lip::LoadTableCost cost;
        for (int f = 0; f < model.m; ++f) {
            std::vector<lip::Rational> table{pick(rng, 0, 2)};
            for (int k = 1; k <= model.n; ++k)
                table.push_back(table.back() + pick(rng, 0, 3));
            cost.tables.push_back(std::move(table));
        }
        model.cost = std::move(cost);
    } else {
        // c_f(S) = sum of per-player weights: monotone, and generic enough
        // to avoid accidental cost ties between unrelated user sets.
        lip::SetOracleCost cost;
        for (int f = 0; f < model.m; ++f) {
            std::vector<lip::Rational> w;
            for (int i = 0; i < model.n; ++i) w.push_back(pick(rng, 1, 1000));
            std::map<lip::PlayerSet, lip::Rational> table;
            for (lip::PlayerSet mask = 0; mask < (1u << model.n); ++mask) {
                lip::Rational total = 0;
                for (int i = 0; i < model.n; ++i)
                    if (mask & (1u << i)) total += w[i];
                table[mask] = total;
            }
            cost.tables.push_back(std::move(table));
        }
        model.cost = std::move(cost);
    }
    model.validate();
    return model;
}

// Random DAG routing instance over topologically numbered vertices; a spine
// keeps the sink reachable. Tables identical or convex per `convex`.
inline lip::RoutingInstance random_routing_instance(std::mt19937_64& rng,
                                                    bool convex) {
    while (true) {
        lip::RoutingInstance inst;
        int V = pick(rng, 3, 5);
        for (int v = 0; v < V; ++v) inst.vertices.push_back("v" + std::to_string(v));
        inst.source = 0;
        inst.sink = V - 1;
        inst.n = pick(rng, 1, 4);

        std::vector<std::pair<int, int>> ends;
        for (int v = 0; v + 1 < V; ++v) ends.push_back({v, v + 1});
        int extra = pick(rng, 0, 12 - static_cast<int>(ends.size()));
        for (int e = 0; e < extra; ++e) {
            int tail = pick(rng, 0, V - 2);
            int head = pick(rng, tail + 1, V - 1);
            ends.push_back({tail, head});
        }

        auto make_table = [&]() {
            std::vector<lip::Rational> table;
            if (convex) {
                int a = pick(rng, 0, 2), b = pick(rng, 0, 3), c0 = pick(rng, 0, 2);
                for (int k = 0; k <= inst.n; ++k) table.push_back(a * k * k + b * k + c0);
            } else {
                table.push_back(pick(rng, 0, 2));
                for (int k = 1; k <= inst.n; ++k)
                    table.push_back(table.back() + pick(rng, 0, 3));
            }
            return table;
        };
        auto shared = make_table();
        for (auto [tail, head] : ends) {
            lip::RoutingInstance::Arc arc;
            arc.tail = tail;
            arc.head = head;
            arc.table = convex ? make_table() : shared;
            inst.arcs.push_back(std::move(arc));
        }
        inst.cost_bound = 1;
        for (const auto& arc : inst.arcs)
            inst.cost_bound = std::max(inst.cost_bound, arc.table.back());

        // Keep brute-force verification cheap.
        auto paths = lip::enumerate_simple_paths(inst);
        double profiles = std::pow(static_cast<double>(paths.size()), inst.n);
        if (paths.size() >= 2 && paths.size() <= 12 && profiles <= 2e4) return inst;
    }
}

// Parallel-link convex splittable instance (singleton strategies).
inline lip::SplittableInstance random_parallel_convex(std::mt19937_64& rng) {
    lip::SplittableInstance inst;
    inst.n = pick(rng, 1, 3);
    inst.m = pick(rng, 2, 3);
    for (int i = 0; i < inst.n; ++i) {
        std::vector<std::vector<int>> list;
        for (int f = 0; f < inst.m; ++f) list.push_back({f});
        inst.strategies.push_back(std::move(list));
        inst.demands.push_back(pick(rng, 1, 2));
    }
    lip::Rational total = inst.total_demand();
    for (int f = 0; f < inst.m; ++f) {
        lip::PiecewiseLinear c;
        lip::Rational v0 = pick(rng, 0, 1);
        lip::Rational s1 = pick(rng, 0, 2), s2 = s1 + pick(rng, 0, 2);
        lip::Rational mid = total / 2;
        c.points = {{0, v0}, {mid, v0 + s1 * mid}, {total, v0 + s1 * mid + s2 * mid}};
        inst.costs.push_back(std::move(c));
    }
    inst.cost_bound = 1;
    for (const auto& c : inst.costs)
        inst.cost_bound = std::max(inst.cost_bound, c.max_value());
    inst.validate(true);
    return inst;
}

// General splittable instance with overlapping strategies and costs in
// [0, 1] (cost_bound exactly 1, as the potential lemma tests assume).
inline lip::SplittableInstance random_splittable_unit(std::mt19937_64& rng) {
    lip::SplittableInstance inst;
    inst.n = pick(rng, 2, 3);
    inst.m = pick(rng, 2, 3);
    for (int i = 0; i < inst.n; ++i) {
        // Every singleton, so each player can always reroute, plus
        // occasionally one overlapping multi-facility strategy.
        std::vector<std::vector<int>> list;
        for (int f = 0; f < inst.m; ++f) list.push_back({f});
        if (inst.m > 1 && pick(rng, 0, 1)) {
            std::set<int> facilities;
            while (static_cast<int>(facilities.size()) < 2)
                facilities.insert(pick(rng, 0, inst.m - 1));
            list.emplace_back(facilities.begin(), facilities.end());
        }
        inst.strategies.push_back(std::move(list));
        inst.demands.push_back(1);
    }
    lip::Rational total = inst.total_demand();
    for (int f = 0; f < inst.m; ++f) {
        // Strictly increasing keeps single-player improving moves plentiful.
        lip::PiecewiseLinear c;
        lip::Rational v0 = lip::Rational(pick(rng, 0, 4)) / 8;
        lip::Rational v1 = v0 + lip::Rational(pick(rng, 1, 2)) / 8;
        lip::Rational v2 = v1 + lip::Rational(pick(rng, 1, 2)) / 8;
        c.points = {{0, v0}, {total / 2, v1}, {total, v2}};
        inst.costs.push_back(std::move(c));
    }
    inst.cost_bound = 1;
    inst.validate(false);
    return inst;
}

// All splits of player i's demand into `denom` equal chunks.
inline std::vector<std::vector<lip::Rational>> grid_rows(
    const lip::SplittableInstance& inst, int i, int denom) {
    int k = static_cast<int>(inst.strategies[i].size());
    std::vector<std::vector<lip::Rational>> rows;
    std::vector<int> chunks(k, 0);
    std::function<void(int, int)> rec = [&](int slot, int left) {
        if (slot == k - 1) {
            chunks[slot] = left;
            std::vector<lip::Rational> row(k);
            for (int j = 0; j < k; ++j)
                row[j] = lip::Rational(chunks[j]) * inst.demands[i] / denom;
            rows.push_back(std::move(row));
            return;
        }
        for (int t = 0; t <= left; ++t) {
            chunks[slot] = t;
            rec(slot + 1, left - t);
        }
    };
    rec(0, denom);
    return rows;
}

struct GridMove {
    std::vector<int> coalition;
    lip::SplittableState to;
};

// Local search: all single-player and 2-player coalition reroutes on the
// denom-grid that strictly improve every coalition member, up to `limit`.
inline std::vector<GridMove> improving_grid_moves(const lip::SplittableInstance& inst,
                                                  const lip::SplittableState& x,
                                                  int denom, std::size_t limit) {
    std::vector<GridMove> moves;
    auto pi_x = lip::private_costs(inst, x);
    for (int i = 0; i < inst.n && moves.size() < limit; ++i) {
        for (auto& row : grid_rows(inst, i, denom)) {
            if (row == x.intensity[i]) continue;
            lip::SplittableState y = x;
            y.intensity[i] = row;
            if (lip::private_costs(inst, y)[i] < pi_x[i]) {
                moves.push_back({{i}, std::move(y)});
                if (moves.size() >= limit) break;
            }
        }
    }
    for (int i = 0; i < inst.n && moves.size() < limit; ++i) {
        for (int j = i + 1; j < inst.n && moves.size() < limit; ++j) {
            for (auto& ri : grid_rows(inst, i, denom)) {
                if (moves.size() >= limit) break;
                for (auto& rj : grid_rows(inst, j, denom)) {
                    if (ri == x.intensity[i] && rj == x.intensity[j]) continue;
                    lip::SplittableState y = x;
                    y.intensity[i] = ri;
                    y.intensity[j] = rj;
                    auto pi_y = lip::private_costs(inst, y);
                    if (pi_y[i] < pi_x[i] && pi_y[j] < pi_x[j]) {
                        std::vector<int> coalition;
                        if (ri != x.intensity[i]) coalition.push_back(i);
                        if (rj != x.intensity[j]) coalition.push_back(j);
                        moves.push_back({std::move(coalition), std::move(y)});
                        if (moves.size() >= limit) break;
                    }
                }
            }
        }
    }
    return moves;
}

// Random grid state: each player's demand split into `denom` equal chunks
// distributed over the strategy list.
inline lip::SplittableState random_grid_state(const lip::SplittableInstance& inst,
                                              std::mt19937_64& rng, int denom = 4) {
    lip::SplittableState state;
    for (int i = 0; i < inst.n; ++i) {
        int k = static_cast<int>(inst.strategies[i].size());
        std::vector<lip::Rational> row(k, 0);
        for (int chunk = 0; chunk < denom; ++chunk)
            row[pick(rng, 0, k - 1)] += inst.demands[i] / denom;
        state.intensity.push_back(std::move(row));
    }
    return state;
}

}  // namespace gen

#endif
