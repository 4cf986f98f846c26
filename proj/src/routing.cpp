#include "lip/routing.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <optional>
#include <set>

namespace lip {

namespace {

std::vector<std::vector<int>> out_arcs(const RoutingInstance& inst) {
    std::vector<std::vector<int>> out(inst.vertices.size());
    for (std::size_t a = 0; a < inst.arcs.size(); ++a)
        out[inst.arcs[a].tail].push_back(static_cast<int>(a));
    return out;
}

// Unit-capacity max flow (Edmonds-Karp). Returns per-arc 0/1 flow.
struct UnitFlow {
    std::vector<int> flow;
    int value = 0;
    std::vector<char> residual_reachable;  // from source, defines the min cut
};

UnitFlow unit_max_flow(const RoutingInstance& inst) {
    const int V = static_cast<int>(inst.vertices.size());
    auto out = out_arcs(inst);
    std::vector<std::vector<int>> in(V);
    for (std::size_t a = 0; a < inst.arcs.size(); ++a)
        in[inst.arcs[a].head].push_back(static_cast<int>(a));

    UnitFlow result;
    result.flow.assign(inst.arcs.size(), 0);
    while (true) {
        // BFS in the residual graph; prev[v] = (arc, forward?)
        std::vector<std::pair<int, bool>> prev(V, {-1, true});
        std::vector<char> seen(V, 0);
        std::deque<int> queue{inst.source};
        seen[inst.source] = 1;
        while (!queue.empty() && !seen[inst.sink]) {
            int v = queue.front();
            queue.pop_front();
            for (int a : out[v]) {
                int w = inst.arcs[a].head;
                if (!seen[w] && result.flow[a] == 0) {
                    seen[w] = 1;
                    prev[w] = {a, true};
                    queue.push_back(w);
                }
            }
            for (int a : in[v]) {
                int w = inst.arcs[a].tail;
                if (!seen[w] && result.flow[a] == 1) {
                    seen[w] = 1;
                    prev[w] = {a, false};
                    queue.push_back(w);
                }
            }
        }
        if (!seen[inst.sink]) {
            result.residual_reachable.assign(seen.begin(), seen.end());
            return result;
        }
        for (int v = inst.sink; v != inst.source;) {
            auto [a, forward] = prev[v];
            result.flow[a] = forward ? 1 : 0;
            v = forward ? inst.arcs[a].tail : inst.arcs[a].head;
        }
        ++result.value;
    }
}

// Decomposes an integral flow of value `units` into `units` simple paths,
// cancelling any flow cycles met along the way. Walks always take the
// smallest-index arc with remaining flow, so output is deterministic.
std::vector<ArcPath> decompose(const RoutingInstance& inst, std::vector<int>& flow,
                               int units) {
    auto out = out_arcs(inst);
    std::vector<ArcPath> paths;
    for (int u = 0; u < units; ++u) {
        ArcPath path;
        std::vector<int> visited_at(inst.vertices.size(), -1);
        int v = inst.source;
        visited_at[v] = 0;
        while (v != inst.sink) {
            int next_arc = -1;
            for (int a : out[v])
                if (flow[a] > 0) {
                    next_arc = a;
                    break;
                }
            if (next_arc == -1)
                throw DomainError("flow decomposition stuck: conservation violated");
            --flow[next_arc];
            path.push_back(next_arc);
            v = inst.arcs[next_arc].head;
            if (visited_at[v] >= 0) {
                // Cycle: the arcs since the first visit carry a flow cycle
                // that we simply drop (monotone costs never need it).
                for (std::size_t k = visited_at[v]; k < path.size(); ++k)
                    visited_at[inst.arcs[path[k]].head] = -1;
                path.resize(visited_at[v]);
            }
            visited_at[v] = static_cast<int>(path.size());
        }
        paths.push_back(std::move(path));
    }
    std::sort(paths.begin(), paths.end());
    return paths;
}

std::vector<int> loads_of(std::size_t arcs, const std::vector<ArcPath>& player_paths) {
    std::vector<int> loads(arcs, 0);
    for (const auto& p : player_paths)
        for (int a : p) ++loads[a];
    return loads;
}

Profile profile_for(const RoutingInstance& inst,
                    const std::vector<ArcPath>& player_paths) {
    auto all = enumerate_simple_paths(inst);
    Profile x;
    for (const auto& p : player_paths) {
        auto it = std::lower_bound(all.begin(), all.end(), p);
        if (it == all.end() || *it != p)
            throw DomainError("decomposed path is not a simple s-t path");
        x.choices.push_back(static_cast<int>(it - all.begin()));
    }
    return x;
}

}  // namespace

void RoutingInstance::validate(bool require_convex) const {
    if (n < 1) throw ValidationError("routing instance needs at least one player");
    if (source < 0 || source >= static_cast<int>(vertices.size()) || sink < 0 ||
        sink >= static_cast<int>(vertices.size()) || source == sink)
        throw ValidationError("source/sink must be distinct vertices");
    for (std::size_t a = 0; a < arcs.size(); ++a) {
        const auto& arc = arcs[a];
        if (arc.tail < 0 || arc.tail >= static_cast<int>(vertices.size()) ||
            arc.head < 0 || arc.head >= static_cast<int>(vertices.size()))
            throw ValidationError("arc endpoint out of range");
        if (static_cast<int>(arc.table.size()) != n + 1)
            throw ValidationError("arc " + std::to_string(a) +
                                  ": cost table must have n+1 entries");
        for (int k = 0; k <= n; ++k) {
            if (arc.table[k] < 0)
                throw ValidationError("arc " + std::to_string(a) +
                                      ": negative cost (non-negativity)");
            if (k > 0 && arc.table[k] < arc.table[k - 1])
                throw ValidationError("arc " + std::to_string(a) +
                                      ": decreasing cost table (monotonicity)");
            if (require_convex && arc.table[k] > cost_bound)
                throw ValidationError("arc " + std::to_string(a) +
                                      ": cost exceeds bound C");
            if (require_convex && k >= 2 &&
                arc.table[k] - arc.table[k - 1] < arc.table[k - 1] - arc.table[k - 2])
                throw ValidationError("arc " + std::to_string(a) +
                                      ": non-convex cost table at load " +
                                      std::to_string(k));
        }
    }
}

std::vector<ArcPath> enumerate_simple_paths(const RoutingInstance& inst,
                                            std::int64_t max_paths) {
    auto out = out_arcs(inst);
    std::vector<ArcPath> paths;
    std::vector<char> on_path(inst.vertices.size(), 0);
    ArcPath current;
    std::function<void(int)> dfs = [&](int v) {
        if (v == inst.sink) {
            if (static_cast<std::int64_t>(paths.size()) >= max_paths)
                throw BudgetError("simple path enumeration exceeded budget");
            paths.push_back(current);
            return;
        }
        on_path[v] = 1;
        for (int a : out[v]) {
            if (on_path[inst.arcs[a].head]) continue;
            current.push_back(a);
            dfs(inst.arcs[a].head);
            current.pop_back();
        }
        on_path[v] = 0;
    };
    dfs(inst.source);
    std::sort(paths.begin(), paths.end());
    return paths;
}

RoutingSolution sne_identical_costs(const RoutingInstance& inst) {
    inst.validate(/*require_convex=*/false);
    for (std::size_t a = 1; a < inst.arcs.size(); ++a)
        if (inst.arcs[a].table != inst.arcs[0].table)
            throw ValidationError("identical-cost algorithm requires equal arc tables");

    auto mf = unit_max_flow(inst);
    if (mf.value == 0) throw DomainError("sink unreachable from source");
    const int m = mf.value;

    RoutingSolution sol;
    sol.disjoint_paths = m;
    for (std::size_t a = 0; a < inst.arcs.size(); ++a)
        if (mf.flow[a] == 1 && mf.residual_reachable[inst.arcs[a].tail] &&
            !mf.residual_reachable[inst.arcs[a].head])
            sol.cut_arcs.push_back(static_cast<int>(a));

    auto flow = mf.flow;
    auto paths = decompose(inst, flow, m);

    // k paths carry floor(n/m) players, the rest ceil(n/m).
    const int ceil_nm = (inst.n + m - 1) / m;
    const int floor_nm = inst.n / m;
    const int k = m * ceil_nm - inst.n;
    for (int p = 0; p < m; ++p) {
        int quota = p < k ? floor_nm : ceil_nm;
        for (int j = 0; j < quota; ++j) sol.player_paths.push_back(paths[p]);
    }
    sol.arc_loads = loads_of(inst.arcs.size(), sol.player_paths);
    sol.profile = profile_for(inst, sol.player_paths);
    return sol;
}

namespace {

// Exponent for the flow objective sum_a (c_a(x_a)/C)^M x_a: smallest M with
// M > ln(n*m) * phi_max / eps_min over the scaled cost values.
long routing_exponent(const RoutingInstance& inst) {
    std::set<Rational> values{0};
    Rational phi_max = 0;
    for (const auto& arc : inst.arcs)
        for (const auto& c : arc.table) {
            Rational scaled = c / inst.cost_bound;
            values.insert(scaled);
            phi_max = std::max(phi_max, scaled);
        }
    if (phi_max == 0) return 1;
    Rational eps_min = 0;
    for (auto it = std::next(values.begin()); it != values.end(); ++it) {
        Rational gap = *it - *std::prev(it);
        if (eps_min == 0 || gap < eps_min) eps_min = gap;
    }
    long q = static_cast<long>(inst.n) * static_cast<long>(inst.arcs.size());
    if (q <= 1) return 1;
    double bound = std::log(static_cast<double>(q)) *
                   static_cast<double>(phi_max / eps_min);
    return static_cast<long>(std::floor(bound)) + 1;
}

}  // namespace

RoutingSolution sne_convex_costs(const RoutingInstance& inst) {
    inst.validate(/*require_convex=*/true);
    const long M = routing_exponent(inst);
    const std::size_t A = inst.arcs.size();

    // g_a(k) = (c_a(k)/C)^M * k; per-unit increments are non-decreasing in k
    // by convexity, which keeps successive shortest paths valid.
    std::vector<std::vector<Rational>> g(A);
    for (std::size_t a = 0; a < A; ++a) {
        g[a].resize(inst.n + 1);
        for (int k = 0; k <= inst.n; ++k)
            g[a][k] = pow_rational(inst.arcs[a].table[k] / inst.cost_bound,
                                   static_cast<unsigned long>(M)) *
                      k;
    }

    const int V = static_cast<int>(inst.vertices.size());
    std::vector<int> flow(A, 0);
    for (int unit = 0; unit < inst.n; ++unit) {
        // Bellman-Ford on the residual graph with exact costs. Arcs scanned
        // in index order, strict-improvement updates only: deterministic.
        std::vector<std::optional<Rational>> dist(V);
        std::vector<std::pair<int, bool>> prev(V, {-1, true});
        dist[inst.source] = 0;
        for (int round = 0; round < V; ++round) {
            bool changed = false;
            for (std::size_t a = 0; a < A; ++a) {
                const auto& arc = inst.arcs[a];
                if (flow[a] < inst.n && dist[arc.tail]) {
                    Rational d = *dist[arc.tail] + g[a][flow[a] + 1] - g[a][flow[a]];
                    if (!dist[arc.head] || d < *dist[arc.head]) {
                        dist[arc.head] = d;
                        prev[arc.head] = {static_cast<int>(a), true};
                        changed = true;
                    }
                }
                if (flow[a] > 0 && dist[arc.head]) {
                    Rational d = *dist[arc.head] - (g[a][flow[a]] - g[a][flow[a] - 1]);
                    if (!dist[arc.tail] || d < *dist[arc.tail]) {
                        dist[arc.tail] = d;
                        prev[arc.tail] = {static_cast<int>(a), false};
                        changed = true;
                    }
                }
            }
            if (!changed) break;
        }
        if (!dist[inst.sink]) throw DomainError("sink unreachable from source");
        for (int v = inst.sink; v != inst.source;) {
            auto [a, forward] = prev[v];
            flow[a] += forward ? 1 : -1;
            v = forward ? inst.arcs[a].tail : inst.arcs[a].head;
        }
    }

    RoutingSolution sol;
    sol.exponent = M;
    sol.player_paths = decompose(inst, flow, inst.n);
    sol.arc_loads = loads_of(A, sol.player_paths);
    for (std::size_t a = 0; a < A; ++a) sol.potential += g[a][sol.arc_loads[a]];
    sol.profile = profile_for(inst, sol.player_paths);
    return sol;
}

bool verify_cut_certificate(const RoutingInstance& inst, const Profile& profile) {
    auto paths = enumerate_simple_paths(inst);
    std::vector<ArcPath> player_paths;
    for (int c : profile.choices) player_paths.push_back(paths.at(c));
    auto loads = loads_of(inst.arcs.size(), player_paths);

    auto mf = unit_max_flow(inst);
    if (mf.value == 0) return false;
    const int ceil_nm = (inst.n + mf.value - 1) / mf.value;
    const int floor_nm = inst.n / mf.value;
    for (std::size_t a = 0; a < inst.arcs.size(); ++a) {
        bool in_cut = mf.residual_reachable[inst.arcs[a].tail] &&
                      !mf.residual_reachable[inst.arcs[a].head];
        if (in_cut && (loads[a] < floor_nm || loads[a] > ceil_nm)) return false;
    }
    const Rational cap = inst.arcs.at(0).table.at(ceil_nm);
    for (const auto& p : player_paths) {
        Rational bottleneck = 0;
        for (int a : p) bottleneck = std::max(bottleneck, inst.arcs[a].table[loads[a]]);
        if (bottleneck > cap) return false;
    }
    return true;
}

CongestionModel to_congestion_model(const RoutingInstance& inst,
                                    std::int64_t max_paths) {
    auto paths = enumerate_simple_paths(inst, max_paths);
    if (paths.empty()) throw DomainError("sink unreachable from source");
    CongestionModel model;
    model.n = inst.n;
    model.m = static_cast<int>(inst.arcs.size());
    model.strategies.assign(inst.n, paths);
    LoadTableCost cost;
    for (const auto& arc : inst.arcs) cost.tables.push_back(arc.table);
    model.cost = std::move(cost);
    return model;
}

}  // namespace lip
