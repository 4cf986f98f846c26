#include "lip/dynamics.hpp"

#include <algorithm>
#include <random>
#include <unordered_set>

#include "lip/enumeration.hpp"

namespace lip {

RunReport run(const FiniteGame& game, const Profile& x0, const DynamicsConfig& cfg,
              const PotentialSpec* spec) {
    if (cfg.step_cap < 1) throw DomainError("step cap must be at least 1");
    const int coalition =
        cfg.max_coalition > 0 ? cfg.max_coalition : game.players();

    RunReport report;
    if (spec) report.bound = path_bound(*spec);
    report.path.push_back(x0);
    std::mt19937_64 rng(cfg.seed);

    Profile x = x0;
    while (true) {
        auto moves = improving_moves(game, x, coalition, cfg.mode, cfg.alpha);
        if (moves.empty()) {
            bool full = coalition >= game.players();
            if (cfg.mode == MoveMode::Strict && full)
                report.classification = TerminalKind::Sne;
            else if (cfg.mode == MoveMode::WeakSsne && full)
                report.classification = TerminalKind::Ssne;
            else
                report.classification = TerminalKind::NoMove;
            break;
        }
        if (report.steps >= cfg.step_cap) {
            report.classification = TerminalKind::StepCap;
            break;
        }

        std::size_t pick = 0;
        switch (cfg.rule) {
            case SelectionRule::First:
                break;
            case SelectionRule::BestResponse: {
                // Maximize the coalition's worst-member cost decrease; the
                // enumeration order breaks ties.
                std::optional<Rational> best;
                auto from_costs = game.costs(x);
                for (std::size_t k = 0; k < moves.size(); ++k) {
                    auto to_costs = game.costs(moves[k].to);
                    std::optional<Rational> gain;
                    for (int i : moves[k].coalition) {
                        Rational g = from_costs[i] - to_costs[i];
                        if (!gain || g < *gain) gain = g;
                    }
                    if (!best || *gain > *best) {
                        best = gain;
                        pick = k;
                    }
                }
                break;
            }
            case SelectionRule::Random:
                pick = std::uniform_int_distribution<std::size_t>(
                    0, moves.size() - 1)(rng);
                break;
        }
        x = moves[pick].to;
        report.path.push_back(x);
        ++report.steps;
    }
    report.terminal = x;
    return report;
}

ImprovementGraph improvement_graph(const FiniteGame& game, int max_coalition,
                                   const EnumerationBudget& budget) {
    CostTable table(game, budget);
    ImprovementGraph graph;
    graph.succ.resize(table.size());
    std::unordered_set<std::uint64_t> seen;
    for_each_improving_move(
        game, table, max_coalition, MoveMode::Strict, 0,
        [&](std::int64_t from, std::int64_t to, const std::vector<int>&) {
            std::uint64_t key = static_cast<std::uint64_t>(from) *
                                    0x9e3779b97f4a7c15ULL ^
                                static_cast<std::uint64_t>(to);
            if (seen.insert(key).second) graph.succ[from].push_back(to);
            return true;
        });

    // DFS cycle detection, identical scheme to the potential module.
    const std::int64_t size = static_cast<std::int64_t>(graph.succ.size());
    std::vector<int> state(size, 0);
    std::vector<std::pair<std::int64_t, std::size_t>> stack;
    std::vector<std::int64_t> path;
    for (std::int64_t start = 0; start < size; ++start) {
        if (state[start] != 0) continue;
        stack.push_back({start, 0});
        state[start] = 1;
        path.push_back(start);
        while (!stack.empty()) {
            auto& [node, idx] = stack.back();
            if (idx < graph.succ[node].size()) {
                std::int64_t next = graph.succ[node][idx++];
                if (state[next] == 0) {
                    state[next] = 1;
                    stack.push_back({next, 0});
                    path.push_back(next);
                } else if (state[next] == 1) {
                    auto it = std::find(path.begin(), path.end(), next);
                    graph.cycle.assign(it, path.end());
                    graph.acyclic = false;
                    return graph;
                }
            } else {
                state[node] = 2;
                stack.pop_back();
                path.pop_back();
            }
        }
    }
    graph.acyclic = true;
    return graph;
}

std::int64_t longest_path_length(const ImprovementGraph& graph) {
    if (!graph.acyclic) throw DomainError("longest path undefined on a cyclic graph");
    const std::int64_t size = static_cast<std::int64_t>(graph.succ.size());
    std::vector<std::int64_t> longest(size, -1);
    // Memoized DFS; the graph is a DAG.
    std::function<std::int64_t(std::int64_t)> visit = [&](std::int64_t v) {
        if (longest[v] >= 0) return longest[v];
        std::int64_t best = 0;
        for (std::int64_t w : graph.succ[v]) best = std::max(best, 1 + visit(w));
        return longest[v] = best;
    };
    std::int64_t best = 0;
    for (std::int64_t v = 0; v < size; ++v) best = std::max(best, visit(v));
    return best;
}

}  // namespace lip
