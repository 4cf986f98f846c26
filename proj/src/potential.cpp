#include "lip/potential.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "lip/enumeration.hpp"

namespace lip {

LipVerdict verify_lip(const FiniteGame& game, const LipFunction& phi,
                      int max_coalition, const EnumerationBudget& budget) {
    CostTable table(game, budget);
    // The comparator only depends on the (from, to) profile pair, so each
    // edge is checked once even when several coalitions induce it.
    std::unordered_set<std::uint64_t> seen;
    auto edge_key = [&](std::int64_t a, std::int64_t b) {
        return static_cast<std::uint64_t>(a) * 0x9e3779b97f4a7c15ULL ^
               static_cast<std::uint64_t>(b);
    };
    std::vector<std::optional<CostVector>> values(table.size());
    auto value_at = [&](std::int64_t r) -> const CostVector& {
        if (!values[r]) values[r] = phi.eval(game.unrank(r));
        return *values[r];
    };

    LipVerdict verdict;
    verdict.holds = true;
    for_each_improving_move(
        game, table, max_coalition, MoveMode::Strict, 0,
        [&](std::int64_t from, std::int64_t to, const std::vector<int>& coalition) {
            if (!seen.insert(edge_key(from, to)).second) return true;
            if (sorted_lex_compare(value_at(to), value_at(from)) != Ordering::Less) {
                verdict.holds = false;
                verdict.counterexample = ImprovingMove{game.unrank(from), coalition,
                                                       game.unrank(to), MoveMode::Strict};
                return false;
            }
            return true;
        });
    return verdict;
}

namespace {

long exponent_from_bounds(int q, const Rational& phi_max, const Rational& eps_min) {
    if (q <= 1 || phi_max == 0) return 1;
    double bound = std::log(static_cast<double>(q)) *
                   static_cast<double>(phi_max / eps_min);
    return static_cast<long>(std::floor(bound)) + 1;  // smallest integer > bound
}

}  // namespace

PotentialSpec compute_exponent(const FiniteGame& game, const LipFunction& phi,
                               int max_coalition, const EnumerationBudget& budget) {
    CostTable table(game, budget);
    PotentialSpec spec;
    spec.phi = phi;

    std::vector<CostVector> values(table.size());
    for (std::int64_t r = 0; r < table.size(); ++r) {
        values[r] = phi.eval(game.unrank(r));
        for (const auto& v : values[r]) spec.phi_max = std::max(spec.phi_max, v);
    }

    std::optional<Rational> eps;
    std::unordered_set<std::uint64_t> seen;
    for_each_improving_move(
        game, table, max_coalition, MoveMode::Strict, 0,
        [&](std::int64_t from, std::int64_t to, const std::vector<int>&) {
            std::uint64_t key = static_cast<std::uint64_t>(from) *
                                    0x9e3779b97f4a7c15ULL ^
                                static_cast<std::uint64_t>(to);
            if (!seen.insert(key).second) return true;
            for (int i = 0; i < phi.q; ++i) {
                Rational d = values[from][i] - values[to][i];
                if (d > 0 && (!eps || d < *eps)) eps = d;
            }
            return true;
        });

    if (!eps) {
        // Edgeless improvement graph: any function is a potential.
        spec.no_moves = true;
        spec.eps_min = 1;
        spec.exponent = 1;
        return spec;
    }
    spec.eps_min = *eps;
    spec.exponent = exponent_from_bounds(phi.q, spec.phi_max, spec.eps_min);
    return spec;
}

PotentialSpec spec_from_bounds(const LipFunction& phi, const Rational& phi_max,
                               const Rational& eps_min) {
    if (eps_min <= 0) throw DomainError("eps_min must be positive");
    PotentialSpec spec;
    spec.phi = phi;
    spec.phi_max = phi_max;
    spec.eps_min = eps_min;
    spec.exponent = exponent_from_bounds(phi.q, phi_max, eps_min);
    return spec;
}

Rational power_potential(const PotentialSpec& spec, const Profile& x) {
    if (spec.exponent < 1) throw DomainError("exponent must be a positive integer");
    Rational total = 0;
    for (const auto& v : spec.phi.eval(x))
        total += pow_rational(v, static_cast<unsigned long>(spec.exponent));
    return total;
}

TopologicalPotential topological_potential(const FiniteGame& game, int max_coalition,
                                           const EnumerationBudget& budget) {
    CostTable table(game, budget);
    const std::int64_t size = table.size();
    std::vector<std::vector<std::int64_t>> succ(size);
    {
        std::unordered_set<std::uint64_t> seen;
        for_each_improving_move(
            game, table, max_coalition, MoveMode::Strict, 0,
            [&](std::int64_t from, std::int64_t to, const std::vector<int>&) {
                std::uint64_t key = static_cast<std::uint64_t>(from) *
                                        0x9e3779b97f4a7c15ULL ^
                                    static_cast<std::uint64_t>(to);
                if (seen.insert(key).second) succ[from].push_back(to);
                return true;
            });
    }

    TopologicalPotential result;
    // Iterative DFS with cycle extraction.
    std::vector<int> state(size, 0);  // 0 unvisited, 1 on stack, 2 done
    std::vector<std::int64_t> order;  // reverse topological order
    order.reserve(size);
    std::vector<std::pair<std::int64_t, std::size_t>> stack;
    std::vector<std::int64_t> path;
    for (std::int64_t start = 0; start < size; ++start) {
        if (state[start] != 0) continue;
        stack.push_back({start, 0});
        state[start] = 1;
        path.push_back(start);
        while (!stack.empty()) {
            auto& [node, idx] = stack.back();
            if (idx < succ[node].size()) {
                std::int64_t next = succ[node][idx++];
                if (state[next] == 0) {
                    state[next] = 1;
                    stack.push_back({next, 0});
                    path.push_back(next);
                } else if (state[next] == 1) {
                    auto it = std::find(path.begin(), path.end(), next);
                    result.cycle.assign(it, path.end());
                    result.acyclic = false;
                    return result;
                }
            } else {
                state[node] = 2;
                order.push_back(node);
                stack.pop_back();
                path.pop_back();
            }
        }
    }

    result.acyclic = true;
    result.labels.assign(size, 0);
    // `order` lists sinks first; label by position so edges strictly decrease.
    for (std::int64_t pos = 0; pos < size; ++pos) result.labels[order[pos]] = pos;
    return result;
}

BigInt path_bound(const PotentialSpec& spec) {
    Rational value = Rational(spec.phi.q) *
                     pow_rational(spec.phi_max, static_cast<unsigned long>(spec.exponent)) /
                     spec.eps_min;
    return ceil_rational(value);
}

}  // namespace lip
