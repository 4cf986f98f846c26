#include "lip/congestion.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace lip {

namespace {

int popcount(PlayerSet s) { return std::popcount(s); }

}  // namespace

PlayerSet CongestionModel::users_of(int f, const Profile& x) const {
    PlayerSet users = 0;
    for (int i = 0; i < n; ++i) {
        const auto& strat = strategies[i][x.choices[i]];
        if (std::find(strat.begin(), strat.end(), f) != strat.end())
            users |= PlayerSet{1} << i;
    }
    return users;
}

std::vector<int> CongestionModel::strategy_counts() const {
    std::vector<int> counts;
    counts.reserve(strategies.size());
    for (const auto& s : strategies) counts.push_back(static_cast<int>(s.size()));
    return counts;
}

Rational CongestionModel::facility_cost(int f, PlayerSet users) const {
    if (const auto* load = std::get_if<LoadTableCost>(&cost))
        return load->tables[f][popcount(users)];
    if (const auto* oracle = std::get_if<SetOracleCost>(&cost)) {
        auto it = oracle->tables[f].find(users);
        if (it == oracle->tables[f].end())
            throw ValidationError("set oracle has no entry for a reachable user set");
        return it->second;
    }
    const auto& interference = std::get<InterferenceCost>(cost);
    Rational total = 0;
    for (const auto& e : interference.edges) {
        PlayerSet pair = (PlayerSet{1} << e.u) | (PlayerSet{1} << e.v);
        if ((users & pair) == pair) total += e.weight;
    }
    return total;
}

void CongestionModel::validate() const {
    if (n < 1 || m < 1) throw ValidationError("model needs players and facilities");
    if (n > 31) throw ValidationError("player bitmask limit is 31");
    if (static_cast<int>(strategies.size()) != n)
        throw ValidationError("strategy list arity mismatch");
    for (const auto& player : strategies) {
        if (player.empty()) throw ValidationError("empty strategy set");
        for (const auto& strat : player) {
            if (strat.empty()) throw ValidationError("empty facility subset");
            for (int f : strat)
                if (f < 0 || f >= m) throw ValidationError("facility index out of range");
        }
    }

    if (const auto* load = std::get_if<LoadTableCost>(&cost)) {
        if (static_cast<int>(load->tables.size()) != m)
            throw ValidationError("load table arity mismatch");
        for (int f = 0; f < m; ++f) {
            const auto& t = load->tables[f];
            if (static_cast<int>(t.size()) != n + 1)
                throw ValidationError("load table must cover loads 0..n");
            for (int k = 0; k <= n; ++k) {
                if (t[k] < 0)
                    throw ValidationError("non-negativity violated: facility " +
                                          std::to_string(f) + " at load " +
                                          std::to_string(k));
                if (k > 0 && t[k] < t[k - 1])
                    throw ValidationError("monotonicity violated: facility " +
                                          std::to_string(f) + " between loads " +
                                          std::to_string(k - 1) + " and " +
                                          std::to_string(k));
            }
        }
    } else if (const auto* oracle = std::get_if<SetOracleCost>(&cost)) {
        if (static_cast<int>(oracle->tables.size()) != m)
            throw ValidationError("set oracle arity mismatch");
        if (n > 12)
            throw ValidationError("set oracle validation is exhaustive only up to 12 users");
        for (int f = 0; f < m; ++f) {
            const auto& t = oracle->tables[f];
            for (const auto& [users, value] : t) {
                if (value < 0)
                    throw ValidationError("non-negativity violated: facility " +
                                          std::to_string(f));
                // Monotonicity against every one-player extension present.
                for (int i = 0; i < n; ++i) {
                    PlayerSet super = users | (PlayerSet{1} << i);
                    if (super == users) continue;
                    auto it = t.find(super);
                    if (it != t.end() && it->second < value)
                        throw ValidationError(
                            "monotonicity violated: facility " + std::to_string(f) +
                            " user sets " + std::to_string(users) + " vs " +
                            std::to_string(super));
                }
            }
        }
    } else {
        const auto& interference = std::get<InterferenceCost>(cost);
        for (const auto& e : interference.edges) {
            if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
                throw ValidationError("interference edge endpoint out of range");
            if (e.weight < 0)
                throw ValidationError("non-negativity violated: negative interference weight");
        }
    }
}

FiniteGame build_game(const CongestionModel& model) {
    model.validate();
    return FiniteGame(model.strategy_counts(), [model](const Profile& x) {
        std::vector<Rational> facility(model.m);
        std::vector<bool> needed(model.m, false);
        for (int i = 0; i < model.n; ++i)
            for (int f : model.strategies[i][x.choices[i]]) needed[f] = true;
        for (int f = 0; f < model.m; ++f)
            if (needed[f]) facility[f] = model.facility_cost(f, model.users_of(f, x));
        std::vector<Rational> pi(model.n, 0);
        for (int i = 0; i < model.n; ++i) {
            for (int f : model.strategies[i][x.choices[i]])
                pi[i] = std::max(pi[i], facility[f]);
        }
        return pi;
    });
}

LipFunction phi_pi(const CongestionModel& model) {
    FiniteGame game = build_game(model);
    return LipFunction{model.n, [game](const Profile& x) { return game.costs(x); },
                       "phi_pi"};
}

LipFunction psi_facility(const CongestionModel& model) {
    return LipFunction{
        model.n * model.m,
        [model](const Profile& x) {
            CostVector v(static_cast<std::size_t>(model.n) * model.m, Rational(0));
            for (int i = 0; i < model.n; ++i)
                for (int f : model.strategies[i][x.choices[i]])
                    v[static_cast<std::size_t>(i) * model.m + f] =
                        model.facility_cost(f, model.users_of(f, x));
            return v;
        },
        "psi_facility"};
}

LipFunction upsilon(const CongestionModel& model) {
    return LipFunction{model.m,
                       [model](const Profile& x) {
                           CostVector v(model.m);
                           for (int f = 0; f < model.m; ++f)
                               v[f] = model.facility_cost(f, model.users_of(f, x));
                           return v;
                       },
                       "upsilon"};
}

PairVector alex_pairs(const CongestionModel& model, const Profile& x) {
    PairVector v(model.m);
    for (int f = 0; f < model.m; ++f) {
        PlayerSet users = model.users_of(f, x);
        v[f] = {model.facility_cost(f, users),
                Rational(static_cast<int>(std::popcount(users)))};
    }
    return v;
}

CongestionModel make_interference(int players, int stations,
                                  std::vector<InterferenceCost::Edge> edges) {
    for (const auto& e : edges)
        if (e.weight < 0) throw ValidationError("negative interference weight");
    CongestionModel model;
    model.n = players;
    model.m = stations;
    model.strategies.resize(players);
    for (int i = 0; i < players; ++i)
        for (int j = 0; j < stations; ++j) model.strategies[i].push_back({j});
    model.cost = InterferenceCost{std::move(edges)};
    model.validate();
    return model;
}

CongestionModel make_scheduling(const std::vector<std::vector<Rational>>& proc_times) {
    if (proc_times.empty()) throw ValidationError("no jobs");
    const int n = static_cast<int>(proc_times.size());
    const int m = static_cast<int>(proc_times.front().size());
    CongestionModel model;
    model.n = n;
    model.m = m;
    model.strategies.resize(n);
    SetOracleCost oracle;
    oracle.tables.resize(m);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(proc_times[i].size()) != m)
            throw ValidationError("ragged processing time matrix");
        for (int j = 0; j < m; ++j) {
            if (proc_times[i][j] < 0) throw ValidationError("negative processing time");
            model.strategies[i].push_back({j});
        }
    }
    for (int j = 0; j < m; ++j) {
        for (PlayerSet s = 0; s < (PlayerSet{1} << n); ++s) {
            Rational total = 0;
            for (int i = 0; i < n; ++i)
                if (s & (PlayerSet{1} << i)) total += proc_times[i][j];
            oracle.tables[j][s] = total;
        }
    }
    model.cost = std::move(oracle);
    model.validate();
    return model;
}

}  // namespace lip
