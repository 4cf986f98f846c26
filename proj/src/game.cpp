#include "lip/game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lip/enumeration.hpp"

namespace lip {

FiniteGame::FiniteGame(std::vector<int> strategy_counts, CostOracle cost)
    : counts_(std::move(strategy_counts)), cost_(std::move(cost)) {
    if (counts_.empty()) throw ValidationError("game needs at least one player");
    for (int c : counts_)
        if (c < 1) throw ValidationError("every strategy set must be non-empty");
}

std::vector<Rational> FiniteGame::costs(const Profile& x) const {
    if (static_cast<int>(x.choices.size()) != players())
        throw DimensionError("profile length does not match player count");
    for (int i = 0; i < players(); ++i)
        if (x.choices[i] < 0 || x.choices[i] >= counts_[i])
            throw DomainError("strategy index out of range");
    auto c = cost_(x);
    if (static_cast<int>(c.size()) != players())
        throw ValidationError("cost oracle returned wrong arity");
    for (const auto& v : c)
        if (v < 0) throw ValidationError("cost oracle returned a negative value");
    return c;
}

std::optional<std::int64_t> FiniteGame::profile_count() const {
    std::int64_t total = 1;
    for (int c : counts_) {
        if (total > std::numeric_limits<std::int64_t>::max() / c) return std::nullopt;
        total *= c;
    }
    return total;
}

std::int64_t FiniteGame::rank(const Profile& x) const {
    std::int64_t r = 0;
    for (int i = 0; i < players(); ++i) r = r * counts_[i] + x.choices[i];
    return r;
}

Profile FiniteGame::unrank(std::int64_t r) const {
    Profile x;
    x.choices.assign(players(), 0);
    for (int i = players() - 1; i >= 0; --i) {
        x.choices[i] = static_cast<int>(r % counts_[i]);
        r /= counts_[i];
    }
    return x;
}

ProfileIterator::ProfileIterator(const std::vector<int>& counts) : counts_(counts) {
    current_.choices.assign(counts.size(), 0);
}

void ProfileIterator::advance() {
    for (int i = static_cast<int>(counts_.size()) - 1; i >= 0; --i) {
        if (++current_.choices[i] < counts_[i]) return;
        current_.choices[i] = 0;
    }
    done_ = true;
}

bool move_improves(const std::vector<Rational>& from_costs,
                   const std::vector<Rational>& to_costs,
                   const std::vector<int>& coalition, MoveMode mode,
                   const Rational& alpha) {
    switch (mode) {
        case MoveMode::Strict:
            for (int i : coalition)
                if (from_costs[i] <= to_costs[i]) return false;
            return true;
        case MoveMode::AlphaStrict:
            for (int i : coalition)
                if (from_costs[i] - to_costs[i] <= alpha) return false;
            return true;
        case MoveMode::WeakSsne: {
            bool one_strict = false;
            for (int i : coalition) {
                if (to_costs[i] > from_costs[i]) return false;
                if (to_costs[i] < from_costs[i]) one_strict = true;
            }
            return one_strict;
        }
    }
    return false;
}

std::vector<std::vector<int>> coalition_order(int n, int max_size) {
    std::vector<std::vector<int>> result;
    std::vector<int> combo;
    auto recurse = [&](auto&& self, int start, int remaining) -> void {
        if (remaining == 0) {
            result.push_back(combo);
            return;
        }
        for (int i = start; i <= n - remaining; ++i) {
            combo.push_back(i);
            self(self, i + 1, remaining - 1);
            combo.pop_back();
        }
    };
    for (int size = 1; size <= std::min(n, max_size); ++size) recurse(recurse, 0, size);
    return result;
}

namespace {

// Enumerates joint deviations of `coalition` from x lexicographically,
// skipping the identity deviation.
template <typename Fn>
void for_each_deviation(const std::vector<int>& counts, const Profile& x,
                        const std::vector<int>& coalition, Fn&& fn) {
    Profile y = x;
    const int k = static_cast<int>(coalition.size());
    std::vector<int> ix(k, 0);
    while (true) {
        for (int j = 0; j < k; ++j) y.choices[coalition[j]] = ix[j];
        if (y.choices != x.choices)
            if (!fn(y)) return;
        int j = k - 1;
        for (; j >= 0; --j) {
            if (++ix[j] < counts[coalition[j]]) break;
            ix[j] = 0;
        }
        if (j < 0) break;
    }
}

}  // namespace

std::vector<ImprovingMove> improving_moves(const FiniteGame& game, const Profile& x,
                                           int max_coalition, MoveMode mode,
                                           const Rational& alpha) {
    if (max_coalition < 1 || max_coalition > game.players())
        throw DomainError("max_coalition must be in [1, n]");
    std::vector<ImprovingMove> moves;
    auto from_costs = game.costs(x);
    for (const auto& coalition : coalition_order(game.players(), max_coalition)) {
        for_each_deviation(game.strategy_counts(), x, coalition, [&](const Profile& y) {
            if (move_improves(from_costs, game.costs(y), coalition, mode, alpha))
                moves.push_back(ImprovingMove{x, coalition, y, mode});
            return true;
        });
    }
    return moves;
}

bool has_improving_move(const FiniteGame& game, const Profile& x, int max_coalition,
                        MoveMode mode, const Rational& alpha) {
    auto from_costs = game.costs(x);
    bool found = false;
    for (const auto& coalition : coalition_order(game.players(), max_coalition)) {
        for_each_deviation(game.strategy_counts(), x, coalition, [&](const Profile& y) {
            if (move_improves(from_costs, game.costs(y), coalition, mode, alpha)) {
                found = true;
                return false;
            }
            return true;
        });
        if (found) break;
    }
    return found;
}

bool is_pne(const FiniteGame& game, const Profile& x) {
    return !has_improving_move(game, x, 1, MoveMode::Strict);
}

bool is_sne(const FiniteGame& game, const Profile& x) {
    return !has_improving_move(game, x, game.players(), MoveMode::Strict);
}

bool is_ssne(const FiniteGame& game, const Profile& x) {
    return !has_improving_move(game, x, game.players(), MoveMode::WeakSsne);
}

CostTable::CostTable(const FiniteGame& game, const EnumerationBudget& budget) {
    auto total = game.profile_count();
    if (!total || *total > budget.max_profiles)
        throw BudgetError("profile space exceeds enumeration budget");
    if (game.players() > budget.max_coalition_players)
        throw BudgetError("player count exceeds coalition enumeration budget");
    costs_.reserve(static_cast<std::size_t>(*total));
    for (ProfileIterator it(game.strategy_counts()); !it.done(); it.advance())
        costs_.push_back(game.costs(it.current()));
}

void for_each_improving_move(
    const FiniteGame& game, const CostTable& table, int max_coalition, MoveMode mode,
    const Rational& alpha,
    const std::function<bool(std::int64_t, std::int64_t, const std::vector<int>&)>&
        visit) {
    const auto coalitions = coalition_order(game.players(), max_coalition);
    bool stop = false;
    for (std::int64_t r = 0; r < table.size() && !stop; ++r) {
        const Profile x = game.unrank(r);
        const auto& from_costs = table.at(r);
        for (const auto& coalition : coalitions) {
            if (stop) break;
            for_each_deviation(game.strategy_counts(), x, coalition,
                               [&](const Profile& y) {
                                   std::int64_t ry = game.rank(y);
                                   if (move_improves(from_costs, table.at(ry),
                                                     coalition, mode, alpha)) {
                                       if (!visit(r, ry, coalition)) {
                                           stop = true;
                                           return false;
                                       }
                                   }
                                   return true;
                               });
        }
    }
}

std::vector<Profile> enumerate_sne(const FiniteGame& game,
                                   const EnumerationBudget& budget) {
    CostTable table(game, budget);
    const auto coalitions = coalition_order(game.players(), game.players());
    std::vector<Profile> result;
    for (std::int64_t r = 0; r < table.size(); ++r) {
        const Profile x = game.unrank(r);
        const auto& from_costs = table.at(r);
        bool stable = true;
        for (const auto& coalition : coalitions) {
            for_each_deviation(game.strategy_counts(), x, coalition,
                               [&](const Profile& y) {
                                   if (move_improves(from_costs, table.at(game.rank(y)),
                                                     coalition, MoveMode::Strict, 0)) {
                                       stable = false;
                                       return false;
                                   }
                                   return true;
                               });
            if (!stable) break;
        }
        if (stable) result.push_back(x);
    }
    return result;
}

namespace {

enum class Dominance { StrictAll, WeakOneStrict };

bool dominated(const FiniteGame& game, const Profile& x, Dominance kind,
               const EnumerationBudget& budget) {
    auto total = game.profile_count();
    if (!total || *total > budget.max_profiles)
        throw BudgetError("profile space exceeds enumeration budget");
    auto xc = game.costs(x);
    const int n = game.players();
    for (ProfileIterator it(game.strategy_counts()); !it.done(); it.advance()) {
        if (it.current().choices == x.choices) continue;
        auto yc = game.costs(it.current());
        if (kind == Dominance::StrictAll) {
            bool all = true;
            for (int i = 0; i < n; ++i)
                if (yc[i] >= xc[i]) { all = false; break; }
            if (all) return true;
        } else {
            bool weak = true, strict = false;
            for (int i = 0; i < n; ++i) {
                if (yc[i] > xc[i]) { weak = false; break; }
                if (yc[i] < xc[i]) strict = true;
            }
            if (weak && strict) return true;
        }
    }
    return false;
}

}  // namespace

bool is_weak_pareto(const FiniteGame& game, const Profile& x,
                    const EnumerationBudget& budget) {
    return !dominated(game, x, Dominance::StrictAll, budget);
}

bool is_strict_pareto(const FiniteGame& game, const Profile& x,
                      const EnumerationBudget& budget) {
    return !dominated(game, x, Dominance::WeakOneStrict, budget);
}

bool is_minmax_fair(const FiniteGame& game, const Profile& x,
                    const EnumerationBudget& budget) {
    auto total = game.profile_count();
    if (!total || *total > budget.max_profiles)
        throw BudgetError("profile space exceeds enumeration budget");
    auto xc = game.costs(x);
    const int n = game.players();
    for (ProfileIterator it(game.strategy_counts()); !it.done(); it.advance()) {
        if (it.current().choices == x.choices) continue;
        auto yc = game.costs(it.current());
        for (int i = 0; i < n; ++i) {
            if (yc[i] >= xc[i]) continue;
            bool witness = false;
            for (int j = 0; j < n; ++j) {
                if (xc[j] >= xc[i] && yc[j] > xc[j]) { witness = true; break; }
            }
            if (!witness) return false;
        }
    }
    return true;
}

std::vector<Profile> sorted_lex_minimizers(const FiniteGame& game,
                                           const EnumerationBudget& budget) {
    auto total = game.profile_count();
    if (!total || *total > budget.max_profiles)
        throw BudgetError("profile space exceeds enumeration budget");
    std::vector<Profile> best;
    std::vector<Rational> best_costs;
    for (ProfileIterator it(game.strategy_counts()); !it.done(); it.advance()) {
        auto c = game.costs(it.current());
        if (best.empty()) {
            best.push_back(it.current());
            best_costs = c;
            continue;
        }
        switch (sorted_lex_compare(c, best_costs)) {
            case Ordering::Less:
                best.clear();
                best.push_back(it.current());
                best_costs = c;
                break;
            case Ordering::Equal:
                best.push_back(it.current());
                break;
            case Ordering::Greater:
                break;
        }
    }
    return best;
}

std::optional<Rational> lp_cost_exact(const std::vector<Rational>& costs, LpNorm norm) {
    if (norm.infinite) {
        Rational m = 0;
        for (const auto& c : costs) m = std::max(m, c);
        return m;
    }
    if (norm.p == 1) {
        Rational s = 0;
        for (const auto& c : costs) s += c;
        return s;
    }
    return std::nullopt;
}

double lp_cost(const std::vector<Rational>& costs, LpNorm norm) {
    if (auto exact = lp_cost_exact(costs, norm)) return static_cast<double>(*exact);
    if (norm.p < 1) throw DomainError("L_p norm requires p >= 1");
    double s = 0.0;
    for (const auto& c : costs) s += std::pow(static_cast<double>(c), norm.p);
    return std::pow(s, 1.0 / norm.p);
}

namespace {

// Exact p-th power sum; comparing these compares L_p values.
Rational power_sum(const std::vector<Rational>& costs, unsigned p) {
    Rational s = 0;
    for (const auto& c : costs) s += pow_rational(c, p);
    return s;
}

EfficiencyResult sne_efficiency(const FiniteGame& game, LpNorm norm, bool worst,
                                const EnumerationBudget& budget) {
    auto sne = enumerate_sne(game, budget);
    if (sne.empty()) throw DomainError("game has no strong Nash equilibrium");

    const bool exact_norm = norm.infinite || norm.p == 1;
    auto key = [&](const std::vector<Rational>& c) -> Rational {
        if (norm.infinite) return *lp_cost_exact(c, norm);
        return power_sum(c, norm.p);  // p-th power sum, monotone in L_p
    };

    std::optional<Rational> pick;
    for (const auto& x : sne) {
        Rational v = key(game.costs(x));
        if (!pick || (worst ? v > *pick : v < *pick)) pick = v;
    }
    std::optional<Rational> opt;
    for (ProfileIterator it(game.strategy_counts()); !it.done(); it.advance()) {
        Rational v = key(game.costs(it.current()));
        if (!opt || v < *opt) opt = v;
    }

    EfficiencyResult result;
    if (*opt == 0) {
        if (*pick == 0) {  // both optimum and the chosen SNE cost nothing
            result.exact = 1;
            result.ratio = 1.0;
            return result;
        }
        result.optimum_zero = true;
        result.ratio = std::numeric_limits<double>::infinity();
        return result;
    }
    Rational raw = *pick / *opt;
    if (exact_norm) {
        result.exact = raw;
        result.ratio = static_cast<double>(raw);
    } else {
        result.ratio = std::pow(static_cast<double>(raw), 1.0 / norm.p);
    }
    return result;
}

}  // namespace

EfficiencyResult strong_pos(const FiniteGame& game, LpNorm norm,
                            const EnumerationBudget& budget) {
    return sne_efficiency(game, norm, /*worst=*/false, budget);
}

EfficiencyResult strong_poa(const FiniteGame& game, LpNorm norm,
                            const EnumerationBudget& budget) {
    return sne_efficiency(game, norm, /*worst=*/true, budget);
}

void PlayerTransform::validate() const {
    for (const auto& table : tables) {
        if (table.empty()) throw ValidationError("empty transform table");
        for (std::size_t i = 1; i < table.size(); ++i) {
            if (table[i].first <= table[i - 1].first ||
                table[i].second <= table[i - 1].second)
                throw ValidationError("transform table must be strictly increasing");
        }
    }
}

Rational PlayerTransform::apply(int player, const Rational& value) const {
    const auto& table = tables.at(player);
    if (value < table.front().first || value > table.back().first)
        throw DomainError("transform input outside table range");
    for (std::size_t i = 1; i < table.size(); ++i) {
        if (value <= table[i].first) {
            const auto& [x0, y0] = table[i - 1];
            const auto& [x1, y1] = table[i];
            return y0 + (y1 - y0) * (value - x0) / (x1 - x0);
        }
    }
    return table.back().second;  // value == front == back (single point)
}

FiniteGame apply_transform(const FiniteGame& game, const PlayerTransform& t) {
    if (static_cast<int>(t.tables.size()) != game.players())
        throw DimensionError("transform arity does not match player count");
    t.validate();
    return FiniteGame(game.strategy_counts(), [game, t](const Profile& x) {
        auto c = game.costs(x);
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = t.apply(static_cast<int>(i), c[i]);
        return c;
    });
}

}  // namespace lip
