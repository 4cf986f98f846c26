#ifndef LIP_GAME_HPP
#define LIP_GAME_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "lip/lexorder.hpp"
#include "lip/rational.hpp"

namespace lip {

// A strategy choice per player, choices[i] in [0, strategy_counts[i]).
struct Profile {
    std::vector<int> choices;

    bool operator==(const Profile& other) const = default;
    auto operator<=>(const Profile& other) const = default;
};

enum class MoveMode { Strict, WeakSsne, AlphaStrict };

struct ImprovingMove {
    Profile from;
    std::vector<int> coalition;  // sorted player indices
    Profile to;                  // agrees with `from` outside the coalition
    MoveMode mode = MoveMode::Strict;
};

struct EnumerationBudget {
    std::int64_t max_profiles = 1'000'000;
    int max_coalition_players = 12;
};

// Finite strategic cost-minimization game with an exact-rational cost oracle.
// The oracle must be pure: same profile, same cost vector.
class FiniteGame {
  public:
    using CostOracle = std::function<std::vector<Rational>(const Profile&)>;

    FiniteGame(std::vector<int> strategy_counts, CostOracle cost);

    int players() const { return static_cast<int>(counts_.size()); }
    const std::vector<int>& strategy_counts() const { return counts_; }
    std::vector<Rational> costs(const Profile& x) const;

    // Total number of profiles, or nullopt on overflow past the budget cap.
    std::optional<std::int64_t> profile_count() const;
    std::int64_t rank(const Profile& x) const;      // lexicographic rank
    Profile unrank(std::int64_t r) const;

  private:
    std::vector<int> counts_;
    CostOracle cost_;
};

// Iterates profiles in lexicographic order.
class ProfileIterator {
  public:
    explicit ProfileIterator(const std::vector<int>& counts);
    bool done() const { return done_; }
    const Profile& current() const { return current_; }
    void advance();

  private:
    std::vector<int> counts_;
    Profile current_;
    bool done_ = false;
};

// All improving moves from x with coalition size <= max_coalition, in a
// deterministic order: coalitions by size then lexicographically, joint
// deviations lexicographically. AlphaStrict mode uses `alpha`.
std::vector<ImprovingMove> improving_moves(const FiniteGame& game, const Profile& x,
                                           int max_coalition, MoveMode mode,
                                           const Rational& alpha = 0);

// True iff `to` is an improving move from `from` for `coalition` under `mode`.
bool move_improves(const std::vector<Rational>& from_costs,
                   const std::vector<Rational>& to_costs,
                   const std::vector<int>& coalition, MoveMode mode,
                   const Rational& alpha = 0);

bool has_improving_move(const FiniteGame& game, const Profile& x, int max_coalition,
                        MoveMode mode, const Rational& alpha = 0);

bool is_pne(const FiniteGame& game, const Profile& x);
bool is_sne(const FiniteGame& game, const Profile& x);
bool is_ssne(const FiniteGame& game, const Profile& x);

std::vector<Profile> enumerate_sne(const FiniteGame& game,
                                   const EnumerationBudget& budget = {});

bool is_strict_pareto(const FiniteGame& game, const Profile& x,
                      const EnumerationBudget& budget = {});
bool is_weak_pareto(const FiniteGame& game, const Profile& x,
                    const EnumerationBudget& budget = {});
bool is_minmax_fair(const FiniteGame& game, const Profile& x,
                    const EnumerationBudget& budget = {});

// Profiles whose private-cost vector is minimal in the sorted lex order.
std::vector<Profile> sorted_lex_minimizers(const FiniteGame& game,
                                           const EnumerationBudget& budget = {});

// Social cost norms. p == 0 encodes L_infinity.
struct LpNorm {
    unsigned p = 1;
    bool infinite = false;

    static LpNorm l1() { return {1, false}; }
    static LpNorm lp(unsigned p) { return {p, false}; }
    static LpNorm linf() { return {0, true}; }
};

// Exact for L_1 and L_infinity; nullopt for fractional-root norms.
std::optional<Rational> lp_cost_exact(const std::vector<Rational>& costs, LpNorm norm);
double lp_cost(const std::vector<Rational>& costs, LpNorm norm);

struct EfficiencyResult {
    bool optimum_zero = false;   // ratio reported as +infinity
    double ratio = 0.0;
    std::optional<Rational> exact;  // valid for L_1 / L_infinity, finite optimum
};

EfficiencyResult strong_pos(const FiniteGame& game, LpNorm norm,
                            const EnumerationBudget& budget = {});
EfficiencyResult strong_poa(const FiniteGame& game, LpNorm norm,
                            const EnumerationBudget& budget = {});

// Per-player strictly increasing piecewise-linear map on cost values.
struct PlayerTransform {
    // One breakpoint table per player: (input, output), strictly increasing
    // in both coordinates.
    std::vector<std::vector<std::pair<Rational, Rational>>> tables;

    void validate() const;
    Rational apply(int player, const Rational& value) const;
};

FiniteGame apply_transform(const FiniteGame& game, const PlayerTransform& t);

}  // namespace lip

#endif
