#ifndef LIP_DYNAMICS_HPP
#define LIP_DYNAMICS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "lip/game.hpp"
#include "lip/potential.hpp"

namespace lip {

enum class SelectionRule { First, BestResponse, Random };

struct DynamicsConfig {
    MoveMode mode = MoveMode::Strict;
    Rational alpha = 0;      // AlphaStrict only
    int max_coalition = 0;   // 0 = all players
    SelectionRule rule = SelectionRule::First;
    std::uint64_t seed = 0;  // Random rule
    std::int64_t step_cap = 1'000'000;
};

enum class TerminalKind { Sne, Ssne, NoMove, StepCap };

struct RunReport {
    std::vector<Profile> path;  // includes start and terminal
    Profile terminal;
    std::int64_t steps = 0;
    TerminalKind classification = TerminalKind::StepCap;
    std::optional<BigInt> bound;  // path_bound when a spec is supplied
};

// Applies improving moves per the selection rule until none exists or the
// cap is hit. A terminal with no Strict move at full coalition size is a
// certified SNE; in WeakSsne mode, an SSNE. Pass `spec` to record the
// corresponding path bound in the report.
RunReport run(const FiniteGame& game, const Profile& x0, const DynamicsConfig& cfg,
              const PotentialSpec* spec = nullptr);

struct ImprovementGraph {
    std::vector<std::vector<std::int64_t>> succ;  // by profile rank, deduped
    bool acyclic = false;
    std::vector<std::int64_t> cycle;  // profile ranks when not acyclic
};

ImprovementGraph improvement_graph(const FiniteGame& game, int max_coalition,
                                   const EnumerationBudget& budget = {});

// Exact longest path (in arcs) of an acyclic improvement graph.
std::int64_t longest_path_length(const ImprovementGraph& graph);

}  // namespace lip

#endif
