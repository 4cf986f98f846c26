#ifndef LIP_POTENTIAL_HPP
#define LIP_POTENTIAL_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lip/game.hpp"
#include "lip/lexorder.hpp"

namespace lip {

// Candidate certificate for the lexicographical improvement property.
struct LipFunction {
    int q = 0;
    std::function<CostVector(const Profile&)> eval;
    std::string name;  // phi_pi, psi_facility, upsilon, custom
};

struct LipVerdict {
    bool holds = false;
    std::optional<ImprovingMove> counterexample;
};

// Checks phi(to) < phi(from) in the sorted lex order for every enumerated
// improving move; returns the first violation in enumeration order otherwise.
LipVerdict verify_lip(const FiniteGame& game, const LipFunction& phi,
                      int max_coalition, const EnumerationBudget& budget = {});

struct PotentialSpec {
    LipFunction phi;
    Rational phi_max = 0;
    Rational eps_min = 0;
    long exponent = 1;       // M
    bool no_moves = false;   // improvement graph edgeless; M = 1 by convention
};

// phi_max over all profiles, eps_min over enumerated improving moves, and
// the smallest integer exponent M > ln(q) * phi_max / eps_min.
PotentialSpec compute_exponent(const FiniteGame& game, const LipFunction& phi,
                               int max_coalition, const EnumerationBudget& budget = {});

// Builds a spec from externally supplied sound bounds (routing-scale games
// where the move set is too large to enumerate).
PotentialSpec spec_from_bounds(const LipFunction& phi, const Rational& phi_max,
                               const Rational& eps_min);

// P_M(x) = sum_i phi_i(x)^M, exact.
Rational power_potential(const PotentialSpec& spec, const Profile& x);

struct TopologicalPotential {
    bool acyclic = false;
    // Label per profile rank, strictly decreasing along improvement edges.
    std::vector<std::int64_t> labels;
    // A directed cycle of profile ranks when not acyclic.
    std::vector<std::int64_t> cycle;
};

TopologicalPotential topological_potential(const FiniteGame& game, int max_coalition,
                                           const EnumerationBudget& budget = {});

// ceil(q * phi_max^M / eps_min); bounds the arc count of improvement paths.
BigInt path_bound(const PotentialSpec& spec);

}  // namespace lip

#endif
