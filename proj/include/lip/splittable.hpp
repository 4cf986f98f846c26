#ifndef LIP_SPLITTABLE_HPP
#define LIP_SPLITTABLE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "lip/lexorder.hpp"
#include "lip/rational.hpp"

namespace lip {

// Continuous non-decreasing cost over a load interval, given by breakpoints
// (load, cost) with strictly increasing loads; linear in between.
struct PiecewiseLinear {
    std::vector<std::pair<Rational, Rational>> points;

    Rational eval(const Rational& load) const;
    bool non_decreasing() const;
    bool strictly_increasing() const;
    bool convex() const;
    Rational max_value() const;
};

// Splittable bottleneck congestion game: player i spreads demand d_i over
// their strategy list; facility loads aggregate linearly.
struct SplittableInstance {
    int n = 0;
    int m = 0;
    std::vector<std::vector<std::vector<int>>> strategies;  // [player][strategy] -> facilities
    std::vector<Rational> demands;
    std::vector<PiecewiseLinear> costs;  // per facility, domain [0, sum d_i]
    Rational cost_bound = 1;             // C >= every cost value

    void validate(bool require_convex) const;
    Rational total_demand() const;
};

struct SplittableState {
    std::vector<std::vector<Rational>> intensity;  // [player][strategy]
};

// Uniform split of each demand across the player's strategies.
SplittableState uniform_state(const SplittableInstance& inst);

void validate_state(const SplittableInstance& inst, const SplittableState& state);

std::vector<Rational> loads(const SplittableInstance& inst,
                            const SplittableState& state);

// Bottleneck cost over USED facilities: strategies with intensity strictly
// above rel_threshold * d_i count as used (0 = exact semantics).
std::vector<Rational> private_costs(const SplittableInstance& inst,
                                    const SplittableState& state,
                                    const Rational& rel_threshold = 0);

struct SplittableCertificates {
    CostVector phi;   // n: private costs
    CostVector psi;   // n*m, player-major: c_f(l_f) where i uses f, else 0
    CostVector nu;    // m: c_f(l_f)
    PairVector alex;  // m: (c_f(l_f), l_f)
};

SplittableCertificates lip_certificates(const SplittableInstance& inst,
                                        const SplittableState& state,
                                        const Rational& rel_threshold = 0);

// Smallest integer >= (2 * psi_max / alpha + 1) * ln(n*m); psi_max taken as
// the largest facility cost value, so the bound is scale-free in C.
long alpha_exponent(const SplittableInstance& inst, const Rational& alpha);

// P_M(xi) = sum_{i,f} (psi_{i,f}(xi)/C)^M, exact. Along a move improving
// every member by more than alpha, this drops by at least (alpha/(2C))^M.
Rational alpha_potential(const SplittableInstance& inst, const SplittableState& state,
                         long exponent, const Rational& rel_threshold = 0);

struct UnilateralViolation {
    int player = 0;
    double current_cost = 0;
    double best_response_cost = 0;
};

struct VerifyResult {
    bool ok = false;
    std::optional<UnilateralViolation> violation;
};

// Exact per-player bottleneck best response via bisection over the cost
// threshold (facility capacities from inverting c_f, feasibility by LP),
// plus `samples` random coalition deviations as a heuristic screen.
VerifyResult verify_alpha_unilateral(const SplittableInstance& inst,
                                     const SplittableState& state,
                                     const Rational& alpha, int samples = 50,
                                     std::uint64_t seed = 0);

struct ApproxSneResult {
    SplittableState state;
    long exponent = 0;
    int iterations = 0;
    double gap = 0;  // final Frank-Wolfe duality gap
    bool verified = false;
    std::optional<UnilateralViolation> violation;
};

// Minimizes the convex surrogate sum_f (c_f(l_f)/C)^M * l_f over the product
// of simplices by Frank-Wolfe, then runs verify_alpha_unilateral.
ApproxSneResult approx_sne(const SplittableInstance& inst, const Rational& alpha,
                           double eps_solver = -1);

}  // namespace lip

#endif
