#ifndef LIP_ENUMERATION_HPP
#define LIP_ENUMERATION_HPP

#include <functional>
#include <vector>

#include "lip/game.hpp"

namespace lip {

// Cost vectors of every profile, indexed by lexicographic rank. Built once
// so that coalition enumeration is table lookups instead of oracle calls.
class CostTable {
  public:
    CostTable(const FiniteGame& game, const EnumerationBudget& budget);

    std::int64_t size() const { return static_cast<std::int64_t>(costs_.size()); }
    const std::vector<Rational>& at(std::int64_t rank) const { return costs_[rank]; }

  private:
    std::vector<std::vector<Rational>> costs_;
};

// Visits every improving move (x, y) with |coalition| <= max_coalition, in
// the deterministic order used throughout: profiles by rank, coalitions by
// size then lexicographically, deviations lexicographically. Return false
// from the callback to stop early.
void for_each_improving_move(
    const FiniteGame& game, const CostTable& table, int max_coalition, MoveMode mode,
    const Rational& alpha,
    const std::function<bool(std::int64_t from_rank, std::int64_t to_rank,
                             const std::vector<int>& coalition)>& visit);

// Coalition subsets of {0,..,n-1}: size 1..max_size, lexicographic within a size.
std::vector<std::vector<int>> coalition_order(int n, int max_size);

}  // namespace lip

#endif
