#ifndef LIP_LEXORDER_HPP
#define LIP_LEXORDER_HPP

#include <utility>
#include <vector>

#include "lip/rational.hpp"

namespace lip {

enum class Ordering { Less, Equal, Greater };

// Vector of non-negative costs compared after sorting non-increasingly.
using CostVector = std::vector<Rational>;

// (cost, load) pairs; pairs themselves ordered lexicographically with the
// cost component dominant.
using CostLoadPair = std::pair<Rational, Rational>;
using PairVector = std::vector<CostLoadPair>;

// Sorted lexicographical order: sort both vectors non-increasingly and
// compare entrywise. Throws DimensionError on length mismatch.
Ordering sorted_lex_compare(const CostVector& a, const CostVector& b);

// Same scheme over (cost, load) pairs with the pairwise lex order.
Ordering a_lex_compare(const PairVector& a, const PairVector& b);

inline Ordering reverse(Ordering o) {
    if (o == Ordering::Less) return Ordering::Greater;
    if (o == Ordering::Greater) return Ordering::Less;
    return Ordering::Equal;
}

}  // namespace lip

#endif
