#include "lip/lexorder.hpp"

#include <algorithm>

namespace lip {

Ordering sorted_lex_compare(const CostVector& a, const CostVector& b) {
    if (a.size() != b.size())
        throw DimensionError("sorted_lex_compare: length mismatch");
    CostVector sa = a;
    CostVector sb = b;
    std::sort(sa.begin(), sa.end(), std::greater<>());
    std::sort(sb.begin(), sb.end(), std::greater<>());
    for (std::size_t i = 0; i < sa.size(); ++i) {
        if (sa[i] < sb[i]) return Ordering::Less;
        if (sa[i] > sb[i]) return Ordering::Greater;
    }
    return Ordering::Equal;
}

namespace {
bool pair_greater(const CostLoadPair& p, const CostLoadPair& q) {
    if (p.first != q.first) return p.first > q.first;
    return p.second > q.second;
}
}  // namespace

Ordering a_lex_compare(const PairVector& a, const PairVector& b) {
    if (a.size() != b.size())
        throw DimensionError("a_lex_compare: length mismatch");
    PairVector sa = a;
    PairVector sb = b;
    std::sort(sa.begin(), sa.end(), pair_greater);
    std::sort(sb.begin(), sb.end(), pair_greater);
    for (std::size_t i = 0; i < sa.size(); ++i) {
        if (pair_greater(sb[i], sa[i])) return Ordering::Less;
        if (pair_greater(sa[i], sb[i])) return Ordering::Greater;
    }
    return Ordering::Equal;
}

}  // namespace lip
