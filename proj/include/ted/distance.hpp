#pragma once

#include <cstdint>

#include "ted/stats.hpp"
#include "ted/subforest.hpp"
#include "ted/tree.hpp"

namespace ted {

// Exact distance by iterative-deepening search over interleaved relabel and
// delete scripts applied to both trees. Exponential; guarded to
// node_count(t1) + node_count(t2) <= 14. Test oracle only.
std::uint32_t ted_oracle_search(const LabeledTree& t1, const LabeledTree& t2);
inline constexpr std::uint32_t kOracleSizeLimit = 14;

// Exact distance via the memoized recursion that always decomposes on the
// rightmost roots. Independently coded from the Klein-direction engine below
// and used as a mid-size cross-check.
std::uint32_t ted_zs(const LabeledTree& t1, const LabeledTree& t2);

// Exact distance via the memoized recursion that picks the decomposition
// side per state: rightmost roots when the leftmost tree of F1 is strictly
// larger than its rightmost tree, leftmost roots otherwise.
std::uint32_t ted_klein(const LabeledTree& t1, const LabeledTree& t2,
                        StatsReport* stats = nullptr);

// Pruning predicate for bounded runs: a state survives iff the forest sizes
// and both upper-part sizes of its two keys each differ by at most k. States
// with an empty key are base cases and always survive.
bool is_useful(const LabeledTree& t1, const LabeledTree& t2, SubforestKey key1,
               SubforestKey key2, std::uint32_t k);

// Klein-direction recursion with pruning: generated states failing is_useful
// contribute the saturating sentinel k+1 instead of being expanded. Returns
// the exact distance when it is <= k, otherwise reports that it exceeds k.
BoundedResult ted_bounded(const LabeledTree& t1, const LabeledTree& t2, std::uint32_t k,
                          StatsReport* stats = nullptr);

// Doubling driver: runs ted_bounded with k = max(1, |n1-n2|), 2k, 4k, ...
// until it yields a distance. stats, when given, holds the final iteration.
std::uint32_t ted_auto(const LabeledTree& t1, const LabeledTree& t2,
                       StatsReport* stats = nullptr);

}  // namespace ted
