#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ted/tree.hpp"

namespace ted {

// Canonical identifier of a subforest: the node set
//   F(p, q) = { v : pre(v) >= p and post(v) <= q }
// with both thresholds attained (the node at preorder p and the node at
// postorder q are members). (0, 0) is the unique key of the empty forest.
struct SubforestKey {
    std::uint32_t p = 0;
    std::uint32_t q = 0;

    bool empty() const noexcept { return p == 0; }
    friend bool operator==(SubforestKey a, SubforestKey b) noexcept {
        return a.p == b.p && a.q == b.q;
    }
};

inline constexpr SubforestKey kEmptyForest{0, 0};

enum class Transition : std::uint8_t {
    RemoveLeftRoot,      // F minus its leftmost root
    RemoveRightRoot,     // F minus its rightmost root
    RemoveLeftTree,      // F minus the whole leftmost tree
    RemoveRightTree,     // F minus the whole rightmost tree
    SelectLeftSubtree,   // children forest of the leftmost root
    SelectRightSubtree,  // children forest of the rightmost root
};

struct ForestRoots {
    NodeId leftmost;   // node at preorder p
    NodeId rightmost;  // node at postorder q
    bool single;       // the forest is one tree
};

// Node counts of the forest and of the three regions of the complement:
// left of, right of, and on the root-to-LCA path above the forest.
// They always partition the tree: size + size_lu + size_ru + size_mu == n.
// The empty forest gets size = size_lu = size_ru = 0 and size_mu = n.
struct DerivedSizes {
    std::uint32_t size;
    std::uint32_t size_lu;
    std::uint32_t size_ru;
    std::uint32_t size_mu;
};

SubforestKey whole_tree_key(const LabeledTree& t);

// Snaps a raw threshold pair to canonical form (attained thresholds), or
// kEmptyForest when no node satisfies both constraints.
SubforestKey canonical_key(const LabeledTree& t, std::uint32_t p_raw, std::uint32_t q_raw);

// Applies one transition to a canonical key, returning the canonical key of
// the resulting forest. O(1), except one O(log n) threshold query in the
// cases where the naive threshold is not attained (e.g. removing a leaf
// root). Throws on the empty key.
SubforestKey transition(const LabeledTree& t, SubforestKey key, Transition kind);

// Leftmost/rightmost roots of a nonempty forest. Throws on the empty key.
ForestRoots roots(const LabeledTree& t, SubforestKey key);

DerivedSizes derived_sizes(const LabeledTree& t, SubforestKey key);

// Materializes the node set of a key (sorted ids); O(n) test utility.
std::vector<NodeId> node_set(const LabeledTree& t, SubforestKey key);

// Every distinct key reachable from the whole tree by left/right root
// removals, including the empty key. No duplicates.
std::vector<SubforestKey> enumerate_subforests(const LabeledTree& t);

// Number of subforests F with |size_lu(F) - a| <= k, |size_ru(F) - b| <= k
// and |size(F) - c| <= k; brute-force filter over enumerate_subforests.
std::size_t count_constrained_subforests(const LabeledTree& t, std::uint32_t a,
                                         std::uint32_t b, std::uint32_t c, std::uint32_t k);

// Debug rendering: "F(p,q)" or "F(∅)".
std::string to_string(SubforestKey key);

}  // namespace ted
