#include "ted/subforest.hpp"

#include <cassert>
#include <cstdlib>
#include <stdexcept>

namespace ted {

namespace {

void require_nonempty(SubforestKey key, const char* op) {
    if (key.empty()) throw std::invalid_argument(std::string(op) + ": empty forest");
}

std::int64_t absdiff(std::uint32_t a, std::uint32_t b) {
    return a >= b ? std::int64_t(a) - b : std::int64_t(b) - a;
}

}  // namespace

SubforestKey whole_tree_key(const LabeledTree& t) {
    return {1, t.node_count()};
}

SubforestKey canonical_key(const LabeledTree& t, std::uint32_t p_raw, std::uint32_t q_raw) {
    const std::uint32_t n = t.node_count();
    if (p_raw > n || q_raw < 1) return kEmptyForest;
    std::uint32_t p = t.pre_successor(p_raw, q_raw);
    if (p == 0) return kEmptyForest;
    std::uint32_t q = t.post_predecessor(q_raw, p_raw);
    assert(q != 0);
    return {p, q};
}

SubforestKey transition(const LabeledTree& t, SubforestKey key, Transition kind) {
    require_nonempty(key, "transition");
    const std::uint32_t n = t.node_count();
    const std::uint32_t p = key.p, q = key.q;
    const NodeId left = p;                    // node at preorder p
    const NodeId right = t.node_at_post(q);   // node at postorder q
    const bool single = t.post(left) == q;    // forest is one tree
    assert(t.post(left) <= q && right >= p);  // canonical input

    switch (kind) {
        case Transition::RemoveLeftRoot:
            if (single)
                return t.subtree_size(left) == 1 ? kEmptyForest : SubforestKey{p + 1, q - 1};
            if (t.subtree_size(left) > 1) return {p + 1, q};  // first child attains p+1
            return {t.pre_successor(p + 1, q), q};
        case Transition::RemoveRightRoot:
            if (single)
                return t.subtree_size(left) == 1 ? kEmptyForest : SubforestKey{p + 1, q - 1};
            if (t.subtree_size(right) > 1) return {p, q - 1};  // last child attains q-1
            return {p, t.post_predecessor(q - 1, p)};
        case Transition::RemoveLeftTree: {
            if (single) return kEmptyForest;
            std::uint32_t praw = p + t.subtree_size(left);
            if (praw <= n && t.post(praw) <= q) return {praw, q};
            return {t.pre_successor(praw, q), q};
        }
        case Transition::RemoveRightTree: {
            if (single) return kEmptyForest;
            std::uint32_t qraw = q - t.subtree_size(right);
            if (qraw >= 1 && t.node_at_post(qraw) >= p) return {p, qraw};
            return {p, t.post_predecessor(qraw, p)};
        }
        case Transition::SelectLeftSubtree:
            if (t.subtree_size(left) == 1) return kEmptyForest;
            return {p + 1, t.post(left) - 1};
        case Transition::SelectRightSubtree:
            if (t.subtree_size(right) == 1) return kEmptyForest;
            return {right + 1, q - 1};
    }
    throw std::invalid_argument("transition: unknown kind");
}

ForestRoots roots(const LabeledTree& t, SubforestKey key) {
    require_nonempty(key, "roots");
    NodeId left = key.p;
    NodeId right = t.node_at_post(key.q);
    return {left, right, t.post(left) == key.q};
}

DerivedSizes derived_sizes(const LabeledTree& t, SubforestKey key) {
    const std::uint32_t n = t.node_count();
    if (key.empty()) return {0, 0, 0, n};
    NodeId left = key.p;
    NodeId right = t.node_at_post(key.q);
    NodeId w = t.lca(left, right);
    bool lca_inside = w >= key.p && t.post(w) <= key.q;
    std::uint32_t mu = t.depth(w) + (lca_inside ? 0 : 1);
    std::uint32_t lu = (key.p - 1) - mu;
    std::uint32_t ru = (n - key.q) - mu;
    return {n - lu - ru - mu, lu, ru, mu};
}

std::vector<NodeId> node_set(const LabeledTree& t, SubforestKey key) {
    std::vector<NodeId> out;
    if (key.empty()) return out;
    for (NodeId v = key.p; v <= t.node_count(); ++v)
        if (t.post(v) <= key.q) out.push_back(v);
    return out;
}

std::vector<SubforestKey> enumerate_subforests(const LabeledTree& t) {
    const std::uint64_t n = t.node_count();
    std::vector<bool> seen((n + 1) * (n + 1), false);
    auto mark = [&](SubforestKey k) {
        std::uint64_t idx = std::uint64_t(k.p) * (n + 1) + k.q;
        if (seen[idx]) return false;
        seen[idx] = true;
        return true;
    };
    std::vector<SubforestKey> out;
    std::vector<SubforestKey> queue;
    SubforestKey root = whole_tree_key(t);
    mark(root);
    queue.push_back(root);
    std::size_t head = 0;
    while (head < queue.size()) {
        SubforestKey k = queue[head++];
        out.push_back(k);
        if (k.empty()) continue;
        for (Transition tr : {Transition::RemoveLeftRoot, Transition::RemoveRightRoot}) {
            SubforestKey next = transition(t, k, tr);
            if (mark(next)) queue.push_back(next);
        }
    }
    return out;
}

std::size_t count_constrained_subforests(const LabeledTree& t, std::uint32_t a,
                                         std::uint32_t b, std::uint32_t c, std::uint32_t k) {
    std::size_t count = 0;
    for (SubforestKey key : enumerate_subforests(t)) {
        DerivedSizes d = derived_sizes(t, key);
        if (absdiff(d.size_lu, a) <= k && absdiff(d.size_ru, b) <= k && absdiff(d.size, c) <= k)
            ++count;
    }
    return count;
}

std::string to_string(SubforestKey key) {
    if (key.empty()) return "F(∅)";
    return "F(" + std::to_string(key.p) + "," + std::to_string(key.q) + ")";
}

}  // namespace ted
