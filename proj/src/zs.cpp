#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "ted/distance.hpp"

namespace ted {

namespace {

// Memo key: both subforest keys widened into one 128-bit pair.
struct PairKey {
    std::uint64_t a, b;
    bool operator==(const PairKey& o) const noexcept { return a == o.a && b == o.b; }
};

struct PairKeyHash {
    std::size_t operator()(const PairKey& k) const noexcept {
        std::uint64_t x = k.a * 0x9E3779B97F4A7C15ull ^ k.b;
        x ^= x >> 33;
        x *= 0xFF51AFD7ED558CCDull;
        x ^= x >> 33;
        return static_cast<std::size_t>(x);
    }
};

PairKey make_key(SubforestKey k1, SubforestKey k2) {
    return {(std::uint64_t(k1.p) << 32) | k1.q, (std::uint64_t(k2.p) << 32) | k2.q};
}

}  // namespace

std::uint32_t ted_zs(const LabeledTree& t1, const LabeledTree& t2) {
    const std::vector<std::uint32_t> lmap = align_labels(t1, t2);
    auto delta = [&](NodeId v1, NodeId v2) -> std::uint32_t {
        return lmap[t2.label_id(v2)] == t1.label_id(v1) ? 0 : 1;
    };
    auto forest_size = [](const LabeledTree& t, SubforestKey k) -> std::uint32_t {
        return derived_sizes(t, k).size;
    };

    std::unordered_map<PairKey, std::uint32_t, PairKeyHash> memo;
    struct Frame {
        SubforestKey k1, k2;
        bool combine;
    };
    std::vector<Frame> stack;
    SubforestKey root1 = whole_tree_key(t1), root2 = whole_tree_key(t2);
    stack.push_back({root1, root2, false});

    while (!stack.empty()) {
        Frame f = stack.back();
        // Rightmost-root decomposition of the current state.
        SubforestKey a1 = transition(t1, f.k1, Transition::RemoveRightRoot);
        SubforestKey b2 = transition(t2, f.k2, Transition::RemoveRightRoot);
        SubforestKey c1 = transition(t1, f.k1, Transition::SelectRightSubtree);
        SubforestKey c2 = transition(t2, f.k2, Transition::SelectRightSubtree);
        SubforestKey d1 = transition(t1, f.k1, Transition::RemoveRightTree);
        SubforestKey d2 = transition(t2, f.k2, Transition::RemoveRightTree);

        auto lookup = [&](SubforestKey k1, SubforestKey k2, std::uint32_t* out) -> bool {
            if (k1.empty()) {
                *out = forest_size(t2, k2);
                return true;
            }
            if (k2.empty()) {
                *out = forest_size(t1, k1);
                return true;
            }
            auto it = memo.find(make_key(k1, k2));
            if (it == memo.end()) return false;
            *out = it->second;
            return true;
        };

        if (!f.combine) {
            if (memo.contains(make_key(f.k1, f.k2))) {
                stack.pop_back();
                continue;
            }
            stack.back().combine = true;
            std::uint32_t tmp;
            if (!lookup(a1, f.k2, &tmp)) stack.push_back({a1, f.k2, false});
            if (!lookup(f.k1, b2, &tmp)) stack.push_back({f.k1, b2, false});
            if (!lookup(c1, c2, &tmp)) stack.push_back({c1, c2, false});
            if (!lookup(d1, d2, &tmp)) stack.push_back({d1, d2, false});
        } else {
            stack.pop_back();
            PairKey key = make_key(f.k1, f.k2);
            if (memo.contains(key)) continue;
            std::uint32_t va = 0, vb = 0, vc = 0, vd = 0;
            bool ok = lookup(a1, f.k2, &va) && lookup(f.k1, b2, &vb) && lookup(c1, c2, &vc) &&
                      lookup(d1, d2, &vd);
            if (!ok) throw std::logic_error("ted_zs: child state missing from memo");
            std::uint32_t r1 = t1.node_at_post(f.k1.q);
            std::uint32_t r2 = t2.node_at_post(f.k2.q);
            std::uint32_t value = std::min({va + 1, vb + 1, vc + vd + delta(r1, r2)});
            memo.emplace(key, value);
        }
    }

    return memo.at(make_key(root1, root2));
}

}  // namespace ted
