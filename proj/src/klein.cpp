#include <algorithm>
#include <bit>
#include <cassert>
#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "ted/cost.hpp"
#include "ted/distance.hpp"

namespace ted {

namespace {

enum class Verdict : std::uint8_t { Useful, PrunedSize, PrunedLu, PrunedRu };

std::uint32_t absdiff(std::uint32_t a, std::uint32_t b) { return a >= b ? a - b : b - a; }

Verdict classify(const LabeledTree& t1, const LabeledTree& t2, SubforestKey k1,
                 SubforestKey k2, std::uint32_t k) {
    if (k1.empty() || k2.empty()) return Verdict::Useful;  // base cases are never pruned
    DerivedSizes d1 = derived_sizes(t1, k1);
    DerivedSizes d2 = derived_sizes(t2, k2);
    if (absdiff(d1.size, d2.size) > k) return Verdict::PrunedSize;
    if (absdiff(d1.size_lu, d2.size_lu) > k) return Verdict::PrunedLu;
    if (absdiff(d1.size_ru, d2.size_ru) > k) return Verdict::PrunedRu;
    return Verdict::Useful;
}

std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xFF51AFD7ED558CCDull;
    x ^= x >> 33;
    x *= 0xC4CEB9FE1A85EC53ull;
    x ^= x >> 33;
    return x;
}

// Both keys packed into one word; usable whenever the four threshold fields
// fit in 64 bits. Key 0 never occurs for a memoized state (p1 >= 1), so it
// doubles as the empty-slot sentinel of the flat table below.
struct Pack64 {
    using key_type = std::uint64_t;
    std::uint32_t sh1, sh2, sh3;

    Pack64(std::uint32_t n1, std::uint32_t n2) {
        std::uint32_t b1 = std::bit_width(n1);
        std::uint32_t b2 = std::bit_width(n2);
        sh3 = b2;
        sh2 = 2 * b2;
        sh1 = 2 * b2 + b1;
    }
    static bool fits(std::uint32_t n1, std::uint32_t n2) {
        return 2 * (std::bit_width(n1) + std::bit_width(n2)) <= 64;
    }
    key_type pack(SubforestKey a, SubforestKey b) const {
        return (std::uint64_t(a.p) << sh1) | (std::uint64_t(a.q) << sh2) |
               (std::uint64_t(b.p) << sh3) | b.q;
    }
    std::uint64_t f1_part(key_type key) const { return key >> sh2; }
};

// Insert-only open-addressing map from packed states to values.
class FlatMemo {
public:
    explicit FlatMemo(std::size_t initial = 1 << 12) {
        std::size_t cap = std::bit_ceil(initial);
        keys_.assign(cap, 0);
        vals_.assign(cap, 0);
        mask_ = cap - 1;
    }

    const std::uint32_t* find(std::uint64_t key) const {
        std::size_t i = mix64(key) & mask_;
        while (keys_[i] != 0) {
            if (keys_[i] == key) return &vals_[i];
            i = (i + 1) & mask_;
        }
        return nullptr;
    }

    bool contains(std::uint64_t key) const { return find(key) != nullptr; }

    void insert(std::uint64_t key, std::uint32_t value) {
        if ((size_ + 1) * 5 > keys_.size() * 3) grow();
        std::size_t i = mix64(key) & mask_;
        while (keys_[i] != 0) {
            if (keys_[i] == key) return;  // keep the first value
            i = (i + 1) & mask_;
        }
        keys_[i] = key;
        vals_[i] = value;
        ++size_;
    }

    std::size_t size() const { return size_; }

    template <typename F>
    void for_each_key(F&& f) const {
        for (std::uint64_t k : keys_)
            if (k != 0) f(k);
    }

private:
    void grow() {
        std::vector<std::uint64_t> old_keys = std::move(keys_);
        std::vector<std::uint32_t> old_vals = std::move(vals_);
        std::size_t cap = old_keys.size() * 2;
        keys_.assign(cap, 0);
        vals_.assign(cap, 0);
        mask_ = cap - 1;
        for (std::size_t j = 0; j < old_keys.size(); ++j) {
            if (old_keys[j] == 0) continue;
            std::size_t i = mix64(old_keys[j]) & mask_;
            while (keys_[i] != 0) i = (i + 1) & mask_;
            keys_[i] = old_keys[j];
            vals_[i] = old_vals[j];
        }
    }

    std::vector<std::uint64_t> keys_;
    std::vector<std::uint32_t> vals_;
    std::size_t size_ = 0;
    std::size_t mask_ = 0;
};

// Fallback for trees too large for Pack64: two words and a hash map.
struct PackWide {
    using key_type = std::pair<std::uint64_t, std::uint64_t>;
    PackWide(std::uint32_t, std::uint32_t) {}
    key_type pack(SubforestKey a, SubforestKey b) const {
        return {(std::uint64_t(a.p) << 32) | a.q, (std::uint64_t(b.p) << 32) | b.q};
    }
    std::uint64_t f1_part(key_type key) const { return key.first; }
};

struct WideHash {
    std::size_t operator()(const PackWide::key_type& k) const noexcept {
        return static_cast<std::size_t>(mix64(k.first ^ mix64(k.second)));
    }
};

class WideMemo {
public:
    const std::uint32_t* find(const PackWide::key_type& key) const {
        auto it = map_.find(key);
        return it == map_.end() ? nullptr : &it->second;
    }
    bool contains(const PackWide::key_type& key) const { return map_.contains(key); }
    void insert(const PackWide::key_type& key, std::uint32_t value) { map_.emplace(key, value); }
    std::size_t size() const { return map_.size(); }
    template <typename F>
    void for_each_key(F&& f) const {
        for (const auto& [k, v] : map_) f(k);
    }

private:
    std::unordered_map<PackWide::key_type, std::uint32_t, WideHash> map_;
};

// One decomposition step: child states plus the relabel cost of the matched
// roots. The side is picked from F1 alone.
struct Decomposition {
    SubforestKey a1, a2;  // root removed from F1
    SubforestKey b1, b2;  // root removed from F2
    SubforestKey c1, c2;  // subtrees below the matched roots
    SubforestKey d1, d2;  // forests with the matched trees removed
    std::uint32_t delta;
};

template <typename Pack, typename Memo>
std::uint32_t engine_run(const LabeledTree& t1, const LabeledTree& t2,
                         std::optional<std::uint32_t> bound, StatsReport* stats_out) {
    const std::uint64_t cap =
        bound ? std::uint64_t(*bound) + 1 : std::uint64_t(t1.node_count()) + t2.node_count() + 1;
    const auto t_start = std::chrono::steady_clock::now();

    StatsReport st;
    const std::vector<std::uint32_t> lmap = align_labels(t1, t2);
    Pack pack(t1.node_count(), t2.node_count());
    Memo memo;

    auto forest_size = [&](const LabeledTree& t, SubforestKey k) -> std::uint32_t {
        return derived_sizes(t, k).size;
    };
    auto decompose = [&](SubforestKey k1, SubforestKey k2) {
        Decomposition d;
        NodeId l1 = k1.p;
        NodeId r1 = t1.node_at_post(k1.q);
        NodeId l2 = k2.p;
        NodeId r2 = t2.node_at_post(k2.q);
        if (t1.subtree_size(l1) > t1.subtree_size(r1)) {
            // Leftmost tree of F1 strictly larger: decompose on rightmost roots.
            d.a1 = transition(t1, k1, Transition::RemoveRightRoot);
            d.a2 = k2;
            d.b1 = k1;
            d.b2 = transition(t2, k2, Transition::RemoveRightRoot);
            d.c1 = transition(t1, k1, Transition::SelectRightSubtree);
            d.c2 = transition(t2, k2, Transition::SelectRightSubtree);
            d.d1 = transition(t1, k1, Transition::RemoveRightTree);
            d.d2 = transition(t2, k2, Transition::RemoveRightTree);
            d.delta = lmap[t2.label_id(r2)] == t1.label_id(r1) ? 0 : 1;
        } else {
            d.a1 = transition(t1, k1, Transition::RemoveLeftRoot);
            d.a2 = k2;
            d.b1 = k1;
            d.b2 = transition(t2, k2, Transition::RemoveLeftRoot);
            d.c1 = transition(t1, k1, Transition::SelectLeftSubtree);
            d.c2 = transition(t2, k2, Transition::SelectLeftSubtree);
            d.d1 = transition(t1, k1, Transition::RemoveLeftTree);
            d.d2 = transition(t2, k2, Transition::RemoveLeftTree);
            d.delta = lmap[t2.label_id(l2)] == t1.label_id(l1) ? 0 : 1;
        }
        return d;
    };

    struct Frame {
        SubforestKey k1, k2;
        bool combine;
    };
    std::vector<Frame> stack;
    const SubforestKey root1 = whole_tree_key(t1), root2 = whole_tree_key(t2);

    std::uint64_t result;
    ++st.child_events;  // the root is a generation event like any other
    Verdict rv = bound ? classify(t1, t2, root1, root2, *bound) : Verdict::Useful;
    if (rv != Verdict::Useful) {
        if (rv == Verdict::PrunedSize) ++st.pruned_size_rule;
        if (rv == Verdict::PrunedLu) ++st.pruned_lu_rule;
        if (rv == Verdict::PrunedRu) ++st.pruned_ru_rule;
        result = cap;
    } else {
        ++st.states_expanded;
        stack.push_back({root1, root2, false});
        while (!stack.empty()) {
            Frame f = stack.back();
            if (!f.combine) {
                if (memo.contains(pack.pack(f.k1, f.k2))) {
                    stack.pop_back();
                    continue;
                }
                stack.back().combine = true;
                Decomposition d = decompose(f.k1, f.k2);
                auto visit = [&](SubforestKey c1, SubforestKey c2) {
                    ++st.child_events;
                    if (c1.empty() || c2.empty()) {
                        ++st.states_expanded;  // base case, evaluated in place
                        return;
                    }
                    if (bound) {
                        Verdict v = classify(t1, t2, c1, c2, *bound);
                        if (v != Verdict::Useful) {
                            if (v == Verdict::PrunedSize) ++st.pruned_size_rule;
                            if (v == Verdict::PrunedLu) ++st.pruned_lu_rule;
                            if (v == Verdict::PrunedRu) ++st.pruned_ru_rule;
                            return;
                        }
                    }
                    if (memo.contains(pack.pack(c1, c2))) {
                        ++st.memo_hits;
                        return;
                    }
                    ++st.states_expanded;
                    stack.push_back({c1, c2, false});
                };
                visit(d.a1, d.a2);
                visit(d.b1, d.b2);
                visit(d.c1, d.c2);
                visit(d.d1, d.d2);
            } else {
                stack.pop_back();
                auto key = pack.pack(f.k1, f.k2);
                if (memo.contains(key)) continue;  // resolved via a duplicate frame
                Decomposition d = decompose(f.k1, f.k2);
                auto value_of = [&](SubforestKey c1, SubforestKey c2) -> Cost {
                    if (c1.empty() && c2.empty()) return Cost(0, cap);
                    if (c1.empty()) return Cost(forest_size(t2, c2), cap);
                    if (c2.empty()) return Cost(forest_size(t1, c1), cap);
                    if (bound && classify(t1, t2, c1, c2, *bound) != Verdict::Useful)
                        return Cost::exceeded(cap);
                    const std::uint32_t* v = memo.find(pack.pack(c1, c2));
                    assert(v != nullptr);
                    return Cost(*v, cap);
                };
                Cost one(1, cap);
                Cost best = min(value_of(d.a1, d.a2) + one, value_of(d.b1, d.b2) + one);
                best = min(best, value_of(d.c1, d.c2) + value_of(d.d1, d.d2) + Cost(d.delta, cap));
                memo.insert(key, static_cast<std::uint32_t>(best.value()));
            }
        }
        result = *memo.find(pack.pack(root1, root2));
    }

    st.wall_time_ns = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() -
                                                             t_start)
            .count());

    if (stats_out != nullptr) {
        // F1 occupancy over memoized states.
        std::vector<std::uint64_t> f1s;
        f1s.reserve(memo.size());
        memo.for_each_key([&](const auto& k) { f1s.push_back(pack.f1_part(k)); });
        std::sort(f1s.begin(), f1s.end());
        std::uint64_t distinct = 0, best_run = 0, run = 0;
        for (std::size_t i = 0; i < f1s.size(); ++i) {
            if (i == 0 || f1s[i] != f1s[i - 1]) {
                ++distinct;
                run = 0;
            }
            ++run;
            best_run = std::max(best_run, run);
        }
        st.distinct_f1_keys = distinct;
        st.max_f2_per_f1 = best_run;
        *stats_out = st;
    }
    return static_cast<std::uint32_t>(result);
}

std::uint32_t engine(const LabeledTree& t1, const LabeledTree& t2,
                     std::optional<std::uint32_t> bound, StatsReport* stats) {
    if (Pack64::fits(t1.node_count(), t2.node_count()))
        return engine_run<Pack64, FlatMemo>(t1, t2, bound, stats);
    return engine_run<PackWide, WideMemo>(t1, t2, bound, stats);
}

}  // namespace

std::uint32_t ted_klein(const LabeledTree& t1, const LabeledTree& t2, StatsReport* stats) {
    return engine(t1, t2, std::nullopt, stats);
}

bool is_useful(const LabeledTree& t1, const LabeledTree& t2, SubforestKey key1,
               SubforestKey key2, std::uint32_t k) {
    return classify(t1, t2, key1, key2, k) == Verdict::Useful;
}

BoundedResult ted_bounded(const LabeledTree& t1, const LabeledTree& t2, std::uint32_t k,
                          StatsReport* stats) {
    std::uint32_t value = engine(t1, t2, k, stats);
    if (value <= k) return BoundedResult::distance(value);
    return BoundedResult::exceeds(k);
}

std::uint32_t ted_auto(const LabeledTree& t1, const LabeledTree& t2, StatsReport* stats) {
    const std::uint32_t n1 = t1.node_count(), n2 = t2.node_count();
    std::uint64_t k = std::max<std::uint64_t>(1, n1 >= n2 ? n1 - n2 : n2 - n1);
    for (;;) {
        BoundedResult r = ted_bounded(t1, t2, static_cast<std::uint32_t>(k), stats);
        if (r.is_distance()) return r.distance();
        k *= 2;  // the distance is at most n1 + n2, so this terminates
    }
}

}  // namespace ted
