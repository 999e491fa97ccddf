#pragma once

#include <cassert>
#include <cstdint>

namespace ted {

// Instrumentation counters for one distance computation. Every generated
// child state (plus the root) lands in exactly one of states_expanded,
// memo_hits, or the three pruned_* buckets; child_events is the total number
// of such generation events, so
//   states_expanded + memo_hits + pruned_* == child_events
// always holds. distinct_f1_keys and max_f2_per_f1 are computed over the
// memoized (non-base) states at the end of a run.
struct StatsReport {
    std::uint64_t states_expanded = 0;
    std::uint64_t memo_hits = 0;
    std::uint64_t pruned_size_rule = 0;
    std::uint64_t pruned_lu_rule = 0;
    std::uint64_t pruned_ru_rule = 0;
    std::uint64_t distinct_f1_keys = 0;
    std::uint64_t max_f2_per_f1 = 0;
    std::uint64_t wall_time_ns = 0;
    std::uint64_t child_events = 0;
};

// Outcome of a bounded-distance run: either the exact distance (<= k) or the
// verdict that the true distance exceeds the bound k.
class BoundedResult {
public:
    static BoundedResult distance(std::uint32_t d) { return {false, d}; }
    static BoundedResult exceeds(std::uint32_t k) { return {true, k}; }

    bool is_distance() const noexcept { return !exceeds_; }
    bool is_exceeds() const noexcept { return exceeds_; }
    std::uint32_t distance() const {
        assert(!exceeds_);
        return value_;
    }
    std::uint32_t bound() const {
        assert(exceeds_);
        return value_;
    }

    friend bool operator==(BoundedResult a, BoundedResult b) noexcept {
        return a.exceeds_ == b.exceeds_ && a.value_ == b.value_;
    }

private:
    BoundedResult(bool exceeds, std::uint32_t value) : exceeds_(exceeds), value_(value) {}
    bool exceeds_;
    std::uint32_t value_;
};

}  // namespace ted
