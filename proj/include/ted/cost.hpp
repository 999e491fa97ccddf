#pragma once

#include <cassert>
#include <cstdint>

namespace ted {

// Nonnegative edit cost with saturating arithmetic. A value equal to the cap
// means "exceeds the bound"; values below the cap are exact. Bounded runs use
// cap = k + 1, unbounded runs use cap = n1 + n2 + 1 (unreachable by any true
// distance).
class Cost {
public:
    constexpr Cost(std::uint64_t value, std::uint64_t cap) noexcept
        : value_(value < cap ? value : cap), cap_(cap) {}

    static constexpr Cost exceeded(std::uint64_t cap) noexcept { return {cap, cap}; }

    constexpr std::uint64_t value() const noexcept { return value_; }
    constexpr std::uint64_t cap() const noexcept { return cap_; }
    constexpr bool exceeds() const noexcept { return value_ == cap_; }

    friend constexpr Cost operator+(Cost a, Cost b) noexcept {
        assert(a.cap_ == b.cap_);
        return {a.value_ + b.value_, a.cap_};
    }

    friend constexpr Cost min(Cost a, Cost b) noexcept {
        assert(a.cap_ == b.cap_);
        return a.value_ <= b.value_ ? a : b;
    }

    friend constexpr bool operator==(Cost a, Cost b) noexcept {
        return a.value_ == b.value_ && a.cap_ == b.cap_;
    }

private:
    std::uint64_t value_;
    std::uint64_t cap_;
};

}  // namespace ted
