#pragma once

#include <cstdint>

namespace ted {

// splitmix64 (Steele, Lea, Flood / Vigna). Fixed recurrence so every seeded
// output of this project is reproducible bit-for-bit across platforms:
//   s += 0x9E3779B97F4A7C15
//   z = s; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform-ish value in [0, bound) via the 128-bit multiply-shift map;
    // bound must be >= 1.
    std::uint64_t below(std::uint64_t bound) noexcept {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

private:
    std::uint64_t state_;
};

// Deterministic derived seed for an independent substream.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) noexcept {
    return SplitMix64(seed ^ (tag + 0x9E3779B97F4A7C15ull)).next();
}

}  // namespace ted
