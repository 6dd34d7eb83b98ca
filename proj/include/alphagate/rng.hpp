#pragma once

// Counter-based per-replication seeding plus the per-stream generator.

#include <array>
#include <cstdint>

namespace alphagate::sim {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seed of replication `rep`: the rep-th output of a SplitMix64 stream
/// started at `seed`. Depends only on (seed, rep), never on scheduling.
constexpr std::uint64_t derive_rep_seed(std::uint64_t seed, std::uint64_t rep) noexcept {
    return splitmix64_mix(seed + (rep + 1) * kGoldenGamma);
}

class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t state) noexcept : state_(state) {}

    constexpr std::uint64_t next() noexcept { return splitmix64_mix(state_ += kGoldenGamma); }

private:
    std::uint64_t state_;
};

/// xoshiro256** (Blackman & Vigna), state expanded from one seed by SplitMix64.
class Xoshiro256 {
public:
    explicit Xoshiro256(std::uint64_t seed) noexcept {
        SplitMix64 sm(seed);
        for (auto& word : s_) word = sm.next();
    }

    std::uint64_t next() noexcept {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform on the open interval (0, 1): midpoints of a 2^-53 grid.
    double next_open_unit() noexcept {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal by inverse CDF; exactly one 64-bit draw per call.
    double next_normal() noexcept;

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> s_{};
};

} // namespace alphagate::sim
