#pragma once

#include <cstdint>

// Seedable, platform-stable random sources.
//
// Two generators, both with published reference algorithms:
//   * splitmix64 — used counter-style: sample i of stream `seed` is
//     mix(seed + (i+1)*GOLDEN). Counter addressing makes sharded sampling
//     independent of the shard count.
//   * xoshiro256++ — sequential stream for the optimizers, seeded from
//     splitmix64.
// Uniform doubles take the top 53 bits, so every draw is reproducible
// bit-for-bit across platforms (no libm in the draw path).

namespace actch {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Sample `index` of the counter-based stream identified by `seed`.
inline std::uint64_t counter_u64(std::uint64_t seed, std::uint64_t index) {
    return splitmix64_mix(seed + (index + 1) * kGolden);
}

/// Map 64 random bits to a double in [0, 1).
inline double to_unit_double(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

inline double counter_unit(std::uint64_t seed, std::uint64_t index) {
    return to_unit_double(counter_u64(seed, index));
}

/// Derive an independent sub-stream seed (restart/shard indices etc.).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64_mix(seed ^ (index + 1) * kGolden);
}

class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        std::uint64_t z = seed;
        for (auto& w : s_) {
            z += kGolden;
            w = splitmix64_mix(z);
        }
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform in [0, 1).
    double next_unit() { return to_unit_double(next_u64()); }

    /// Uniform integer in [0, n).
    int next_below(int n) {
        return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n));
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4];
};

}  // namespace actch
