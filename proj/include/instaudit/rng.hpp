#pragma once

#include <cstdint>
#include <cstddef>
#include <cmath>

namespace instaudit {

// Deterministic PRNG used everywhere randomness is needed. std::mt19937_64
// supplies the raw bits; the distributions are implemented here so results
// do not depend on the standard library vendor.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    std::uint64_t next_u64() {
        // xorshift64* — small, fast, passes BigCrush for this use.
        std::uint64_t x = state_;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        state_ = x;
        return x * 0x2545f4914f6cdd1dull;
    }

    // Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n). n must be > 0.
    std::uint64_t next_below(std::uint64_t n) {
        // Rejection sampling keeps the draw unbiased.
        const std::uint64_t threshold = (~n + 1) % n;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    // Uniform integer in [lo, hi] inclusive.
    std::int64_t next_int(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool next_bool(double p = 0.5) { return next_double() < p; }

    // Uniform in [lo, hi).
    double next_range(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // Log-uniform in [lo, hi], lo > 0.
    double next_log_uniform(double lo, double hi) {
        return std::exp(next_range(std::log(lo), std::log(hi)));
    }

private:
    std::uint64_t state_;
};

// Stable seed derivation so each pipeline stage gets an independent stream
// from one master seed. splitmix64 finalizer over the combined words.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ull * (tag + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Tag constants for the pipeline stages.
namespace seed_tag {
inline constexpr std::uint64_t split = 1;
inline constexpr std::uint64_t smote = 2;
inline constexpr std::uint64_t ga = 3;
inline constexpr std::uint64_t train = 4;
inline constexpr std::uint64_t synth = 5;
inline constexpr std::uint64_t fold = 6;
} // namespace seed_tag

} // namespace instaudit
