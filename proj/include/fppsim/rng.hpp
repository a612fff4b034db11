#pragma once

#include <cmath>
#include <cstdint>

namespace fpp {

/// SplitMix64 finalizer. Bijective on 64-bit words, passes BigCrush as the
/// output stage of a counter generator, which is how it is used here.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::uint64_t hash2(std::uint64_t a, std::uint64_t b) {
    return mix64(mix64(a) ^ b);
}

/// Independent substream key, used to give each Monte Carlo replica its own
/// generator regardless of worker scheduling.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return hash2(master ^ 0x7E46A3C5D91B02F4ull, index);
}

/// Uniform in the open interval (0,1): top 53 bits plus a half-ulp offset,
/// so 0 and 1 are both unreachable.
inline double uniform_open01(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

/// Inverse-CDF exponential draw with mean 1; strictly positive by the open
/// interval above.
inline double exp_from_bits(std::uint64_t bits) {
    return -std::log(uniform_open01(bits));
}

/// Minimal counter-based stream generator (SplitMix64). State advances by a
/// fixed odd increment; output is the mixed counter, so jumping to any draw
/// index would be possible but is not needed here.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

    double uniform01() { return uniform_open01(next_u64()); }

    double exponential() { return -std::log(uniform01()); }

    /// Unbiased uniform draw from {0, ..., bound-1} by rejection.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    double normal() {
        // Box-Muller; one value per call keeps replay independent of use sites.
        const double u = uniform01();
        const double v = uniform01();
        return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586476925286766559 * v);
    }

  private:
    std::uint64_t state_;
};

}  // namespace fpp
