#pragma once

#include <cstdint>

namespace laplim {

/// SplitMix64. Chosen because the whole generator is ten lines that behave
/// identically on every platform and compiler; runs are reproducible from a
/// single 64-bit seed.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Unbiased draw from [0, n) by masked rejection.
    std::uint64_t next_below(std::uint64_t n) {
        if (n <= 1) return 0;
        std::uint64_t mask = ~0ULL;
        mask >>= __builtin_clzll(n - 1 | 1);
        for (;;) {
            std::uint64_t v = next() & mask;
            if (v < n) return v;
        }
    }

    /// Uniform in [0,1) with 53 random bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

/// Independent stream for step `index` of a run with the given seed.
/// Streams are decorrelated by the SplitMix64 increment constant, so the
/// choice made at step j does not depend on how many draws earlier steps
/// consumed.
inline SplitMix64 rng_stream(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mixer(seed ^ (0xD1B54A32D192ED03ULL * (index + 1)));
    return SplitMix64(mixer.next());
}

} // namespace laplim
