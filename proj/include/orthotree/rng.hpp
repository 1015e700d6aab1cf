#pragma once

#include <cstdint>

namespace orthotree {

/// SplitMix64: portable 64-bit PRNG with cheap stream derivation. The same
/// (seed, stream) pair yields the same sequence on every platform, which is
/// what makes sampled experiments reproducible bit for bit.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    /// Independent stream derived from a base seed; stream 0 is not the
    /// same generator as SplitMix64(seed).
    static SplitMix64 stream(std::uint64_t seed, std::uint64_t stream_id) {
        SplitMix64 mixer(seed ^ (stream_id * 0x9E3779B97F4A7C15ull));
        const std::uint64_t derived = mixer.next() ^ mixer.next();
        return SplitMix64(derived);
    }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

inline constexpr const char* kRngName = "splitmix64";

} // namespace orthotree
