#pragma once

#include <cstdint>

namespace tgrand {

/// Counter-based pseudo-random stream (SplitMix64). Output is identical on
/// every platform for a given seed, which keeps simulations reproducible
/// regardless of compiler or standard-library version.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool next_bernoulli(double p) { return next_double() < p; }

private:
    std::uint64_t state_;
};

/// Finalizer used to key independent streams off (seed, trial, role, ...).
inline std::uint64_t mix_key(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    h *= 0xFF51AFD7ED558CCDULL;
    h ^= h >> 33;
    return h;
}

enum class StreamRole : std::uint64_t {
    codebook = 1,
    payload = 2,
    channel = 3,
    generator_row = 4,
    channel_row = 5,
    instance = 6,
};

/// Derives a stream for one (trial, role, sub-index) triple. Trials can run
/// in any order or in parallel and still draw identical randomness.
inline RngStream make_stream(std::uint64_t master_seed, std::uint64_t trial, StreamRole role,
                             std::uint64_t sub = 0) {
    std::uint64_t h = mix_key(0x243F6A8885A308D3ULL, master_seed);
    h = mix_key(h, trial);
    h = mix_key(h, static_cast<std::uint64_t>(role));
    h = mix_key(h, sub);
    return RngStream(h);
}

}  // namespace tgrand
