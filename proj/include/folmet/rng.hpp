#pragma once

#include <cstdint>
#include <string_view>

namespace folmet {

// All randomness flows from one config seed through named streams, so every
// module draws from its own reproducible sequence regardless of scheduling.

inline std::uint64_t splitmix64(std::uint64_t& s) {
    s += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Deterministic stream of doubles/ints derived from (seed, label[, index]).
class RngStream {
public:
    RngStream(std::uint64_t seed, std::string_view label, std::uint64_t index = 0) {
        state_ = seed ^ fnv1a(label);
        state_ ^= 0x6a09e667f3bcc909ULL * (index + 1);
        // warm up
        splitmix64(state_);
        splitmix64(state_);
    }

    std::uint64_t next_u64() { return splitmix64(state_); }

    /// Uniform in [0,1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [a,b).
    double uniform(double a, double b) { return a + (b - a) * next_double(); }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

private:
    std::uint64_t state_;
};

} // namespace folmet
