#pragma once

#include <cstdint>

#include "specball/matrix2.hpp"

namespace specball {

// SplitMix64 (Steele, Lea, Flood 2014).  The algorithm is part of this
// library's reproducibility contract: equal seeds must reproduce equal
// sample streams across implementations, so both the mixer and the stream
// derivation below are fixed, documented constants.
inline constexpr std::uint64_t kSplitMix64Gamma = 0x9E3779B97F4A7C15ull;
inline constexpr std::uint64_t kStreamSalt = 0xD1B54A32D192ED03ull;

inline std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

struct SplitMix64 {
    std::uint64_t state = 0;

    std::uint64_t next() {
        state += kSplitMix64Gamma;
        return splitmix64_mix(state);
    }

    // Uniform double in [0, 1), 53 significant bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform on the closed disc of the given radius (area measure):
    // modulus = radius * sqrt(u1), angle = 2 pi u2, drawn in that order.
    Complex next_in_disc(double radius) {
        const double u1 = next_unit();
        const double u2 = next_unit();
        return std::polar(radius * std::sqrt(u1), 2.0 * 3.14159265358979323846 * u2);
    }
};

// Per-sample stream: sample index i under master seed s and stream salt t
// starts from state mix(s + (i+1)*gamma + t*salt).  Every sample is a pure
// function of (seed, index, salt), so batching and worker count cannot
// change results.
inline SplitMix64 sample_stream(std::uint64_t seed, std::uint64_t index,
                                std::uint64_t salt = 0) {
    return SplitMix64{splitmix64_mix(seed + (index + 1) * kSplitMix64Gamma +
                                     salt * kStreamSalt)};
}

} // namespace specball
