#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "specball/errors.hpp"
#include "specball/matrix2.hpp"
#include "specball/rng.hpp"

namespace specball {

// Sampling plan for spectral-ball points x = q T q^{-1}: T upper triangular
// with eigenvalues uniform in the disc of radius eigenvalue_radius_cap and
// T12 drawn at nilpotent_scale; q has entries at conjugator_entry_scale and
// is redrawn until |det q| >= 0.1.  entry_norm_cap (off by default) redraws
// the whole sample until ||x||_F stays below it, which the verification
// suites use to keep twist exponents inside the overflow guard.
struct SamplerConfig {
    std::uint64_t seed = 42;
    std::size_t count = 1000;
    double eigenvalue_radius_cap = 0.9;
    double conjugator_entry_scale = 1.0;
    double nilpotent_scale = 1.0;
    double entry_norm_cap = std::numeric_limits<double>::infinity();
};

inline void validate(const SamplerConfig &cfg) {
    if (!(cfg.eigenvalue_radius_cap > 0.0 && cfg.eigenvalue_radius_cap < 1.0))
        throw std::invalid_argument("SamplerConfig: eigenvalue_radius_cap must be in (0,1)");
    if (!(cfg.conjugator_entry_scale > 0.0))
        throw std::invalid_argument("SamplerConfig: conjugator_entry_scale must be > 0");
    if (!(cfg.nilpotent_scale >= 0.0))
        throw std::invalid_argument("SamplerConfig: nilpotent_scale must be >= 0");
    if (!(cfg.entry_norm_cap > 0.0))
        throw std::invalid_argument("SamplerConfig: entry_norm_cap must be > 0");
}

inline constexpr double kConjugatorDetFloor = 0.1;

namespace detail {

inline Mat2 draw_conjugator(SplitMix64 &rng, double scale) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
        const Mat2 q{rng.next_in_disc(scale), rng.next_in_disc(scale),
                     rng.next_in_disc(scale), rng.next_in_disc(scale)};
        if (std::abs(det(q)) >= kConjugatorDetFloor)
            return q;
    }
    throw ConvergenceFailure("draw_conjugator: |det q| >= 0.1 not reached; "
                             "conjugator_entry_scale is too small");
}

// Draw order within a sample's stream: lambda1, lambda2, T12, then q entries
// row-major (q redrawn as a block).  Documented for reproducibility.
inline Mat2 draw_sample(SplitMix64 &rng, const SamplerConfig &cfg) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
        const Complex l1 = rng.next_in_disc(cfg.eigenvalue_radius_cap);
        const Complex l2 = rng.next_in_disc(cfg.eigenvalue_radius_cap);
        const Complex t12 =
            cfg.nilpotent_scale > 0.0 ? rng.next_in_disc(cfg.nilpotent_scale) : Complex{0.0};
        const Mat2 t{l1, t12, 0.0, l2};
        const Mat2 q = draw_conjugator(rng, cfg.conjugator_entry_scale);
        const Mat2 x = q * t * inverse2(q);
        if (frobenius_norm(x) > cfg.entry_norm_cap)
            continue;
        if (!in_spectral_ball(x, kMembershipTol))
            continue;
        return x;
    }
    throw ConvergenceFailure("draw_sample: rejection bound not satisfiable");
}

} // namespace detail

// Deterministic batch of spectral-ball points; sample i depends only on
// (cfg, i), never on batching.
inline std::vector<Mat2> sample_ball(const SamplerConfig &cfg) {
    validate(cfg);
    std::vector<Mat2> out;
    out.reserve(cfg.count);
    for (std::size_t i = 0; i < cfg.count; ++i) {
        SplitMix64 rng = sample_stream(cfg.seed, i);
        out.push_back(detail::draw_sample(rng, cfg));
    }
    return out;
}

// Invertible conjugators for similarity pairs, drawn from a salted stream so
// they are independent of the point stream under the same seed.
inline std::vector<Mat2> sample_conjugators(const SamplerConfig &cfg,
                                            std::uint64_t salt = 1) {
    validate(cfg);
    std::vector<Mat2> out;
    out.reserve(cfg.count);
    for (std::size_t i = 0; i < cfg.count; ++i) {
        SplitMix64 rng = sample_stream(cfg.seed, i, salt);
        out.push_back(detail::draw_conjugator(rng, cfg.conjugator_entry_scale));
    }
    return out;
}

} // namespace specball
