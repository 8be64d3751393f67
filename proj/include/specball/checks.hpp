#pragma once

#include <functional>
#include <optional>
#include <thread>
#include <vector>

#include "specball/automorphism.hpp"
#include "specball/matrix2.hpp"
#include "specball/rng.hpp"
#include "specball/sampler.hpp"

namespace specball {

// Matching distance between two eigenvalue multisets of size two.
inline double eigenvalue_multiset_distance(std::pair<Complex, Complex> a,
                                           std::pair<Complex, Complex> b) {
    const double direct =
        std::max(std::abs(a.first - b.first), std::abs(a.second - b.second));
    const double swapped =
        std::max(std::abs(a.first - b.second), std::abs(a.second - b.first));
    return std::min(direct, swapped);
}

// Max of fn(i) for i in [0, count).  Work is split into contiguous index
// chunks; every fn(i) is a pure function of i, so the reduction is the same
// for any worker count.  The first failing index's exception is rethrown.
inline double parallel_max(std::size_t count, unsigned workers,
                           const std::function<double(std::size_t)> &fn) {
    if (count == 0)
        return 0.0;
    if (workers <= 1) {
        double worst = 0.0;
        for (std::size_t i = 0; i < count; ++i)
            worst = std::max(worst, fn(i));
        return worst;
    }
    const std::size_t n_workers = std::min<std::size_t>(workers, count);
    std::vector<double> local(n_workers, 0.0);
    std::vector<std::exception_ptr> errors(n_workers);
    std::vector<std::thread> threads;
    const std::size_t chunk = (count + n_workers - 1) / n_workers;
    for (std::size_t w = 0; w < n_workers; ++w) {
        threads.emplace_back([&, w] {
            const std::size_t lo = w * chunk;
            const std::size_t hi = std::min(count, lo + chunk);
            try {
                double worst = 0.0;
                for (std::size_t i = lo; i < hi; ++i)
                    worst = std::max(worst, fn(i));
                local[w] = worst;
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto &t : threads)
        t.join();
    for (const auto &e : errors)
        if (e)
            std::rethrow_exception(e);
    double worst = 0.0;
    for (double v : local)
        worst = std::max(worst, v);
    return worst;
}

// Max eigenvalue-multiset deviation between x and f(x).  Only transposition
// and conjugation shapes are accepted; anything else moves the spectrum.
inline double check_spectrum_preservation(const Automorphism &f,
                                          const std::vector<Mat2> &samples,
                                          unsigned workers = 1) {
    if (!preserves_spectrum(f))
        throw WrongForm("check_spectrum_preservation: form moves the spectrum");
    return parallel_max(samples.size(), workers, [&](std::size_t i) {
        return eigenvalue_multiset_distance(eigenvalues2(samples[i]),
                                            eigenvalues2(apply(f, samples[i])));
    });
}

// Max deviation between eigenvalues of M(x) and the scalar Moebius images of
// the eigenvalues of x.
inline double check_moebius_spectral_mapping(const MoebiusParams &m,
                                             const std::vector<Mat2> &samples,
                                             unsigned workers = 1) {
    const Automorphism f = Automorphism::moebius(m);
    return parallel_max(samples.size(), workers, [&](std::size_t i) {
        const auto [l1, l2] = eigenvalues2(samples[i]);
        return eigenvalue_multiset_distance(
            {moebius_scalar(m, l1), moebius_scalar(m, l2)},
            eigenvalues2(apply(f, samples[i])));
    });
}

// Max normalized round-trip error ||f^{-1}(f(x)) - x||_F / (1 + ||x||_F).
inline double check_roundtrip(const Automorphism &f, const std::vector<Mat2> &samples,
                              unsigned workers = 1) {
    const Automorphism inv = invert(f);
    return parallel_max(samples.size(), workers, [&](std::size_t i) {
        const Mat2 back = apply(inv, apply(f, samples[i]));
        return frobenius_norm(back - samples[i]) / (1.0 + frobenius_norm(samples[i]));
    });
}

// Two-sided evaluation of J_u o M = M o J_{u o M}, honoring the
// left-to-right compose convention.
inline double check_commutation(const Automorphism &u, const MoebiusParams &m,
                                const std::vector<Mat2> &samples, unsigned workers = 1) {
    if (!u.holds<DiagConjForm>() && !u.holds<GeneralConjForm>())
        throw WrongForm("check_commutation: expected a conjugation form");
    const Automorphism lhs =
        Automorphism::compose({Automorphism::moebius(m), u});
    const Automorphism rhs =
        Automorphism::compose({commutation_conjugate(u, m), Automorphism::moebius(m)});
    return parallel_max(samples.size(), workers, [&](std::size_t i) {
        return frobenius_norm(apply(lhs, samples[i]) - apply(rhs, samples[i]));
    });
}

// Max ||u(q^{-1} x q) - u(x)||_F over sampled (x, q) pairs, u taken as the
// conjugator-valued map.  Separates admissible conjugators (functions of
// similarity invariants) from inadmissible ones such as x12 x21.
inline double check_conjugate_invariance(const Automorphism &u, const SamplerConfig &cfg,
                                         unsigned workers = 1) {
    const std::vector<Mat2> xs = sample_ball(cfg);
    const std::vector<Mat2> qs = sample_conjugators(cfg);
    return parallel_max(xs.size(), workers, [&](std::size_t i) {
        const Mat2 conjugated = similarity(qs[i], xs[i]);
        return frobenius_norm(conjugator_value(u, conjugated) -
                              conjugator_value(u, xs[i]));
    });
}

// Constructive check of the closed inverse of diag(a, 1/a) conjugation:
// the map preserves x11, x22 and x12 x21, so swapping a and 1/a inverts it.
inline double diag_conj_roundtrip(const InvariantFunction &a,
                                  const std::vector<Mat2> &samples,
                                  unsigned workers = 1) {
    const Automorphism f = Automorphism::diag_conj(a);
    for (const Mat2 &x : samples) {
        const Complex v = a.eval(x.x11, x.x22, x.x12 * x.x21);
        if (std::abs(v) < kConjugatorFloor)
            throw VanishingConjugator("diag_conj_roundtrip: |a| below floor on a sample");
    }
    return check_roundtrip(f, samples, workers);
}

// Witness that a lower-triangular-style diagonal twist whose conjugator
// depends on x12 alone is not injective: two distinct points with equal
// images under x -> [[x11, a(x12)^2 x12], [x21 / a(x12)^2, x22]].
struct CollisionWitness {
    Mat2 x;
    Mat2 y;
    double image_gap = 0.0; // ||J(x) - J(y)||_F
    double point_gap = 0.0; // ||x - y||_F
};

namespace detail {

inline Complex x12_twist_entry(const EntirePoly &a, Complex z) {
    const Complex av = eval_poly(a, z);
    return av * av * z;
}

inline Mat2 x12_twist_apply(const EntirePoly &a, const Mat2 &x) {
    const Complex av = eval_poly(a, x.x12);
    const Complex a2 = av * av;
    return {x.x11, a2 * x.x12, x.x21 / a2, x.x22};
}

} // namespace detail

// Bounded random search with Newton refinement on the scalar collision
// equation a(z)^2 z = w.  Returns nothing (caller reports Inconclusive)
// if the budget runs out; existence is guaranteed mathematically but the
// search is heuristic.
inline std::optional<CollisionWitness>
find_x12_collision_witness(const EntirePoly &a, std::uint64_t seed = 42,
                           std::size_t budget = 100000) {
    // p(z) = a(z)^2 z - w and its derivative, as coefficient arithmetic.
    std::vector<Complex> ac = a.coeffs();
    if (ac.empty())
        ac.push_back(Complex{0.0});
    auto eval_h = [&](Complex z) { return detail::x12_twist_entry(a, z); };
    auto eval_dh = [&](Complex z) {
        // d/dz [a^2 z] = a^2 + 2 a a' z
        Complex av{0.0}, dv{0.0};
        for (std::size_t k = ac.size(); k-- > 0;) {
            av = av * z + ac[k];
            if (k >= 1)
                dv = dv * z + static_cast<double>(k) * ac[k];
        }
        return av * av + 2.0 * av * dv * z;
    };

    SplitMix64 rng = sample_stream(seed, 0, 7);
    std::size_t spent = 0;
    while (spent < budget) {
        const Complex z1 = rng.next_in_disc(1.0);
        ++spent;
        const Complex a1 = eval_poly(a, z1);
        if (std::abs(a1) < kConjugatorFloor)
            continue;
        const Complex w = eval_h(z1);

        Complex z2 = rng.next_in_disc(2.0);
        bool ok = false;
        for (int it = 0; it < 50 && spent < budget; ++it, ++spent) {
            const Complex r = eval_h(z2) - w;
            if (std::abs(r) <= 1e-13 * (1.0 + std::abs(w))) {
                ok = true;
                break;
            }
            const Complex d = eval_dh(z2);
            if (std::abs(d) < 1e-14)
                break;
            z2 -= r / d;
        }
        if (!ok || std::abs(z2 - z1) < 0.05)
            continue;
        const Complex a2 = eval_poly(a, z2);
        if (std::abs(a2) < kConjugatorFloor)
            continue;

        // Assemble the two points; the remaining entries make the images of
        // the second row agree as well.
        const Complex x21 = Complex{0.02, 0.01};
        const Complex ratio = (a2 * a2) / (a1 * a1);
        const Mat2 x{Complex{0.1}, z1, x21, Complex{-0.1}};
        const Mat2 y{Complex{0.1}, z2, x21 * ratio, Complex{-0.1}};
        if (!in_spectral_ball(x, kMembershipTol) || !in_spectral_ball(y, kMembershipTol))
            continue;
        CollisionWitness wit;
        wit.x = x;
        wit.y = y;
        wit.image_gap =
            frobenius_norm(detail::x12_twist_apply(a, x) - detail::x12_twist_apply(a, y));
        wit.point_gap = frobenius_norm(x - y);
        if (wit.image_gap > 1e-9 * (1.0 + frobenius_norm(x)) || wit.point_gap < 0.05)
            continue;
        return wit;
    }
    return std::nullopt;
}

} // namespace specball
