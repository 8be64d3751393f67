#include <doctest.h>

#include "specball/checks.hpp"
#include "specball/matrix2.hpp"
#include "specball/rng.hpp"

using specball::Complex;
using specball::Mat2;

namespace {

Mat2 random_matrix(specball::SplitMix64 &rng, double scale) {
    return {rng.next_in_disc(scale), rng.next_in_disc(scale), rng.next_in_disc(scale),
            rng.next_in_disc(scale)};
}

double entry_dist(const Mat2 &a, const Mat2 &b) { return specball::frobenius_norm(a - b); }

} // namespace

TEST_CASE("trace") {
    CHECK(specball::trace(Mat2::zero()) == Complex{0.0});
    const Complex l{0.3, 0.1};
    const Mat2 fiber{l, l, 0.5 - l, 0.5 - l};
    CHECK(std::abs(specball::trace(fiber) - 0.5) == 0.0);
    CHECK(specball::trace(Mat2{1.0, 2.0, 3.0, 4.0}) == Complex{5.0});
}

TEST_CASE("det") {
    CHECK(specball::det(Mat2::identity()) == Complex{1.0});
    const Complex l{-0.7, 0.2};
    const Mat2 fiber{l, l, 0.5 - l, 0.5 - l};
    CHECK(std::abs(specball::det(fiber)) < 1e-15); // proportional rows
    CHECK(specball::det(Mat2{1.0, 2.0, 3.0, 4.0}) == Complex{-2.0});
}

TEST_CASE("inverse2 closed forms") {
    CHECK(entry_dist(specball::inverse2(Mat2::identity()), Mat2::identity()) == 0.0);
    CHECK(entry_dist(specball::inverse2(Mat2::diag(2.0, 4.0)), Mat2::diag(0.5, 0.25)) ==
          0.0);
    // Unipotent lower-triangular, the exact shape of u^{-1} in the lower twist.
    const Complex a{0.0, 0.7};
    CHECK(entry_dist(specball::inverse2(Mat2{1.0, 0.0, a, 1.0}), Mat2{1.0, 0.0, -a, 1.0}) ==
          0.0);
}

TEST_CASE("inverse2 contract and singular guard") {
    specball::SplitMix64 rng = specball::sample_stream(11, 0);
    for (int i = 0; i < 200; ++i) {
        const Mat2 x = random_matrix(rng, 2.0);
        if (std::abs(specball::det(x)) < 1e-3)
            continue;
        CHECK(entry_dist(x * specball::inverse2(x), Mat2::identity()) <= 1e-12);
        // Double inversion returns the original point.
        CHECK(entry_dist(specball::inverse2(specball::inverse2(x)), x) <= 1e-10);
    }
    CHECK_THROWS_AS((void)specball::inverse2(Mat2::zero()), specball::SingularMatrix);
    const Mat2 rank1{1.0, 2.0, 2.0, 4.0};
    CHECK_THROWS_AS((void)specball::inverse2(rank1), specball::SingularMatrix);
}

TEST_CASE("eigenvalues2 on closed-form cases") {
    const auto pair = specball::eigenvalues2(Mat2::diag({0.3, 0.0}, {0.0, -0.5}));
    CHECK(specball::eigenvalue_multiset_distance(pair, {Complex{0.3}, Complex{0.0, -0.5}}) <=
          1e-15);
}

TEST_CASE("eigenvalues2 fiber and antidiagonal") {
    // Roots of t^2 - t/2: {0, 1/2} for every fiber point.
    for (const Complex l : {Complex{0.25}, Complex{2.0, -1.0}, Complex{-3.5, 0.2}}) {
        const Mat2 fiber{l, l, 0.5 - l, 0.5 - l};
        const auto [r1, r2] = specball::eigenvalues2(fiber);
        // Oracle: substitute each root into the characteristic polynomial.
        for (const Complex r : {r1, r2})
            CHECK(std::abs(r * r - 0.5 * r) <= 1e-12 * (1.0 + std::norm(r)));
        const double lo = std::min(std::abs(r1), std::abs(r2));
        const double hi = std::max(std::abs(r1), std::abs(r2));
        CHECK(lo <= 1e-12);
        CHECK(hi == doctest::Approx(0.5).epsilon(1e-12));
    }
    // tr = 0, det = -0.1: roots +-sqrt(0.1) by the quadratic formula.
    const Mat2 anti{0.0, 1.0, 0.1, 0.0};
    const double root = 0.31622776601683794; // sqrt(0.1)
    CHECK(specball::eigenvalue_multiset_distance(specball::eigenvalues2(anti),
                                                 {Complex{root}, Complex{-root}}) <= 1e-15);
}

TEST_CASE("eigenvalues2 satisfies Vieta on random matrices") {
    specball::SplitMix64 rng = specball::sample_stream(12, 0);
    for (int i = 0; i < 500; ++i) {
        const Mat2 x = random_matrix(rng, 3.0);
        const auto [r1, r2] = specball::eigenvalues2(x);
        const double scale = 1.0 + std::abs(r1) + std::abs(r2);
        CHECK(std::abs(r1 + r2 - specball::trace(x)) <= 1e-12 * scale);
        CHECK(std::abs(r1 * r2 - specball::det(x)) <= 1e-12 * (1.0 + std::norm(r1)));
        for (const Complex r : {r1, r2})
            CHECK(std::abs(r * r - specball::trace(x) * r + specball::det(x)) <=
                  1e-12 * (1.0 + std::norm(r)));
    }
}

TEST_CASE("spectral_radius") {
    CHECK(specball::spectral_radius(Mat2::zero()) == 0.0);
    CHECK(specball::spectral_radius(Mat2{0.0, 1.0, 0.1, 0.0}) ==
          doctest::Approx(0.31622776601683794).epsilon(1e-14));
    CHECK(specball::spectral_radius(Mat2::diag(0.9, -0.9)) == doctest::Approx(0.9));
}

TEST_CASE("spectral radius invariants") {
    specball::SplitMix64 rng = specball::sample_stream(13, 0);
    for (int i = 0; i < 300; ++i) {
        const Mat2 x = random_matrix(rng, 2.0);
        // Transpose has the same characteristic polynomial.
        CHECK(std::abs(specball::spectral_radius(specball::transpose(x)) -
                       specball::spectral_radius(x)) <= 1e-12);
        const Mat2 q = random_matrix(rng, 1.0);
        if (std::abs(specball::det(q)) < 0.1)
            continue;
        CHECK(std::abs(specball::spectral_radius(specball::similarity(q, x)) -
                       specball::spectral_radius(x)) <= 1e-10 * (1.0 + specball::spectral_radius(x)));
    }
}

TEST_CASE("in_spectral_ball") {
    CHECK(specball::in_spectral_ball(Mat2::zero(), 0.0));
    CHECK_FALSE(specball::in_spectral_ball(Mat2::diag(1.0, 0.0), 0.0)); // boundary excluded
    // Nilpotent with a huge entry still has spectral radius 0.
    CHECK(specball::in_spectral_ball(Mat2{0.0, 100.0, 0.0, 0.0}, 0.0));
    CHECK_THROWS_AS((void)specball::in_spectral_ball(Mat2::zero(), -1.0),
                    std::invalid_argument);
}

TEST_CASE("make_spectral_ball_point") {
    CHECK_NOTHROW((void)specball::make_spectral_ball_point(Mat2::diag(0.5, 0.1)));
    CHECK_THROWS_AS((void)specball::make_spectral_ball_point(Mat2::diag(1.0, 0.0)),
                    specball::OutsideDomain);
}

TEST_CASE("similarity") {
    const Mat2 x{0.1, 0.7, -0.3, 0.2};
    CHECK(entry_dist(specball::similarity(Mat2::identity(), x), x) == 0.0);
    // Diagonal conjugators fix diagonal matrices.
    CHECK(entry_dist(specball::similarity(Mat2::diag(2.0, 1.0), Mat2::diag(0.3, -0.4)),
                     Mat2::diag(0.3, -0.4)) == 0.0);

    // q = [[1,0],[1/2,1]] on [[0,1/2],[0,0]]; oracle is the direct triple product.
    const Mat2 q{1.0, 0.0, 0.5, 1.0};
    const Mat2 n{0.0, 0.5, 0.0, 0.0};
    const Mat2 expected{0.25, 0.5, -0.125, -0.25};
    const Mat2 got = specball::similarity(q, n);
    CHECK(entry_dist(got, expected) <= 1e-15);
    const Mat2 oracle = specball::inverse2(q) * n * q;
    CHECK(entry_dist(got, oracle) == 0.0);

    // Trace and determinant are conserved.
    specball::SplitMix64 rng = specball::sample_stream(14, 0);
    for (int i = 0; i < 300; ++i) {
        const Mat2 a = random_matrix(rng, 2.0);
        const Mat2 p = random_matrix(rng, 1.0);
        if (std::abs(specball::det(p)) < 0.1)
            continue;
        const Mat2 s = specball::similarity(p, a);
        CHECK(std::abs(specball::trace(s) - specball::trace(a)) <= 1e-12 * (1.0 + std::abs(specball::trace(a))));
        CHECK(std::abs(specball::det(s) - specball::det(a)) <= 1e-12 * (1.0 + std::abs(specball::det(a))));
    }
    CHECK_THROWS_AS((void)specball::similarity(Mat2::zero(), x), specball::SingularMatrix);
}

TEST_CASE("frobenius_norm") {
    CHECK(specball::frobenius_norm(Mat2::zero()) == 0.0);
    CHECK(specball::frobenius_norm(Mat2::identity()) == doctest::Approx(std::sqrt(2.0)));
    CHECK(specball::frobenius_norm(Mat2::diag(3.0, {0.0, 4.0})) == doctest::Approx(5.0));
}
