#pragma once

#include "specball/matrix2.hpp"

namespace specball {

// Disc automorphism parameters for m(z) = gamma (z - alpha) / (1 - conj(alpha) z),
// |alpha| < 1 and |gamma| = 1.  The matrix form lifts m through the
// functional calculus: x -> gamma (x - alpha I)(I - conj(alpha) x)^{-1}.
struct MoebiusParams {
    Complex alpha{0.0};
    Complex gamma{1.0};

    MoebiusParams() = default;

    MoebiusParams(Complex a, Complex g) : alpha(a), gamma(g) {
        if (!(std::abs(a) < 1.0))
            throw std::invalid_argument("MoebiusParams: |alpha| must be < 1");
        if (std::abs(std::abs(g) - 1.0) > 1e-12)
            throw std::invalid_argument("MoebiusParams: |gamma| must be 1");
    }

    bool is_identity() const { return alpha == Complex{0.0} && gamma == Complex{1.0}; }
};

inline Complex moebius_scalar(const MoebiusParams &m, Complex z) {
    return m.gamma * (z - m.alpha) / (1.0 - std::conj(m.alpha) * z);
}

inline Mat2 moebius_matrix(const MoebiusParams &m, const Mat2 &x) {
    const Mat2 num = x - Mat2::diag(m.alpha, m.alpha);
    const Mat2 den = Mat2::identity() - std::conj(m.alpha) * x;
    return m.gamma * (num * inverse2(den));
}

// Solving w = gamma (z - alpha)/(1 - conj(alpha) z) for z lands back in the
// same normal form with parameters (-gamma alpha, conj(gamma)).
inline MoebiusParams moebius_inverse(const MoebiusParams &m) {
    return MoebiusParams(-m.gamma * m.alpha, std::conj(m.gamma));
}

// Normal form of (second after first).  Work in the 2x2 coefficient
// representation [[gamma, -gamma alpha], [-conj(alpha), 1]]; the product is a
// disc automorphism again, with alpha = -b/a and gamma = a/d re-unitarized.
inline MoebiusParams moebius_compose(const MoebiusParams &second,
                                     const MoebiusParams &first) {
    const Complex a1 = first.gamma, b1 = -first.gamma * first.alpha;
    const Complex c1 = -std::conj(first.alpha), d1 = 1.0;
    const Complex a2 = second.gamma, b2 = -second.gamma * second.alpha;
    const Complex c2 = -std::conj(second.alpha), d2 = 1.0;

    const Complex a = a2 * a1 + b2 * c1;
    const Complex b = a2 * b1 + b2 * d1;
    const Complex c = c2 * a1 + d2 * c1;
    const Complex d = c2 * b1 + d2 * d1;

    const Complex alpha = -b / a;
    Complex gamma = a / d;
    gamma /= std::abs(gamma);
    return MoebiusParams(alpha, gamma);
}

} // namespace specball
