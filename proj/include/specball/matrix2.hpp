#pragma once

#include <cmath>
#include <complex>
#include <utility>

#include "specball/errors.hpp"

namespace specball {

using Complex = std::complex<double>;

// Dense 2x2 complex matrix, the point type of the spectral ball and the
// value type of conjugators.  Immutable by convention: every operation
// returns a new value.
struct Mat2 {
    Complex x11{0.0}, x12{0.0}, x21{0.0}, x22{0.0};

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Mat2 zero() { return {}; }
    static Mat2 diag(Complex a, Complex b) { return {a, 0.0, 0.0, b}; }

    friend Mat2 operator+(const Mat2 &a, const Mat2 &b) {
        return {a.x11 + b.x11, a.x12 + b.x12, a.x21 + b.x21, a.x22 + b.x22};
    }
    friend Mat2 operator-(const Mat2 &a, const Mat2 &b) {
        return {a.x11 - b.x11, a.x12 - b.x12, a.x21 - b.x21, a.x22 - b.x22};
    }
    friend Mat2 operator*(const Mat2 &a, const Mat2 &b) {
        return {a.x11 * b.x11 + a.x12 * b.x21, a.x11 * b.x12 + a.x12 * b.x22,
                a.x21 * b.x11 + a.x22 * b.x21, a.x21 * b.x12 + a.x22 * b.x22};
    }
    friend Mat2 operator*(Complex s, const Mat2 &a) {
        return {s * a.x11, s * a.x12, s * a.x21, s * a.x22};
    }
    friend Mat2 operator*(const Mat2 &a, Complex s) { return s * a; }
    friend bool operator==(const Mat2 &a, const Mat2 &b) {
        return a.x11 == b.x11 && a.x12 == b.x12 && a.x21 == b.x21 && a.x22 == b.x22;
    }
};

inline Complex trace(const Mat2 &x) { return x.x11 + x.x22; }

inline Complex det(const Mat2 &x) { return x.x11 * x.x22 - x.x12 * x.x21; }

inline Mat2 transpose(const Mat2 &x) { return {x.x11, x.x21, x.x12, x.x22}; }

inline bool all_finite(const Mat2 &x) {
    auto ok = [](Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
    return ok(x.x11) && ok(x.x12) && ok(x.x21) && ok(x.x22);
}

inline double frobenius_norm(const Mat2 &x) {
    return std::sqrt(std::norm(x.x11) + std::norm(x.x12) + std::norm(x.x21) +
                     std::norm(x.x22));
}

// Near-underflow guard for inverse2().  Conjugators in this library are
// well-conditioned by construction, so an absolute threshold suffices and
// keeps the unipotent cases trivial.
inline constexpr double kSingularDetThreshold = 1e-300;

inline Mat2 inverse2(const Mat2 &x) {
    const Complex d = det(x);
    if (std::abs(d) <= kSingularDetThreshold)
        throw SingularMatrix("inverse2: |det| below singularity threshold");
    return {x.x22 / d, -x.x12 / d, -x.x21 / d, x.x11 / d};
}

// Roots of t^2 - tr(x) t + det(x), returned as an unordered pair.
// The larger root is taken from the cancellation-free branch
// (sign-matched discriminant), the smaller one from the Vieta product.
inline std::pair<Complex, Complex> eigenvalues2(const Mat2 &x) {
    const Complex tr = trace(x);
    const Complex dt = det(x);
    Complex s = std::sqrt(tr * tr - 4.0 * dt);
    if (std::real(std::conj(tr) * s) < 0.0)
        s = -s;
    const Complex r1 = 0.5 * (tr + s);
    const Complex r2 = (std::abs(r1) > 0.0) ? dt / r1 : Complex{0.0};
    return {r1, r2};
}

inline double spectral_radius(const Mat2 &x) {
    const auto [r1, r2] = eigenvalues2(x);
    return std::max(std::abs(r1), std::abs(r2));
}

inline bool in_spectral_ball(const Mat2 &x, double tol = 1e-9) {
    if (tol < 0.0)
        throw std::invalid_argument("in_spectral_ball: tol must be >= 0");
    return spectral_radius(x) < 1.0 - tol;
}

// q^{-1} x q.  Trace, determinant and spectrum are invariants of this map.
inline Mat2 similarity(const Mat2 &q, const Mat2 &x) {
    return inverse2(q) * x * q;
}

// Default interior slack: sampled points stay strictly inside the ball so
// holomorphic maps remain well-defined under round-off.
inline constexpr double kMembershipTol = 1e-9;

// A matrix certified to lie in the spectral ball with the given slack.
struct SpectralBallPoint {
    Mat2 matrix;
    double tol = kMembershipTol;
};

inline SpectralBallPoint make_spectral_ball_point(const Mat2 &m,
                                                  double tol = kMembershipTol) {
    if (!all_finite(m))
        throw OutsideDomain("spectral ball point: entries must be finite");
    if (!in_spectral_ball(m, tol))
        throw OutsideDomain("spectral ball point: spectral radius >= 1 - tol");
    return {m, tol};
}

} // namespace specball
