#pragma once

#include <array>
#include <cmath>

#include "specball/errors.hpp"
#include "specball/matrix2.hpp"

namespace specball {

// 4x4 complex matrix as a flat row-major array.
using Mat4c = std::array<Complex, 16>;

inline constexpr double kJacobiOffTol = 1e-13;
inline constexpr int kJacobiMaxSweeps = 60;

namespace detail {

// Real symmetric embedding of a Hermitian H = S + iK:
//   B = [[S, -K], [K, S]]  acting on (Re v; Im v).
// Each complex eigenpair appears twice; any real eigenvector (p; q) of B
// maps back to the complex eigenvector p + iq.
inline std::array<double, 64> embed_hermitian(const Mat4c &a) {
    std::array<double, 64> b{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            // Symmetrize on input.
            const Complex h = 0.5 * (a[4 * r + c] + std::conj(a[4 * c + r]));
            const double s = h.real();
            const double k = h.imag();
            b[8 * r + c] = s;
            b[8 * (r + 4) + (c + 4)] = s;
            b[8 * r + (c + 4)] = -k;
            b[8 * (r + 4) + c] = k;
        }
    return b;
}

inline double offdiag_frobenius(const std::array<double, 64> &b) {
    double acc = 0.0;
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c)
            if (r != c)
                acc += b[8 * r + c] * b[8 * r + c];
    return std::sqrt(acc);
}

} // namespace detail

// Smallest eigenvalue and a unit eigenvector of a 4x4 complex Hermitian
// matrix, by cyclic Jacobi sweeps on the 8x8 real symmetric embedding.
inline std::pair<double, std::array<Complex, 4>>
hermitian4_min_eigenpair(const Mat4c &a) {
    auto b = detail::embed_hermitian(a);

    double scale = 0.0;
    for (double v : b)
        scale += v * v;
    scale = std::sqrt(scale);
    const double off_tol = kJacobiOffTol * std::max(scale, 1e-300);

    std::array<double, 64> vecs{};
    for (int i = 0; i < 8; ++i)
        vecs[8 * i + i] = 1.0;

    bool converged = detail::offdiag_frobenius(b) <= off_tol;
    for (int sweep = 0; sweep < kJacobiMaxSweeps && !converged; ++sweep) {
        for (int p = 0; p < 8; ++p) {
            for (int q = p + 1; q < 8; ++q) {
                const double apq = b[8 * p + q];
                if (std::abs(apq) <= off_tol / 64.0)
                    continue;
                const double theta = 0.5 * (b[8 * q + q] - b[8 * p + p]) / apq;
                double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0.0)
                    t = -t;
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < 8; ++k) {
                    const double bkp = b[8 * k + p];
                    const double bkq = b[8 * k + q];
                    b[8 * k + p] = c * bkp - s * bkq;
                    b[8 * k + q] = s * bkp + c * bkq;
                }
                for (int k = 0; k < 8; ++k) {
                    const double bpk = b[8 * p + k];
                    const double bqk = b[8 * q + k];
                    b[8 * p + k] = c * bpk - s * bqk;
                    b[8 * q + k] = s * bpk + c * bqk;
                }
                for (int k = 0; k < 8; ++k) {
                    const double vkp = vecs[8 * k + p];
                    const double vkq = vecs[8 * k + q];
                    vecs[8 * k + p] = c * vkp - s * vkq;
                    vecs[8 * k + q] = s * vkp + c * vkq;
                }
            }
        }
        converged = detail::offdiag_frobenius(b) <= off_tol;
    }
    if (!converged)
        throw ConvergenceFailure("hermitian4_min_eigenpair: Jacobi ran out of sweeps");

    int best = 0;
    for (int i = 1; i < 8; ++i)
        if (b[8 * i + i] < b[8 * best + best])
            best = i;

    std::array<Complex, 4> v;
    double norm2 = 0.0;
    for (int i = 0; i < 4; ++i) {
        v[i] = Complex{vecs[8 * i + best], vecs[8 * (i + 4) + best]};
        norm2 += std::norm(v[i]);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto &z : v)
        z *= inv;
    return {b[8 * best + best], v};
}

} // namespace specball
