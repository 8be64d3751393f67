#pragma once

#include "specball/automorphism.hpp"
#include "specball/entire_poly.hpp"
#include "specball/matrix2.hpp"

namespace specball {

// Point of the fiber {x : det x = 0, tr x = 1/2}, parametrized by
// lambda -> [[lambda, lambda], [1/2 - lambda, 1/2 - lambda]].  Eigenvalues
// are {0, 1/2} for every lambda, so the whole fiber lies in the spectral
// ball no matter how large the entries get.
struct FiberPoint {
    Complex lambda;
    Mat2 matrix;
};

inline FiberPoint fiber_point(Complex lambda) {
    const Complex mu = 0.5 - lambda;
    return {lambda, Mat2{lambda, lambda, mu, mu}};
}

// Image of the fiber point under the diagonal twist with entire function phi:
// [[lambda, e^{-phi(w)} lambda], [e^{phi(w)} (1/2 - lambda), 1/2 - lambda]]
// with w = lambda (1/2 - lambda).
inline Mat2 fiber_image(const EntirePoly &phi, Complex lambda) {
    const Complex mu = 0.5 - lambda;
    const Complex e = eval_poly(phi, lambda * mu);
    if (std::abs(e.real()) > kExpGuard)
        throw OverflowGuard("fiber_image: |Re phi| above exp guard");
    return {lambda, std::exp(-e) * lambda, std::exp(e) * mu, mu};
}

} // namespace specball
