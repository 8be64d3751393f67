#pragma once

#include <stdexcept>
#include <string>

namespace specball {

// Base class for every failure this library reports deliberately.
struct Error : std::runtime_error {
    explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

// |det| at or below the near-underflow threshold of inverse2().
struct SingularMatrix : Error {
    explicit SingularMatrix(const std::string &msg) : Error(msg) {}
};

// Conjugator value too close to zero for diag(a, 1/a) to be usable.
struct VanishingConjugator : SingularMatrix {
    explicit VanishingConjugator(const std::string &msg) : SingularMatrix(msg) {}
};

// Input matrix is not strictly inside the spectral ball.
struct OutsideDomain : Error {
    explicit OutsideDomain(const std::string &msg) : Error(msg) {}
};

// invert() met a form without a closed inverse (an opaque conjugation).
struct NotInvertibleForm : Error {
    explicit NotInvertibleForm(const std::string &msg) : Error(msg) {}
};

// derivative_at_zero() requires f(0) = 0.
struct NotOriginFixing : Error {
    explicit NotOriginFixing(const std::string &msg) : Error(msg) {}
};

// Operation applied to an automorphism form it does not accept.
struct WrongForm : Error {
    explicit WrongForm(const std::string &msg) : Error(msg) {}
};

// |Re phi| exceeded the exp() guard; refusing to produce Inf.
struct OverflowGuard : Error {
    explicit OverflowGuard(const std::string &msg) : Error(msg) {}
};

// Least-squares fit over an all-zero point set.
struct DegenerateFit : Error {
    explicit DegenerateFit(const std::string &msg) : Error(msg) {}
};

// Iterative kernel ran out of sweeps.
struct ConvergenceFailure : Error {
    explicit ConvergenceFailure(const std::string &msg) : Error(msg) {}
};

} // namespace specball
