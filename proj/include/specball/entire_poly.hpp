#pragma once

#include <vector>

#include "specball/matrix2.hpp"

namespace specball {

// Entire function represented as a polynomial, coefficients in ascending
// degree (coeffs[k] multiplies t^k).  Degree >= 1 witnesses non-constancy,
// which is all the twist constructions need; the exponential e^{phi(.)} is
// taken with the scalar complex exp at evaluation time.
class EntirePoly {
  public:
    EntirePoly() = default;

    explicit EntirePoly(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
        for (const Complex &c : coeffs_)
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
                throw std::invalid_argument("EntirePoly: coefficients must be finite");
        while (!coeffs_.empty() && coeffs_.back() == Complex{0.0})
            coeffs_.pop_back();
    }

    const std::vector<Complex> &coeffs() const { return coeffs_; }

    bool is_zero() const { return coeffs_.empty(); }

    bool is_nonconstant() const { return coeffs_.size() >= 2; }

    EntirePoly negated() const {
        std::vector<Complex> c(coeffs_);
        for (Complex &v : c)
            v = -v;
        return EntirePoly(std::move(c));
    }

    friend bool operator==(const EntirePoly &a, const EntirePoly &b) {
        return a.coeffs_ == b.coeffs_;
    }

  private:
    std::vector<Complex> coeffs_;
};

// Horner evaluation.
inline Complex eval_poly(const EntirePoly &p, Complex t) {
    Complex acc{0.0};
    const auto &c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        acc = acc * t + *it;
    return acc;
}

} // namespace specball
