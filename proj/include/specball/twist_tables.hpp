#pragma once

#include <algorithm>
#include <vector>

#include "specball/errors.hpp"
#include "specball/matrix2.hpp"

namespace specball {

// One term c * v1^i * v2^j * v3^k of a three-variable polynomial.
struct Monomial {
    int i = 0, j = 0, k = 0;
    Complex c{0.0};
};

inline constexpr int kDefaultMaxMonomialDegree = 8;

// Exponentiated evaluation uses exp(g(.)); refuse to produce Inf.
inline constexpr double kExpGuard = 300.0;

namespace detail {

// Canonical form: merge duplicate exponent triples, drop zero coefficients,
// sort by (total degree, i, j, k).
inline std::vector<Monomial> canonicalize(std::vector<Monomial> terms, int max_degree) {
    for (const Monomial &m : terms) {
        if (m.i < 0 || m.j < 0 || m.k < 0)
            throw std::invalid_argument("monomial table: negative exponent");
        if (m.i + m.j + m.k > max_degree)
            throw std::invalid_argument("monomial table: total degree above cap");
        if (!std::isfinite(m.c.real()) || !std::isfinite(m.c.imag()))
            throw std::invalid_argument("monomial table: non-finite coefficient");
    }
    std::sort(terms.begin(), terms.end(), [](const Monomial &a, const Monomial &b) {
        const int da = a.i + a.j + a.k, db = b.i + b.j + b.k;
        if (da != db) return da < db;
        if (a.i != b.i) return a.i < b.i;
        if (a.j != b.j) return a.j < b.j;
        return a.k < b.k;
    });
    std::vector<Monomial> out;
    for (const Monomial &m : terms) {
        if (!out.empty() && out.back().i == m.i && out.back().j == m.j &&
            out.back().k == m.k)
            out.back().c += m.c;
        else
            out.push_back(m);
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const Monomial &m) { return m.c == Complex{0.0}; }),
              out.end());
    return out;
}

inline Complex eval_table(const std::vector<Monomial> &terms, Complex v1, Complex v2,
                          Complex v3) {
    Complex acc{0.0};
    for (const Monomial &m : terms) {
        Complex t = m.c;
        for (int n = 0; n < m.i; ++n) t *= v1;
        for (int n = 0; n < m.j; ++n) t *= v2;
        for (int n = 0; n < m.k; ++n) t *= v3;
        acc += t;
    }
    return acc;
}

} // namespace detail

// Polynomial in (x12, tr x, det x) — the admissible argument list for the
// lower-triangular twist conjugator.  All three arguments are preserved by
// the twist itself, which is what makes its closed inverse work.
class TwistFunction {
  public:
    TwistFunction() = default;

    explicit TwistFunction(std::vector<Monomial> terms,
                           int max_degree = kDefaultMaxMonomialDegree)
        : terms_(detail::canonicalize(std::move(terms), max_degree)),
          max_degree_(max_degree) {}

    const std::vector<Monomial> &terms() const { return terms_; }

    Complex eval(Complex x12, Complex tr, Complex det) const {
        return detail::eval_table(terms_, x12, tr, det);
    }

    TwistFunction negated() const {
        std::vector<Monomial> t(terms_);
        for (Monomial &m : t)
            m.c = -m.c;
        return TwistFunction(std::move(t), max_degree_);
    }

    friend bool operator==(const TwistFunction &a, const TwistFunction &b);

  private:
    std::vector<Monomial> terms_;
    int max_degree_ = kDefaultMaxMonomialDegree;
};

inline bool operator==(const TwistFunction &a, const TwistFunction &b) {
    if (a.terms_.size() != b.terms_.size())
        return false;
    for (std::size_t n = 0; n < a.terms_.size(); ++n) {
        const Monomial &p = a.terms_[n], &q = b.terms_[n];
        if (p.i != q.i || p.j != q.j || p.k != q.k || p.c != q.c)
            return false;
    }
    return true;
}

// Function of (x11, x22, x12 x21) — the argument list under which the
// diagonal conjugation diag(a, 1/a) is invertible in closed form, since the
// map fixes the diagonal and the off-diagonal product.  With `exponentiated`
// set, the value is exp(g(.)), which never vanishes.
class InvariantFunction {
  public:
    InvariantFunction() = default;

    explicit InvariantFunction(std::vector<Monomial> terms, bool exponentiated = false,
                               int max_degree = kDefaultMaxMonomialDegree)
        : terms_(detail::canonicalize(std::move(terms), max_degree)),
          exponentiated_(exponentiated), max_degree_(max_degree) {}

    const std::vector<Monomial> &terms() const { return terms_; }
    bool exponentiated() const { return exponentiated_; }

    Complex eval(Complex x11, Complex x22, Complex offdiag_product) const {
        const Complex g = detail::eval_table(terms_, x11, x22, offdiag_product);
        if (!exponentiated_)
            return g;
        if (std::abs(g.real()) > kExpGuard)
            throw OverflowGuard("InvariantFunction: |Re g| above exp guard");
        return std::exp(g);
    }

    InvariantFunction negated() const {
        std::vector<Monomial> t(terms_);
        for (Monomial &m : t)
            m.c = -m.c;
        return InvariantFunction(std::move(t), exponentiated_, max_degree_);
    }

  private:
    std::vector<Monomial> terms_;
    bool exponentiated_ = false;
    int max_degree_ = kDefaultMaxMonomialDegree;
};

} // namespace specball
