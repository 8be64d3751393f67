#pragma once

#include <array>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "specball/entire_poly.hpp"
#include "specball/errors.hpp"
#include "specball/matrix2.hpp"
#include "specball/moebius.hpp"
#include "specball/twist_tables.hpp"

namespace specball {

class Automorphism;

// x -> x^t
struct TransposeForm {};

// x -> gamma (x - alpha)(1 - conj(alpha) x)^{-1}
struct MoebiusForm {
    MoebiusParams params;
};

// x -> [[x11, e^{-phi(x12 x21)} x12], [e^{phi(x12 x21)} x21, x22]].
// Fixes the diagonal and the off-diagonal product; the inverse flips the
// sign of phi.
struct DiagTwistForm {
    EntirePoly phi;
};

// x -> u(x) x u(x)^{-1} with u(x) = [[1, 0], [a(x12, tr x, det x), 1]].
// All three arguments of a are preserved by the map, so the inverse is the
// same form with -a.
struct LowerTwistForm {
    TwistFunction a;
};

// x -> d x d^{-1} with d = diag(a(x), 1/a(x)), a a function of
// (x11, x22, x12 x21).  `inverted` swaps d and d^{-1}; `pullback` means the
// conjugator is evaluated at M(x) instead of x (the commutation rewrite).
struct DiagConjForm {
    InvariantFunction a;
    bool inverted = false;
    std::optional<MoebiusParams> pullback;
};

// x -> u(x)^{-1} x u(x) with an opaque conjugator map.  Excluded from
// invert(): a closed inverse needs argument-invariance of u, which is only
// known for the structured forms.
struct GeneralConjForm {
    std::function<Mat2(const Mat2 &)> conjugator;
};

// Pipeline of automorphisms, applied left-to-right: steps[0] first.
struct ComposeForm {
    std::vector<Automorphism> steps;
};

class Automorphism {
  public:
    using Node = std::variant<TransposeForm, MoebiusForm, DiagTwistForm, LowerTwistForm,
                              DiagConjForm, GeneralConjForm, ComposeForm>;

    explicit Automorphism(Node node) : node_(std::move(node)) {
        if (const auto *c = std::get_if<ComposeForm>(&node_); c && c->steps.empty())
            throw std::invalid_argument("Automorphism: compose list must be non-empty");
    }

    static Automorphism transpose() { return Automorphism(TransposeForm{}); }
    static Automorphism moebius(MoebiusParams p) { return Automorphism(MoebiusForm{p}); }
    static Automorphism diag_twist(EntirePoly phi) {
        return Automorphism(DiagTwistForm{std::move(phi)});
    }
    static Automorphism lower_twist(TwistFunction a) {
        return Automorphism(LowerTwistForm{std::move(a)});
    }
    static Automorphism diag_conj(InvariantFunction a) {
        return Automorphism(DiagConjForm{std::move(a), false, std::nullopt});
    }
    static Automorphism general_conj(std::function<Mat2(const Mat2 &)> u) {
        return Automorphism(GeneralConjForm{std::move(u)});
    }
    static Automorphism compose(std::vector<Automorphism> steps) {
        return Automorphism(ComposeForm{std::move(steps)});
    }

    const Node &node() const { return node_; }

    template <typename Form> bool holds() const {
        return std::holds_alternative<Form>(node_);
    }

  private:
    Node node_;
};

// Conjugator value too close to zero makes diag(a, 1/a) useless numerically.
inline constexpr double kConjugatorFloor = 1e-6;

namespace detail {

inline Complex diag_conj_value(const DiagConjForm &f, const Mat2 &x) {
    const Mat2 y = f.pullback ? moebius_matrix(*f.pullback, x) : x;
    Complex a = f.a.eval(y.x11, y.x22, y.x12 * y.x21);
    if (std::abs(a) < kConjugatorFloor)
        throw VanishingConjugator("diag conjugation: |a(x)| below floor");
    if (f.inverted)
        a = 1.0 / a;
    return a;
}

} // namespace detail

// u(x) = [[1, 0], [a(x12, tr x, det x), 1]]; unit determinant, always invertible.
inline Mat2 lower_twist_u(const TwistFunction &a, const Mat2 &x) {
    return {1.0, 0.0, a.eval(x.x12, trace(x), det(x)), 1.0};
}

inline Mat2 apply(const Automorphism &f, const Mat2 &x, double tol = kMembershipTol);

namespace detail {

struct ApplyVisitor {
    const Mat2 &x;
    double tol;

    Mat2 operator()(const TransposeForm &) const { return transpose(x); }

    Mat2 operator()(const MoebiusForm &f) const { return moebius_matrix(f.params, x); }

    Mat2 operator()(const DiagTwistForm &f) const {
        const Complex e = eval_poly(f.phi, x.x12 * x.x21);
        if (std::abs(e.real()) > kExpGuard)
            throw OverflowGuard("diag twist: |Re phi(x12 x21)| above exp guard");
        return {x.x11, std::exp(-e) * x.x12, std::exp(e) * x.x21, x.x22};
    }

    Mat2 operator()(const LowerTwistForm &f) const {
        const Complex v = f.a.eval(x.x12, trace(x), det(x));
        const Mat2 u{1.0, 0.0, v, 1.0};
        const Mat2 u_inv{1.0, 0.0, -v, 1.0};
        return (u * x) * u_inv;
    }

    Mat2 operator()(const DiagConjForm &f) const {
        const Complex a = diag_conj_value(f, x);
        const Complex a2 = a * a;
        return {x.x11, a2 * x.x12, x.x21 / a2, x.x22};
    }

    Mat2 operator()(const GeneralConjForm &f) const {
        const Mat2 u = f.conjugator(x);
        return similarity(u, x);
    }

    Mat2 operator()(const ComposeForm &f) const {
        Mat2 cur = x;
        for (const Automorphism &step : f.steps)
            cur = apply(step, cur, tol);
        return cur;
    }
};

} // namespace detail

inline Mat2 apply(const Automorphism &f, const Mat2 &x, double tol) {
    if (!all_finite(x))
        throw OutsideDomain("apply: input entries must be finite");
    if (!in_spectral_ball(x, tol))
        throw OutsideDomain("apply: input outside the spectral ball");
    const Mat2 out = std::visit(detail::ApplyVisitor{x, tol}, f.node());
    // Image must stay inside the ball, at ten times relaxed slack.
    if (!all_finite(out) || !in_spectral_ball(out, tol / 10.0))
        throw OutsideDomain("apply: image left the spectral ball");
    return out;
}

inline Automorphism invert(const Automorphism &f) {
    struct Visitor {
        Automorphism operator()(const TransposeForm &) const {
            return Automorphism::transpose();
        }
        Automorphism operator()(const MoebiusForm &g) const {
            return Automorphism::moebius(moebius_inverse(g.params));
        }
        Automorphism operator()(const DiagTwistForm &g) const {
            return Automorphism::diag_twist(g.phi.negated());
        }
        Automorphism operator()(const LowerTwistForm &g) const {
            return Automorphism::lower_twist(g.a.negated());
        }
        Automorphism operator()(const DiagConjForm &g) const {
            return Automorphism(DiagConjForm{g.a, !g.inverted, g.pullback});
        }
        Automorphism operator()(const GeneralConjForm &) const {
            throw NotInvertibleForm("invert: opaque conjugation has no closed inverse");
        }
        Automorphism operator()(const ComposeForm &g) const {
            std::vector<Automorphism> rev;
            rev.reserve(g.steps.size());
            for (auto it = g.steps.rbegin(); it != g.steps.rend(); ++it)
                rev.push_back(invert(*it));
            return Automorphism::compose(std::move(rev));
        }
    };
    return std::visit(Visitor{}, f.node());
}

// Returns ((f(x))12, x12) for f the lower twist with conjugator a.  The two
// components agree: unipotent lower-triangular conjugation fixes the (1,2)
// entry, and tr/det are similarity invariants, so every argument of a is
// preserved by f.
inline std::pair<Complex, Complex>
lower_twist_x12_invariance(const TwistFunction &a, const Mat2 &x,
                           double tol = kMembershipTol) {
    const Mat2 image = apply(Automorphism::lower_twist(a), x, tol);
    return {image.x12, x.x12};
}

// Linear map on 2x2 matrices recorded as the images of the matrix units
// E11, E12, E21, E22 (in that order).
struct LinearMap2 {
    std::array<Mat2, 4> images;

    Mat2 apply_to(const Mat2 &x) const {
        return x.x11 * images[0] + x.x12 * images[1] + x.x21 * images[2] +
               x.x22 * images[3];
    }
};

inline constexpr double kFiniteDifferenceStep = 1e-5;

// Central finite difference of f at the origin.  Requires f(0) = 0.
inline LinearMap2 derivative_at_zero(const Automorphism &f,
                                     double eps = kFiniteDifferenceStep) {
    if (frobenius_norm(apply(f, Mat2::zero())) > 1e-12)
        throw NotOriginFixing("derivative_at_zero: f(0) != 0");
    const std::array<Mat2, 4> units = {Mat2{1.0, 0.0, 0.0, 0.0}, Mat2{0.0, 1.0, 0.0, 0.0},
                                       Mat2{0.0, 0.0, 1.0, 0.0}, Mat2{0.0, 0.0, 0.0, 1.0}};
    LinearMap2 out;
    for (std::size_t n = 0; n < 4; ++n) {
        const Mat2 plus = apply(f, eps * units[n]);
        const Mat2 minus = apply(f, (-eps) * units[n]);
        out.images[n] = (1.0 / (2.0 * eps)) * (plus - minus);
    }
    return out;
}

// Rewrites J_u o M as M o J_{u o M}: returns the conjugation whose conjugator
// is precomposed with the Moebius map.  Identity Moebius returns f unchanged.
inline Automorphism commutation_conjugate(const Automorphism &f,
                                          const MoebiusParams &m) {
    if (m.is_identity())
        return f;
    if (const auto *d = std::get_if<DiagConjForm>(&f.node())) {
        DiagConjForm out = *d;
        out.pullback = d->pullback ? moebius_compose(*d->pullback, m) : m;
        return Automorphism(std::move(out));
    }
    if (const auto *g = std::get_if<GeneralConjForm>(&f.node())) {
        auto u = g->conjugator;
        return Automorphism::general_conj(
            [u, m](const Mat2 &x) { return u(moebius_matrix(m, x)); });
    }
    throw WrongForm("commutation_conjugate: expected a conjugation form");
}

// Conjugator-valued map of a conjugation form, as a matrix.
inline Mat2 conjugator_value(const Automorphism &f, const Mat2 &x) {
    if (const auto *d = std::get_if<DiagConjForm>(&f.node())) {
        const Complex a = detail::diag_conj_value(*d, x);
        return Mat2::diag(a, 1.0 / a);
    }
    if (const auto *g = std::get_if<GeneralConjForm>(&f.node()))
        return g->conjugator(x);
    if (const auto *l = std::get_if<LowerTwistForm>(&f.node()))
        return lower_twist_u(l->a, x);
    throw WrongForm("conjugator_value: expected a conjugation form");
}

// Spectrum-preserving forms: transposition and every conjugation shape.
inline bool preserves_spectrum(const Automorphism &f) {
    struct Visitor {
        bool operator()(const TransposeForm &) const { return true; }
        bool operator()(const MoebiusForm &g) const { return g.params.is_identity(); }
        bool operator()(const DiagTwistForm &) const { return true; }
        bool operator()(const LowerTwistForm &) const { return true; }
        bool operator()(const DiagConjForm &) const { return true; }
        bool operator()(const GeneralConjForm &) const { return true; }
        bool operator()(const ComposeForm &g) const {
            for (const Automorphism &s : g.steps)
                if (!preserves_spectrum(s))
                    return false;
            return true;
        }
    };
    return std::visit(Visitor{}, f.node());
}

} // namespace specball
