#pragma once

#include "pcheb/poly.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pcheb {

enum class Basis { monomial, chebyshev };
enum class Parity { general, even, odd };

inline const char* to_string(Basis b) { return b == Basis::monomial ? "monomial" : "chebyshev"; }
inline const char* to_string(Parity p) {
    switch (p) {
        case Parity::general: return "general";
        case Parity::even: return "even";
        default: return "odd";
    }
}

struct denominator_zero_error : std::runtime_error {
    explicit denominator_zero_error(const std::string& where)
        : std::runtime_error("denominator vanishes at " + where) {}
};

// Rational approximant in one of four shapes:
//   general:  P(t)/Q(t)
//   even:     P(w)/Q(w)          with w = t^2
//   odd:      t * P(w)/Q(w)
// where t is the affine image of x in [-1,1].  In the chebyshev basis
// the coefficient vectors are halved-first Chebyshev coefficients in t
// (general) or in u = 2t^2-1 (even/odd); note T_i(u) = T_{2i}(t).
template <class Real>
struct RationalApproximant {
    std::vector<Real> numer;  // a_0..a_n
    std::vector<Real> denom;  // b_0..b_m
    Basis basis = Basis::monomial;
    Parity parity = Parity::general;
    Real seg_a = Real(-1);
    Real seg_b = Real(1);

    std::size_t n() const { return numer.size() - 1; }
    std::size_t m() const { return denom.size() - 1; }

    bool unit_segment() const { return seg_a == Real(-1) && seg_b == Real(1); }

    Real map_to_unit(const Real& x) const {
        if (unit_segment()) return x;
        return (Real(2) * x - seg_a - seg_b) / (seg_b - seg_a);
    }

    Real map_from_unit(const Real& t) const {
        if (unit_segment()) return t;
        return (seg_a + seg_b) / 2 + t * (seg_b - seg_a) / 2;
    }
};

namespace detail {

template <class Real>
Real eval_coeffs(const std::vector<Real>& c, Basis basis, const Real& v) {
    if (basis == Basis::monomial) {
        Real acc = c.back();
        for (std::size_t i = c.size() - 1; i-- > 0;) acc = acc * v + c[i];
        return acc;
    }
    return ChebyshevSeries<Real>(c, true)(v);
}

// Variable the coefficient vectors are expressed in: t, w = t^2, or u = 2t^2-1.
template <class Real>
Real reduced_variable(const RationalApproximant<Real>& r, const Real& t) {
    if (r.parity == Parity::general) return t;
    return r.basis == Basis::monomial ? t * t : Real(2) * t * t - Real(1);
}

}  // namespace detail

// Numerator and denominator values at x (parity factor included in P).
template <class Real>
std::pair<Real, Real> numer_denom_values(const RationalApproximant<Real>& r, const Real& x) {
    if (r.numer.empty() || r.denom.empty())
        throw std::invalid_argument("rational approximant with empty coefficient vector");
    const Real t = r.map_to_unit(x);
    const Real v = detail::reduced_variable(r, t);
    Real p = detail::eval_coeffs(r.numer, r.basis, v);
    Real q = detail::eval_coeffs(r.denom, r.basis, v);
    if (r.parity == Parity::odd) p *= t;
    return {p, q};
}

template <class Real>
Real evaluate(const RationalApproximant<Real>& r, const Real& x) {
    auto [p, q] = numer_denom_values(r, x);
    if (q == Real(0)) throw denominator_zero_error(to_decimal_string(x));
    return p / q;
}

// Basis-function values phi_i, psi_j at x, so that
// R(x) = sum a_i phi_i(x) / sum b_j psi_j(x).
template <class Real>
std::pair<std::vector<Real>, std::vector<Real>> basis_values(const RationalApproximant<Real>& r,
                                                             const Real& x) {
    const Real t = r.map_to_unit(x);
    const Real v = detail::reduced_variable(r, t);
    auto one_basis = [&](std::size_t count) {
        std::vector<Real> out(count);
        if (r.basis == Basis::monomial) {
            Real p = Real(1);
            for (std::size_t i = 0; i < count; ++i) {
                out[i] = p;
                p *= v;
            }
        } else {
            for (std::size_t i = 0; i < count; ++i) out[i] = cheb_eval(i, v);
            out[0] /= 2;  // halved-first convention
        }
        return out;
    };
    std::vector<Real> phi = one_basis(r.numer.size());
    std::vector<Real> psi = one_basis(r.denom.size());
    if (r.parity == Parity::odd)
        for (Real& p : phi) p *= t;
    return {phi, psi};
}

// Both sides of the exact identity
//   (P+dP)/(Q+dQ) - P/Q = (dQ/(Q+dQ)) * (dP/dQ - P/Q).
template <class Real>
std::pair<Real, Real> error_identity_lhs_rhs(const MonomialPoly<Real>& p, const MonomialPoly<Real>& q,
                                             const MonomialPoly<Real>& dp, const MonomialPoly<Real>& dq,
                                             const Real& x) {
    const Real qv = q(x);
    const Real qtv = qv + dq(x);
    const Real dqv = dq(x);
    if (qv == Real(0) || qtv == Real(0) || dqv == Real(0))
        throw denominator_zero_error(to_decimal_string(x));
    const Real lhs = (p(x) + dp(x)) / qtv - p(x) / qv;
    const Real rhs = (dqv / qtv) * (dp(x) / dqv - p(x) / qv);
    return {lhs, rhs};
}

// The rewritten form  dP/(Q+dQ) - (dQ/(Q+dQ)) * P/Q  of the same identity.
template <class Real>
Real error_identity_alt(const MonomialPoly<Real>& p, const MonomialPoly<Real>& q,
                        const MonomialPoly<Real>& dp, const MonomialPoly<Real>& dq, const Real& x) {
    const Real qv = q(x);
    const Real qtv = qv + dq(x);
    if (qv == Real(0) || qtv == Real(0)) throw denominator_zero_error(to_decimal_string(x));
    return dp(x) / qtv - (dq(x) / qtv) * (p(x) / qv);
}

namespace detail {

// p(alpha*x + beta), exact affine composition.
template <class Real>
MonomialPoly<Real> compose_affine(const MonomialPoly<Real>& p, const Real& alpha, const Real& beta) {
    std::vector<Real> acc;
    for (std::size_t k = p.coeffs.size(); k-- > 0;) {
        std::vector<Real> next(acc.empty() ? 1 : acc.size() + 1, Real(0));
        for (std::size_t j = 0; j < acc.size(); ++j) {
            next[j + 1] += alpha * acc[j];
            next[j] += beta * acc[j];
        }
        next[0] += p.coeffs[k];
        acc = std::move(next);
    }
    return MonomialPoly<Real>(std::move(acc));
}

// Lift a coefficient vector in the reduced variable to a monomial
// polynomial in t, honoring basis and parity.
template <class Real>
MonomialPoly<Real> lift_to_t(const std::vector<Real>& coeffs, Basis basis, Parity parity,
                             bool odd_shift) {
    MonomialPoly<Real> reduced =
        basis == Basis::monomial
            ? MonomialPoly<Real>(coeffs)
            : cheb_to_monomial(ChebyshevSeries<Real>(coeffs, true));
    if (parity == Parity::general) return reduced;
    // chebyshev even/odd coefficients live in u = 2w-1; bring them to w first
    if (basis == Basis::chebyshev) reduced = compose_affine(reduced, Real(2), Real(-1));
    std::vector<Real> in_t(2 * reduced.coeffs.size() - 1 + (odd_shift ? 1 : 0), Real(0));
    for (std::size_t i = 0; i < reduced.coeffs.size(); ++i)
        in_t[2 * i + (odd_shift ? 1 : 0)] = reduced.coeffs[i];
    return MonomialPoly<Real>(std::move(in_t));
}

}  // namespace detail

// Expand any shape to basis=monomial, parity=general (coefficients in t).
template <class Real>
RationalApproximant<Real> to_plain_form(const RationalApproximant<Real>& r) {
    RationalApproximant<Real> out;
    out.basis = Basis::monomial;
    out.parity = Parity::general;
    out.seg_a = r.seg_a;
    out.seg_b = r.seg_b;
    out.numer = detail::lift_to_t(r.numer, r.basis, r.parity, r.parity == Parity::odd).coeffs;
    out.denom = detail::lift_to_t(r.denom, r.basis, r.parity, false).coeffs;
    return out;
}

// Linear-functional normalization sum(lambda_i a_i) + sum(mu_j b_j) = 1,
// with shorthand tags for b_0=1, b_m=1, a_n=1.
struct NormalizationCondition {
    enum class Tag { B0, BM, AN, General };
    Tag tag = Tag::B0;
    std::vector<double> lambda;  // used only for Tag::General
    std::vector<double> mu;

    static NormalizationCondition b0() { return {Tag::B0, {}, {}}; }
    static NormalizationCondition bm() { return {Tag::BM, {}, {}}; }
    static NormalizationCondition an() { return {Tag::AN, {}, {}}; }
    static NormalizationCondition general(std::vector<double> l, std::vector<double> m) {
        return {Tag::General, std::move(l), std::move(m)};
    }

    const char* name() const {
        switch (tag) {
            case Tag::B0: return "b0";
            case Tag::BM: return "bm";
            case Tag::AN: return "an";
            default: return "general";
        }
    }

    // Canonical (lambda, mu) vectors for numerator size n+1, denominator size m+1.
    template <class Real>
    std::pair<std::vector<Real>, std::vector<Real>> expand(std::size_t n, std::size_t m) const {
        std::vector<Real> l(n + 1, Real(0)), u(m + 1, Real(0));
        switch (tag) {
            case Tag::B0: u[0] = Real(1); break;
            case Tag::BM: u[m] = Real(1); break;
            case Tag::AN: l[n] = Real(1); break;
            case Tag::General: {
                if (lambda.size() > n + 1 || mu.size() > m + 1)
                    throw std::invalid_argument("normalization vectors longer than coefficient vectors");
                bool nonzero = false;
                for (std::size_t i = 0; i < lambda.size(); ++i) {
                    l[i] = Real(lambda[i]);
                    nonzero = nonzero || lambda[i] != 0.0;
                }
                for (std::size_t j = 0; j < mu.size(); ++j) {
                    u[j] = Real(mu[j]);
                    nonzero = nonzero || mu[j] != 0.0;
                }
                if (!nonzero) throw std::invalid_argument("normalization condition is identically zero");
                break;
            }
        }
        return {std::move(l), std::move(u)};
    }
};

}  // namespace pcheb
