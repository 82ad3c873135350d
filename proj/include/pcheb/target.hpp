#pragma once

#include "pcheb/functions.hpp"
#include "pcheb/poly.hpp"
#include "pcheb/rational.hpp"

#include <functional>
#include <optional>
#include <stdexcept>

namespace pcheb {

// The function being approximated, together with everything needed to
// reduce the problem to [-1,1]: the affine segment map, the parity
// reduction (even functions are handled in u = 2t^2-1, odd functions
// through f/t), and the analytic limit of f(x)/x at 0 for odd targets.
template <class Real>
struct ApproxTarget {
    std::function<Real(const Real&)> f;  // on [A,B]
    Real seg_a = Real(-1);
    Real seg_b = Real(1);
    Parity parity = Parity::general;
    std::optional<Real> div_x_limit;

    static ApproxTarget from_catalog(const CatalogEntry<Real>& e) {
        ApproxTarget t;
        t.f = e.eval;
        t.seg_a = e.seg_a;
        t.seg_b = e.seg_b;
        t.parity = e.parity;
        t.div_x_limit = e.div_x_limit;
        return t;
    }

    Real map_from_unit(const Real& t) const {
        if (seg_a == Real(-1) && seg_b == Real(1)) return t;
        return (seg_a + seg_b) / 2 + t * (seg_b - seg_a) / 2;
    }

    void require_symmetric() const {
        if (parity != Parity::general && seg_a != -seg_b)
            throw std::invalid_argument("even/odd forms need a symmetric segment");
    }

    // Target in the unit coordinate t: f(x(t)) for general/even parity,
    // f(x(t))/t for odd parity.
    Real reduced_t(const Real& t) const {
        if (parity != Parity::odd) return f(map_from_unit(t));
        if (t == Real(0)) {
            if (!div_x_limit) throw std::invalid_argument("odd target needs a f(x)/x limit at 0");
            return seg_b * (*div_x_limit);
        }
        return f(map_from_unit(t)) / t;
    }

    // Even-reduced target g(u) on [-1,1], u = 2t^2-1 (parity even/odd).
    Real reduced_u(const Real& u) const {
        using std::sqrt;
        require_symmetric();
        Real t = sqrt((Real(1) + u) / 2);
        return reduced_t(t);
    }
};

// Chebyshev series of the reduced target: the quadrature route.
// For general parity this is the series of f(x(t)) in t; for even/odd
// parity it is the series of g(u).
template <class Real>
ChebyshevSeries<Real> reduced_series_quadrature(const ApproxTarget<Real>& target, std::size_t N,
                                                const QuadratureRule<Real>& rule) {
    if (target.parity == Parity::general) {
        return fourier_chebyshev_coeffs<Real>([&](const Real& t) { return target.reduced_t(t); }, N,
                                              rule);
    }
    return fourier_chebyshev_coeffs<Real>([&](const Real& u) { return target.reduced_u(u); }, N,
                                          rule);
}

// Chebyshev series of the reduced target from a truncated Taylor
// polynomial at 0 (coefficients in the raw coordinate, segment [-1,1]):
// the economization route.
template <class Real>
ChebyshevSeries<Real> reduced_series_taylor(const MonomialPoly<Real>& taylor, Parity parity,
                                            std::size_t target_N) {
    if (parity == Parity::general) return economize_taylor(taylor, target_N);
    // Collect the even part (of f, or of f/t for odd parity) as a
    // polynomial in w = t^2, move to u = 2w-1, and change basis.
    const std::size_t off = (parity == Parity::odd) ? 1 : 0;
    std::vector<Real> in_w;
    for (std::size_t k = off; k < taylor.coeffs.size(); k += 2) in_w.push_back(taylor.coeffs[k]);
    if (in_w.empty()) in_w.push_back(Real(0));
    MonomialPoly<Real> in_u =
        detail::compose_affine(MonomialPoly<Real>(std::move(in_w)), Real(1) / 2, Real(1) / 2);
    ChebyshevSeries<Real> full = monomial_to_cheb(in_u);
    if (target_N + 1 < full.coeffs.size())
        full.coeffs.resize(target_N + 1);
    else
        full.coeffs.resize(target_N + 1, Real(0));
    return full.with_halved_first(true);
}

}  // namespace pcheb
