#pragma once

#include "pcheb/linsolve.hpp"
#include "pcheb/poly.hpp"
#include "pcheb/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pcheb {

// Cross-multiplied construction from a Chebyshev series of the target:
// with f ~ sum' c_i T_i, P = sum' a_i T_i, Q = sum' b_j T_j, requiring
// the product f*Q - P to have no T_k component for k <= n+m gives
//   a_i = (1/2) sum'_j b_j (c_{i+j} + c_{|i-j|}),   i = 0..n,
// and m homogeneous conditions on b (the same sums for i = n+1..n+m),
// closed by b_0 = 1.  Needs c_0..c_{n+2m}.
template <class Real>
struct CrossPCProblem {
    ChebyshevSeries<Real> c;  // halved-first coefficients of the (reduced) target
    std::size_t n = 0, m = 0;
};

namespace detail {

template <class Real>
const std::vector<Real>& checked_series(const CrossPCProblem<Real>& prob) {
    if (!prob.c.halved_first)
        throw std::invalid_argument("cross construction expects halved-first coefficients");
    if (prob.c.coeffs.size() < prob.n + 2 * prob.m + 1)
        throw std::invalid_argument("cross construction needs series coefficients up to n+2m");
    return prob.c.coeffs;
}

}  // namespace detail

// Square (m+1)-system for b: the b_0 = 1 row followed by the m
// homogeneous product conditions for indices i = n+1..n+m.
template <class Real>
std::pair<DenseMatrix<Real>, std::vector<Real>> denominator_system(const CrossPCProblem<Real>& prob) {
    const std::vector<Real>& c = detail::checked_series(prob);
    const std::size_t n = prob.n, m = prob.m;
    DenseMatrix<Real> a(m + 1, m + 1);
    std::vector<Real> h(m + 1, Real(0));
    a(0, 0) = Real(1);
    h[0] = Real(1);
    for (std::size_t row = 1; row <= m; ++row) {
        const std::size_t i = n + row;
        a(row, 0) = c[i] / 2;  // halved j = 0 term of (1/2) sum'
        for (std::size_t j = 1; j <= m; ++j) {
            const std::size_t lo = i > j ? i - j : j - i;
            a(row, j) = (c[i + j] + c[lo]) / 2;
        }
    }
    return {std::move(a), std::move(h)};
}

// a_i = (1/2) sum'_j b_j (c_{i+j} + c_{|i-j|}) for i = 0..n, from raw
// halved-first series values c and any denominator b.  Needs c up to
// index n + (b.size()-1).
template <class Real>
std::vector<Real> numerator_from_series(const std::vector<Real>& c, const std::vector<Real>& b,
                                        std::size_t n) {
    const std::size_t m = b.size() - 1;
    if (c.size() < n + m + 1)
        throw std::invalid_argument("numerator formula needs series coefficients up to n+m");
    std::vector<Real> a(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        Real acc = b[0] * c[i] / 2;  // halved j = 0 term of (1/2) sum'
        for (std::size_t j = 1; j <= m; ++j) {
            const std::size_t lo = i > j ? i - j : j - i;
            acc += b[j] * (c[i + j] + c[lo]) / 2;
        }
        a[i] = acc;
    }
    return a;
}

// a_i from a solved denominator, i = 0..n.
template <class Real>
std::vector<Real> numerator_coeffs(const CrossPCProblem<Real>& prob, const std::vector<Real>& b) {
    const std::vector<Real>& c = detail::checked_series(prob);
    if (b.size() != prob.m + 1) throw std::invalid_argument("denominator size mismatch");
    return numerator_from_series(c, b, prob.n);
}

template <class Real>
struct CrossConstructResult {
    RationalApproximant<Real> approximant;
    SolveReport<Real> report;
};

// Solve for b, form a, and package the approximant.  The coefficient
// vectors are halved-first Chebyshev in the series' own variable; the
// parity/segment arguments record how that variable relates to x.
template <class Real>
CrossConstructResult<Real> construct_cross(const CrossPCProblem<Real>& prob,
                                           Parity parity = Parity::general,
                                           const Real& seg_a = Real(-1),
                                           const Real& seg_b = Real(1),
                                           const SolveOptions& opts = {}) {
    auto [a, h] = denominator_system(prob);
    CrossConstructResult<Real> out;
    out.report = solve(a, h, opts);
    RationalApproximant<Real>& r = out.approximant;
    r.denom = out.report.solution;
    r.numer = numerator_coeffs(prob, r.denom);
    r.basis = Basis::chebyshev;
    r.parity = parity;
    r.seg_a = seg_a;
    r.seg_b = seg_b;
    return out;
}

}  // namespace pcheb
