#pragma once

#include "pcheb/cross_pc.hpp"
#include "pcheb/linsolve.hpp"
#include "pcheb/poly.hpp"
#include "pcheb/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pcheb {

// Raised when the nonlinear construction does not exist for the given
// degrees (its auxiliary system is singular).
struct nonlinear_nonexistence_error : std::runtime_error {
    explicit nonlinear_nonexistence_error(const std::string& what) : std::runtime_error(what) {}
};

// Nonlinear construction from a Chebyshev series of the target.
// Auxiliary quantities gamma_0..gamma_m solve
//   sum_{j=0}^m gamma_j c_{|k-j|} = 0,  k = n+1..n+m,  gamma_0 = 1;
// the denominator is the "autocorrelation"
//   b_j = mu * sum_{i=0}^{m-j} gamma_i gamma_{i+j},
// with mu fixed so that b_0 = 2, and the numerator follows from the
// same product formula as the cross method.  Needs c_0..c_{n+m}.
template <class Real>
struct NonlinearPCProblem {
    ChebyshevSeries<Real> c;  // halved-first coefficients of the (reduced) target
    std::size_t n = 0, m = 0;
};

template <class Real>
struct GammaSolution {
    std::vector<Real> gamma;  // gamma_0 = 1 included
    Real mu{};
};

namespace detail {

template <class Real>
const std::vector<Real>& checked_series_nl(const NonlinearPCProblem<Real>& prob) {
    if (!prob.c.halved_first)
        throw std::invalid_argument("nonlinear construction expects halved-first coefficients");
    if (prob.c.coeffs.size() < prob.n + prob.m + 1)
        throw std::invalid_argument("nonlinear construction needs series coefficients up to n+m");
    return prob.c.coeffs;
}

}  // namespace detail

// The square m-system for gamma_1..gamma_m (gamma_0 = 1 moved to the
// right-hand side):  sum_{j=1}^m gamma_j c_{|k-j|} = -c_k.
template <class Real>
std::pair<DenseMatrix<Real>, std::vector<Real>> gamma_system(const NonlinearPCProblem<Real>& prob) {
    const std::vector<Real>& c = detail::checked_series_nl(prob);
    const std::size_t n = prob.n, m = prob.m;
    DenseMatrix<Real> a(m, m);
    std::vector<Real> h(m);
    for (std::size_t row = 0; row < m; ++row) {
        const std::size_t k = n + 1 + row;
        for (std::size_t j = 1; j <= m; ++j) {
            const std::size_t lo = k > j ? k - j : j - k;
            a(row, j - 1) = c[lo];
        }
        h[row] = -c[k];
    }
    return {std::move(a), std::move(h)};
}

// b_j from gamma, with mu chosen so that b_0 = 2.
template <class Real>
std::vector<Real> denominator_from_gamma(const std::vector<Real>& gamma) {
    const std::size_t m = gamma.size() - 1;
    Real sumsq = Real(0);
    for (const Real& g : gamma) sumsq += g * g;
    if (sumsq == Real(0)) throw nonlinear_nonexistence_error("nonlinear construction: zero gamma");
    const Real mu = Real(2) / sumsq;
    std::vector<Real> b(m + 1, Real(0));
    for (std::size_t j = 0; j <= m; ++j) {
        Real acc = Real(0);
        for (std::size_t i = 0; i + j <= m; ++i) acc += gamma[i] * gamma[i + j];
        b[j] = mu * acc;
    }
    return b;
}

template <class Real>
struct NonlinearConstructResult {
    RationalApproximant<Real> approximant;
    GammaSolution<Real> gamma;
    SolveReport<Real> report;  // of the gamma system (trivial when m = 0)
};

template <class Real>
NonlinearConstructResult<Real> construct_nonlinear(const NonlinearPCProblem<Real>& prob,
                                                   Parity parity = Parity::general,
                                                   const Real& seg_a = Real(-1),
                                                   const Real& seg_b = Real(1),
                                                   const SolveOptions& opts = {}) {
    const std::vector<Real>& c = detail::checked_series_nl(prob);
    NonlinearConstructResult<Real> out;
    out.gamma.gamma.assign(1, Real(1));
    if (prob.m > 0) {
        auto [a, h] = gamma_system(prob);
        try {
            out.report = solve(a, h, opts);
        } catch (const std::runtime_error& e) {
            throw nonlinear_nonexistence_error(
                std::string("nonlinear construction does not exist for these degrees: ") +
                e.what());
        }
        out.gamma.gamma.insert(out.gamma.gamma.end(), out.report.solution.begin(),
                               out.report.solution.end());
    } else {
        out.report.solution = {};
        out.report.residual_norm = Real(0);
        out.report.condition = Real(1);
    }
    RationalApproximant<Real>& r = out.approximant;
    r.denom = denominator_from_gamma(out.gamma.gamma);
    {
        Real sumsq = Real(0);
        for (const Real& g : out.gamma.gamma) sumsq += g * g;
        out.gamma.mu = Real(2) / sumsq;
    }
    r.numer = numerator_from_series(c, r.denom, prob.n);
    r.basis = Basis::chebyshev;
    r.parity = parity;
    r.seg_a = seg_a;
    r.seg_b = seg_b;
    return out;
}

}  // namespace pcheb
