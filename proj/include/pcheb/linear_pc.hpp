#pragma once

#include "pcheb/linsolve.hpp"
#include "pcheb/poly.hpp"
#include "pcheb/rational.hpp"
#include "pcheb/target.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pcheb {

// Linear construction: the orthogonality conditions
//   int (f Q - P) T_k w = 0,  k = 0..m+n,
// in the reduced variable, closed by one normalization row.  General
// parity works in t with the monomial basis t^i; even/odd parity works
// in u = 2t^2-1 with the basis ((1+u)/2)^i = w^i, so the solved
// coefficients are monomial in w.
template <class Real>
struct LinearPCProblem {
    ApproxTarget<Real> target;
    std::size_t n = 0, m = 0;
    NormalizationCondition normalization = NormalizationCondition::b0();
    std::optional<std::size_t> node_count;  // default: default_node_count(m, n)

    std::size_t nodes() const { return node_count ? *node_count : default_node_count(m, n); }
};

template <class Real>
struct LinearConstructResult {
    RationalApproximant<Real> approximant;
    SolveReport<Real> report;
};

namespace detail {

// The m+n+1 homogeneous orthogonality rows over unknowns
// (a_0..a_n, b_0..b_m): row k has entries -int(phi_i T_k w) for a_i and
// +int(psi_j T_k g w) for b_j.
template <class Real>
DenseMatrix<Real> orthogonality_rows(const LinearPCProblem<Real>& prob,
                                     const QuadratureRule<Real>& rule) {
    const std::size_t n = prob.n, m = prob.m;
    const std::size_t deg = std::max(n, m);
    const bool reduced = prob.target.parity != Parity::general;
    if (reduced) prob.target.require_symmetric();

    // g and the basis powers at the nodes (of t, or of u).
    std::vector<Real> g(rule.s);
    std::vector<std::vector<Real>> pw(deg + 1, std::vector<Real>(rule.s));
    for (std::size_t i = 0; i < rule.s; ++i) {
        const Real& v = rule.nodes[i];
        g[i] = reduced ? prob.target.reduced_u(v) : prob.target.reduced_t(v);
        const Real base = reduced ? (Real(1) + v) / 2 : v;
        Real p = Real(1);
        for (std::size_t d = 0; d <= deg; ++d) {
            pw[d][i] = p;
            p *= base;
        }
    }

    DenseMatrix<Real> rows(m + n + 1, m + n + 2);
    std::vector<Real> tkm1(rule.s, Real(1));
    std::vector<Real> tk(rule.nodes);
    for (std::size_t k = 0; k <= m + n; ++k) {
        const std::vector<Real>& T = (k == 0) ? tkm1 : tk;
        for (std::size_t col = 0; col <= n; ++col) {
            Real acc = Real(0);
            for (std::size_t i = 0; i < rule.s; ++i) acc += pw[col][i] * T[i];
            rows(k, col) = -rule.weight * acc;
        }
        for (std::size_t col = 0; col <= m; ++col) {
            Real acc = Real(0);
            for (std::size_t i = 0; i < rule.s; ++i) acc += pw[col][i] * T[i] * g[i];
            rows(k, n + 1 + col) = rule.weight * acc;
        }
        if (k >= 1 && k < m + n) {
            for (std::size_t i = 0; i < rule.s; ++i) {
                Real next = Real(2) * rule.nodes[i] * tk[i] - tkm1[i];
                tkm1[i] = tk[i];
                tk[i] = next;
            }
        }
    }
    return rows;
}

}  // namespace detail

// Append the normalization row, producing the square system A y = h with
// h = (0,...,0,1) and unknowns y = (a_0..a_n, b_0..b_m).
template <class Real>
std::pair<DenseMatrix<Real>, std::vector<Real>> apply_normalization(
    const DenseMatrix<Real>& rows, const NormalizationCondition& cond, std::size_t n,
    std::size_t m) {
    if (rows.cols != m + n + 2 || rows.rows + 1 != rows.cols)
        throw std::invalid_argument("apply_normalization: unexpected system shape");
    DenseMatrix<Real> a(rows.rows + 1, rows.cols);
    for (std::size_t i = 0; i < rows.rows; ++i)
        for (std::size_t j = 0; j < rows.cols; ++j) a(i, j) = rows(i, j);
    auto [lambda, mu] = cond.template expand<Real>(n, m);
    for (std::size_t i = 0; i <= n; ++i) a(rows.rows, i) = lambda[i];
    for (std::size_t j = 0; j <= m; ++j) a(rows.rows, n + 1 + j) = mu[j];
    std::vector<Real> h(rows.rows + 1, Real(0));
    h.back() = Real(1);
    return {std::move(a), std::move(h)};
}

template <class Real>
std::pair<DenseMatrix<Real>, std::vector<Real>> build_system(const LinearPCProblem<Real>& prob) {
    QuadratureRule<Real> rule(prob.nodes());
    return apply_normalization(detail::orthogonality_rows(prob, rule), prob.normalization, prob.n,
                               prob.m);
}

template <class Real>
LinearConstructResult<Real> construct_linear(const LinearPCProblem<Real>& prob,
                                             const SolveOptions& opts = {}) {
    auto [a, h] = build_system(prob);
    LinearConstructResult<Real> out;
    try {
        out.report = solve(a, h, opts);
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(std::string(e.what()) +
                                 " (the normalization may be incompatible; try another condition)");
    }
    RationalApproximant<Real>& r = out.approximant;
    r.numer.assign(out.report.solution.begin(), out.report.solution.begin() + prob.n + 1);
    r.denom.assign(out.report.solution.begin() + prob.n + 1, out.report.solution.end());
    r.basis = Basis::monomial;
    r.parity = prob.target.parity;
    r.seg_a = prob.target.seg_a;
    r.seg_b = prob.target.seg_b;
    return out;
}

// Residual functionals int (g Q - P) T_k w, k = 0..k_max, in the
// reduced variable, measured with an independent rule.  Near-zero
// values for k <= m+n certify the construction.
template <class Real>
std::vector<Real> orthogonality_residuals(const RationalApproximant<Real>& r,
                                          const ApproxTarget<Real>& target, std::size_t k_max,
                                          const QuadratureRule<Real>& rule) {
    const bool reduced = r.parity != Parity::general;
    std::vector<Real> out(k_max + 1, Real(0));
    std::vector<Real> fvals(rule.s);
    for (std::size_t i = 0; i < rule.s; ++i) {
        const Real& v = rule.nodes[i];
        const Real g = reduced ? target.reduced_u(v) : target.reduced_t(v);
        // coefficient vectors of even/odd monomial forms live in w = (1+u)/2
        const Real arg = (reduced && r.basis == Basis::monomial) ? (Real(1) + v) / 2 : v;
        const Real p = detail::eval_coeffs(r.numer, r.basis, arg);
        const Real q = detail::eval_coeffs(r.denom, r.basis, arg);
        fvals[i] = g * q - p;
    }
    std::vector<Real> tkm1(rule.s, Real(1));
    std::vector<Real> tk(rule.nodes);
    for (std::size_t k = 0; k <= k_max; ++k) {
        const std::vector<Real>& T = (k == 0) ? tkm1 : tk;
        Real acc = Real(0);
        for (std::size_t i = 0; i < rule.s; ++i) acc += fvals[i] * T[i];
        out[k] = rule.weight * acc;
        if (k >= 1 && k < k_max) {
            for (std::size_t i = 0; i < rule.s; ++i) {
                Real next = Real(2) * rule.nodes[i] * tk[i] - tkm1[i];
                tkm1[i] = tk[i];
                tk[i] = next;
            }
        }
    }
    return out;
}

}  // namespace pcheb
