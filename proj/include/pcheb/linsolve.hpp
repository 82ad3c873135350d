#pragma once

#include "pcheb/real.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace pcheb {

template <class Real>
struct DenseMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Real> entries;  // row-major

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c, Real(0)) {}

    Real& operator()(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
    const Real& operator()(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Real(1);
        return m;
    }
};

// One-norm of a vector.
template <class Real>
Real vector_norm(const std::vector<Real>& y) {
    if (y.empty()) throw std::invalid_argument("vector_norm: empty vector");
    Real acc = Real(0);
    for (const Real& v : y) acc += abs_val(v);
    return acc;
}

// Induced norm of the one-norm: maximum column absolute sum.
template <class Real>
Real matrix_norm(const DenseMatrix<Real>& a) {
    if (a.rows == 0 || a.cols == 0) throw std::invalid_argument("matrix_norm: empty matrix");
    Real best = Real(0);
    for (std::size_t j = 0; j < a.cols; ++j) {
        Real col = Real(0);
        for (std::size_t i = 0; i < a.rows; ++i) col += abs_val(a(i, j));
        if (col > best) best = col;
    }
    return best;
}

template <class Real>
struct SolveReport {
    std::vector<Real> solution;
    Real residual_norm{};
    std::optional<Real> condition;   // cond(A) in the one-norm, when computed
    bool condition_reliable = true;  // false when the inversion solves had large residuals
};

namespace detail {

// LU factorization with partial (row) pivoting, in place.
// Returns the permutation; throws on an exactly singular column.
template <class Real>
std::vector<std::size_t> lu_factor(DenseMatrix<Real>& a) {
    const std::size_t n = a.rows;
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        Real best = abs_val(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            Real v = abs_val(a(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best == Real(0)) throw std::runtime_error("singular system: zero pivot column");
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            std::swap(perm[k], perm[piv]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            Real factor = a(i, k) / a(k, k);
            a(i, k) = factor;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= factor * a(k, j);
        }
    }
    return perm;
}

template <class Real>
std::vector<Real> lu_solve(const DenseMatrix<Real>& lu, const std::vector<std::size_t>& perm,
                           const std::vector<Real>& h) {
    const std::size_t n = lu.rows;
    std::vector<Real> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = h[perm[i]];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) y[i] -= lu(i, j) * y[j];
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t j = i + 1; j < n; ++j) y[i] -= lu(i, j) * y[j];
        y[i] /= lu(i, i);
    }
    return y;
}

template <class Real>
std::vector<Real> mat_vec(const DenseMatrix<Real>& a, const std::vector<Real>& y) {
    std::vector<Real> r(a.rows, Real(0));
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) r[i] += a(i, j) * y[j];
    return r;
}

}  // namespace detail

struct SolveOptions {
    bool with_condition = true;
};

// cond(A) = ||A|| * ||A^{-1}||, the inverse obtained column by column
// from unit right-hand sides.  Returns nullopt when inversion breaks
// down; *reliable is cleared when the inversion residuals are large
// (computing the condition number of an ill-conditioned matrix is
// itself ill-conditioned).
template <class Real>
std::optional<Real> condition_number(const DenseMatrix<Real>& a, bool* reliable = nullptr) {
    if (a.rows != a.cols || a.rows == 0) throw std::invalid_argument("condition_number: not square");
    const std::size_t n = a.rows;
    DenseMatrix<Real> lu = a;
    std::vector<std::size_t> perm;
    try {
        perm = detail::lu_factor(lu);
    } catch (const std::runtime_error&) {
        return std::nullopt;
    }
    DenseMatrix<Real> inv(n, n);
    bool ok = true;
    const Real norm_a = matrix_norm(a);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Real> e(n, Real(0));
        e[j] = Real(1);
        std::vector<Real> col = detail::lu_solve(lu, perm, e);
        std::vector<Real> r = detail::mat_vec(a, col);
        r[j] -= Real(1);
        if (vector_norm(r) > Real(1000) * eps<Real>() * Real(static_cast<long>(n)) * norm_a *
                                 (Real(1) + vector_norm(col)))
            ok = false;
        for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
    }
    if (reliable) *reliable = ok;
    return norm_a * matrix_norm(inv);
}

// Gaussian elimination with partial pivoting at the active precision.
template <class Real>
SolveReport<Real> solve(const DenseMatrix<Real>& a, const std::vector<Real>& h,
                        const SolveOptions& opts = {}) {
    if (a.rows != a.cols) throw std::invalid_argument("solve: matrix not square");
    if (a.rows != h.size()) throw std::invalid_argument("solve: dimension mismatch");
    DenseMatrix<Real> lu = a;
    std::vector<std::size_t> perm = detail::lu_factor(lu);
    SolveReport<Real> rep;
    rep.solution = detail::lu_solve(lu, perm, h);
    std::vector<Real> r = detail::mat_vec(a, rep.solution);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= h[i];
    rep.residual_norm = vector_norm(r);
    if (opts.with_condition) {
        bool reliable = true;
        rep.condition = condition_number(a, &reliable);
        rep.condition_reliable = reliable;
    }
    return rep;
}

}  // namespace pcheb
