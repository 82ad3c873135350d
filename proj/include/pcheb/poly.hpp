#pragma once

#include "pcheb/real.hpp"

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace pcheb {

// Dense polynomial in the monomial basis, coefficients p_0..p_d.
// Trailing zeros are kept; degree() is length-1 by convention.
template <class Real>
struct MonomialPoly {
    std::vector<Real> coeffs;

    MonomialPoly() = default;
    explicit MonomialPoly(std::vector<Real> c) : coeffs(std::move(c)) {}

    std::size_t degree() const {
        if (coeffs.empty()) throw std::invalid_argument("empty polynomial has no degree");
        return coeffs.size() - 1;
    }

    // Horner evaluation. An empty polynomial is an error, not zero.
    Real operator()(const Real& x) const {
        if (coeffs.empty()) throw std::invalid_argument("evaluating empty polynomial");
        Real acc = coeffs.back();
        for (std::size_t i = coeffs.size() - 1; i-- > 0;) acc = acc * x + coeffs[i];
        return acc;
    }
};

// Truncated Chebyshev expansion c_0..c_N on [-1,1].  With halved_first
// set, the value is (1/2)c_0 + sum_{i>=1} c_i T_i(x); otherwise the
// first term enters with full weight.
template <class Real>
struct ChebyshevSeries {
    std::vector<Real> coeffs;
    bool halved_first = false;

    ChebyshevSeries() = default;
    ChebyshevSeries(std::vector<Real> c, bool halved) : coeffs(std::move(c)), halved_first(halved) {}

    std::size_t max_index() const {
        if (coeffs.empty()) throw std::invalid_argument("empty series");
        return coeffs.size() - 1;
    }

    // Clenshaw evaluation.
    Real operator()(const Real& x) const {
        if (coeffs.empty()) throw std::invalid_argument("evaluating empty series");
        Real b1 = Real(0), b2 = Real(0);
        const Real two_x = Real(2) * x;
        for (std::size_t i = coeffs.size(); i-- > 1;) {
            Real b0 = coeffs[i] + two_x * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        Real c0 = halved_first ? coeffs[0] / 2 : coeffs[0];
        return c0 + x * b1 - b2;
    }

    // Same coefficients re-expressed in the other first-term convention.
    ChebyshevSeries with_halved_first(bool halved) const {
        ChebyshevSeries out = *this;
        if (halved == halved_first) return out;
        if (halved)
            out.coeffs[0] = coeffs[0] * 2;
        else
            out.coeffs[0] = coeffs[0] / 2;
        out.halved_first = halved;
        return out;
    }
};

// Gauss-Chebyshev rule: s nodes cos((2i-1)pi/2s), common weight pi/s.
// Exact for polynomials of degree <= 2s-1 against w(x)=1/sqrt(1-x^2).
template <class Real>
struct QuadratureRule {
    std::size_t s = 0;
    std::vector<Real> nodes;
    Real weight{};

    explicit QuadratureRule(std::size_t node_count) : s(node_count) {
        if (s == 0) throw std::invalid_argument("quadrature rule needs at least one node");
        const Real p = pi<Real>();
        weight = p / Real(static_cast<long>(s));
        nodes.reserve(s);
        using std::cos;
        for (std::size_t i = 1; i <= s; ++i) {
            nodes.push_back(cos(Real(2 * static_cast<long>(i) - 1) * p / Real(2 * static_cast<long>(s))));
        }
    }
};

// Default node count for a construction with m+n+1 orthogonality rows.
inline std::size_t default_node_count(std::size_t m, std::size_t n) {
    return 8 * (m + n + 1) + 64;
}

// T_k(x) by the three-term recurrence.  Requires |x| <= 1.
template <class Real>
Real cheb_eval(std::size_t k, const Real& x) {
    if (abs_val(x) > Real(1)) throw std::domain_error("cheb_eval: |x| > 1");
    if (k == 0) return Real(1);
    Real tkm1 = Real(1), tk = x;
    const Real two_x = Real(2) * x;
    for (std::size_t i = 1; i < k; ++i) {
        Real tkp1 = two_x * tk - tkm1;
        tkm1 = tk;
        tk = tkp1;
    }
    return tk;
}

// T_i*T_j = (1/2)[T_{i+j} + T_{|i-j|}] as a (sparse) series.
template <class Real>
ChebyshevSeries<Real> cheb_product(std::size_t i, std::size_t j) {
    std::vector<Real> c(i + j + 1, Real(0));
    const std::size_t lo = i > j ? i - j : j - i;
    c[i + j] += Real(1) / 2;
    c[lo] += Real(1) / 2;
    return ChebyshevSeries<Real>(std::move(c), false);
}

// (pi/s) * sum f(node_i): approximates the integral of f against w.
template <class Real>
Real quadrature(const std::function<Real(const Real&)>& f, const QuadratureRule<Real>& rule) {
    Real acc = Real(0);
    for (const Real& x : rule.nodes) acc += f(x);
    return rule.weight * acc;
}

// Fourier-Chebyshev coefficients c_k = (2/pi) int f T_k w, k=0..N,
// via the shared rule; the result uses the halved-first convention.
template <class Real>
ChebyshevSeries<Real> fourier_chebyshev_coeffs(const std::function<Real(const Real&)>& f,
                                               std::size_t N,
                                               const QuadratureRule<Real>& rule) {
    if (rule.s <= N) throw std::invalid_argument("rule too coarse for requested coefficient count");
    std::vector<Real> fvals;
    fvals.reserve(rule.s);
    for (const Real& x : rule.nodes) fvals.push_back(f(x));

    // T_k at all nodes by simultaneous recurrence: tk holds T_k.
    std::vector<Real> tkm1(rule.s, Real(1));
    std::vector<Real> tk(rule.nodes);
    std::vector<Real> c(N + 1, Real(0));
    const Real scale = Real(2) / Real(static_cast<long>(rule.s));
    for (std::size_t k = 0; k <= N; ++k) {
        Real acc = Real(0);
        if (k == 0) {
            for (std::size_t i = 0; i < rule.s; ++i) acc += fvals[i];
        } else {
            for (std::size_t i = 0; i < rule.s; ++i) acc += fvals[i] * tk[i];
            if (k < N) {
                for (std::size_t i = 0; i < rule.s; ++i) {
                    Real next = Real(2) * rule.nodes[i] * tk[i] - tkm1[i];
                    tkm1[i] = tk[i];
                    tk[i] = next;
                }
            }
        }
        c[k] = scale * acc;
    }
    return ChebyshevSeries<Real>(std::move(c), true);
}

// Exact basis change, monomial -> Chebyshev (plain convention).
template <class Real>
ChebyshevSeries<Real> monomial_to_cheb(const MonomialPoly<Real>& p) {
    if (p.coeffs.empty()) return ChebyshevSeries<Real>({}, false);
    // Build up by Horner on the series: acc = acc*x + p_k, with
    // x*T_j = (T_{j+1} + T_{|j-1|})/2.
    std::vector<Real> acc;  // plain-convention coefficients
    for (std::size_t k = p.coeffs.size(); k-- > 0;) {
        std::vector<Real> next(acc.size() + 1, Real(0));
        for (std::size_t j = 0; j < acc.size(); ++j) {
            if (j == 0) {
                next[1] += acc[0];
            } else {
                const Real half = acc[j] / 2;
                next[j + 1] += half;
                next[j - 1] += half;
            }
        }
        next[0] += p.coeffs[k];
        acc = std::move(next);
    }
    return ChebyshevSeries<Real>(std::move(acc), false);
}

// Exact basis change, Chebyshev -> monomial.
template <class Real>
MonomialPoly<Real> cheb_to_monomial(const ChebyshevSeries<Real>& s) {
    ChebyshevSeries<Real> plain = s.with_halved_first(false);
    const std::size_t n = plain.coeffs.size();
    if (n == 0) return MonomialPoly<Real>(std::vector<Real>{});
    // T_k in monomial form by recurrence, accumulated with weights.
    std::vector<Real> out(n, Real(0));
    std::vector<Real> tkm1{Real(1)};          // T_0
    std::vector<Real> tk{Real(0), Real(1)};   // T_1
    out[0] += plain.coeffs[0];
    if (n > 1) {
        for (std::size_t j = 0; j < tk.size(); ++j) out[j] += plain.coeffs[1] * tk[j];
    }
    for (std::size_t k = 2; k < n; ++k) {
        std::vector<Real> tkp1(k + 1, Real(0));
        for (std::size_t j = 0; j < tk.size(); ++j) tkp1[j + 1] += Real(2) * tk[j];
        for (std::size_t j = 0; j < tkm1.size(); ++j) tkp1[j] -= tkm1[j];
        for (std::size_t j = 0; j < tkp1.size(); ++j) out[j] += plain.coeffs[k] * tkp1[j];
        tkm1 = std::move(tk);
        tk = std::move(tkp1);
    }
    return MonomialPoly<Real>(std::move(out));
}

// Truncated-Taylor -> Chebyshev economization: exact basis change, then
// truncation of the Chebyshev tail to index target_N.
template <class Real>
ChebyshevSeries<Real> economize_taylor(const MonomialPoly<Real>& taylor, std::size_t target_N) {
    if (taylor.coeffs.empty()) throw std::invalid_argument("economize_taylor: empty input");
    if (target_N > taylor.degree())
        throw std::invalid_argument("economize_taylor: target index exceeds input degree");
    ChebyshevSeries<Real> full = monomial_to_cheb(taylor);
    full.coeffs.resize(target_N + 1);
    return full.with_halved_first(true);
}

}  // namespace pcheb
