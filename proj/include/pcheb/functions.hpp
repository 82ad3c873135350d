#pragma once

#include "pcheb/poly.hpp"
#include "pcheb/rational.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcheb {

// A catalog test function: precision-aware evaluator, default segment,
// parity metadata, optional Taylor coefficient provider at 0, and the
// analytic limit of f(x)/x at 0 for odd entries.
template <class Real>
struct CatalogEntry {
    std::string name;
    std::function<Real(const Real&)> eval;
    Real seg_a{}, seg_b{};
    Parity parity = Parity::general;
    std::function<std::vector<Real>(std::size_t)> taylor;  // coeffs 0..N, or empty
    std::optional<Real> div_x_limit;
};

namespace detail {

// Coefficients of tan z via the recurrence from y' = 1 + y^2:
// (k+1) c_{k+1} = sum_{i+j=k} c_i c_j, with c_1 = 1.
template <class Real>
std::vector<Real> tangent_coeffs(std::size_t N) {
    std::vector<Real> c(N + 1, Real(0));
    if (N >= 1) c[1] = Real(1);
    for (std::size_t k = 3; k <= N; ++k) {
        if (k % 2 == 0) continue;  // tan is odd
        Real conv = Real(0);
        for (std::size_t i = 0; i <= k - 1; ++i) conv += c[i] * c[k - 1 - i];
        c[k] = conv / Real(static_cast<long>(k));
    }
    return c;
}

template <class Real>
std::vector<Real> scaled_coeffs(const std::vector<Real>& c, const Real& alpha) {
    std::vector<Real> out(c.size());
    Real p = Real(1);
    for (std::size_t k = 0; k < c.size(); ++k) {
        out[k] = c[k] * p;
        p *= alpha;
    }
    return out;
}

}  // namespace detail

template <class Real>
std::vector<std::string> catalog_names() {
    return {"const_one", "exp", "sqrt", "cos_pi4", "sin_pi4", "sin_pi2", "tan_pi4", "arctan"};
}

template <class Real>
CatalogEntry<Real> lookup(const std::string& name) {
    using std::atan;
    using std::cos;
    using std::exp;
    using std::sin;
    using std::sqrt;
    using std::tan;

    const Real quarter_pi = pi<Real>() / 4;
    const Real half_pi = pi<Real>() / 2;

    CatalogEntry<Real> e;
    e.name = name;
    e.seg_a = Real(-1);
    e.seg_b = Real(1);

    if (name == "const_one") {
        e.eval = [](const Real&) { return Real(1); };
        e.parity = Parity::general;
        e.taylor = [](std::size_t N) {
            std::vector<Real> c(N + 1, Real(0));
            c[0] = Real(1);
            return c;
        };
    } else if (name == "exp") {
        e.eval = [](const Real& x) { return exp(x); };
        e.parity = Parity::general;
        e.taylor = [](std::size_t N) {
            std::vector<Real> c(N + 1);
            c[0] = Real(1);
            for (std::size_t k = 1; k <= N; ++k) c[k] = c[k - 1] / Real(static_cast<long>(k));
            return c;
        };
    } else if (name == "sqrt") {
        e.eval = [](const Real& x) { return sqrt(x); };
        e.seg_a = Real(1) / 2;
        e.seg_b = Real(1);
        e.parity = Parity::general;
        // no Taylor provider at 0
    } else if (name == "cos_pi4") {
        e.eval = [quarter_pi](const Real& x) { return cos(quarter_pi * x); };
        e.parity = Parity::even;
        e.taylor = [quarter_pi](std::size_t N) {
            std::vector<Real> c(N + 1, Real(0));
            Real term = Real(1);  // alpha^{2j} / (2j)!
            for (std::size_t j = 0; 2 * j <= N; ++j) {
                c[2 * j] = (j % 2 == 0) ? term : -term;
                term *= quarter_pi * quarter_pi /
                        Real(static_cast<long>((2 * j + 1) * (2 * j + 2)));
            }
            return c;
        };
    } else if (name == "sin_pi4" || name == "sin_pi2") {
        const Real alpha = (name == "sin_pi4") ? quarter_pi : half_pi;
        e.eval = [alpha](const Real& x) { return sin(alpha * x); };
        e.parity = Parity::odd;
        e.div_x_limit = alpha;
        e.taylor = [alpha](std::size_t N) {
            std::vector<Real> c(N + 1, Real(0));
            Real term = alpha;  // alpha^{2j+1} / (2j+1)!
            for (std::size_t j = 0; 2 * j + 1 <= N; ++j) {
                c[2 * j + 1] = (j % 2 == 0) ? term : -term;
                term *= alpha * alpha / Real(static_cast<long>((2 * j + 2) * (2 * j + 3)));
            }
            return c;
        };
    } else if (name == "tan_pi4") {
        e.eval = [quarter_pi](const Real& x) { return tan(quarter_pi * x); };
        e.parity = Parity::odd;
        e.div_x_limit = quarter_pi;
        e.taylor = [quarter_pi](std::size_t N) {
            return detail::scaled_coeffs(detail::tangent_coeffs<Real>(N), quarter_pi);
        };
    } else if (name == "arctan") {
        e.eval = [](const Real& x) { return atan(x); };
        e.parity = Parity::odd;
        e.div_x_limit = Real(1);
        e.taylor = [](std::size_t N) {
            std::vector<Real> c(N + 1, Real(0));
            for (std::size_t j = 0; 2 * j + 1 <= N; ++j) {
                Real v = Real(1) / Real(static_cast<long>(2 * j + 1));
                c[2 * j + 1] = (j % 2 == 0) ? v : -v;
            }
            return c;
        };
    } else {
        std::string msg = "unknown function '" + name + "'; available:";
        for (const std::string& s : catalog_names<Real>()) msg += " " + s;
        throw std::invalid_argument(msg);
    }
    return e;
}

template <class Real>
MonomialPoly<Real> taylor_coeffs(const CatalogEntry<Real>& entry, std::size_t N) {
    if (!entry.taylor)
        throw std::invalid_argument("function '" + entry.name + "' has no Taylor provider at 0");
    return MonomialPoly<Real>(entry.taylor(N));
}

}  // namespace pcheb
