#pragma once

#include "pcheb/diagnostics.hpp"
#include "pcheb/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pcheb {

// Partials of R = sum a_i phi_i / sum b_j psi_j with respect to the
// coefficients, at fixed x:
//   dR/da_i =  phi_i / Q,     dR/db_j = -P psi_j / Q^2.
template <class Real>
struct CoeffGradient {
    std::vector<Real> da;  // dR/da_i
    std::vector<Real> db;  // dR/db_j
};

template <class Real>
CoeffGradient<Real> gradient_wrt_coeffs(const RationalApproximant<Real>& r, const Real& x) {
    auto [p, q] = numer_denom_values(r, x);
    if (q == Real(0)) throw denominator_zero_error(to_decimal_string(x));
    auto [phi, psi] = basis_values(r, x);
    CoeffGradient<Real> g;
    g.da.resize(phi.size());
    g.db.resize(psi.size());
    for (std::size_t i = 0; i < phi.size(); ++i) g.da[i] = phi[i] / q;
    for (std::size_t j = 0; j < psi.size(); ++j) g.db[j] = -p * psi[j] / (q * q);
    return g;
}

namespace detail {

template <class Real>
void check_error_sizes(const RationalApproximant<Real>& r, const std::vector<Real>& da,
                       const std::vector<Real>& db) {
    if (da.size() != r.numer.size() || db.size() != r.denom.size())
        throw std::invalid_argument("coefficient-error vectors do not match the approximant");
}

}  // namespace detail

// Interval-style first-order bound: sum |dR/da_i| |da_i| + sum |dR/db_j| |db_j|.
// The tightest estimate any sign-blind (interval) propagation can give.
template <class Real>
Real naive_bound(const RationalApproximant<Real>& r, const std::vector<Real>& abs_da,
                 const std::vector<Real>& abs_db, const Real& x) {
    detail::check_error_sizes(r, abs_da, abs_db);
    CoeffGradient<Real> g = gradient_wrt_coeffs(r, x);
    Real acc = Real(0);
    for (std::size_t i = 0; i < abs_da.size(); ++i) acc += abs_val(g.da[i]) * abs_val(abs_da[i]);
    for (std::size_t j = 0; j < abs_db.size(); ++j) acc += abs_val(g.db[j]) * abs_val(abs_db[j]);
    return acc;
}

// The signed first-order sum; under autocorrection the error vector is
// nearly orthogonal to the gradient, so this is far below naive_bound.
template <class Real>
Real autocorrection_residual(const RationalApproximant<Real>& r, const std::vector<Real>& da,
                             const std::vector<Real>& db, const Real& x) {
    detail::check_error_sizes(r, da, db);
    CoeffGradient<Real> g = gradient_wrt_coeffs(r, x);
    Real acc = Real(0);
    for (std::size_t i = 0; i < da.size(); ++i) acc += g.da[i] * da[i];
    for (std::size_t j = 0; j < db.size(); ++j) acc += g.db[j] * db[j];
    return acc;
}

template <class Real>
struct IntervalEstimateReport {
    Real x{};
    Real naive{};           // sign-blind bound
    Real measured_delta{};  // Rtilde(x) - R(x), directly evaluated
    Real residual{};        // signed first-order sum
    std::optional<Real> pessimism_ratio;  // naive / |measured_delta|
    bool ratio_is_lower_bound = false;    // measured_delta below round-off floor
    CoeffGradient<Real> gradient;
};

template <class Real>
struct PessimismProfile {
    std::vector<IntervalEstimateReport<Real>> points;
    // summary over the defined (or lower-bound) ratios
    Real min_ratio{}, median_ratio{}, max_ratio{};
    std::size_t ratio_count = 0;
    bool all_errors_zero = false;  // "exact" marker: no coefficient errors at all
};

// Per-point comparison of the interval bound with the actual error of
// the pair (R, Rtilde) sharing one shape; grid points inside excluded
// zones or with vanishing denominators are dropped.
template <class Real>
PessimismProfile<Real> pessimism_profile(const RationalApproximant<Real>& r,
                                         const RationalApproximant<Real>& r_tilde,
                                         std::size_t grid = 100,
                                         const std::vector<ExcludedZone<Real>>& excluded = {}) {
    if (r.basis != r_tilde.basis || r.parity != r_tilde.parity ||
        r.numer.size() != r_tilde.numer.size() || r.denom.size() != r_tilde.denom.size() ||
        r.seg_a != r_tilde.seg_a || r.seg_b != r_tilde.seg_b)
        throw std::invalid_argument("pessimism_profile: approximants do not share a shape");
    std::vector<Real> da(r.numer.size()), db(r.denom.size());
    bool any = false;
    for (std::size_t i = 0; i < da.size(); ++i) {
        da[i] = r_tilde.numer[i] - r.numer[i];
        any = any || da[i] != Real(0);
    }
    for (std::size_t j = 0; j < db.size(); ++j) {
        db[j] = r_tilde.denom[j] - r.denom[j];
        any = any || db[j] != Real(0);
    }

    PessimismProfile<Real> prof;
    prof.all_errors_zero = !any;
    const Real step = (r.seg_b - r.seg_a) / Real(static_cast<long>(grid + 1));
    std::vector<Real> ratios;
    for (std::size_t i = 1; i <= grid; ++i) {
        const Real x = r.seg_a + step * Real(static_cast<long>(i));
        bool skip = false;
        for (const ExcludedZone<Real>& z : excluded)
            if (z.contains(x)) skip = true;
        if (skip) continue;
        auto [p, q] = numer_denom_values(r, x);
        auto [pt, qt] = numer_denom_values(r_tilde, x);
        if (q == Real(0) || qt == Real(0)) continue;

        IntervalEstimateReport<Real> rep;
        rep.x = x;
        rep.gradient = gradient_wrt_coeffs(r, x);
        rep.naive = Real(0);
        rep.residual = Real(0);
        for (std::size_t k = 0; k < da.size(); ++k) {
            rep.naive += abs_val(rep.gradient.da[k]) * abs_val(da[k]);
            rep.residual += rep.gradient.da[k] * da[k];
        }
        for (std::size_t k = 0; k < db.size(); ++k) {
            rep.naive += abs_val(rep.gradient.db[k]) * abs_val(db[k]);
            rep.residual += rep.gradient.db[k] * db[k];
        }
        rep.measured_delta = pt / qt - p / q;

        if (!prof.all_errors_zero) {
            const Real floor = Real(10) * eps<Real>() * abs_val(Real(p / q));
            if (abs_val(rep.measured_delta) > floor) {
                rep.pessimism_ratio = rep.naive / abs_val(rep.measured_delta);
            } else if (floor > Real(0)) {
                rep.pessimism_ratio = rep.naive / floor;
                rep.ratio_is_lower_bound = true;
            }
            if (rep.pessimism_ratio) ratios.push_back(*rep.pessimism_ratio);
        }
        prof.points.push_back(std::move(rep));
    }
    if (!ratios.empty()) {
        std::sort(ratios.begin(), ratios.end());
        prof.ratio_count = ratios.size();
        prof.min_ratio = ratios.front();
        prof.max_ratio = ratios.back();
        prof.median_ratio = ratios[ratios.size() / 2];
    }
    return prof;
}

}  // namespace pcheb
