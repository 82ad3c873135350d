#pragma once

#include "pcheb/driver.hpp"
#include "pcheb/rational.hpp"
#include "pcheb/target.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pcheb {

template <class Real>
struct ExcludedZone {
    Real lo{}, hi{};
    bool contains(const Real& x) const { return x >= lo && x <= hi; }
};

// Grid maxima of |f-R| and |(f-R)/f|, the working accuracy notion.
template <class Real>
struct AccuracyReport {
    Real abs_error{};  // max |f - R|
    Real rel_error{};  // max |(f - R)/f| where |f| is not tiny
    std::size_t grid_points = 0;
    std::vector<ExcludedZone<Real>> excluded;
};

template <class Real>
struct MeasureOptions {
    std::size_t grid = 2000;
    std::vector<ExcludedZone<Real>> excluded;
    // points with |f| below this fraction of max|f| are skipped in the
    // relative maximum (odd functions vanish at 0)
    Real rel_threshold = Real(1) / 1000;
};

template <class Real>
AccuracyReport<Real> measure(const std::function<Real(const Real&)>& f,
                             const RationalApproximant<Real>& r,
                             const MeasureOptions<Real>& opts = {}) {
    if (opts.grid < 2) throw std::invalid_argument("measure: grid too small");
    AccuracyReport<Real> rep;
    rep.grid_points = opts.grid;
    rep.excluded = opts.excluded;
    const Real step = (r.seg_b - r.seg_a) / Real(static_cast<long>(opts.grid - 1));

    std::vector<Real> fv(opts.grid), xs(opts.grid);
    std::vector<bool> keep(opts.grid, true);
    Real fmax = Real(0);
    for (std::size_t i = 0; i < opts.grid; ++i) {
        const Real x = (i + 1 == opts.grid) ? r.seg_b : r.seg_a + step * Real(static_cast<long>(i));
        xs[i] = x;
        for (const ExcludedZone<Real>& z : opts.excluded)
            if (z.contains(x)) keep[i] = false;
        if (!keep[i]) continue;
        fv[i] = f(x);
        if (abs_val(fv[i]) > fmax) fmax = abs_val(fv[i]);
    }
    for (std::size_t i = 0; i < opts.grid; ++i) {
        if (!keep[i]) continue;
        auto [p, q] = numer_denom_values(r, xs[i]);
        if (q == Real(0)) {
            // a denominator root on the grid: record and skip the point
            rep.excluded.push_back({xs[i], xs[i]});
            continue;
        }
        const Real d = abs_val(fv[i] - p / q);
        if (d > rep.abs_error) rep.abs_error = d;
        if (abs_val(fv[i]) >= opts.rel_threshold * fmax) {
            const Real rd = d / abs_val(fv[i]);
            if (rd > rep.rel_error) rep.rel_error = rd;
        }
    }
    return rep;
}

// Coefficientwise difference of two constructions of the same problem;
// when the construction is ill-conditioned, this quotient approximates
// f itself.
template <class Real>
struct ErrorApproximant {
    std::vector<Real> dP;  // second.numer - first.numer
    std::vector<Real> dQ;  // second.denom - first.denom
    RationalApproximant<Real> approx;  // dP/dQ with the shared shape
    AccuracyReport<Real> quality;      // dP/dQ measured against f
};

struct error_approximant_undefined : std::runtime_error {
    explicit error_approximant_undefined(const std::string& what) : std::runtime_error(what) {}
};

template <class Real>
struct ErrorApproximantOptions {
    std::size_t grid = 2000;
    // half-width of the zone excluded around each root of dQ, as a
    // fraction of the segment length
    Real zone_halfwidth = Real(1) / 1000;
};

namespace detail {

template <class Real>
Real denom_value(const RationalApproximant<Real>& r, const Real& x) {
    return numer_denom_values(r, x).second;
}

// Roots of the denominator of r on its segment, by sign-change scan
// plus bisection.
template <class Real>
std::vector<Real> denominator_roots(const RationalApproximant<Real>& r, std::size_t scan_points) {
    std::vector<Real> roots;
    const Real step = (r.seg_b - r.seg_a) / Real(static_cast<long>(scan_points - 1));
    Real x_prev = r.seg_a;
    Real q_prev = denom_value(r, x_prev);
    for (std::size_t i = 1; i < scan_points; ++i) {
        const Real x = (i + 1 == scan_points) ? r.seg_b
                                              : r.seg_a + step * Real(static_cast<long>(i));
        const Real q = denom_value(r, x);
        if (q_prev == Real(0)) {
            roots.push_back(x_prev);
        } else if (q != Real(0) && ((q_prev < Real(0)) != (q < Real(0)))) {
            Real lo = x_prev, hi = x, qlo = q_prev;
            for (int it = 0; it < 200; ++it) {
                const Real mid = (lo + hi) / 2;
                const Real qm = denom_value(r, mid);
                if (qm == Real(0)) {
                    lo = hi = mid;
                    break;
                }
                if ((qlo < Real(0)) != (qm < Real(0))) {
                    hi = mid;
                } else {
                    lo = mid;
                    qlo = qm;
                }
            }
            roots.push_back((lo + hi) / 2);
        }
        x_prev = x;
        q_prev = q;
    }
    if (q_prev == Real(0)) roots.push_back(x_prev);
    return roots;
}

}  // namespace detail

template <class Real>
std::vector<ExcludedZone<Real>> denominator_root_zones(const RationalApproximant<Real>& r,
                                                       const Real& halfwidth_rel,
                                                       std::size_t scan_points = 8000) {
    std::vector<ExcludedZone<Real>> zones;
    const Real h = halfwidth_rel * (r.seg_b - r.seg_a);
    for (const Real& x0 : detail::denominator_roots(r, scan_points))
        zones.push_back({x0 - h, x0 + h});
    return zones;
}

template <class Real>
ErrorApproximant<Real> error_approximant(const RationalApproximant<Real>& first,
                                         const RationalApproximant<Real>& second,
                                         const std::function<Real(const Real&)>& f,
                                         const ErrorApproximantOptions<Real>& opts = {}) {
    if (first.basis != second.basis || first.parity != second.parity ||
        first.numer.size() != second.numer.size() || first.denom.size() != second.denom.size() ||
        first.seg_a != second.seg_a || first.seg_b != second.seg_b)
        throw std::invalid_argument("error_approximant: approximants do not share a shape");

    ErrorApproximant<Real> ea;
    ea.dP.resize(first.numer.size());
    ea.dQ.resize(first.denom.size());
    for (std::size_t i = 0; i < ea.dP.size(); ++i) ea.dP[i] = second.numer[i] - first.numer[i];
    for (std::size_t j = 0; j < ea.dQ.size(); ++j) ea.dQ[j] = second.denom[j] - first.denom[j];

    Real dq_max = Real(0), q_max = Real(0);
    for (const Real& v : ea.dQ) dq_max = std::max(dq_max, abs_val(v));
    for (const Real& v : first.denom) q_max = std::max(q_max, abs_val(v));
    if (dq_max <= Real(10) * eps<Real>() * q_max)
        throw error_approximant_undefined(
            "denominator difference is zero to working precision; "
            "the error approximant is not defined");

    ea.approx = first;
    ea.approx.numer = ea.dP;
    ea.approx.denom = ea.dQ;

    MeasureOptions<Real> mopts;
    mopts.grid = opts.grid;
    mopts.excluded = denominator_root_zones(ea.approx, opts.zone_halfwidth);
    ea.quality = measure(f, ea.approx, mopts);
    return ea;
}

// sum(lambda_i dP_i) + sum(mu_j dQ_j): zero (to round-off) whenever both
// sources satisfy the same normalization condition.
template <class Real>
Real normalization_residual(const ErrorApproximant<Real>& ea, const NormalizationCondition& cond) {
    auto [lambda, mu] = cond.template expand<Real>(ea.dP.size() - 1, ea.dQ.size() - 1);
    Real acc = Real(0);
    for (std::size_t i = 0; i < lambda.size(); ++i) acc += lambda[i] * ea.dP[i];
    for (std::size_t j = 0; j < mu.size(); ++j) acc += mu[j] * ea.dQ[j];
    return acc;
}

// Fourier-Chebyshev coefficients of g*dQ - dP in the reduced variable,
// indices 0..n+extra.  A genuine error pair of order n has its first
// n+1 entries suppressed relative to the tail.
template <class Real>
std::vector<Real> verify_theorem(const ErrorApproximant<Real>& ea, const ApproxTarget<Real>& target,
                                 std::size_t n, std::size_t extra = 6,
                                 std::optional<std::size_t> node_count = std::nullopt) {
    const RationalApproximant<Real>& r = ea.approx;
    const bool reduced = r.parity != Parity::general;
    if (reduced) target.require_symmetric();
    const std::size_t count = n + extra;
    const std::size_t s = node_count ? *node_count : std::max<std::size_t>(8 * (count + 1), 256);
    QuadratureRule<Real> rule(s);
    auto F = [&](const Real& v) {
        const Real g = reduced ? target.reduced_u(v) : target.reduced_t(v);
        const Real arg = (reduced && r.basis == Basis::monomial) ? (Real(1) + v) / 2 : v;
        const Real p = detail::eval_coeffs(r.numer, r.basis, arg);
        const Real q = detail::eval_coeffs(r.denom, r.basis, arg);
        return g * q - p;
    };
    ChebyshevSeries<Real> c = fourier_chebyshev_coeffs<Real>(F, count, rule);
    return c.coeffs;
}

// Pointwise terms of the relation
//   (Ptilde/Qtilde - P/Q)  ~=  (dQ/Qtilde) * (dP/dQ - f),
// which links the value-level error of the pair to the quality of the
// error approximant.  Soft diagnostic: reported, not asserted.
template <class Real>
struct UncertaintySample {
    Real x{};
    Real lhs{};             // R~(x) - R(x)
    Real deltaQ_rel{};      // dQ / (Q + dQ)
    Real err_approx_err{};  // dP/dQ - f
    Real product{};         // deltaQ_rel * err_approx_err
    bool consistent = false;
};

template <class Real>
struct UncertaintyReport {
    std::vector<UncertaintySample<Real>> samples;
    Real epsilon{};  // scale max|lhs|: the method's absolute error level
    std::size_t consistent_count = 0;
};

template <class Real>
UncertaintyReport<Real> uncertainty_relation(const RationalApproximant<Real>& first,
                                             const RationalApproximant<Real>& second,
                                             const std::function<Real(const Real&)>& f,
                                             const ErrorApproximant<Real>& ea,
                                             std::size_t points = 100) {
    UncertaintyReport<Real> rep;
    const Real step = (first.seg_b - first.seg_a) / Real(static_cast<long>(points + 1));
    for (std::size_t i = 1; i <= points; ++i) {
        const Real x = first.seg_a + step * Real(static_cast<long>(i));
        bool skip = false;
        for (const ExcludedZone<Real>& z : ea.quality.excluded)
            if (z.contains(x)) skip = true;
        if (skip) continue;
        auto [p1, q1] = numer_denom_values(first, x);
        auto [p2, q2] = numer_denom_values(second, x);
        auto [dp, dq] = numer_denom_values(ea.approx, x);
        if (q1 == Real(0) || q2 == Real(0) || dq == Real(0)) continue;
        UncertaintySample<Real> s;
        s.x = x;
        s.lhs = p2 / q2 - p1 / q1;
        s.deltaQ_rel = dq / q2;
        s.err_approx_err = dp / dq - f(x);
        s.product = s.deltaQ_rel * s.err_approx_err;
        const Real scale = std::max(abs_val(s.lhs), abs_val(s.product));
        s.consistent = scale == Real(0) ||
                       abs_val(Real(s.lhs - s.product)) <= scale / 10;
        if (s.consistent) ++rep.consistent_count;
        if (abs_val(s.lhs) > rep.epsilon) rep.epsilon = abs_val(s.lhs);
        rep.samples.push_back(s);
    }
    return rep;
}

// Construct the same problem at two precisions (the portable model of
// the "two computers" perturbation) and compare, all measured at the
// higher precision.
template <class Real>
struct PerturbationOutcome {
    RationalApproximant<Real> lo;  // low-precision build, coefficients promoted
    RationalApproximant<Real> hi;
    Real max_rel_coeff_delta{};
    AccuracyReport<Real> lo_quality, hi_quality;
    Real delta_rel_change{};  // |Δ_lo - Δ_hi| / Δ_hi
    // max |R_lo - R_hi| over the grid, relative to max |f|: how much the
    // approximant itself moved under the coefficient perturbation
    Real value_change_rel{};
    Real signature_ratio{};  // max_rel_coeff_delta / value_change_rel
    std::optional<Real> lo_condition;  // condition number seen by the low-precision solve
    bool lo_condition_reliable = true;
};

template <class Lo, class Hi>
PerturbationOutcome<Hi> perturbation_experiment(const ConstructionSpec& spec,
                                                std::size_t grid = 2000) {
    ConstructResult<Lo> lo = run_construction<Lo>(spec);
    ConstructResult<Hi> hi = run_construction<Hi>(spec, SolveOptions{false});

    PerturbationOutcome<Hi> out;
    out.lo = promote<Hi>(lo.approximant);
    out.hi = hi.approximant;
    if (lo.report.condition) out.lo_condition = real_cast<Hi>(*lo.report.condition);
    out.lo_condition_reliable = lo.report.condition_reliable;

    auto scan = [&](const std::vector<Hi>& a, const std::vector<Hi>& b) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (b[i] == Hi(0)) continue;
            const Hi rel = abs_val(Hi(a[i] - b[i])) / abs_val(b[i]);
            if (rel > out.max_rel_coeff_delta) out.max_rel_coeff_delta = rel;
        }
    };
    scan(out.lo.numer, out.hi.numer);
    scan(out.lo.denom, out.hi.denom);

    CatalogEntry<Hi> entry = lookup<Hi>(spec.function);
    ApproxTarget<Hi> target = make_target<Hi>(spec);
    std::function<Hi(const Hi&)> f = entry.eval;
    MeasureOptions<Hi> mopts;
    mopts.grid = grid;
    out.lo_quality = measure(f, out.lo, mopts);
    out.hi_quality = measure(f, out.hi, mopts);

    const Hi floor = eps<Hi>();
    const Hi denom = out.hi_quality.abs_error > Hi(0) ? out.hi_quality.abs_error : floor;
    out.delta_rel_change = abs_val(Hi(out.lo_quality.abs_error - out.hi_quality.abs_error)) / denom;

    const Hi step = (target.seg_b - target.seg_a) / Hi(static_cast<long>(grid - 1));
    Hi vmax = Hi(0), fmax = Hi(0);
    for (std::size_t i = 0; i < grid; ++i) {
        const Hi x = (i + 1 == grid) ? target.seg_b : target.seg_a + step * Hi(static_cast<long>(i));
        auto [pl, ql] = numer_denom_values(out.lo, x);
        auto [ph, qh] = numer_denom_values(out.hi, x);
        if (ql == Hi(0) || qh == Hi(0)) continue;
        const Hi d = abs_val(Hi(pl / ql - ph / qh));
        if (d > vmax) vmax = d;
        const Hi fa = abs_val(f(x));
        if (fa > fmax) fmax = fa;
    }
    out.value_change_rel = fmax > Hi(0) ? vmax / fmax : vmax;
    if (out.value_change_rel < floor) out.value_change_rel = floor;
    out.signature_ratio = out.max_rel_coeff_delta / out.value_change_rel;
    return out;
}

// Rational approximant vs the Chebyshev partial sum it is built from:
// the "small deformation, sharp error change" comparison, plus the
// truncation-invariance check (rebuilding from the partial sum must
// reproduce the approximant).
template <class Real>
struct DeformationRecord {
    RationalApproximant<Real> rational;
    RationalApproximant<Real> partial_sum;    // as a degenerate rational (denominator 1)
    RationalApproximant<Real> from_partial;   // rebuilt from the partial sum's own series
    AccuracyReport<Real> rational_quality;
    AccuracyReport<Real> partial_quality;
    Real max_rel_coeff_diff{};  // rational vs from_partial
    std::size_t window = 0;     // series index the method depends on
};

template <class Real>
DeformationRecord<Real> deformation_study(const ConstructionSpec& spec, std::size_t grid = 2000) {
    if (spec.method == Method::linear)
        throw std::invalid_argument("deformation_study works with the series-based methods");
    ApproxTarget<Real> target = make_target<Real>(spec);
    CatalogEntry<Real> entry = lookup<Real>(spec.function);

    DeformationRecord<Real> out;
    out.window = series_window(spec.method, spec.n, spec.m);
    ChebyshevSeries<Real> c = spec_series(spec, target);

    ConstructResult<Real> built = run_construction<Real>(spec, SolveOptions{false});
    out.rational = built.approximant;

    out.partial_sum.numer = c.coeffs;
    out.partial_sum.denom = {Real(2)};  // halved-first: (1/2)*2*T_0 = 1
    out.partial_sum.basis = Basis::chebyshev;
    out.partial_sum.parity = target.parity;
    out.partial_sum.seg_a = target.seg_a;
    out.partial_sum.seg_b = target.seg_b;

    std::function<Real(const Real&)> f = entry.eval;
    MeasureOptions<Real> mopts;
    mopts.grid = grid;
    out.rational_quality = measure(f, out.rational, mopts);
    out.partial_quality = measure(f, out.partial_sum, mopts);

    // Re-expand the partial sum by an independent quadrature and rebuild.
    QuadratureRule<Real> rule2(default_node_count(spec.m, spec.n) + 17);
    ChebyshevSeries<Real> c2 = fourier_chebyshev_coeffs<Real>(
        [&](const Real& v) { return ChebyshevSeries<Real>(c.coeffs, true)(v); }, out.window,
        rule2);
    if (spec.method == Method::cross) {
        CrossPCProblem<Real> prob{c2, spec.n, spec.m};
        out.from_partial =
            construct_cross(prob, target.parity, target.seg_a, target.seg_b, SolveOptions{false})
                .approximant;
    } else {
        NonlinearPCProblem<Real> prob{c2, spec.n, spec.m};
        out.from_partial = construct_nonlinear(prob, target.parity, target.seg_a, target.seg_b,
                                               SolveOptions{false})
                               .approximant;
    }

    Real scale = Real(0);
    for (const Real& v : out.rational.numer) scale = std::max(scale, abs_val(v));
    for (const Real& v : out.rational.denom) scale = std::max(scale, abs_val(v));
    auto scan = [&](const std::vector<Real>& a, const std::vector<Real>& b) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            const Real d = abs_val(Real(a[i] - b[i])) / scale;
            if (d > out.max_rel_coeff_diff) out.max_rel_coeff_diff = d;
        }
    };
    scan(out.rational.numer, out.from_partial.numer);
    scan(out.rational.denom, out.from_partial.denom);
    return out;
}

}  // namespace pcheb
