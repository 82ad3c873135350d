#pragma once

#include "pcheb/cross_pc.hpp"
#include "pcheb/functions.hpp"
#include "pcheb/linear_pc.hpp"
#include "pcheb/nonlinear_pc.hpp"
#include "pcheb/target.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace pcheb {

enum class Method { linear, cross, nonlinear };

inline const char* to_string(Method m) {
    switch (m) {
        case Method::linear: return "linear";
        case Method::cross: return "cross";
        default: return "nonlinear";
    }
}

inline Method method_from_string(const std::string& s) {
    if (s == "linear") return Method::linear;
    if (s == "cross") return Method::cross;
    if (s == "nonlinear") return Method::nonlinear;
    throw std::invalid_argument("unknown method '" + s + "' (linear|cross|nonlinear)");
}

// Precision-independent description of one construction run.  The m, n
// here are the degrees of the solved form: for even/odd parity these
// are the internal degrees in w = x^2 (a Table-style odd row m=n=4
// expands to plain degrees (8,9)).
struct ConstructionSpec {
    std::string function;
    std::size_t n = 0, m = 0;
    Method method = Method::linear;
    NormalizationCondition normalization = NormalizationCondition::b0();  // linear method only
    std::optional<Parity> parity_override;
    std::optional<std::pair<double, double>> segment_override;
    std::optional<std::size_t> node_count;  // quadrature nodes
    std::optional<std::size_t> taylor_N;    // cross/nonlinear: use the Taylor route, raw degree N
};

template <class Real>
ApproxTarget<Real> make_target(const ConstructionSpec& spec) {
    CatalogEntry<Real> entry = lookup<Real>(spec.function);
    ApproxTarget<Real> target = ApproxTarget<Real>::from_catalog(entry);
    if (spec.parity_override) target.parity = *spec.parity_override;
    if (spec.segment_override) {
        target.seg_a = Real(spec.segment_override->first);
        target.seg_b = Real(spec.segment_override->second);
    }
    return target;
}

template <class Real>
struct ConstructResult {
    RationalApproximant<Real> approximant;
    SolveReport<Real> report;
};

// The series window the chosen method reads: c_0..c_{n+2m} for
// linear/cross, c_0..c_{n+m} for nonlinear.
inline std::size_t series_window(Method method, std::size_t n, std::size_t m) {
    return method == Method::nonlinear ? n + m : n + 2 * m;
}

template <class Real>
ChebyshevSeries<Real> spec_series(const ConstructionSpec& spec, const ApproxTarget<Real>& target) {
    const std::size_t window = series_window(spec.method, spec.n, spec.m);
    if (spec.taylor_N) {
        CatalogEntry<Real> entry = lookup<Real>(spec.function);
        if (target.seg_a != Real(-1) || target.seg_b != Real(1))
            throw std::invalid_argument("the Taylor route expects the segment [-1,1]");
        return reduced_series_taylor(taylor_coeffs(entry, *spec.taylor_N), target.parity, window);
    }
    const std::size_t s =
        spec.node_count ? *spec.node_count : default_node_count(spec.m, spec.n);
    QuadratureRule<Real> rule(s);
    return reduced_series_quadrature(target, window, rule);
}

template <class Real>
ConstructResult<Real> run_construction(const ConstructionSpec& spec, const SolveOptions& opts = {}) {
    ApproxTarget<Real> target = make_target<Real>(spec);
    ConstructResult<Real> out;
    switch (spec.method) {
        case Method::linear: {
            LinearPCProblem<Real> prob{target, spec.n, spec.m, spec.normalization,
                                       spec.node_count};
            if (spec.taylor_N)
                throw std::invalid_argument("the linear method has no Taylor route");
            LinearConstructResult<Real> r = construct_linear(prob, opts);
            out.approximant = std::move(r.approximant);
            out.report = std::move(r.report);
            break;
        }
        case Method::cross: {
            CrossPCProblem<Real> prob{spec_series(spec, target), spec.n, spec.m};
            CrossConstructResult<Real> r =
                construct_cross(prob, target.parity, target.seg_a, target.seg_b, opts);
            out.approximant = std::move(r.approximant);
            out.report = std::move(r.report);
            break;
        }
        case Method::nonlinear: {
            NonlinearPCProblem<Real> prob{spec_series(spec, target), spec.n, spec.m};
            NonlinearConstructResult<Real> r =
                construct_nonlinear(prob, target.parity, target.seg_a, target.seg_b, opts);
            out.approximant = std::move(r.approximant);
            out.report = std::move(r.report);
            break;
        }
    }
    return out;
}

// Coefficientwise promotion to another precision (shape preserved).
template <class To, class From>
RationalApproximant<To> promote(const RationalApproximant<From>& r) {
    RationalApproximant<To> out;
    out.numer.reserve(r.numer.size());
    out.denom.reserve(r.denom.size());
    for (const From& v : r.numer) out.numer.push_back(real_cast<To>(v));
    for (const From& v : r.denom) out.denom.push_back(real_cast<To>(v));
    out.basis = r.basis;
    out.parity = r.parity;
    out.seg_a = real_cast<To>(r.seg_a);
    out.seg_b = real_cast<To>(r.seg_b);
    return out;
}

}  // namespace pcheb
