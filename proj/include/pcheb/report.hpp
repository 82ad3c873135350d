#pragma once

#include "pcheb/diagnostics.hpp"
#include "pcheb/rational.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace pcheb {

// All numbers cross the JSON boundary as decimal strings so that
// extended-precision values survive a round trip.

template <class Real>
nlohmann::json coeffs_to_json(const std::vector<Real>& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Real& x : v) arr.push_back(to_decimal_string(x));
    return arr;
}

template <class Real>
std::vector<Real> coeffs_from_json(const nlohmann::json& arr) {
    std::vector<Real> v;
    for (const auto& e : arr) v.push_back(from_decimal_string<Real>(e.template get<std::string>()));
    return v;
}

template <class Real>
nlohmann::json approximant_to_json(const RationalApproximant<Real>& r) {
    return nlohmann::json{{"a", coeffs_to_json(r.numer)},
                          {"b", coeffs_to_json(r.denom)},
                          {"basis", to_string(r.basis)},
                          {"parity", to_string(r.parity)},
                          {"segment", {to_decimal_string(r.seg_a), to_decimal_string(r.seg_b)}}};
}

inline Basis basis_from_string(const std::string& s) {
    if (s == "monomial") return Basis::monomial;
    if (s == "chebyshev") return Basis::chebyshev;
    throw std::invalid_argument("unknown basis '" + s + "'");
}

inline Parity parity_from_string(const std::string& s) {
    if (s == "general") return Parity::general;
    if (s == "even") return Parity::even;
    if (s == "odd") return Parity::odd;
    throw std::invalid_argument("unknown parity '" + s + "'");
}

template <class Real>
RationalApproximant<Real> approximant_from_json(const nlohmann::json& j) {
    RationalApproximant<Real> r;
    r.numer = coeffs_from_json<Real>(j.at("a"));
    r.denom = coeffs_from_json<Real>(j.at("b"));
    r.basis = basis_from_string(j.at("basis").get<std::string>());
    r.parity = parity_from_string(j.at("parity").get<std::string>());
    r.seg_a = from_decimal_string<Real>(j.at("segment")[0].get<std::string>());
    r.seg_b = from_decimal_string<Real>(j.at("segment")[1].get<std::string>());
    return r;
}

template <class Real>
nlohmann::json accuracy_to_json(const AccuracyReport<Real>& a) {
    nlohmann::json zones = nlohmann::json::array();
    for (const ExcludedZone<Real>& z : a.excluded)
        zones.push_back({to_decimal_string(z.lo), to_decimal_string(z.hi)});
    return nlohmann::json{{"abs", to_decimal_string(a.abs_error)},
                          {"rel", to_decimal_string(a.rel_error)},
                          {"grid_points", a.grid_points},
                          {"excluded_zones", zones}};
}

}  // namespace pcheb
