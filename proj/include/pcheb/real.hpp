#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/math/constants/constants.hpp>

#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

namespace pcheb {

// Extended-precision reals with a fixed binary significand width.
// All construction code is generic over the scalar type, so the same
// algorithm can be run at double precision and at extended precision
// and the two coefficient sets compared.
using Ext128 = boost::multiprecision::number<
    boost::multiprecision::backends::cpp_bin_float<
        128, boost::multiprecision::backends::digit_base_2>,
    boost::multiprecision::et_off>;

using Ext256 = boost::multiprecision::number<
    boost::multiprecision::backends::cpp_bin_float<
        256, boost::multiprecision::backends::digit_base_2>,
    boost::multiprecision::et_off>;

template <class Real>
Real eps() {
    return std::numeric_limits<Real>::epsilon();
}

template <class Real>
Real pi() {
    return boost::math::constants::pi<Real>();
}

template <class Real>
Real abs_val(const Real& x) {
    using std::abs;
    return abs(x);
}

// Lossless-enough cross-precision conversion; narrowing rounds.
template <class To, class From>
To real_cast(const From& x) {
    return static_cast<To>(x);
}

// Full-precision decimal serialization, round-trip safe for the type.
template <class Real>
std::string to_decimal_string(const Real& x) {
    std::ostringstream os;
    os.precision(std::numeric_limits<Real>::max_digits10);
    os << x;
    return os.str();
}

template <class Real>
Real from_decimal_string(const std::string& s) {
    Real x{};
    std::istringstream is(s);
    if (!(is >> x) || !(is >> std::ws).eof())
        throw std::invalid_argument("not a decimal number: '" + s + "'");
    return x;
}

}  // namespace pcheb
