#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pcheb/poly.hpp"

#include <cmath>
#include <random>

using namespace pcheb;

namespace {

template <class Real>
Real max_abs(const std::vector<Real>& v) {
    Real m = Real(0);
    for (const Real& x : v) m = std::max(m, abs_val(x));
    return m;
}

}  // namespace

TEST_CASE("monomial evaluation follows the Horner scheme") {
    MonomialPoly<double> p({1.0, -2.0, 3.0});  // 1 - 2x + 3x^2
    CHECK(p(0.0) == 1.0);
    CHECK(p(1.0) == 2.0);
    CHECK(p(-1.0) == 6.0);
    CHECK(p(0.5) == doctest::Approx(0.75));
    CHECK(p.degree() == 2);
    CHECK_THROWS_AS(MonomialPoly<double>{}(1.0), std::invalid_argument);
}

TEST_CASE("Chebyshev series evaluation and first-term conventions") {
    // 3*T_0 + 2*T_1 + T_2 at x: 3 + 2x + 2x^2 - 1
    ChebyshevSeries<double> s({3.0, 2.0, 1.0}, false);
    for (double x : {-1.0, -0.3, 0.0, 0.7, 1.0})
        CHECK(s(x) == doctest::Approx(2.0 + 2.0 * x + 2.0 * x * x));
    ChebyshevSeries<double> h = s.with_halved_first(true);
    CHECK(h.coeffs[0] == 6.0);
    for (double x : {-0.9, 0.2, 1.0}) CHECK(h(x) == doctest::Approx(s(x)));
    CHECK(h.with_halved_first(false).coeffs[0] == 3.0);
}

TEST_CASE("cheb_eval matches the closed form cos(k*acos(x))") {
    for (std::size_t k : {0u, 1u, 2u, 5u, 13u}) {
        for (double x : {-1.0, -0.77, -0.25, 0.0, 0.33, 0.92, 1.0}) {
            CHECK(cheb_eval<double>(k, x) ==
                  doctest::Approx(std::cos(double(k) * std::acos(x))).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(cheb_eval<double>(2, 1.5), std::domain_error);
}

TEST_CASE("quadrature rule has the documented nodes and weight") {
    QuadratureRule<double> rule(4);
    CHECK(rule.weight == doctest::Approx(pi<double>() / 4));
    CHECK(rule.nodes[0] == doctest::Approx(std::cos(pi<double>() / 8)));
    CHECK(rule.nodes.size() == 4);
    CHECK_THROWS_AS(QuadratureRule<double>(0), std::invalid_argument);
}

TEST_CASE("quadrature is exact on polynomial moments up to degree 2s-1") {
    // int x^k w dx = 0 (k odd), pi * (k-1)!! / k!! (k even)
    QuadratureRule<double> rule(8);
    std::vector<double> exact(16);
    exact[0] = pi<double>();
    for (std::size_t k = 2; k < 16; k += 2)
        exact[k] = exact[k - 2] * double(k - 1) / double(k);
    for (std::size_t k = 0; k < 16; ++k) {
        const double got = quadrature<double>(
            [&](const double& x) { return std::pow(x, double(k)); }, rule);
        CHECK(std::abs(got - exact[k]) <= 1e3 * eps<double>() * pi<double>());
    }
}

TEST_CASE("fourier_chebyshev_coeffs recovers a known finite expansion") {
    // f = 0.5*c0 + c2 T_2 + c5 T_5 with c0=4, c2=-1.5, c5=0.25
    ChebyshevSeries<double> f({4.0, 0.0, -1.5, 0.0, 0.0, 0.25}, true);
    QuadratureRule<double> rule(32);
    ChebyshevSeries<double> c =
        fourier_chebyshev_coeffs<double>([&](const double& x) { return f(x); }, 7, rule);
    CHECK(c.halved_first);
    for (std::size_t k = 0; k <= 7; ++k) {
        const double want = k < f.coeffs.size() ? f.coeffs[k] : 0.0;
        CHECK(std::abs(c.coeffs[k] - want) <= 100 * eps<double>() * 4.0);
    }
    CHECK_THROWS_AS(
        fourier_chebyshev_coeffs<double>([](const double& x) { return x; }, 40, rule),
        std::invalid_argument);
}

TEST_CASE("basis changes round-trip to the identity") {
    std::mt19937 rng(20260824);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t deg = 1 + std::size_t(rng() % 12);
        std::vector<double> c(deg + 1);
        for (double& v : c) v = dist(rng);
        MonomialPoly<double> p(c);
        MonomialPoly<double> back = cheb_to_monomial(monomial_to_cheb(p));
        REQUIRE(back.coeffs.size() == p.coeffs.size());
        const double scale = std::max(1.0, max_abs(p.coeffs));
        for (std::size_t i = 0; i <= deg; ++i)
            CHECK(std::abs(back.coeffs[i] - p.coeffs[i]) <= 100 * eps<double>() * scale);

        ChebyshevSeries<double> s(c, false);
        MonomialPoly<double> mid = cheb_to_monomial(s);
        ChebyshevSeries<double> s_back = monomial_to_cheb(mid);
        // the monomial image of T_k has entries of size ~2^k, so round-off is
        // relative to the intermediate coefficients
        const double mid_scale = std::max(scale, max_abs(mid.coeffs));
        for (std::size_t i = 0; i <= deg; ++i)
            CHECK(std::abs(s_back.coeffs[i] - s.coeffs[i]) <= 100 * eps<double>() * mid_scale);
    }
}

TEST_CASE("cheb_product expands T_i*T_j") {
    ChebyshevSeries<double> p = cheb_product<double>(3, 5);
    for (double x : {-0.8, -0.1, 0.4, 0.95})
        CHECK(p(x) == doctest::Approx(cheb_eval<double>(3, x) * cheb_eval<double>(5, x)));
}

TEST_CASE("economization truncates the exact Chebyshev form of a Taylor polynomial") {
    // x^5 = (10 T_1 + 5 T_3 + T_5)/16; truncating at index 3 drops T_5
    MonomialPoly<double> p({0, 0, 0, 0, 0, 1.0});
    ChebyshevSeries<double> e = economize_taylor(p, 3);
    CHECK(e.halved_first);
    CHECK(e.coeffs.size() == 4);
    CHECK(e.coeffs[1] == doctest::Approx(10.0 / 16));
    CHECK(e.coeffs[3] == doctest::Approx(5.0 / 16));
    CHECK(e.coeffs[0] == 0.0);
    CHECK(e.coeffs[2] == 0.0);
    CHECK_THROWS_AS(economize_taylor(p, 9), std::invalid_argument);
}

TEST_CASE("extended precision kernels agree with double at double scale") {
    QuadratureRule<Ext128> rule(16);
    const Ext128 got = quadrature<Ext128>(
        [](const Ext128& x) { return x * x; }, rule);
    CHECK(abs_val(Ext128(got - pi<Ext128>() / 2)) < Ext128(1e-30));
}
