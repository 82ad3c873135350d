#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pcheb/functions.hpp"
#include "pcheb/target.hpp"

#include <cmath>

using namespace pcheb;

TEST_CASE("catalog entries carry the documented metadata") {
    CatalogEntry<double> c = lookup<double>("cos_pi4");
    CHECK(c.parity == Parity::even);
    CHECK(c.seg_a == -1.0);
    CHECK(c.seg_b == 1.0);

    CatalogEntry<double> s = lookup<double>("sqrt");
    CHECK(s.parity == Parity::general);
    CHECK(s.seg_a == 0.5);
    CHECK(s.seg_b == 1.0);
    CHECK_FALSE(bool(s.taylor));

    CatalogEntry<double> a = lookup<double>("arctan");
    CHECK(a.parity == Parity::odd);
    REQUIRE(a.div_x_limit.has_value());
    CHECK(*a.div_x_limit == 1.0);

    CHECK_THROWS_AS(lookup<double>("nope"), std::invalid_argument);
}

TEST_CASE("parity metadata matches the evaluators on a grid") {
    for (const std::string& name : catalog_names<double>()) {
        CatalogEntry<double> e = lookup<double>(name);
        if (e.parity == Parity::general) continue;
        for (int i = 1; i <= 100; ++i) {
            const double x = e.seg_b * i / 100.0;
            const double sign = e.parity == Parity::even ? 1.0 : -1.0;
            CHECK(e.eval(-x) == doctest::Approx(sign * e.eval(x)).epsilon(1e-14));
        }
    }
}

TEST_CASE("Taylor providers reproduce the low-order closed forms") {
    MonomialPoly<double> e = taylor_coeffs(lookup<double>("exp"), 3);
    CHECK(e.coeffs == std::vector<double>{1.0, 1.0, 0.5, 1.0 / 6});

    MonomialPoly<double> a = taylor_coeffs(lookup<double>("arctan"), 5);
    CHECK(a.coeffs == std::vector<double>{0, 1.0, 0, -1.0 / 3, 0, 1.0 / 5});

    CHECK_THROWS_AS(taylor_coeffs(lookup<double>("sqrt"), 3), std::invalid_argument);
}

TEST_CASE("tangent coefficients from the recurrence match the classical values") {
    // tan z = z + z^3/3 + 2 z^5/15 + 17 z^7/315 + 62 z^9/2835 + ...
    std::vector<double> c = detail::tangent_coeffs<double>(9);
    CHECK(c[1] == 1.0);
    CHECK(c[3] == doctest::Approx(1.0 / 3));
    CHECK(c[5] == doctest::Approx(2.0 / 15));
    CHECK(c[7] == doctest::Approx(17.0 / 315));
    CHECK(c[9] == doctest::Approx(62.0 / 2835));
    CHECK(c[2] == 0.0);
    CHECK(c[8] == 0.0);
}

TEST_CASE("scaled Taylor polynomials track the evaluators on the segment") {
    for (const std::string& name : {"exp", "cos_pi4", "sin_pi4", "sin_pi2", "arctan", "tan_pi4"}) {
        CatalogEntry<Ext128> e = lookup<Ext128>(name);
        MonomialPoly<Ext128> t = taylor_coeffs(e, 31);
        // near 0 the truncated series is essentially exact
        for (double xd : {-0.3, -0.05, 0.1, 0.25}) {
            const Ext128 x(xd);
            CHECK(abs_val(Ext128(t(x) - e.eval(x))) < Ext128(1e-18));
        }
    }
}

TEST_CASE("extended-precision evaluators agree with a Taylor oracle to high accuracy") {
    // independent check of sin at 256 bits via its series with argument scaled into
    // convergence; 40 terms is far beyond 1e-60
    CatalogEntry<Ext256> s = lookup<Ext256>("sin_pi2");
    for (int i = 1; i <= 20; ++i) {
        const Ext256 x = Ext256(i) / 20;
        const Ext256 z = pi<Ext256>() / 2 * x;
        Ext256 term = z, sum = z;
        for (int k = 1; k < 40; ++k) {
            term *= -z * z / Ext256((2 * k) * (2 * k + 1));
            sum += term;
        }
        CHECK(abs_val(Ext256(s.eval(x) - sum)) < Ext256(1e-60));
    }
}

TEST_CASE("odd reduction uses the analytic limit at zero") {
    ApproxTarget<double> t = ApproxTarget<double>::from_catalog(lookup<double>("sin_pi2"));
    CHECK(t.reduced_t(0.0) == doctest::Approx(pi<double>() / 2));
    // and the division route is continuous with it
    CHECK(t.reduced_t(1e-8) == doctest::Approx(pi<double>() / 2));
    t.div_x_limit.reset();
    CHECK_THROWS_AS(t.reduced_t(0.0), std::invalid_argument);
}

TEST_CASE("even reduction requires a symmetric segment") {
    ApproxTarget<double> t = ApproxTarget<double>::from_catalog(lookup<double>("cos_pi4"));
    t.seg_b = 2.0;
    CHECK_THROWS_AS(t.reduced_u(0.0), std::invalid_argument);
}
