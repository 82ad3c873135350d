#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pcheb/interval.hpp"

#include <cmath>
#include <random>

using namespace pcheb;

TEST_CASE("coefficient gradient matches the closed form for R = x/1") {
    RationalApproximant<double> r;
    r.numer = {0.0, 1.0};
    r.denom = {1.0};
    CoeffGradient<double> g = gradient_wrt_coeffs(r, 0.5);
    // dR/da_0 = 1/Q = 1, dR/da_1 = x/Q = 0.5, dR/db_0 = -P/Q^2 = -0.5
    CHECK(g.da[0] == doctest::Approx(1.0));
    CHECK(g.da[1] == doctest::Approx(0.5));
    CHECK(g.db[0] == doctest::Approx(-0.5));

    r.denom = {0.0};
    CHECK_THROWS_AS(gradient_wrt_coeffs(r, 0.5), denominator_zero_error);
}

TEST_CASE("coefficient gradient agrees with central finite differences") {
    std::mt19937 rng(314159);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const double h = 1e-6;
    for (int trial = 0; trial < 20; ++trial) {
        RationalApproximant<double> r;
        r.numer = {dist(rng), dist(rng), dist(rng)};
        r.denom = {1.0, 0.3 * dist(rng), 0.3 * dist(rng)};
        r.basis = (trial % 2) ? Basis::chebyshev : Basis::monomial;
        r.parity = (trial % 3 == 0) ? Parity::even : Parity::general;
        const double x = dist(rng);
        auto [p, q] = numer_denom_values(r, x);
        if (std::abs(q) < 0.1) continue;
        CoeffGradient<double> g = gradient_wrt_coeffs(r, x);
        for (std::size_t i = 0; i < r.numer.size(); ++i) {
            RationalApproximant<double> up = r, dn = r;
            up.numer[i] += h;
            dn.numer[i] -= h;
            const double fd = (evaluate(up, x) - evaluate(dn, x)) / (2 * h);
            CHECK(g.da[i] == doctest::Approx(fd).epsilon(1e-6));
        }
        for (std::size_t j = 0; j < r.denom.size(); ++j) {
            RationalApproximant<double> up = r, dn = r;
            up.denom[j] += h;
            dn.denom[j] -= h;
            const double fd = (evaluate(up, x) - evaluate(dn, x)) / (2 * h);
            CHECK(g.db[j] == doctest::Approx(fd).epsilon(1e-6));
        }
    }
}

TEST_CASE("naive bound and signed residual on hand-checkable data") {
    RationalApproximant<double> r;
    r.numer = {0.0, 1.0};
    r.denom = {1.0};
    // da = (0.1, -0.2), db = (0.3): gradient at 0.5 is (1, 0.5 | -0.5)
    const double x = 0.5;
    CHECK(naive_bound<double>(r, {0.1, 0.2}, {0.3}, x) ==
          doctest::Approx(0.1 + 0.5 * 0.2 + 0.5 * 0.3));
    CHECK(autocorrection_residual<double>(r, {0.1, -0.2}, {0.3}, x) ==
          doctest::Approx(0.1 - 0.1 - 0.15));
    CHECK_THROWS_AS(naive_bound<double>(r, {0.1}, {0.3}, x), std::invalid_argument);
    // the signed sum never exceeds the sign-blind bound
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int k = 0; k < 50; ++k) {
        std::vector<double> da{dist(rng), dist(rng)}, db{dist(rng)};
        const double xs = 0.9 * dist(rng);
        CHECK(std::abs(autocorrection_residual(r, da, db, xs)) <=
              naive_bound(r, da, db, xs) * (1 + 1e-12));
    }
}

TEST_CASE("aligned errors saturate the bound; opposed errors cancel") {
    RationalApproximant<double> r;
    r.numer = {1.0, 0.5};
    r.denom = {1.0};
    const double x = 0.7;
    CoeffGradient<double> g = gradient_wrt_coeffs(r, x);
    // choose the error parallel to the gradient: the signed sum equals the bound
    std::vector<double> da{g.da[0] * 1e-3, g.da[1] * 1e-3}, db{g.db[0] * 1e-3};
    CHECK(autocorrection_residual(r, da, db, x) ==
          doctest::Approx(naive_bound(r, da, db, x)));
    // flip one component so the contributions cancel exactly
    std::vector<double> da2{1e-3, 0.0}, db2{0.0};
    da2[1] = -1e-3 * g.da[0] / g.da[1];
    CHECK(std::abs(autocorrection_residual(r, da2, db2, x)) < 1e-18);
    CHECK(naive_bound(r, da2, db2, x) > 1e-3);
}

TEST_CASE("pessimism profile separates cancelling from generic perturbations") {
    RationalApproximant<double> r;
    r.numer = {1.0, -0.3, 0.02};
    r.denom = {1.0, 0.1};
    // a generic perturbation: ratios stay modest
    RationalApproximant<double> generic = r;
    generic.numer[1] += 3e-7;
    PessimismProfile<double> pg = pessimism_profile(r, generic);
    REQUIRE(pg.ratio_count > 90);
    CHECK_FALSE(pg.all_errors_zero);
    CHECK(pg.median_ratio < 1e2);
    // the bound dominates the truth up to evaluation round-off
    CHECK(pg.min_ratio > 0.99);

    // a cancelling perturbation: P and Q scaled together leave R unchanged
    RationalApproximant<double> scaled = r;
    for (double& v : scaled.numer) v *= 1 + 1e-6;
    for (double& v : scaled.denom) v *= 1 + 1e-6;
    PessimismProfile<double> ps = pessimism_profile(r, scaled);
    CHECK(ps.median_ratio > 1e5);
}

TEST_CASE("pessimism profile flags identical inputs and shape mismatches") {
    RationalApproximant<double> r;
    r.numer = {1.0, 2.0};
    r.denom = {1.0};
    PessimismProfile<double> p = pessimism_profile(r, r);
    CHECK(p.all_errors_zero);
    CHECK(p.ratio_count == 0);
    RationalApproximant<double> other = r;
    other.denom.push_back(0.0);
    CHECK_THROWS_AS(pessimism_profile(r, other), std::invalid_argument);
}
