#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pcheb/rational.hpp"

#include <cmath>
#include <random>

using namespace pcheb;

namespace {

RationalApproximant<double> simple_monomial() {
    RationalApproximant<double> r;
    r.numer = {1.0, 2.0, 0.5};  // 1 + 2t + 0.5 t^2
    r.denom = {1.0, 0.25};      // 1 + 0.25 t
    return r;
}

}  // namespace

TEST_CASE("monomial general evaluation is P/Q with the segment map") {
    RationalApproximant<double> r = simple_monomial();
    CHECK(evaluate(r, 0.0) == doctest::Approx(1.0));
    CHECK(evaluate(r, 1.0) == doctest::Approx(3.5 / 1.25));
    r.seg_a = 0.0;
    r.seg_b = 2.0;  // x=1 maps to t=0
    CHECK(evaluate(r, 1.0) == doctest::Approx(1.0));
    CHECK(r.map_to_unit(2.0) == 1.0);
    CHECK(r.map_from_unit(-1.0) == 0.0);
}

TEST_CASE("denominator zero raises; empty coefficients are invalid") {
    RationalApproximant<double> r;
    r.numer = {1.0};
    r.denom = {0.0, 1.0};  // Q = t
    CHECK_THROWS_AS(evaluate(r, 0.0), denominator_zero_error);
    r.denom.clear();
    CHECK_THROWS_AS(evaluate(r, 0.5), std::invalid_argument);
}

TEST_CASE("even and odd parity forms evaluate in w = t^2 with the odd t factor") {
    RationalApproximant<double> r;
    r.numer = {1.0, -0.5};  // 1 - 0.5 w
    r.denom = {1.0, 0.25};
    r.parity = Parity::even;
    const double t = 0.6, w = t * t;
    CHECK(evaluate(r, t) == doctest::Approx((1 - 0.5 * w) / (1 + 0.25 * w)));
    CHECK(evaluate(r, -t) == evaluate(r, t));
    r.parity = Parity::odd;
    CHECK(evaluate(r, t) == doctest::Approx(t * (1 - 0.5 * w) / (1 + 0.25 * w)));
    CHECK(evaluate(r, -t) == -evaluate(r, t));
}

TEST_CASE("chebyshev basis uses the halved-first convention in u = 2t^2-1") {
    RationalApproximant<double> r;
    r.numer = {2.0, 1.0};  // (1/2)*2 + T_1(u) = 1 + u
    r.denom = {2.0};       // 1
    r.basis = Basis::chebyshev;
    r.parity = Parity::even;
    const double t = 0.3, u = 2 * t * t - 1;
    CHECK(evaluate(r, t) == doctest::Approx(1.0 + u));
}

TEST_CASE("basis_values matches evaluation as a linear combination") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int variant = 0; variant < 4; ++variant) {
        RationalApproximant<double> r;
        r.numer = {dist(rng), dist(rng), dist(rng)};
        r.denom = {1.0, dist(rng)};
        r.basis = (variant & 1) ? Basis::chebyshev : Basis::monomial;
        r.parity = (variant & 2) ? Parity::odd : Parity::general;
        for (int k = 0; k < 10; ++k) {
            const double x = dist(rng);
            auto [p, q] = numer_denom_values(r, x);
            auto [phi, psi] = basis_values(r, x);
            double ps = 0, qs = 0;
            for (std::size_t i = 0; i < phi.size(); ++i) ps += r.numer[i] * phi[i];
            for (std::size_t j = 0; j < psi.size(); ++j) qs += r.denom[j] * psi[j];
            CHECK(ps == doctest::Approx(p).epsilon(1e-12));
            CHECK(qs == doctest::Approx(q).epsilon(1e-12));
        }
    }
}

TEST_CASE("exact quotient-difference identity holds on randomized instances") {
    // (P+dP)/(Q+dQ) - P/Q = (dQ/(Q+dQ))(dP/dQ - P/Q), an algebraic identity
    std::mt19937 rng(20260824);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::size_t checked = 0;
    for (std::size_t trial = 0; trial < 10000; ++trial) {
        const std::size_t n = 1 + rng() % 4, m = 1 + rng() % 4;
        std::vector<double> pv(n + 1), qv(m + 1), dpv(n + 1), dqv(m + 1);
        for (auto& v : pv) v = dist(rng);
        for (auto& v : qv) v = dist(rng);
        for (auto& v : dpv) v = dist(rng) * 1e-6;
        for (auto& v : dqv) v = dist(rng) * 1e-6;
        MonomialPoly<double> p(pv), q(qv), dp(dpv), dq(dqv);
        const double x = dist(rng);
        if (std::abs(q(x)) < 0.1 || std::abs(q(x) + dq(x)) < 0.05 || std::abs(dq(x)) < 1e-9)
            continue;
        auto [lhs, rhs] = error_identity_lhs_rhs(p, q, dp, dq, x);
        // the left side subtracts two O(|P/Q|) quantities, so round-off is
        // relative to that magnitude, not to the tiny difference itself
        const double scale =
            std::max({std::abs(lhs), std::abs(rhs), std::abs(p(x) / q(x)), 1e-300});
        CHECK(std::abs(lhs - rhs) <= 1e3 * eps<double>() * scale);
        // the rewritten form agrees as well
        const double alt = error_identity_alt(p, q, dp, dq, x);
        CHECK(std::abs(lhs - alt) <= 1e3 * eps<double>() * scale);
        ++checked;
    }
    CHECK(checked > 8000);
}

TEST_CASE("to_plain_form preserves values for every shape") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int variant = 0; variant < 6; ++variant) {
        RationalApproximant<double> r;
        r.numer = {dist(rng), dist(rng), dist(rng)};
        r.denom = {2.0, dist(rng) * 0.2};
        r.basis = (variant % 2) ? Basis::chebyshev : Basis::monomial;
        r.parity = (variant < 2) ? Parity::general : (variant < 4 ? Parity::even : Parity::odd);
        RationalApproximant<double> plain = to_plain_form(r);
        CHECK(plain.basis == Basis::monomial);
        CHECK(plain.parity == Parity::general);
        for (int k = 0; k < 20; ++k) {
            const double x = dist(rng);
            CHECK(evaluate(plain, x) == doctest::Approx(evaluate(r, x)).epsilon(1e-12));
        }
    }
}

TEST_CASE("to_plain_form of the odd shape has the expected plain degrees") {
    RationalApproximant<double> r;
    r.numer = {1.0, 2.0, 3.0, 4.0, 5.0};  // internal n=4
    r.denom = {1.0, 1.0, 1.0, 1.0, 1.0};  // internal m=4
    r.parity = Parity::odd;
    RationalApproximant<double> plain = to_plain_form(r);
    CHECK(plain.numer.size() == 10);  // degree 9: t * P_4(t^2)
    CHECK(plain.denom.size() == 9);   // degree 8: Q_4(t^2)
}

TEST_CASE("normalization conditions expand to the canonical vectors") {
    auto [l0, u0] = NormalizationCondition::b0().expand<double>(2, 3);
    CHECK(u0 == std::vector<double>{1, 0, 0, 0});
    CHECK(l0 == std::vector<double>{0, 0, 0});
    auto [lm, um] = NormalizationCondition::bm().expand<double>(2, 3);
    CHECK(um == std::vector<double>{0, 0, 0, 1});
    auto [ln, un] = NormalizationCondition::an().expand<double>(2, 3);
    CHECK(ln == std::vector<double>{0, 0, 1});
    auto g = NormalizationCondition::general({0.5}, {0.0, 2.0});
    auto [lg, ug] = g.expand<double>(1, 1);
    CHECK(lg == std::vector<double>{0.5, 0});
    CHECK(ug == std::vector<double>{0, 2.0});
    CHECK_THROWS_AS(NormalizationCondition::general({}, {}).expand<double>(1, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(NormalizationCondition::general({0.0}, {0.0}).expand<double>(1, 1),
                    std::invalid_argument);
}
