// Gamma and incomplete-gamma checks: the modulus identity on the imaginary
// axis, values frozen from an independent high-precision evaluation, and
// the structural identities (complementarity, order recurrence,
// conjugation) that the evaluation routes must satisfy jointly.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "chirptrap/special_functions.hpp"

using namespace chirptrap::specfun;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

double rel_dist(cdouble got, cdouble want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}
} // namespace

TEST_CASE("gamma modulus identity on the imaginary axis") {
    // |Gamma(ix)|^2 x sinh(pi x) = pi, 200 log-spaced x in [0.01, 10]
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double x = 0.01 * std::pow(1000.0, i / 199.0);
        const double mod2 = std::norm(gamma(cdouble(0.0, x)));
        worst = std::max(worst, std::abs(mod2 * x * std::sinh(kPi * x) - kPi));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("gamma agrees with the real-axis special values") {
    CHECK(gamma(cdouble(5.0, 0.0)).real() == doctest::Approx(24.0).epsilon(1e-13));
    CHECK(gamma(cdouble(0.5, 0.0)).real() ==
          doctest::Approx(std::sqrt(kPi)).epsilon(1e-13));
    CHECK(std::abs(gamma(cdouble(5.0, 0.0)).imag()) < 1e-12);
    // log gamma against the C library on scattered positive arguments
    for (double x : {0.7, 1.3, 4.2, 11.5, 29.0}) {
        CHECK(log_gamma(cdouble(x, 0.0)).real() ==
              doctest::Approx(std::lgamma(x)).epsilon(1e-13));
    }
}

TEST_CASE("reflection formula holds left of the imaginary axis") {
    // Gamma(z) Gamma(1-z) = pi / sin(pi z)
    for (cdouble z : {cdouble(-2.5, 0.3), cdouble(-0.2, -1.1), cdouble(0.1, 2.0)}) {
        const cdouble lhs = gamma(z) * gamma(1.0 - z);
        const cdouble rhs = kPi / std::sin(kPi * z);
        CHECK(rel_dist(lhs, rhs) < 1e-12);
    }
}

TEST_CASE("gamma poles throw") {
    CHECK_THROWS_AS((void)gamma(cdouble(0.0, 0.0)), std::domain_error);
    CHECK_THROWS_AS((void)log_gamma(cdouble(-3.0, 0.0)), std::domain_error);
}

TEST_CASE("incomplete gamma values frozen from high-precision evaluation") {
    struct Row {
        cdouble mu;
        cdouble x;
        cdouble want; // lower normalized P(mu, x)
    };
    const Row rows[] = {
        {{0.5, 0.5}, {0.0, 2.0}, {0.948053160363522129, 0.313800822012385093}},
        {{0.0, 1.0}, {0.0, -2.0}, {-1.75396547602212254, 1.01853385984985902}},
        {{0.0, 2.0}, {0.0, -50.0}, {3.49199502295299927, 5.24519936489613135}},
        {{0.0, -1.0}, {0.0, -5.0}, {1.08694594439886657, -0.0266334620191754559}},
        {{1.0, 0.0}, {3.0, 0.0}, {0.950212931632136057, 0.0}},
    };
    for (const auto& r : rows) {
        const cdouble p = lower_incomplete_normalized(r.mu, r.x);
        CAPTURE(r.mu);
        CAPTURE(r.x);
        CHECK(std::abs(p - r.want) <= 1e-12 * (1.0 + std::abs(r.want)));
    }
}

TEST_CASE("lower and upper halves always sum to one") {
    const cdouble orders[] = {{0.0, 0.3}, {0.0, -1.7}, {1.0, 2.0}, {0.0, 3.0}};
    const cdouble args[] = {{0.0, 0.5}, {0.0, -8.0}, {0.0, -40.0},
                            {3.0, -4.0}, {20.0, 0.0}};
    for (const auto& mu : orders) {
        for (const auto& x : args) {
            const cdouble p = lower_incomplete_normalized(mu, x);
            const cdouble q = upper_incomplete_normalized(mu, x);
            CAPTURE(mu);
            CAPTURE(x);
            CHECK(std::abs(p + q - 1.0) < 1e-11);
        }
    }
}

TEST_CASE("order recurrence ties neighbouring orders together") {
    // P(mu+1, x) = P(mu, x) - x^mu e^{-x} / Gamma(mu+1)
    const cdouble mus[] = {{0.0, 0.7}, {0.5, -0.4}, {1.2, 1.0}};
    const cdouble xs[] = {{0.0, -3.0}, {1.5, 0.5}, {0.0, 12.0}};
    for (const auto& mu : mus) {
        for (const auto& x : xs) {
            const cdouble lhs = lower_incomplete_normalized(mu + 1.0, x);
            const cdouble rhs = lower_incomplete_normalized(mu, x) -
                                std::exp(mu * std::log(x) - x - log_gamma(mu + 1.0));
            CAPTURE(mu);
            CAPTURE(x);
            CHECK(std::abs(lhs - rhs) < 1e-11);
        }
    }
}

TEST_CASE("conjugating both inputs conjugates the result") {
    const cdouble mu(0.0, 1.3);
    const cdouble x(0.0, -17.0);
    const cdouble p = lower_incomplete_normalized(mu, x);
    const cdouble pc = lower_incomplete_normalized(std::conj(mu), std::conj(x));
    CHECK(std::abs(pc - std::conj(p)) < 1e-14 * (1.0 + std::abs(p)));
}

TEST_CASE("zero argument is exact") {
    const cdouble mu(0.0, 2.0);
    CHECK(lower_incomplete_normalized(mu, cdouble(0.0, 0.0)) == cdouble(0.0, 0.0));
    CHECK(upper_incomplete_normalized(mu, cdouble(0.0, 0.0)) == cdouble(1.0, 0.0));
}

TEST_CASE("incomplete gamma rejects orders at the gamma poles") {
    CHECK_THROWS_AS(
        (void)lower_incomplete_normalized(cdouble(0.0, 0.0), cdouble(1.0, 0.0)),
        std::domain_error);
    CHECK_THROWS_AS(
        (void)upper_incomplete_normalized(cdouble(-2.0, 0.0), cdouble(1.0, 0.0)),
        std::domain_error);
}
