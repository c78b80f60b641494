// Chirp window integral checks.  The closed gamma-function form and the
// oscillatory quadrature are developed independently, so their agreement
// on a parameter grid is the core correctness argument; both are also
// pinned to values frozen from a high-precision reference, and the
// quadrature engine itself is cross-checked against a test-local Simpson
// integrator.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "chirptrap/chirp_integrals.hpp"
#include "chirptrap/errors.hpp"
#include "oracle_quad.hpp"

using namespace chirptrap::integrals;
using cdouble = std::complex<double>;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

ReducedParams params(double a, double b, double y0, double yt) {
    ReducedParams p;
    p.a = a;
    p.b = b;
    p.y0 = y0;
    p.yt = yt;
    return p;
}
} // namespace

TEST_CASE("closed form matches values frozen from high-precision evaluation") {
    const auto wide = integral_closed_finite(params(1.0, 1.0, 1e-6, 1e6), 1.0);
    CHECK(std::abs(wide.value - cdouble(0.916502314366673528,
                                        0.212610827959401849)) < 1e-12);
    CHECK(wide.abs_sq == doctest::Approx(0.885179856405051242).epsilon(1e-12));

    const auto mid = integral_closed_finite(params(0.5, 0.1, 1.0, 100.0), 1.0);
    CHECK(std::abs(mid.value - cdouble(0.523406551912544007,
                                       1.36702494538024853)) < 1e-12);
}

TEST_CASE("quadrature reproduces the same frozen windows") {
    struct Row {
        double a, b, y0, yt;
        cdouble want;
    };
    const Row rows[] = {
        {1.0, 1.0, 1e-3, 10.0, {0.521408179383, 0.622777275666}},
        {-1.0, 1.0, 1e-3, 10.0, {-0.0551370431409, 1.5550454804}},
        {3.0, 10.0, 0.01, 1e3, {0.296417117562188, 0.12940438712002}},
        {-1.0, 0.1, 0.01, 1e3, {1.27632409236821, -0.943666017237755}},
    };
    for (const auto& r : rows) {
        const auto p = params(r.a, r.b, r.y0, r.yt);
        const auto quad = integral_quadrature(p, 1.0);
        const auto closed = integral_closed_finite(p, 1.0);
        CAPTURE(r.a);
        CAPTURE(r.b);
        CHECK(std::abs(quad.value - r.want) < 5e-8);
        CHECK(std::abs(closed.value - r.want) < 5e-11);
        // the two routes agree far tighter than either matches the
        // 12-digit frozen rendering
        CHECK(std::abs(quad.value - closed.value) < 1e-7 * std::abs(closed.value));
        // and the quadrature's own estimate covers the truth
        CHECK(std::abs(quad.value - closed.value) <=
              10.0 * quad.err_estimate + 1e-12);
    }
}

TEST_CASE("library quadrature agrees with the test-local Simpson rule") {
    const auto p = params(0.5, 1.0, 1.0, 30.0);
    const auto lib = integral_quadrature(p, 1.0);
    const cdouble simpson = testquad::integrate(
        [&](double y) {
            return std::polar(1.0 / y, p.a * std::log(y) + p.b * y);
        },
        p.y0, p.yt, 1e-10, 256);
    CHECK(std::abs(lib.value - simpson) < 1e-8);
    const auto closed = integral_closed_finite(p, 1.0);
    CHECK(std::abs(closed.value - simpson) < 1e-8);
}

TEST_CASE("infinite-window limit carries the thermal modulus") {
    const auto red = integral_closed_infinite(1.0, 1.0);
    CHECK(red.abs_sq == doctest::Approx(0.01175544134736911).epsilon(1e-12));
    const auto blue = integral_closed_infinite(-1.0, 1.0);
    CHECK(blue.abs_sq == doctest::Approx(6.2949407485269556).epsilon(1e-12));
    // the reported value is consistent with the reported modulus
    CHECK(std::norm(red.value) == doctest::Approx(red.abs_sq).epsilon(1e-10));
    CHECK(std::norm(blue.value) == doctest::Approx(blue.abs_sq).epsilon(1e-10));
    // kappa scales the value as 1/kappa
    const auto scaled = integral_closed_infinite(1.0, 2.0);
    CHECK(scaled.abs_sq == doctest::Approx(red.abs_sq / 4.0).epsilon(1e-12));
}

TEST_CASE("finite windows converge monotonically to the infinite limit") {
    const cdouble inf_value = integral_closed_infinite(1.0, 1.0).value;
    const double want[3] = {0.0900919, 0.00989957, 0.000999};
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 3; ++k) {
        const double yt = std::pow(10.0, k + 1); // b yT = 10, 100, 1000
        const auto fin = integral_closed_finite(params(1.0, 1.0, 0.0, yt), 1.0);
        const double dev = std::abs(fin.value - inf_value);
        CAPTURE(yt);
        CHECK(dev == doctest::Approx(want[k]).epsilon(1e-3));
        CHECK(dev < prev);
        prev = dev;
    }
}

TEST_CASE("infinite-past window start reduces to y0 = 0 exactly") {
    ChirpProfile chirp{2.0, -kInf, 1.0};
    const auto p = ReducedParams::reduce(3.0, 4.0, chirp);
    CHECK(p.y0 == 0.0);
    CHECK(p.a == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(p.b == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(p.yt == doctest::Approx(std::exp(2.0)).epsilon(1e-15));
    // y0 = 0 is inside the closed form's domain but not the quadrature's
    CHECK_NOTHROW((void)integral_closed_finite(p, chirp.kappa));
    CHECK_THROWS_AS((void)integral_quadrature(p, chirp.kappa),
                    std::invalid_argument);
}

TEST_CASE("down-chirp window matches the frozen reference") {
    // kappa = -1, nu = 1, delta = 0.7 over t in [0, 2]:
    // int_0^2 e^{i 0.7 t} e^{-i e^{-t}} dt
    ChirpProfile chirp{-1.0, 0.0, 2.0};
    const auto got = window_integral_quadrature(0.7, 1.0, chirp);
    CHECK(std::abs(got.value - cdouble(1.5517872352513429,
                                       0.44654147171451151)) < 1e-9);
    CHECK(got.abs_sq == doctest::Approx(2.6074429094499684).epsilon(1e-9));
}

TEST_CASE("up-chirp dispatch of the window integral uses the reduction") {
    ChirpProfile chirp{1.0, std::log(1e-3), std::log(10.0)};
    const auto via_window = window_integral_quadrature(1.0, 1.0, chirp);
    const auto direct = integral_quadrature(params(1.0, 1.0, 1e-3, 10.0), 1.0);
    CHECK(std::abs(via_window.value - direct.value) < 1e-12);
}

TEST_CASE("noise spectrum of uniform acceleration is the thermal modulus") {
    CHECK(rindler_noise_spectrum(1.0, 1.0) ==
          doctest::Approx(0.01175544134736911).epsilon(1e-12));
    CHECK(rindler_noise_spectrum(-1.0, 1.0) ==
          doctest::Approx(6.2949407485269556).epsilon(1e-12));
    // detailed balance between emission and absorption branches
    const double d = 0.3;
    CHECK(rindler_noise_spectrum(d, 1.0) / rindler_noise_spectrum(-d, 1.0) ==
          doctest::Approx(std::exp(-2.0 * 3.141592653589793 * d)).epsilon(1e-12));
    CHECK_THROWS_AS((void)rindler_noise_spectrum(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)rindler_noise_spectrum(0.0, 1.0), std::domain_error);
}

TEST_CASE("domain violations are rejected") {
    CHECK_THROWS_AS((void)integral_closed_finite(params(0.0, 1.0, 0.0, 1.0), 1.0),
                    std::domain_error);
    CHECK_THROWS_AS((void)integral_closed_infinite(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS((void)integral_closed_finite(params(1.0, 1.0, 0.0, 1.0), -1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)params(1.0, 0.0, 0.0, 1.0).validate(),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)params(1.0, 1.0, -0.5, 1.0).validate(),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)params(1.0, 1.0, 2.0, 1.0).validate(),
                    std::invalid_argument);
    ChirpProfile flat{0.0, 0.0, 1.0};
    CHECK_THROWS_AS(flat.validate(), std::invalid_argument);
    ChirpProfile reversed{1.0, 2.0, 1.0};
    CHECK_THROWS_AS(reversed.validate(), std::invalid_argument);
    ChirpProfile endless{1.0, 0.0, kInf};
    CHECK_THROWS_AS(endless.validate(), std::invalid_argument);
}

TEST_CASE("empty window integrates to zero") {
    const auto z = integral_quadrature(params(1.0, 1.0, 2.0, 2.0), 1.0);
    CHECK(z.value == cdouble(0.0, 0.0));
    CHECK(z.abs_sq == 0.0);
}
