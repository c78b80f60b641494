// Oracle checks: direct Schroedinger evolution and the explicit double
// time integral against values frozen from an independent integrator, the
// closed-form spectrum as the common reference, and the static-trap
// lineshape limits.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "chirptrap/errors.hpp"
#include "chirptrap/oracle.hpp"

using namespace chirptrap;
using oracle::OracleConfig;
using spectrum::DetectorProbe;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
} // namespace

TEST_CASE("static-trap blue resonance reproduces the frozen amplitude") {
    // chi t = 0.01: first order predicts (chi t)^2, the exact evolution
    // sits a hair below; both the frozen reference and the bound check it.
    const auto chain = modes::IonChain::build(1, 1.0);
    const DetectorProbe probe{-1.0, 0.01, 1.0, 1};
    OracleConfig config;
    const auto r = oracle::evolve_constant_trap(config, chain, probe, 1.0);
    CHECK(r.excited_population ==
          doctest::Approx(9.999121349e-5).epsilon(1e-6));
    CHECK(r.norm_drift < 1e-9);
    CHECK_FALSE(r.truncation_warning);
    CHECK(r.excited_population < 1e-4); // strictly below first order
}

TEST_CASE("chirped evolution matches the frozen reference and closed form") {
    const auto chain = modes::IonChain::build(1, 1.0);
    const DetectorProbe probe{1.0, 0.01, 1.0, 1};
    const integrals::ChirpProfile chirp{1.0, 0.0, std::log(10.0)};
    OracleConfig config;
    const auto r = oracle::evolve_schrodinger(config, chain, probe, chirp);
    CHECK(r.excited_population == doctest::Approx(1.955453985e-5).epsilon(1e-5));
    CHECK(r.norm_drift < 1e-9);
    CHECK_FALSE(r.truncation_warning);
    const double closed = spectrum::finite_chirp_probability(chain, probe, chirp);
    CHECK(std::abs(r.excited_population - closed) / closed < 0.01);
}

TEST_CASE("double time integral matches the frozen reference and closed form") {
    const auto chain = modes::IonChain::build(1, 1.0);
    const DetectorProbe probe{1.0, 0.01, 1.0, 1};
    const integrals::ChirpProfile chirp{1.0, 0.0, std::log(10.0)};
    const double p = oracle::perturbative_probability(chain, probe, chirp);
    CHECK(p == doctest::Approx(1.95560359478e-5).epsilon(1e-5));
    const double closed = spectrum::finite_chirp_probability(chain, probe, chirp);
    CHECK(std::abs(p - closed) / closed < 1e-4);
}

TEST_CASE("double time integral agrees with the closed form for two ions") {
    const auto chain = modes::IonChain::build(2, 1.0);
    const DetectorProbe probe{0.8, 0.01, 1.0, 1};
    const integrals::ChirpProfile chirp{1.0, 0.0, std::log(5.0)};
    const double p = oracle::perturbative_probability(chain, probe, chirp);
    const double closed = spectrum::finite_chirp_probability(chain, probe, chirp);
    CHECK(std::abs(p - closed) / closed < 1e-4);
}

TEST_CASE("static-trap lineshape peaks on the blue resonance") {
    const DetectorProbe on_peak{-1.0, 0.01, 1.0, 1};
    CHECK(oracle::constant_trap_response(on_peak, 1.0, 7.0) ==
          doctest::Approx(49.0).epsilon(1e-12));
    // generic point against the explicit sinc form
    const DetectorProbe off{-0.6, 0.01, 1.0, 1};
    const double s = off.detuning + 1.0;
    const double t = 3.7;
    const double want = std::pow(2.0 * std::sin(0.5 * s * t) / s, 2);
    CHECK(oracle::constant_trap_response(off, 1.0, t) ==
          doctest::Approx(want).epsilon(1e-13));
    CHECK(oracle::constant_trap_response(on_peak, 1.0, 0.0) == 0.0);
}

TEST_CASE("red-detuned static drive is suppressed by orders of magnitude") {
    const double t = 100.0 * kPi;
    const DetectorProbe red{1.0, 0.01, 1.0, 1};
    const double peak = t * t;
    CHECK(oracle::constant_trap_response(red, 1.0, t) < 1e-3 * peak);
}

TEST_CASE("strong static drive raises the truncation warning") {
    const auto chain = modes::IonChain::build(1, 1.0);
    const DetectorProbe probe{-1.0, 0.3, 1.0, 1};
    OracleConfig config;
    const auto r = oracle::evolve_constant_trap(config, chain, probe, 3.0);
    CHECK(r.truncation_warning);
    CHECK(r.state.top_level_population() > config.truncation_limit);
}

TEST_CASE("truncated-state bookkeeping") {
    oracle::TruncatedState st;
    st.n_modes = 1;
    st.n_max = 2;
    st.amp.assign(6, {0.0, 0.0});
    st.amp[1] = {0.6, 0.0};           // ground, n = 1
    st.amp[4] = {0.0, 0.8};           // excited, n = 1
    CHECK(st.norm() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(st.excited_population() == doctest::Approx(0.64).epsilon(1e-15));
    CHECK(st.top_level_population() == 0.0);
    st.amp[5] = {0.1, 0.0};           // excited, n = 2 (truncation edge)
    CHECK(st.top_level_population() == doctest::Approx(0.01).epsilon(1e-15));
}

TEST_CASE("oracle rejects invalid setups") {
    const auto chain = modes::IonChain::build(1, 1.0);
    const DetectorProbe probe{1.0, 0.01, 1.0, 1};
    OracleConfig config;

    OracleConfig bad = config;
    bad.n_max = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = config;
    bad.integrator_tol = 1e-3;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = config;
    bad.chi = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    CHECK_THROWS_AS(
        (void)oracle::evolve_constant_trap(config, chain, probe, 0.0),
        std::invalid_argument);
    const auto big = modes::IonChain::build(4, 1.0);
    const DetectorProbe probe4{1.0, 0.01, 1.0, 1};
    const integrals::ChirpProfile chirp{1.0, 0.0, 1.0};
    CHECK_THROWS_AS(
        (void)oracle::evolve_schrodinger(config, big, probe4, chirp),
        std::invalid_argument);
    const integrals::ChirpProfile from_past{
        1.0, -std::numeric_limits<double>::infinity(), 1.0};
    CHECK_THROWS_AS(
        (void)oracle::evolve_schrodinger(config, chain, probe, from_past),
        std::invalid_argument);
    CHECK_THROWS_AS(
        (void)oracle::perturbative_probability(chain, probe, from_past),
        std::invalid_argument);
}
