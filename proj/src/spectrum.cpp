// First-order sideband excitation spectra of a probed ion under an
// exponential trap chirp.
//
// Long-window red/blue probabilities carry the Planck factor at the Unruh
// temperature kappa/(2 pi); the finite-window form multiplies the same
// thermal modulus by each mode's windowed bracket of normalized incomplete
// gamma functions.  All overflow-prone Planck denominators go through
// expm1 so deep tails degrade to zero instead of NaN.

#include "chirptrap/spectrum.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "chirptrap/special_functions.hpp"

namespace chirptrap::spectrum {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
using specfun::cdouble;

void require_up_chirp(double kappa, const char* who) {
    if (!(kappa > 0.0) || !std::isfinite(kappa)) {
        throw std::invalid_argument(std::string(who) + ": needs kappa > 0");
    }
}

} // namespace

void DetectorProbe::validate(int n_ions) const {
    if (!std::isfinite(detuning)) {
        throw std::invalid_argument("DetectorProbe: detuning must be finite");
    }
    if (!(rabi >= 0.0) || !std::isfinite(rabi)) {
        throw std::invalid_argument("DetectorProbe: rabi must be >= 0");
    }
    if (!(lamb_dicke >= 0.0) || !std::isfinite(lamb_dicke)) {
        throw std::invalid_argument("DetectorProbe: lamb_dicke must be >= 0");
    }
    if (ion_index < 1 || ion_index > n_ions) {
        throw std::invalid_argument("DetectorProbe: ion_index out of range");
    }
}

double red_probability(const modes::IonChain& chain, const DetectorProbe& probe,
                       double kappa) {
    probe.validate(chain.n_ions);
    require_up_chirp(kappa, "red_probability");
    if (!(probe.detuning > 0.0)) {
        throw std::domain_error("red_probability: needs detuning > 0");
    }
    const double chi = probe.chi();
    const double w = chain.mode_weight(probe.ion_index);
    const double z = 2.0 * kPi * probe.detuning / kappa;
    return chi * chi * w * 2.0 * kPi /
           (kappa * probe.detuning * std::expm1(z));
}

double blue_probability(const modes::IonChain& chain, const DetectorProbe& probe,
                        double kappa) {
    probe.validate(chain.n_ions);
    require_up_chirp(kappa, "blue_probability");
    if (!(probe.detuning < 0.0)) {
        throw std::domain_error("blue_probability: needs detuning < 0");
    }
    const double chi = probe.chi();
    const double w = chain.mode_weight(probe.ion_index);
    const double mag = -probe.detuning;
    const double z = 2.0 * kPi * mag / kappa;
    // 1/(1 - e^{-z}) = 1/(-expm1(-z)); exact for small and large z alike.
    return chi * chi * w * 2.0 * kPi / (kappa * mag * (-std::expm1(-z)));
}

double finite_chirp_probability(const modes::IonChain& chain,
                                const DetectorProbe& probe,
                                const integrals::ChirpProfile& chirp) {
    probe.validate(chain.n_ions);
    chirp.validate();
    require_up_chirp(chirp.kappa, "finite_chirp_probability");
    if (probe.detuning == 0.0) {
        throw std::domain_error(
            "finite_chirp_probability: zero detuning is outside the closed form");
    }
    const double kappa = chirp.kappa;
    const double a = probe.detuning / kappa;
    const double y0 = std::exp(kappa * chirp.t_start);
    const double yt = std::exp(kappa * chirp.t_stop);
    const cdouble ia(0.0, a);

    // Thermal modulus 2 pi / (a (e^{2 pi a} - 1)), shared by every mode.
    const double thermal =
        2.0 * kPi / (kappa * kappa * a * std::expm1(2.0 * kPi * a));

    double sum = 0.0;
    const int m = probe.ion_index - 1;
    for (int p = 0; p < chain.n_ions; ++p) {
        const double mu = chain.mode_eigenvalues[p];
        const double b_p = chain.nu * std::sqrt(mu) / kappa;
        cdouble bracket = 1.0 - specfun::upper_incomplete_normalized(
                                    ia, cdouble(0.0, -b_p * yt));
        if (y0 > 0.0) {
            bracket -= specfun::lower_incomplete_normalized(
                ia, cdouble(0.0, -b_p * y0));
        }
        const double bmp = chain.mode_matrix(m, p);
        sum += bmp * bmp / std::sqrt(mu) * std::norm(bracket);
    }
    const double chi = probe.chi();
    return chi * chi * thermal * sum;
}

double sideband_ratio(double nu, double kappa) {
    if (!(nu > 0.0) || !std::isfinite(nu)) {
        throw std::invalid_argument("sideband_ratio: needs nu > 0");
    }
    require_up_chirp(kappa, "sideband_ratio");
    return std::exp(-2.0 * kPi * nu / kappa);
}

double unruh_temperature(double kappa) {
    if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
        throw std::invalid_argument("unruh_temperature: needs kappa >= 0");
    }
    return kappa / (2.0 * kPi);
}

double prefactor(const DetectorProbe& probe, double nu) {
    if (!(nu > 0.0) || !std::isfinite(nu)) {
        throw std::invalid_argument("prefactor: needs nu > 0");
    }
    const double r = probe.chi() / nu;
    return r * r;
}

RegimeFlags chirp_regime(const modes::IonChain& chain,
                         const integrals::ChirpProfile& chirp) {
    chirp.validate();
    require_up_chirp(chirp.kappa, "chirp_regime");
    RegimeFlags flags;
    const double yt = std::exp(chirp.kappa * chirp.t_stop);
    // Slowest test on the fastest mode, window test on the slowest mode.
    const double nu_max = chain.mode_frequency(chain.n_ions);
    const double nu_min = chain.mode_frequency(1);
    flags.slow_modes = nu_max / chirp.kappa <= 0.01;
    flags.long_window = (nu_min / chirp.kappa) * yt >= 100.0;
    flags.quasi_thermal = flags.slow_modes && flags.long_window;
    return flags;
}

bool perturbative_ok(double probability) { return probability <= 0.1; }

SpectrumPoint evaluate_point(const modes::IonChain& chain,
                             const DetectorProbe& probe,
                             const integrals::ChirpProfile& chirp) {
    SpectrumPoint pt;
    pt.detuning = probe.detuning;
    pt.unruh_temp = unruh_temperature(chirp.kappa);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (probe.detuning > 0.0) {
        pt.p_red = red_probability(chain, probe, chirp.kappa);
        pt.p_blue = nan;
    } else {
        pt.p_blue = blue_probability(chain, probe, chirp.kappa);
        pt.p_red = nan;
    }
    pt.p_finite = finite_chirp_probability(chain, probe, chirp);
    return pt;
}

} // namespace chirptrap::spectrum
