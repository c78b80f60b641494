#pragma once

#include "chirptrap/chirp_integrals.hpp"
#include "chirptrap/normal_modes.hpp"

namespace chirptrap::spectrum {

// Two-level probe transition driven on one ion of the chain.  detuning is
// omega_atom - omega_laser (rad/s): positive selects the red sideband,
// negative the blue.  rabi is the bare Rabi frequency Omega_0 (rad/s), and
// lamb_dicke the Lamb-Dicke parameter eta; their product is the sideband
// coupling chi.
struct DetectorProbe {
    double detuning = 0.0;
    double rabi = 0.0;
    double lamb_dicke = 0.0;
    int ion_index = 1; // 1-based

    double chi() const { return rabi * lamb_dicke; }
    void validate(int n_ions) const; // throws std::invalid_argument
};

// Long-window excitation probabilities of the probe under an exponential
// up-chirp, to first order in chi.  Red sideband (detuning > 0): thermal
// Planck response at the Unruh temperature kappa/(2 pi),
//
//   P_red = chi^2 w_m (2 pi / (kappa Delta)) / (e^{2 pi Delta/kappa} - 1),
//
// with w_m the probed ion's mode weight.  Blue sideband (detuning < 0) is
// the stimulated branch with 1/(1 - e^{-2 pi |Delta|/kappa}).  Both throw
// std::domain_error when the detuning sign does not match and
// std::invalid_argument for kappa <= 0.
double red_probability(const modes::IonChain& chain, const DetectorProbe& probe,
                       double kappa);
double blue_probability(const modes::IonChain& chain, const DetectorProbe& probe,
                        double kappa);

// Finite-window excitation probability for an up-chirp: the thermal factor
// times the windowed bracket of each mode,
//
//   P = chi^2 * 2 pi / (kappa^2 a (e^{2 pi a} - 1))
//         * sum_p (b_m^(p))^2 / sqrt(mu_p) * |1 - P(ia,-ib_p y0) - Q(ia,-ib_p yT)|^2,
//
// a = Delta/kappa, b_p = nu_p/kappa.  chirp.t_start may be -infinity.
double finite_chirp_probability(const modes::IonChain& chain,
                                const DetectorProbe& probe,
                                const integrals::ChirpProfile& chirp);

// Ratio of red- to blue-sideband probabilities at |detuning| = nu in the
// long-window limit: exp(-2 pi nu / kappa).  A measured ratio on a line
// pair therefore reads out the chirp temperature directly.
double sideband_ratio(double nu, double kappa);

// Unruh temperature of the chirp in frequency units (k_B T / hbar), i.e.
// kappa / (2 pi); zero chirp gives zero temperature.
double unruh_temperature(double kappa);

// Common scale (Omega_0 eta / nu)^2 of both sidebands at |detuning| = nu.
double prefactor(const DetectorProbe& probe, double nu);

// Validity of the analog regime for a chain under a given chirp.
struct RegimeFlags {
    bool slow_modes = false;  // all nu_p / kappa <= 0.01
    bool long_window = false; // all b_p yT >= 100
    bool quasi_thermal = false;
};
RegimeFlags chirp_regime(const modes::IonChain& chain,
                         const integrals::ChirpProfile& chirp);

// First-order perturbation theory is trusted only while the excitation
// probability stays small.
bool perturbative_ok(double probability);

// One sweep sample: probabilities at a single detuning.  Exactly one of
// p_red / p_blue is populated (by detuning sign); the other is NaN.
struct SpectrumPoint {
    double detuning = 0.0;
    double p_red = 0.0;
    double p_blue = 0.0;
    double p_finite = 0.0;
    double unruh_temp = 0.0;
};
SpectrumPoint evaluate_point(const modes::IonChain& chain,
                             const DetectorProbe& probe,
                             const integrals::ChirpProfile& chirp);

} // namespace chirptrap::spectrum
