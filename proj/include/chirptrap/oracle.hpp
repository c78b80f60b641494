#pragma once

#include <complex>
#include <vector>

#include "chirptrap/chirp_integrals.hpp"
#include "chirptrap/normal_modes.hpp"
#include "chirptrap/spectrum.hpp"

namespace chirptrap::oracle {

// Settings for the independent cross-checks of the first-order sweep
// formulas: the explicit double time integral and direct Schroedinger
// integration in a truncated Fock basis.
struct OracleConfig {
    // Sideband coupling Omega_0 * eta (rad/s); 0 means take it from the
    // probe (rabi * lamb_dicke).
    double chi = 0.0;
    int n_max = 2;               // Fock truncation per mode
    double integrator_tol = 1e-13;
    double norm_drift_limit = 1e-9;
    double truncation_limit = 1e-6;

    void validate() const; // throws std::invalid_argument
};

// Excitation probability to first order as the explicit double time
// integral of the phonon vacuum correlation seen by the probed ion,
//
//   P = chi^2 int dt' int dt'' e^{i Delta (t'-t'')}
//         (1/N) sum_p s_mp^2 e^{i phi_p(t')} e^{-i phi_p(t'')},
//
// phi_p(t) = (nu_p/kappa)(e^{kappa t} - e^{kappa t0}), evaluated by nested
// adaptive quadrature without using the factorized form.  Requires a
// finite window.  rel_tol is on the returned probability.
double perturbative_probability(const modes::IonChain& chain,
                                const spectrum::DetectorProbe& probe,
                                const integrals::ChirpProfile& chirp,
                                double rel_tol = 1e-6);

// State of probe + phonon modes in a per-mode Fock basis truncated at
// n_max.  Amplitude layout: index = s * (n_max+1)^N + sum_p n_p (n_max+1)^p
// with s = 0 ground, 1 excited.
struct TruncatedState {
    int n_modes = 1;
    int n_max = 2;
    std::vector<std::complex<double>> amp;

    double norm() const;
    double excited_population() const;
    // Largest population held at the truncation edge n_p = n_max over all
    // modes; gauges how much the cut is being felt.
    double top_level_population() const;
};

struct EvolveResult {
    TruncatedState state;
    double excited_population = 0.0;
    double norm_drift = 0.0;          // | ||psi|| - 1 |
    bool truncation_warning = false;  // top-level population > limit
    long rhs_evaluations = 0;
};

// Direct integration of the interaction-picture Schroedinger equation for
// the probed ion's two-level transition coupled to all N phonon modes,
//
//   H(t)/hbar = chi q_m(t) [ e^{i Delta t} sigma_+ + e^{-i Delta t} sigma_- ],
//   q_m(t) = (i/sqrt(N)) sum_p s_mp [ a_p e^{-i phi_p(t)} - a_p^+ e^{i phi_p(t)} ],
//
// from |ground, vacuum> over the chirp window (finite t_start required),
// with an adaptive 8th-order Runge-Kutta-Fehlberg stepper.  Throws
// accuracy_error if the norm drifts beyond config.norm_drift_limit.
// Practical only for n_ions <= 3 and n_max <= 3 (enforced).
EvolveResult evolve_schrodinger(const OracleConfig& config,
                                const modes::IonChain& chain,
                                const spectrum::DetectorProbe& probe,
                                const integrals::ChirpProfile& chirp);

// Same dynamics with a static trap, phi_p(t) = nu_p t, over [0, t_window].
EvolveResult evolve_constant_trap(const OracleConfig& config,
                                  const modes::IonChain& chain,
                                  const spectrum::DetectorProbe& probe,
                                  double t_window);

// Static-trap first-order lineshape per unit chi^2 and mode weight,
//   |int_0^t e^{i(Delta + nu) t'} dt'|^2 = (2 sin((Delta+nu)t/2)/(Delta+nu))^2,
// peaking at t_window^2 on the blue resonance Delta = -nu.
double constant_trap_response(const spectrum::DetectorProbe& probe, double nu,
                              double t_window);

} // namespace chirptrap::oracle
