#pragma once

#include <complex>

namespace chirptrap::integrals {

// Exponential chirp of the trap frequency, nu(t) = nu * exp(kappa t),
// observed through the window [t_start, t_stop].  kappa > 0 ramps the trap
// up, kappa < 0 down.  t_start may be -infinity (chirp running since the
// infinite past); t_stop must be finite.
struct ChirpProfile {
    double kappa = 0.0;  // chirp rate, 1/s (nonzero)
    double t_start = 0.0;
    double t_stop = 0.0;

    void validate() const; // throws std::invalid_argument
};

// Dimensionless reduction of the window response integral for an up-chirp:
//
//   I = int_{t0}^{T} e^{i Delta t} e^{i (nu_p/kappa) e^{kappa t}} dt
//     = (1/kappa) int_{y0}^{yT} y^{i a - 1} e^{i b y} dy,   y = e^{kappa t},
//
// with a = Delta/kappa, b = nu_p/kappa, y0 = e^{kappa t0}, yT = e^{kappa T}.
// y0 == 0 encodes t0 = -infinity, where the switch-on transient is absent
// exactly.  a == 0 (zero detuning) is outside the domain of the closed
// forms; the closed forms also need yT > 0.
struct ReducedParams {
    double a = 0.0;
    double b = 0.0;
    double y0 = 0.0;
    double yt = 0.0;

    // Reduction for kappa > 0 (throws std::invalid_argument otherwise).
    static ReducedParams reduce(double delta, double nu_p,
                                const ChirpProfile& chirp);

    void validate() const; // b > 0, 0 <= y0 <= yt, all finite
};

enum class Method { quadrature, closed_finite, closed_infinite };

struct ChirpIntegral {
    std::complex<double> value;  // seconds
    double abs_sq = 0.0;         // |value|^2, s^2
    Method method = Method::quadrature;
    double err_estimate = 0.0;   // absolute estimate on |value|
};

// Direct oscillatory quadrature of the reduced integral; requires y0 > 0.
// Initial panels bound the local phase increment so the Gauss-Kronrod rule
// stays in its convergent regime, then adapt.  abs_tol <= 0 selects the
// default 1e-9 * ln(yT/y0) / kappa on the value.
ChirpIntegral integral_quadrature(const ReducedParams& p, double kappa,
                                  double abs_tol = 0.0);

// Closed finite-window form via normalized incomplete gamma functions,
//
//   I = (1/kappa) b^{-ia} e^{-a pi/2} Gamma(ia)
//         * [1 - P(ia, -i b y0) - Q(ia, -i b yT)],
//
// principal branches throughout; y0 == 0 drops the P term exactly.
ChirpIntegral integral_closed_finite(const ReducedParams& p, double kappa);

// Infinite-window limit (y0 -> 0, yT -> infinity):
//   value  = Gamma(ia) e^{-a pi/2} / kappa   (phase quoted at b = 1),
//   abs_sq = 2 pi / (kappa^2 a (e^{2 pi a} - 1)),
// the thermal form, valid for both detuning signs a != 0.
ChirpIntegral integral_closed_infinite(double a, double kappa);

// Window response for either chirp direction through quadrature.  For
// kappa < 0 the substitution y = e^{kappa t} reverses orientation and
// conjugates the oscillatory kernel; no closed form is used.  Requires a
// finite t_start.
ChirpIntegral window_integral_quadrature(double delta, double nu_p,
                                         const ChirpProfile& chirp,
                                         double abs_tol = 0.0);

// Noise power sampled at detuning delta by a detector undergoing uniform
// acceleration with characteristic frequency accel_freq = a/c: the thermal
// |I|^2 of the infinite window with kappa -> accel_freq,
//   S = (2 pi / (accel_freq^2 (delta/accel_freq))) / (e^{2 pi delta/accel_freq} - 1).
double rindler_noise_spectrum(double delta, double accel_freq);

} // namespace chirptrap::integrals
