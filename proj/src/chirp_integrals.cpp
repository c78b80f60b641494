// Window response integrals of an exponentially chirped oscillator.
//
// The reduced integral  J(a,b; y0,yT) = int y^{ia-1} e^{i s b y} dy  is
// evaluated two independent ways: direct oscillatory quadrature on panels
// sized to bound the local phase increment  a ln y + b y, and the closed
// form through Gamma and the normalized incomplete gamma functions.  The
// infinite-window limit reduces to the thermal (Planck) modulus
// 2 pi / (a (e^{2 pi a} - 1)), the analog of a uniformly accelerated
// detector's noise spectrum with Unruh temperature kappa / 2 pi.

#include "chirptrap/chirp_integrals.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "chirptrap/errors.hpp"
#include "chirptrap/quadrature.hpp"
#include "chirptrap/special_functions.hpp"

namespace chirptrap::integrals {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
using specfun::cdouble;

// Panel edges in y keeping each panel's phase increment of
// theta(y) = |a| ln y + b y below about one radian, so the 15-point rule
// resolves the oscillation before adaptivity refines further.
std::vector<double> phase_bounded_edges(double a, double b, double y_lo,
                                        double y_hi) {
    constexpr double kMaxPhase = 1.0;
    constexpr std::size_t kMaxPanels = 4'000'000;
    std::vector<double> edges;
    edges.push_back(y_lo);
    double y = y_lo;
    while (y < y_hi) {
        double dy = kMaxPhase / (std::abs(a) / y + b);
        dy = std::min(dy, y); // never more than double y per panel
        y = std::min(y + dy, y_hi);
        edges.push_back(y);
        if (edges.size() > kMaxPanels) {
            throw accuracy_error(
                "integral_quadrature: window needs too many oscillation panels",
                std::numeric_limits<double>::infinity());
        }
    }
    return edges;
}

// Core quadrature of int_{y_lo}^{y_hi} y^{ia-1} e^{i s b y} dy, s = +-1.
quadrature::QuadResult reduced_quadrature(double a, double b, int s,
                                          double y_lo, double y_hi,
                                          double abs_tol) {
    auto f = [a, b, s](double y) -> cdouble {
        // y^{ia-1} e^{i s b y} = (1/y) e^{i (a ln y + s b y)}
        return std::polar(1.0 / y, a * std::log(y) + s * b * y);
    };
    quadrature::QuadOptions opt;
    opt.abs_tol = abs_tol;
    return quadrature::integrate(f, phase_bounded_edges(a, b, y_lo, y_hi), opt);
}

} // namespace

void ChirpProfile::validate() const {
    if (!std::isfinite(kappa) || kappa == 0.0) {
        throw std::invalid_argument("ChirpProfile: kappa must be finite, nonzero");
    }
    if (!std::isfinite(t_stop)) {
        throw std::invalid_argument("ChirpProfile: t_stop must be finite");
    }
    if (std::isnan(t_start) || t_start == std::numeric_limits<double>::infinity()) {
        throw std::invalid_argument("ChirpProfile: t_start must be finite or -inf");
    }
    if (!(t_start <= t_stop)) {
        throw std::invalid_argument("ChirpProfile: window must have t_start <= t_stop");
    }
}

ReducedParams ReducedParams::reduce(double delta, double nu_p,
                                    const ChirpProfile& chirp) {
    chirp.validate();
    if (!(chirp.kappa > 0.0)) {
        throw std::invalid_argument("ReducedParams: reduction needs kappa > 0");
    }
    ReducedParams p;
    p.a = delta / chirp.kappa;
    p.b = nu_p / chirp.kappa;
    p.y0 = std::exp(chirp.kappa * chirp.t_start); // exp(-inf) == 0 exactly
    p.yt = std::exp(chirp.kappa * chirp.t_stop);
    p.validate();
    return p;
}

void ReducedParams::validate() const {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(y0) ||
        !std::isfinite(yt)) {
        throw std::invalid_argument("ReducedParams: parameters must be finite");
    }
    if (!(b > 0.0)) {
        throw std::invalid_argument("ReducedParams: need b > 0");
    }
    if (!(y0 >= 0.0) || !(yt >= y0)) {
        throw std::invalid_argument("ReducedParams: need 0 <= y0 <= yt");
    }
}

ChirpIntegral integral_quadrature(const ReducedParams& p, double kappa,
                                  double abs_tol) {
    p.validate();
    if (!(kappa > 0.0)) {
        throw std::invalid_argument("integral_quadrature: needs kappa > 0");
    }
    if (!(p.y0 > 0.0)) {
        throw std::invalid_argument(
            "integral_quadrature: y0 must be positive (finite window start)");
    }
    ChirpIntegral out;
    out.method = Method::quadrature;
    if (p.y0 == p.yt) {
        return out; // empty window
    }
    // Default tolerance: 1e-9 of the elapsed chirp time, as an absolute
    // error on the value (in seconds).
    const double tol_j = (abs_tol > 0.0 ? abs_tol * kappa
                                        : 1e-9 * std::log(p.yt / p.y0));
    const auto q = reduced_quadrature(p.a, p.b, +1, p.y0, p.yt, tol_j);
    out.value = q.value / kappa;
    out.abs_sq = std::norm(out.value);
    out.err_estimate = q.err_estimate / kappa;
    return out;
}

ChirpIntegral integral_closed_finite(const ReducedParams& p, double kappa) {
    p.validate();
    if (!(kappa > 0.0)) {
        throw std::invalid_argument("integral_closed_finite: needs kappa > 0");
    }
    if (p.a == 0.0) {
        throw std::domain_error(
            "integral_closed_finite: zero detuning is outside the closed form");
    }
    if (!(p.yt > 0.0)) {
        throw std::domain_error("integral_closed_finite: needs yT > 0");
    }
    const cdouble ia(0.0, p.a);
    cdouble bracket = 1.0 - specfun::upper_incomplete_normalized(
                                ia, cdouble(0.0, -p.b * p.yt));
    double tail_mag = 0.0;
    if (p.y0 > 0.0) {
        const cdouble head = specfun::lower_incomplete_normalized(
            ia, cdouble(0.0, -p.b * p.y0));
        bracket -= head;
        tail_mag = std::abs(head);
    }
    // (-i b)^{-ia} Gamma(ia) = b^{-ia} e^{-a pi/2} Gamma(ia), principal branch.
    const cdouble prefactor =
        std::exp(specfun::log_gamma(ia) -
                 cdouble(0.5 * kPi * p.a, p.a * std::log(p.b)));
    ChirpIntegral out;
    out.method = Method::closed_finite;
    out.value = prefactor * bracket / kappa;
    out.abs_sq = std::norm(out.value);
    // Each gamma evaluation is good to ~1e-13 relative; the bracket may
    // cancel, so scale the estimate by the terms' magnitudes.
    out.err_estimate =
        5e-14 * std::abs(prefactor) * (2.0 + tail_mag + std::abs(bracket)) /
        kappa;
    return out;
}

ChirpIntegral integral_closed_infinite(double a, double kappa) {
    if (!(kappa > 0.0)) {
        throw std::invalid_argument("integral_closed_infinite: needs kappa > 0");
    }
    if (a == 0.0 || !std::isfinite(a)) {
        throw std::domain_error(
            "integral_closed_infinite: zero detuning is outside the closed form");
    }
    ChirpIntegral out;
    out.method = Method::closed_infinite;
    out.value = std::exp(specfun::log_gamma(cdouble(0.0, a)) - 0.5 * kPi * a) /
                kappa;
    // |Gamma(ia)|^2 e^{-pi a} = 2 pi / (a (e^{2 pi a} - 1)); expm1 keeps the
    // blue side (a < 0) and small |a| exact.
    out.abs_sq = 2.0 * kPi / (kappa * kappa * a * std::expm1(2.0 * kPi * a));
    out.err_estimate = 1e-13 * std::abs(out.value);
    return out;
}

ChirpIntegral window_integral_quadrature(double delta, double nu_p,
                                         const ChirpProfile& chirp,
                                         double abs_tol) {
    chirp.validate();
    if (!std::isfinite(chirp.t_start)) {
        throw std::invalid_argument(
            "window_integral_quadrature: needs a finite t_start");
    }
    if (chirp.kappa > 0.0) {
        return integral_quadrature(ReducedParams::reduce(delta, nu_p, chirp),
                                   chirp.kappa, abs_tol);
    }
    // Down-chirp: y = e^{kappa t} runs downhill, so the window maps to
    // [y(t_stop), y(t_start)] and the oscillatory kernel conjugates:
    //   I = (1/|kappa|) int y^{i a - 1} e^{-i b y} dy,  a = delta/kappa,
    //   b = nu_p / |kappa|.
    const double mag_kappa = -chirp.kappa;
    const double a = delta / chirp.kappa;
    const double b = nu_p / mag_kappa;
    if (!(b > 0.0) || !std::isfinite(b)) {
        throw std::invalid_argument(
            "window_integral_quadrature: needs nu_p > 0");
    }
    const double y_lo = std::exp(chirp.kappa * chirp.t_stop);
    const double y_hi = std::exp(chirp.kappa * chirp.t_start);
    ChirpIntegral out;
    out.method = Method::quadrature;
    if (y_lo == y_hi) {
        return out;
    }
    const double tol_j =
        (abs_tol > 0.0 ? abs_tol * mag_kappa
                       : 1e-9 * (chirp.t_stop - chirp.t_start) * mag_kappa);
    const auto q = reduced_quadrature(a, b, -1, y_lo, y_hi, tol_j);
    out.value = q.value / mag_kappa;
    out.abs_sq = std::norm(out.value);
    out.err_estimate = q.err_estimate / mag_kappa;
    return out;
}

double rindler_noise_spectrum(double delta, double accel_freq) {
    if (!(accel_freq > 0.0) || !std::isfinite(accel_freq)) {
        throw std::invalid_argument(
            "rindler_noise_spectrum: acceleration frequency must be positive");
    }
    if (delta == 0.0 || !std::isfinite(delta)) {
        throw std::domain_error("rindler_noise_spectrum: needs nonzero detuning");
    }
    return integral_closed_infinite(delta / accel_freq, accel_freq).abs_sq;
}

} // namespace chirptrap::integrals
