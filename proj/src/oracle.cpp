// Independent cross-checks of the factorized first-order spectra.
//
// Route one: the excitation probability as an explicit double time
// integral of the phonon vacuum correlation, done by nested adaptive
// quadrature that never sees the factorized form.  Route two: direct
// integration of the time-dependent Schroedinger equation in a truncated
// Fock basis with an adaptive 8th-order Runge-Kutta-Fehlberg stepper.
// Agreement of both with the closed-form spectra, plus norm conservation
// and an explicit truncation-population gauge, validates the whole chain.

#include "chirptrap/oracle.hpp"

#include <algorithm>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "chirptrap/errors.hpp"
#include "chirptrap/quadrature.hpp"

namespace chirptrap::oracle {

namespace {

using cdouble = std::complex<double>;
using state_type = std::vector<cdouble>;

// Time panels bounding the local phase rate |Delta| + nu_max e^{kappa t}
// to roughly one radian per panel, so the quadrature rule starts resolved.
std::vector<double> time_panels(double t0, double t1, double delta,
                                double nu_max, double kappa) {
    constexpr double kMaxPhase = 1.0;
    std::vector<double> edges{t0};
    double t = t0;
    while (t < t1) {
        double rate = std::abs(delta) + nu_max * std::exp(kappa * t);
        double dt = kMaxPhase / rate;
        if (kappa != 0.0) dt = std::min(dt, 0.5 / std::abs(kappa));
        t = std::min(t + dt, t1);
        edges.push_back(t);
        if (edges.size() > 2'000'000) {
            throw accuracy_error("time_panels: window too oscillatory", 0.0);
        }
    }
    return edges;
}

double resolved_chi(const OracleConfig& config,
                    const spectrum::DetectorProbe& probe) {
    return config.chi > 0.0 ? config.chi : probe.chi();
}

// Right-hand side of the interaction-picture Schroedinger equation for the
// probe's two-level transition coupled to all phonon modes.  Basis layout:
// index = s * (n_max+1)^N + sum_p n_p (n_max+1)^p, s = 0 ground, 1 excited.
struct SchrodingerRhs {
    int n_modes = 1;
    int base = 3;       // n_max + 1
    int dim_phonon = 3; // base^N
    double delta = 0.0;
    std::vector<double> coef;    // chi * s_mp / sqrt(N) per mode
    std::vector<double> nu_mode; // mode frequencies
    std::vector<int> stride;     // base^p, one per mode
    double kappa = 0.0; // 0 -> static trap
    double t_ref = 0.0; // phase reference time (window start)
    long* evals = nullptr;

    // Mode phase phi_p(t): chirped (nu_p/kappa)(e^{kappa t}-e^{kappa t_ref})
    // or static nu_p (t - t_ref); the offset is a mode-frame choice that
    // leaves populations invariant but keeps phases O(1) numerically.
    double phase(int p, double t) const {
        if (kappa != 0.0) {
            return nu_mode[p] / kappa *
                   (std::exp(kappa * t) - std::exp(kappa * t_ref));
        }
        return nu_mode[p] * (t - t_ref);
    }

    void operator()(const state_type& psi, state_type& dpsi, double t) const {
        if (evals) ++(*evals);
        std::fill(dpsi.begin(), dpsi.end(), cdouble(0.0, 0.0));
        std::vector<cdouble> up(n_modes); // e^{+i phi_p}
        for (int p = 0; p < n_modes; ++p) {
            up[p] = std::polar(1.0, phase(p, t));
        }
        const cdouble tf_ground = std::polar(1.0, delta * t);  // sigma_+arm
        const cdouble tf_excited = std::conj(tf_ground);       // sigma_- arm
        const cdouble minus_i(0.0, -1.0);
        for (int idx = 0; idx < static_cast<int>(psi.size()); ++idx) {
            const cdouble c = psi[idx];
            if (c == cdouble(0.0, 0.0)) continue;
            const int s = idx / dim_phonon;
            const int phonon = idx % dim_phonon;
            const int flipped = (1 - s) * dim_phonon + phonon;
            const cdouble tf = (s == 0) ? tf_ground : tf_excited;
            for (int p = 0; p < n_modes; ++p) {
                const int n_p = (phonon / stride[p]) % base;
                // a_p lowers: i coef sqrt(n) e^{-i phi}
                if (n_p > 0) {
                    const cdouble h = cdouble(0.0, coef[p]) *
                                      std::sqrt(double(n_p)) *
                                      std::conj(up[p]) * tf;
                    dpsi[flipped - stride[p]] += minus_i * h * c;
                }
                // a_p^+ raises: -i coef sqrt(n+1) e^{+i phi}
                if (n_p < base - 1) {
                    const cdouble h = cdouble(0.0, -coef[p]) *
                                      std::sqrt(double(n_p + 1)) * up[p] * tf;
                    dpsi[flipped + stride[p]] += minus_i * h * c;
                }
            }
        }
    }
};

EvolveResult integrate_window(SchrodingerRhs rhs, const OracleConfig& config,
                              double t0, double t1) {
    const int dim = 2 * rhs.dim_phonon;
    state_type psi(dim, cdouble(0.0, 0.0));
    psi[0] = 1.0; // |ground, vacuum>

    long evals = 0;
    rhs.evals = &evals;

    namespace ode = boost::numeric::odeint;
    using stepper_type = ode::runge_kutta_fehlberg78<state_type>;
    auto stepper = ode::make_controlled(config.integrator_tol,
                                        config.integrator_tol, stepper_type());
    const double dt0 = (t1 - t0) / 1000.0;
    ode::integrate_adaptive(stepper, rhs, psi, t0, t1, dt0);

    EvolveResult out;
    out.state.n_modes = rhs.n_modes;
    out.state.n_max = rhs.base - 1;
    out.state.amp = psi;
    out.rhs_evaluations = evals;
    out.norm_drift = std::abs(out.state.norm() - 1.0);
    if (out.norm_drift > config.norm_drift_limit) {
        throw accuracy_error("evolve: integrator norm drift beyond limit",
                             out.norm_drift);
    }
    out.excited_population = out.state.excited_population();
    out.truncation_warning =
        out.state.top_level_population() > config.truncation_limit;
    return out;
}

SchrodingerRhs make_rhs(const OracleConfig& config,
                        const modes::IonChain& chain,
                        const spectrum::DetectorProbe& probe) {
    SchrodingerRhs rhs;
    rhs.n_modes = chain.n_ions;
    rhs.base = config.n_max + 1;
    rhs.dim_phonon = 1;
    for (int p = 0; p < rhs.n_modes; ++p) rhs.dim_phonon *= rhs.base;
    rhs.delta = probe.detuning;
    const double chi = resolved_chi(config, probe);
    const double root_n = std::sqrt(static_cast<double>(chain.n_ions));
    rhs.coef.resize(rhs.n_modes);
    rhs.nu_mode.resize(rhs.n_modes);
    rhs.stride.resize(rhs.n_modes);
    int stride = 1;
    for (int p = 0; p < rhs.n_modes; ++p) {
        rhs.coef[p] =
            chi * chain.mode_couplings(probe.ion_index - 1, p) / root_n;
        rhs.nu_mode[p] = chain.mode_frequency(p + 1);
        rhs.stride[p] = stride;
        stride *= rhs.base;
    }
    return rhs;
}

} // namespace

void OracleConfig::validate() const {
    if (!(chi >= 0.0) || !std::isfinite(chi)) {
        throw std::invalid_argument("OracleConfig: chi must be >= 0");
    }
    if (n_max < 1 || n_max > 3) {
        throw std::invalid_argument("OracleConfig: n_max must be in [1, 3]");
    }
    if (!(integrator_tol > 0.0) || integrator_tol > 1e-6) {
        throw std::invalid_argument(
            "OracleConfig: integrator_tol must be in (0, 1e-6]");
    }
    if (!(norm_drift_limit > 0.0) || !(truncation_limit > 0.0)) {
        throw std::invalid_argument("OracleConfig: limits must be positive");
    }
}

double TruncatedState::norm() const {
    double s = 0.0;
    for (const auto& c : amp) s += std::norm(c);
    return std::sqrt(s);
}

double TruncatedState::excited_population() const {
    int dim_phonon = 1;
    for (int p = 0; p < n_modes; ++p) dim_phonon *= n_max + 1;
    double s = 0.0;
    for (std::size_t i = dim_phonon; i < amp.size(); ++i) s += std::norm(amp[i]);
    return s;
}

double TruncatedState::top_level_population() const {
    const int base = n_max + 1;
    int dim_phonon = 1;
    for (int p = 0; p < n_modes; ++p) dim_phonon *= base;
    double worst = 0.0;
    int stride = 1;
    for (int p = 0; p < n_modes; ++p) {
        double pop = 0.0;
        for (std::size_t i = 0; i < amp.size(); ++i) {
            const int phonon = static_cast<int>(i) % dim_phonon;
            if ((phonon / stride) % base == n_max) pop += std::norm(amp[i]);
        }
        worst = std::max(worst, pop);
        stride *= base;
    }
    return worst;
}

double perturbative_probability(const modes::IonChain& chain,
                                const spectrum::DetectorProbe& probe,
                                const integrals::ChirpProfile& chirp,
                                double rel_tol) {
    probe.validate(chain.n_ions);
    chirp.validate();
    if (!std::isfinite(chirp.t_start)) {
        throw std::invalid_argument(
            "perturbative_probability: needs a finite window start");
    }
    if (!(rel_tol > 0.0) || rel_tol > 0.1) {
        throw std::invalid_argument(
            "perturbative_probability: rel_tol must be in (0, 0.1]");
    }
    const double t0 = chirp.t_start;
    const double t1 = chirp.t_stop;
    const double width = t1 - t0;
    if (width == 0.0) return 0.0;

    const int m = probe.ion_index - 1;
    const int n = chain.n_ions;
    std::vector<double> weight(n), nu_mode(n);
    double weight_sum = 0.0;
    for (int p = 0; p < n; ++p) {
        const double smp = chain.mode_couplings(m, p);
        weight[p] = smp * smp / n;
        weight_sum += weight[p];
        nu_mode[p] = chain.mode_frequency(p + 1);
    }
    const double kappa = chirp.kappa;
    const double e_ref = std::exp(kappa * t0);
    auto mode_phase = [&](int p, double t) {
        return nu_mode[p] / kappa * (std::exp(kappa * t) - e_ref);
    };
    // Vacuum correlation of the probed ion's displacement between two times.
    auto correlation = [&](double tp, double tpp) -> cdouble {
        cdouble g(0.0, 0.0);
        for (int p = 0; p < n; ++p) {
            g += weight[p] * std::polar(1.0, mode_phase(p, tp) - mode_phase(p, tpp));
        }
        return g;
    };

    const double nu_max = *std::max_element(nu_mode.begin(), nu_mode.end());
    const std::vector<double> edges =
        time_panels(t0, t1, probe.detuning, nu_max, kappa);

    const double bound = weight_sum * width; // |inner integral| can't exceed
    auto double_integral = [&](double abs_tol) -> cdouble {
        quadrature::QuadOptions inner_opt;
        inner_opt.abs_tol = abs_tol / (2.0 * width);
        inner_opt.max_evaluations = 4'000'000;
        quadrature::QuadOptions outer_opt;
        outer_opt.abs_tol = abs_tol;
        outer_opt.max_evaluations = 40'000'000;
        auto outer = [&](double tp) -> cdouble {
            auto inner = [&](double tpp) -> cdouble {
                return std::polar(1.0, -probe.detuning * tpp) *
                       correlation(tp, tpp);
            };
            const cdouble row =
                quadrature::integrate(inner, edges, inner_opt).value;
            return std::polar(1.0, probe.detuning * tp) * row;
        };
        return quadrature::integrate(outer, edges, outer_opt).value;
    };

    // Two passes: a coarse value sets the scale, then the requested
    // relative tolerance is translated into an absolute one.
    const cdouble coarse = double_integral(1e-3 * bound * bound + 1e-300);
    const double scale = std::max(std::abs(coarse), 1e-9 * bound * bound);
    const cdouble fine = double_integral(0.5 * rel_tol * scale);

    const double chi = probe.chi();
    if (std::abs(fine.imag()) > 10.0 * rel_tol * std::abs(fine) + 1e-300) {
        throw accuracy_error(
            "perturbative_probability: double integral has a spurious "
            "imaginary part",
            std::abs(fine.imag()));
    }
    return chi * chi * fine.real();
}

EvolveResult evolve_schrodinger(const OracleConfig& config,
                                const modes::IonChain& chain,
                                const spectrum::DetectorProbe& probe,
                                const integrals::ChirpProfile& chirp) {
    config.validate();
    probe.validate(chain.n_ions);
    chirp.validate();
    if (chain.n_ions > 3) {
        throw std::invalid_argument(
            "evolve_schrodinger: truncated basis practical only for n_ions <= 3");
    }
    if (!std::isfinite(chirp.t_start)) {
        throw std::invalid_argument(
            "evolve_schrodinger: needs a finite window start");
    }
    SchrodingerRhs rhs = make_rhs(config, chain, probe);
    rhs.kappa = chirp.kappa;
    rhs.t_ref = chirp.t_start;
    return integrate_window(rhs, config, chirp.t_start, chirp.t_stop);
}

EvolveResult evolve_constant_trap(const OracleConfig& config,
                                  const modes::IonChain& chain,
                                  const spectrum::DetectorProbe& probe,
                                  double t_window) {
    config.validate();
    probe.validate(chain.n_ions);
    if (chain.n_ions > 3) {
        throw std::invalid_argument(
            "evolve_constant_trap: truncated basis practical only for n_ions <= 3");
    }
    if (!(t_window > 0.0) || !std::isfinite(t_window)) {
        throw std::invalid_argument(
            "evolve_constant_trap: t_window must be positive");
    }
    SchrodingerRhs rhs = make_rhs(config, chain, probe);
    rhs.kappa = 0.0;
    rhs.t_ref = 0.0;
    return integrate_window(rhs, config, 0.0, t_window);
}

double constant_trap_response(const spectrum::DetectorProbe& probe, double nu,
                              double t_window) {
    if (!(nu > 0.0) || !std::isfinite(nu)) {
        throw std::invalid_argument("constant_trap_response: needs nu > 0");
    }
    if (!(t_window >= 0.0) || !std::isfinite(t_window)) {
        throw std::invalid_argument(
            "constant_trap_response: t_window must be >= 0");
    }
    const double s = probe.detuning + nu;
    if (std::abs(s * t_window) < 1e-8) {
        return t_window * t_window; // blue resonance Delta = -nu
    }
    const double amp = 2.0 * std::sin(0.5 * s * t_window) / s;
    return amp * amp;
}

} // namespace chirptrap::oracle
