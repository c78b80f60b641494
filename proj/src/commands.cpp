// Command implementations for the sweep tool.
//
// Sweep points are independent, so scan / fig3 / oracle-check fan the grid
// out over a thread pool; every row is formatted by its worker and emitted
// strictly in grid order afterwards, so output is byte-identical whatever
// the thread count.  The first exception thrown by any worker is rethrown
// on the main thread with its exit-code semantics intact.

#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "chirptrap/errors.hpp"
#include "chirptrap/normal_modes.hpp"
#include "chirptrap/oracle.hpp"
#include "chirptrap/run_config.hpp"
#include "chirptrap/spectrum.hpp"

namespace chirptrap::cli {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559005768;

std::vector<double> linspace(double lo, double hi, int steps) {
    if (steps < 2) {
        throw config_error("key 'steps' must be >= 2");
    }
    std::vector<double> grid(steps);
    for (int i = 0; i < steps; ++i) {
        grid[i] = lo + (hi - lo) * static_cast<double>(i) /
                           static_cast<double>(steps - 1);
    }
    return grid;
}

// Evaluates fn(i) for i in [0, n) on as many threads as are useful and
// returns the rows in index order.
std::vector<std::string> parallel_rows(
    int n, const std::function<std::string(int)>& fn) {
    std::vector<std::string> rows(n);
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const int workers = static_cast<int>(
        std::min<unsigned>(hw, static_cast<unsigned>(n)));
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) rows[i] = fn(i);
        return rows;
    }
    std::atomic<int> next(0);
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            try {
                for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                    rows[i] = fn(i);
                }
            } catch (...) {
                errors[w] = std::current_exception();
                next.store(n); // stop handing out work
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return rows;
}

void emit(std::ostream& out, const std::vector<std::string>& rows) {
    for (const auto& r : rows) out << r << "\n";
}

int required_positive_int(const RunConfig& config, const char* key, int hi) {
    const int v = config.get_int(key);
    if (v < 1 || v > hi) {
        throw config_error(std::string("key '") + key + "' must be in [1, " +
                           std::to_string(hi) + "]");
    }
    return v;
}

double required_positive(const RunConfig& config, const char* key) {
    const double v = config.get(key);
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw config_error(std::string("key '") + key + "' must be positive");
    }
    return v;
}

// Window end from either t_stop or y_t (= e^{kappa t_stop}); both given is
// ambiguous.
double window_stop(const RunConfig& config, double kappa, double fallback_yt) {
    if (config.has("t_stop") && config.has("y_t")) {
        throw config_error("conflicting keys 't_stop' and 'y_t'");
    }
    if (config.has("t_stop")) return config.get("t_stop");
    const double yt = config.get_or("y_t", fallback_yt);
    if (!(yt > 0.0) || !std::isfinite(yt)) {
        throw config_error("key 'y_t' must be positive");
    }
    return std::log(yt) / kappa;
}

void run_modes(const RunConfig& config, std::ostream& out) {
    const int n = required_positive_int(config, "n", 64);
    const auto chain = modes::IonChain::build(n, 1.0);
    std::ostringstream header;
    header << "p,mu_p";
    for (int m = 1; m <= n; ++m) header << ",b_" << m;
    for (int m = 1; m <= n; ++m) header << ",s_" << m;
    out << header.str() << "\n";
    for (int p = 0; p < n; ++p) {
        std::ostringstream row;
        row << (p + 1) << "," << format_sci(chain.mode_eigenvalues[p]);
        for (int m = 0; m < n; ++m) {
            row << "," << format_sci(chain.mode_matrix(m, p));
        }
        for (int m = 0; m < n; ++m) {
            row << "," << format_sci(chain.mode_couplings(m, p));
        }
        out << row.str() << "\n";
    }
}

void run_scan(const RunConfig& config, std::ostream& out) {
    const int n = config.has("n") ? required_positive_int(config, "n", 64) : 1;
    const double nu = required_positive(config, "nu");
    const double kappa = config.get("kappa");
    if (!(kappa > 0.0) || !std::isfinite(kappa)) {
        throw config_error("scan requires kappa > 0");
    }
    const double delta_min = config.get("delta_min");
    const double delta_max = config.get("delta_max");
    if (!(delta_min < delta_max)) {
        throw config_error("need delta_min < delta_max");
    }
    const int steps = config.get_int("steps");
    const double rabi = required_positive(config, "rabi");
    const double eta = required_positive(config, "eta");

    const double t_stop = window_stop(config, kappa, 100.0);
    const double t_start = config.get_or(
        "t0", -std::numeric_limits<double>::infinity());
    const integrals::ChirpProfile chirp{kappa, t_start, t_stop};
    chirp.validate();

    const std::vector<double> grid = linspace(delta_min, delta_max, steps);
    for (const double d : grid) {
        if (d == 0.0) {
            throw config_error(
                "detuning grid contains zero; shift delta_min/delta_max");
        }
    }

    const auto chain = modes::IonChain::build(n, nu);
    auto row = [&](int i) {
        spectrum::DetectorProbe probe{grid[i], rabi, eta, 1};
        const auto pt = spectrum::evaluate_point(chain, probe, chirp);
        const double sideband = grid[i] > 0.0 ? pt.p_red : pt.p_blue;
        const int valid = spectrum::perturbative_ok(pt.p_finite) ? 1 : 0;
        std::ostringstream os;
        os << format_sci(pt.detuning) << ","
           << format_sci(kTwoPi * pt.detuning / kappa) << ","
           << format_sci(sideband) << "," << format_sci(pt.p_finite) << ","
           << valid;
        return os.str();
    };
    out << "delta,x,p_sideband,p_finite,validity\n";
    emit(out, parallel_rows(steps, row));
}

void run_fig3(const RunConfig& config, std::ostream& out) {
    const double kappa = config.get_or("kappa", 1.0);
    if (!(kappa > 0.0) || !std::isfinite(kappa)) {
        throw config_error("fig3 requires kappa > 0");
    }
    const double nu = config.get_or("nu", 1.0);
    const double rabi = config.get_or("rabi", 1.0);
    const double eta = config.get_or("eta", 1.0);
    const int steps = config.get_int_or("steps", 64);
    // The sweep variable is x = 2 pi Delta / kappa; delta_min/delta_max
    // override the default x-range [0.25, 8].
    const double x_lo = config.get_or("delta_min", 0.25);
    const double x_hi = config.get_or("delta_max", 8.0);
    if (!(x_lo > 0.0) || !(x_hi > x_lo)) {
        throw config_error("fig3 needs 0 < delta_min < delta_max (x-range)");
    }
    const auto chain = modes::IonChain::build(1, nu);
    const double window_yt[3] = {1.0, 10.0, 100.0};
    const std::vector<double> grid = linspace(x_lo, x_hi, steps);
    auto row = [&](int i) {
        const double x = grid[i];
        spectrum::DetectorProbe probe{x * kappa / kTwoPi, rabi, eta, 1};
        std::ostringstream os;
        os << format_sci(x) << ","
           << format_sci(spectrum::red_probability(chain, probe, kappa));
        for (const double yt : window_yt) {
            const integrals::ChirpProfile chirp{
                kappa, -std::numeric_limits<double>::infinity(),
                std::log(yt) / kappa};
            os << ","
               << format_sci(
                      spectrum::finite_chirp_probability(chain, probe, chirp));
        }
        return os.str();
    };
    out << "x,p_infinite,p_yt_1,p_yt_10,p_yt_100\n";
    emit(out, parallel_rows(steps, row));
}

void run_ratio(const RunConfig& config, std::ostream& out) {
    const double nu = required_positive(config, "nu");
    const double kappa = required_positive(config, "kappa");
    out << "nu,kappa,nu_over_kappa,ratio\n";
    out << format_sci(nu) << "," << format_sci(kappa) << ","
        << format_sci(nu / kappa) << ","
        << format_sci(spectrum::sideband_ratio(nu, kappa)) << "\n";
}

void run_oracle_check(const RunConfig& config, std::ostream& out) {
    const int n = config.has("n") ? required_positive_int(config, "n", 3) : 1;
    const double nu = config.get_or("nu", 1.0);
    const double kappa = config.get_or("kappa", 1.0);
    if (!(kappa > 0.0) || !std::isfinite(kappa)) {
        throw config_error("oracle-check requires kappa > 0");
    }
    const double rabi = config.get_or("rabi", 0.01);
    const double eta = config.get_or("eta", 1.0);
    const int steps = config.get_int_or("steps", 8);
    const double t_start = config.get_or("t0", 0.0);
    if (!std::isfinite(t_start)) {
        throw config_error("oracle-check needs a finite t0");
    }
    const double t_stop = window_stop(config, kappa, 10.0);
    if (!(t_stop > t_start)) {
        throw config_error("window end must come after t0");
    }
    oracle::OracleConfig ocfg;
    ocfg.n_max = config.has("n_max") ? required_positive_int(config, "n_max", 3)
                                     : 2;
    const integrals::ChirpProfile chirp{kappa, t_start, t_stop};
    const auto chain = modes::IonChain::build(n, nu);
    const std::vector<double> grid = linspace(0.25, 8.0, steps);
    auto row = [&](int i) {
        const double x = grid[i];
        spectrum::DetectorProbe probe{x * kappa / kTwoPi, rabi, eta, 1};
        const double p_closed =
            spectrum::finite_chirp_probability(chain, probe, chirp);
        const double p_integral =
            oracle::perturbative_probability(chain, probe, chirp);
        const auto evolved = oracle::evolve_schrodinger(ocfg, chain, probe, chirp);
        const double p_schro = evolved.excited_population;
        std::ostringstream os;
        os << format_sci(probe.detuning) << "," << format_sci(x) << ","
           << format_sci(p_closed) << "," << format_sci(p_integral) << ","
           << format_sci(p_schro) << ","
           << format_sci(std::abs(p_integral - p_closed) / p_closed) << ","
           << format_sci(std::abs(p_schro - p_closed) / p_closed) << ","
           << format_sci(evolved.norm_drift) << ","
           << (evolved.truncation_warning ? 1 : 0);
        return os.str();
    };
    out << "delta,x,p_closed,p_double_integral,p_schrodinger,"
           "rel_dev_integral,rel_dev_schrodinger,norm_drift,truncation\n";
    emit(out, parallel_rows(steps, row));
}

} // namespace

void run(const RunConfig& config, std::ostream& out) {
    if (config.command == "modes") {
        run_modes(config, out);
    } else if (config.command == "scan") {
        run_scan(config, out);
    } else if (config.command == "fig3") {
        run_fig3(config, out);
    } else if (config.command == "ratio") {
        run_ratio(config, out);
    } else if (config.command == "oracle-check") {
        run_oracle_check(config, out);
    } else {
        throw config_error("unknown command '" + config.command + "'");
    }
}

} // namespace chirptrap::cli
