// Equilibrium structure and axial normal modes of a linear ion chain.
//
// Positions follow from a damped Newton solve of the Coulomb/harmonic force
// balance; the Newton matrix is the same Hessian that defines the normal
// modes, so the solve doubles as a consistency check on it.  Eigenpairs
// come from Eigen's self-adjoint solver (ascending eigenvalues), with each
// eigenvector's sign pinned by its largest-magnitude entry.

#include "chirptrap/normal_modes.hpp"

#include <cmath>
#include <stdexcept>

#include "chirptrap/errors.hpp"

namespace chirptrap::modes {

namespace {

constexpr int kMaxNewtonIterations = 200;
constexpr double kResidualTarget = 1e-12;

Eigen::VectorXd force_balance(const Eigen::VectorXd& u) {
    const int n = static_cast<int>(u.size());
    Eigen::VectorXd f = u;
    for (int m = 0; m < n; ++m) {
        for (int p = 0; p < n; ++p) {
            if (p == m) continue;
            const double d = u[m] - u[p];
            // Repulsion pushes ion m away from ion p.
            f[m] -= std::copysign(1.0 / (d * d), d);
        }
    }
    return f;
}

} // namespace

double force_residual(const Eigen::VectorXd& u) {
    return force_balance(u).lpNorm<Eigen::Infinity>();
}

Eigen::MatrixXd hessian(const Eigen::VectorXd& u) {
    const int n = static_cast<int>(u.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int m = 0; m < n; ++m) {
        double diag = 1.0;
        for (int p = 0; p < n; ++p) {
            if (p == m) continue;
            const double w = 2.0 / std::pow(std::abs(u[m] - u[p]), 3);
            diag += w;
            a(m, p) = -w;
        }
        a(m, m) = diag;
    }
    return a;
}

Eigen::VectorXd equilibrium_positions(int n_ions) {
    if (n_ions < 1) {
        throw std::invalid_argument("equilibrium_positions: need n_ions >= 1");
    }
    const int n = n_ions;
    // Uniform starting chain; 1.06 spacing is close to the true minimum
    // spacing for small chains and keeps Newton in its basin up to N ~ 10.
    Eigen::VectorXd u(n);
    for (int m = 0; m < n; ++m) {
        u[m] = (m - 0.5 * (n - 1)) * 1.06;
    }
    double res = force_residual(u);
    for (int it = 0; it < kMaxNewtonIterations; ++it) {
        if (res < kResidualTarget) return u;
        const Eigen::VectorXd step = hessian(u).ldlt().solve(force_balance(u));
        // Backtrack until the residual actually drops.
        double lambda = 1.0;
        while (lambda > 1e-4) {
            const Eigen::VectorXd trial = u - lambda * step;
            const double trial_res = force_residual(trial);
            if (trial_res < res) {
                u = trial;
                res = trial_res;
                break;
            }
            lambda *= 0.5;
        }
        if (lambda <= 1e-4) break; // line search stalled
    }
    if (res < kResidualTarget) return u;
    throw accuracy_error("equilibrium_positions: Newton stalled", res);
}

void mode_decomposition(const Eigen::VectorXd& u,
                        Eigen::VectorXd& mu, Eigen::MatrixXd& b) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hessian(u));
    if (solver.info() != Eigen::Success) {
        throw accuracy_error("mode_decomposition: eigensolver failed", 0.0);
    }
    mu = solver.eigenvalues(); // ascending
    b = solver.eigenvectors();
    // Sign convention: make each mode's largest-magnitude component
    // positive, first index winning ties, so outputs are reproducible.
    for (int p = 0; p < b.cols(); ++p) {
        int arg = 0;
        double best = 0.0;
        for (int m = 0; m < b.rows(); ++m) {
            if (std::abs(b(m, p)) > best) {
                best = std::abs(b(m, p));
                arg = m;
            }
        }
        if (b(arg, p) < 0.0) b.col(p) = -b.col(p);
    }
}

Eigen::MatrixXd couplings(const Eigen::VectorXd& mu, const Eigen::MatrixXd& b) {
    const double root_n = std::sqrt(static_cast<double>(b.rows()));
    Eigen::MatrixXd s = b;
    for (int p = 0; p < b.cols(); ++p) {
        s.col(p) *= root_n / std::pow(mu[p], 0.25);
    }
    return s;
}

IonChain IonChain::build(int n_ions, double nu) {
    if (n_ions < 1) {
        throw std::invalid_argument("IonChain: need n_ions >= 1");
    }
    if (!(nu > 0.0) || !std::isfinite(nu)) {
        throw std::invalid_argument("IonChain: trap frequency must be positive");
    }
    IonChain c;
    c.n_ions = n_ions;
    c.nu = nu;
    c.positions = equilibrium_positions(n_ions);
    mode_decomposition(c.positions, c.mode_eigenvalues, c.mode_matrix);
    c.mode_couplings = couplings(c.mode_eigenvalues, c.mode_matrix);
    return c;
}

double IonChain::mode_frequency(int p) const {
    if (p < 1 || p > n_ions) {
        throw std::invalid_argument("mode_frequency: mode index out of range");
    }
    return nu * std::sqrt(mode_eigenvalues[p - 1]);
}

double IonChain::mode_weight(int ion_index) const {
    if (ion_index < 1 || ion_index > n_ions) {
        throw std::invalid_argument("mode_weight: ion index out of range");
    }
    double w = 0.0;
    for (int p = 0; p < n_ions; ++p) {
        const double bmp = mode_matrix(ion_index - 1, p);
        w += bmp * bmp / std::sqrt(mode_eigenvalues[p]);
    }
    return w;
}

} // namespace chirptrap::modes
