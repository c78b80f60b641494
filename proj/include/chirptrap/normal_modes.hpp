#pragma once

#include <Eigen/Dense>

namespace chirptrap::modes {

// Equilibrium positions of n_ions identical ions in a harmonic axial well
// with mutual Coulomb repulsion, in units of the natural length scale.
// Solves the force balance
//
//   u_m - sum_{n<m} (u_m - u_n)^{-2} + sum_{n>m} (u_m - u_n)^{-2} = 0
//
// by damped Newton iteration from a uniformly spaced guess.  Positions are
// returned ascending.  Throws accuracy_error (carrying the residual) if the
// force residual does not reach 1e-12 within the iteration cap.
Eigen::VectorXd equilibrium_positions(int n_ions);

// Infinity-norm of the force balance at u (diagnostic).
double force_residual(const Eigen::VectorXd& u);

// Dimensionless Hessian of the potential at the equilibrium configuration:
//   A_nn = 1 + 2 sum_{p != n} |u_n - u_p|^{-3},   A_nm = -2 |u_n - u_m|^{-3}.
Eigen::MatrixXd hessian(const Eigen::VectorXd& u);

// Axial normal modes: eigenvalues mu (ascending; mu_1 = 1 is the center of
// mass, mu_2 = 3 the breathing mode) and the orthonormal eigenvector matrix
// b (columns are modes).  Each column's sign is fixed so that its
// largest-magnitude entry is positive (first index wins ties).
void mode_decomposition(const Eigen::VectorXd& u,
                        Eigen::VectorXd& mu, Eigen::MatrixXd& b);

// Per-ion mode couplings s_m^(p) = sqrt(N) b_m^(p) / mu_p^(1/4); row m is
// the coupling of ion m to each mode.  The center-of-mass column is
// identically 1.
Eigen::MatrixXd couplings(const Eigen::VectorXd& mu, const Eigen::MatrixXd& b);

// Assembled linear chain of trapped ions sharing an axial trap of bare
// (center-of-mass) angular frequency nu; mode p oscillates at nu*sqrt(mu_p).
struct IonChain {
    int n_ions = 1;
    double nu = 0.0;                 // bare trap frequency, rad/s
    Eigen::VectorXd positions;       // ascending, dimensionless
    Eigen::VectorXd mode_eigenvalues;
    Eigen::MatrixXd mode_matrix;     // columns b^(p), orthonormal
    Eigen::MatrixXd mode_couplings;  // s_m^(p)

    // Builds the chain; throws std::invalid_argument on n_ions < 1 or
    // nu <= 0, accuracy_error if the equilibrium solve stalls.
    static IonChain build(int n_ions, double nu);

    // Frequency of mode p (1-based), rad/s.
    double mode_frequency(int p) const;

    // Spectral weight sum_p (b_m^(p))^2 / sqrt(mu_p) of ion m (1-based);
    // controls how strongly ion m samples the full mode spectrum.
    double mode_weight(int ion_index) const;
};

} // namespace chirptrap::modes
