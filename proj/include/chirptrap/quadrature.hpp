#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace chirptrap::quadrature {

struct QuadResult {
    std::complex<double> value;
    double err_estimate = 0.0; // absolute, summed over panels (conservative)
    long evaluations = 0;      // integrand calls
};

struct QuadOptions {
    double abs_tol = 1e-10;
    long max_evaluations = 40'000'000;
};

// Adaptive Gauss-Kronrod 7/15 integration of a complex-valued integrand
// over a user-supplied initial panelization (edges ascending).  The panel
// with the largest local error estimate is bisected until the summed
// estimate meets abs_tol; if the evaluation budget runs out first an
// accuracy_error carrying the best estimate is thrown.  Deterministic for
// a given integrand and panelization.
QuadResult integrate(const std::function<std::complex<double>(double)>& f,
                     const std::vector<double>& panel_edges,
                     const QuadOptions& opt);

// Convenience overload with a single initial panel [lo, hi].
QuadResult integrate(const std::function<std::complex<double>(double)>& f,
                     double lo, double hi, const QuadOptions& opt);

} // namespace chirptrap::quadrature
