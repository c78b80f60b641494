#pragma once

#include <complex>

namespace chirptrap::specfun {

using cdouble = std::complex<double>;

// log Gamma(z) on the principal branch, Lanczos approximation (g = 607/128,
// 15 terms) with the reflection formula for Re z < 1/2.  Good to ~1e-13
// relative over the moderate-|z| region used here.  Throws std::domain_error
// at the poles z = 0, -1, -2, ...
cdouble log_gamma(cdouble z);

// Gamma(z) = exp(log_gamma(z)).
cdouble gamma(cdouble z);

// Normalized incomplete gamma functions of complex order and argument,
//
//   P(mu, x) = gamma(mu, x) / Gamma(mu)   (lower)
//   Q(mu, x) = Gamma(mu, x) / Gamma(mu)   (upper),   P + Q = 1,
//
// with x^mu taken on the principal branch.  Small |x| uses the Kummer
// series for P, large |x| the Legendre continued fraction for Q; the
// crossover radius max(8, |Im mu| + 2) keeps both routes inside their
// well-conditioned regions.  P(mu, 0) = 0 and Q(mu, 0) = 1 exactly.
// Throws std::domain_error when mu is a nonpositive integer.
cdouble lower_incomplete_normalized(cdouble mu, cdouble x);
cdouble upper_incomplete_normalized(cdouble mu, cdouble x);

} // namespace chirptrap::specfun
