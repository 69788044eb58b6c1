#pragma once

#include <complex>

// Special-function kernel: Gaussian Q, incomplete gamma, and the two
// fixed-pattern Meijer-G symbols needed by the relay SNR distributions.
namespace mmlink::specfun {

// Pr{Z > x} for standard normal Z.
double q_function(double x);

// Non-regularized lower incomplete gamma: integral of t^{m-1} e^{-t} over (0, x).
double lower_incomplete_gamma(double m, double x);

// Regularized P(m, x) = lower_incomplete_gamma(m, x) / Gamma(m), in [0, 1].
double reg_gamma_p(double m, double x);

// Regularized upper tail Q(m, x) = 1 - P(m, x).
double reg_gamma_q(double m, double x);

// G^{2,0}_{1,2}( x | m-1/2 ; m-1, 2m-1 ), evaluated by Mellin-Barnes
// contour integration. Appears in the harmonic-mean SNR density.
double meijer_g_20_12(double x, double m);

// G^{2,1}_{2,3}( x | 0, m-1/2 ; m-1, 2m-1, -1 ), CDF companion of the above.
double meijer_g_21_23(double x, double m);

// log Gamma(z) for Re(z) > 0 (Lanczos). Exposed for the test oracles.
std::complex<double> log_gamma(std::complex<double> z);

}  // namespace mmlink::specfun
