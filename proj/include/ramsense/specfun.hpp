#pragma once

#include <complex>

// Special-function kernel used by the appendix series and the closed-form
// optima: real Gamma, Polygamma on the complex plane, both real branches of
// Lambert's W, and Chebyshev polynomials of the first kind.

namespace ramsense::specfun {

using Complex = std::complex<double>;

// Re(z) is pushed above this value by the upward recurrence before the
// asymptotic Bernoulli series is summed.
inline constexpr double kPolygammaShiftThreshold = 10.0;

// Halley iteration cap for lambert_w; exceeding it is a hard error.
inline constexpr int kLambertMaxIterations = 50;

// Euler Gamma for x > 0. Throws std::domain_error for x <= 0.
double gamma_fn(double x);

// Polygamma psi^(m)(z), m in [0, 6], via upward recurrence plus the
// asymptotic Bernoulli expansion. Throws std::domain_error at the poles
// (non-positive integers) and for unsupported m.
Complex polygamma(int m, Complex z);

// Real branches of Lambert's W: branch 0 on [-1/e, inf), branch -1 on
// [-1/e, 0). Residual |w e^w - x| <= 1e-14 max(1, |x|); non-convergence
// of the Halley iteration throws std::runtime_error.
double lambert_w(int branch, double x);

// Chebyshev polynomial of the first kind T_n(x) by the three-term recurrence.
double chebyshev_t(int n, double x);

}  // namespace ramsense::specfun
