#ifndef AR1_QUADRATURE_HPP
#define AR1_QUADRATURE_HPP

// Numerical-integration oracles for the two integrals whose closed forms the
// bounds rely on. Backed by Boost.Math adaptive Gauss-Kronrod (finite ranges)
// and exp-sinh (half-infinite tails).

namespace ar1 {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

/// (1/2pi) * integral over [-pi, pi] of log(1 + eps^2 / |e^{jw} - a0|^2) dw,
/// integrated over [0, pi] using evenness in w. Requires |a0| < 1, eps >= 0.
QuadratureResult szego_integral_quadrature(double a0, double eps);

/// 2 * integral over [0, inf) of (S(x) + sqrt(S(x)^2 - a0^2))^{-(N-2)/4} dx with
/// S(x) = (1 + a0^2 + x)/2: the variance integral behind the stable variance
/// bound. Requires |a0| < 1 and N >= 7 (the integral diverges otherwise).
QuadratureResult stable_variance_quadrature(double a0, int N);

} // namespace ar1

#endif // AR1_QUADRATURE_HPP
