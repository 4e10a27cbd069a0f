#include "ar1/quadrature.hpp"

#include "ar1/errors.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <numbers>

namespace ar1 {

namespace {

constexpr unsigned max_depth = 15;
constexpr double tolerance = 1e-12;

} // namespace

QuadratureResult szego_integral_quadrature(double a0, double eps)
{
    if (!std::isfinite(a0) || !(std::abs(a0) < 1)) throw DomainError("Szego integral requires |a0| < 1");
    if (!(eps >= 0) || !std::isfinite(eps)) throw DomainError("eps must be finite and >= 0");

    const double e2 = eps * eps;
    // |e^{jw} - a0|^2 = (1 - a0)^2 + 4 a0 sin^2(w/2)
    auto f = [a0, e2](double w) {
        const double s = std::sin(w / 2);
        return std::log1p(e2 / ((1 - a0) * (1 - a0) + 4 * a0 * s * s));
    };
    QuadratureResult r;
    r.value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, std::numbers::pi, max_depth,
                                                                            tolerance, &r.error_estimate);
    r.value /= std::numbers::pi;
    r.error_estimate /= std::numbers::pi;
    return r;
}

QuadratureResult stable_variance_quadrature(double a0, int N)
{
    if (!std::isfinite(a0) || !(std::abs(a0) < 1)) throw DomainError("variance integral requires |a0| < 1");
    if (N < 7) throw DomainError("N must be >= 7 for variance bounds");

    const double a2 = a0 * a0;
    const double exponent = -(N - 2) / 4.0;
    auto f = [a2, exponent](double x) {
        const double s = (1 + a2 + x) / 2;
        return 2 * std::pow(s + std::sqrt(s * s - a2), exponent);
    };

    double head_err = 0.0;
    double tail_err = 0.0;
    const double head =
        boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 1.0, max_depth, tolerance, &head_err);
    boost::math::quadrature::exp_sinh<double> tail_rule;
    const double tail =
        tail_rule.integrate(f, 1.0, std::numeric_limits<double>::infinity(), tolerance, &tail_err);
    return {head + tail, head_err + tail_err};
}

} // namespace ar1
