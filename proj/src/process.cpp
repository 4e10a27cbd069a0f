#include "ar1/process.hpp"

#include "ar1/errors.hpp"
#include "ar1/rng.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ar1 {

std::string_view to_string(Regime r) noexcept
{
    switch (r) {
    case Regime::StableStationary: return "stable";
    case Regime::UnstableZeroInit: return "unstable";
    }
    return "unknown";
}

Regime regime_of(double a0)
{
    if (!std::isfinite(a0)) throw DomainError("a0 must be finite");
    const double m = std::abs(a0);
    if (m < 1.0) return Regime::StableStationary;
    if (m > 1.0) return Regime::UnstableZeroInit;
    throw DomainError("|a0| must differ from 1 (unit root has no regime)");
}

void validate(const Ar1Params& params)
{
    if (!std::isfinite(params.a0)) throw DomainError("a0 must be finite");
    if (!(params.sigma >= 0.0) || !std::isfinite(params.sigma))
        throw DomainError("sigma must be finite and >= 0");
    const double m = std::abs(params.a0);
    if (params.regime == Regime::StableStationary && !(m < 1.0))
        throw RegimeMismatch("stable stationary regime requires |a0| < 1");
    if (params.regime == Regime::UnstableZeroInit && !(m > 1.0))
        throw RegimeMismatch("unstable zero-init regime requires |a0| > 1");
    if (params.initial_value) {
        if (!std::isfinite(*params.initial_value)) throw DomainError("initial value must be finite");
    } else if (params.regime == Regime::StableStationary && params.sigma == 0.0) {
        throw DomainError("sigma must be > 0 for the stationary draw");
    }
}

void simulate_into(const Ar1Params& params, std::span<double> out)
{
    validate(params);
    if (out.size() < 2) throw DomainError("N must be >= 2");

    NormalSampler normal(params.seed);
    const double a0 = params.a0;
    const double sigma = params.sigma;

    // sigma is always the last factor, so doubling sigma doubles every sample exactly.
    double y = 0.0;
    if (params.initial_value) {
        y = *params.initial_value;
    } else if (params.regime == Regime::StableStationary) {
        y = (normal() / std::sqrt(1.0 - a0 * a0)) * sigma;
    } else {
        y = normal() * sigma;
    }
    out[0] = y;
    for (std::size_t t = 1; t < out.size(); ++t) {
        y = a0 * y + normal() * sigma;
        if (!std::isfinite(y))
            throw Overflow("sample y_" + std::to_string(t + 1) + " exceeds the double range");
        out[t] = y;
    }
}

Trajectory simulate(const Ar1Params& params, int N)
{
    if (N < 2) throw DomainError("N must be >= 2");
    Trajectory traj{std::vector<double>(static_cast<std::size_t>(N)), params};
    simulate_into(params, traj.samples);
    return traj;
}

EstimateResult ls_estimate(std::span<const double> samples)
{
    const std::size_t n = samples.size();
    if (n < 2) throw DomainError("N must be >= 2");

    double peak = 0.0;
    for (double y : samples) peak = std::max(peak, std::abs(y));
    if (peak == 0.0) throw DegenerateDenominator("all samples are zero");
    if (!std::isfinite(peak)) throw DomainError("samples must be finite");

    const int exponent = std::ilogb(peak);
    double num = 0.0;
    double den = 0.0;
    double prev = std::ldexp(samples[0], -exponent);
    for (std::size_t t = 1; t < n; ++t) {
        const double cur = std::ldexp(samples[t], -exponent);
        num += cur * prev;
        den += prev * prev;
        prev = cur;
    }
    if (den == 0.0) throw DegenerateDenominator("y_1..y_{N-1} are all zero");

    return {num / den, static_cast<int>(n), std::ldexp(den, 2 * exponent)};
}

} // namespace ar1
