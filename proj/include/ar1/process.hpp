#ifndef AR1_PROCESS_HPP
#define AR1_PROCESS_HPP

// AR(1) realizations y_t = a0 y_{t-1} + e_t, e_t ~ N(0, sigma^2), and the
// least-squares estimate of a0 from y_1..y_N.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace ar1 {

enum class Regime {
    StableStationary, ///< |a0| < 1, y_1 drawn from N(0, sigma^2 / (1 - a0^2)).
    UnstableZeroInit, ///< |a0| > 1, y_0 = 0 so y_1 = e_1.
};

std::string_view to_string(Regime r) noexcept;

/// The regime a0 belongs to. Throws DomainError for |a0| == 1 or non-finite a0.
Regime regime_of(double a0);

struct Ar1Params {
    double a0 = 0.0;
    double sigma = 1.0;
    Regime regime = Regime::StableStationary;
    std::uint64_t seed = 0;
    /// Deterministic test hook: when set, y_1 takes this value instead of the
    /// regime's random initial draw, and sigma == 0 is accepted in every regime.
    std::optional<double> initial_value;
};

/// Throws RegimeMismatch or DomainError when params are inconsistent.
void validate(const Ar1Params& params);

struct Trajectory {
    std::vector<double> samples; ///< y_1..y_N
    Ar1Params params;

    int N() const noexcept { return static_cast<int>(samples.size()); }
};

struct EstimateResult {
    double a_hat = 0.0;
    int N = 0;
    double denominator = 0.0; ///< sum_{t=1}^{N-1} y_t^2 (may be +inf for huge trajectories)
};

/// Draws y_1..y_N. A pure function of (params, N).
/// Throws RegimeMismatch, DomainError (N < 2, bad sigma) or Overflow.
Trajectory simulate(const Ar1Params& params, int N);

/// Writes y_1..y_out.size() into `out` without allocating. Same stream as simulate().
void simulate_into(const Ar1Params& params, std::span<double> out);

/// a_hat = sum_{t=2}^N y_t y_{t-1} / sum_{t=1}^{N-1} y_t^2.
///
/// Samples are rescaled by a power of two before summation, so the result is
/// bit-identical under y -> 2^k y and finite even when y_t^2 would overflow.
/// Throws DomainError (N < 2) or DegenerateDenominator.
EstimateResult ls_estimate(std::span<const double> samples);

inline EstimateResult ls_estimate(const Trajectory& traj)
{
    return ls_estimate(std::span<const double>(traj.samples));
}

} // namespace ar1

#endif // AR1_PROCESS_HPP
