#ifndef AR1_MONTE_CARLO_HPP
#define AR1_MONTE_CARLO_HPP

// Seeded, parallel Monte Carlo estimates of P(a_hat_N - a0 > eps) and of
// E[(a_hat_N - a0)^2].
//
// Run r simulates with seed derive_run_seed(base_seed, r). Runs are grouped
// into fixed chunks of `chunk_runs`; workers take whole chunks and the chunk
// partials are combined in chunk order, so results are bit-identical for any
// worker count.

#include "ar1/process.hpp"

#include <cstdint>
#include <vector>

namespace ar1 {

inline constexpr std::uint64_t chunk_runs = 1024;
/// Two-sided 95% standard normal quantile.
inline constexpr double z95 = 1.959963984540054;

struct McConfig {
    Ar1Params params; ///< params.seed is ignored; see derive_run_seed
    int N = 2;
    std::uint64_t runs = 1;
    std::uint64_t base_seed = 0;
    std::vector<double> eps_grid; ///< strictly increasing, >= 0
};

enum class StatisticKind { DeviationProb, Variance };

struct Statistic {
    StatisticKind kind = StatisticKind::DeviationProb;
    double eps = 0.0; ///< only meaningful for DeviationProb
};

struct McEstimate {
    Statistic statistic;
    double value = 0.0;
    std::uint64_t runs = 0;        ///< runs that produced an estimate
    std::uint64_t failed_runs = 0; ///< runs with a degenerate denominator
    double std_err = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    /// Set for variance estimates with N < 7, where the finite-sample variance
    /// bound does not apply and the estimator's tails are heavy.
    bool heavy_tail_caveat = false;
};

struct WilsonInterval {
    double low = 0.0;
    double high = 1.0;
};

/// Wilson score interval for `successes` out of `trials`.
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = z95);

/// Probabilities below this are not resolvable with `runs` runs.
constexpr double minimum_resolvable_probability(std::uint64_t runs) noexcept
{
    return 3.0 / static_cast<double>(runs);
}

/// std::thread::hardware_concurrency(), at least 1.
unsigned default_workers() noexcept;

/// Throws DomainError when cfg is malformed.
void validate(const McConfig& cfg, bool need_eps_grid);

/// One estimate per eps in cfg.eps_grid, from a single pass over the runs.
/// workers == 0 selects default_workers(). Simulation errors propagate.
std::vector<McEstimate> estimate_deviation_probs(const McConfig& cfg, unsigned workers = 0);

/// Mean of (a_hat - a0)^2 with a standard error from the empirical fourth moment.
McEstimate estimate_variance(const McConfig& cfg, unsigned workers = 0);

/// a_hat for every run in run order. Mainly for tests and diagnostics;
/// failed runs hold NaN.
std::vector<double> sample_estimates(const McConfig& cfg, unsigned workers = 0);

} // namespace ar1

#endif // AR1_MONTE_CARLO_HPP
