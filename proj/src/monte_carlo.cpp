#include "ar1/monte_carlo.hpp"

#include "ar1/errors.hpp"
#include "ar1/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace ar1 {

namespace {

/// Neumaier-compensated sum.
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) noexcept
    {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            carry += (sum - t) + x;
        else
            carry += (x - t) + sum;
        sum = t;
    }
    double value() const noexcept { return sum + carry; }
};

/// Runs every chunk through `per_run(acc, run_index, a_hat_or_nan)` with one
/// accumulator per chunk, and returns the accumulators in chunk order.
template <class Acc, class MakeAcc, class PerRun>
std::vector<Acc> run_chunks(const McConfig& cfg, unsigned workers, MakeAcc make_acc, PerRun per_run)
{
    const std::uint64_t n_chunks = (cfg.runs + chunk_runs - 1) / chunk_runs;
    std::vector<Acc> partials;
    partials.reserve(n_chunks);
    for (std::uint64_t c = 0; c < n_chunks; ++c) partials.push_back(make_acc());

    if (workers == 0) workers = default_workers();
    const auto n_threads = static_cast<unsigned>(std::min<std::uint64_t>(workers, n_chunks));

    std::atomic<std::uint64_t> next{0};
    std::mutex error_mutex;
    std::uint64_t error_chunk = std::numeric_limits<std::uint64_t>::max();
    std::exception_ptr error;

    auto work = [&] {
        std::vector<double> buffer(static_cast<std::size_t>(cfg.N));
        Ar1Params params = cfg.params;
        for (std::uint64_t c = next++; c < n_chunks; c = next++) {
            try {
                const std::uint64_t begin = c * chunk_runs;
                const std::uint64_t end = std::min(cfg.runs, begin + chunk_runs);
                for (std::uint64_t r = begin; r < end; ++r) {
                    params.seed = derive_run_seed(cfg.base_seed, r);
                    simulate_into(params, buffer);
                    double a_hat = std::numeric_limits<double>::quiet_NaN();
                    try {
                        a_hat = ls_estimate(std::span<const double>(buffer)).a_hat;
                    } catch (const DegenerateDenominator&) {
                    }
                    per_run(partials[c], r, a_hat);
                }
            } catch (...) {
                // Report the error of the earliest failing chunk, independent of scheduling.
                std::lock_guard lock(error_mutex);
                if (c < error_chunk) {
                    error_chunk = c;
                    error = std::current_exception();
                }
            }
        }
    };

    if (n_threads <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n_threads);
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(work);
    }
    if (error) std::rethrow_exception(error);
    return partials;
}

} // namespace

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z)
{
    if (trials == 0) throw DomainError("Wilson interval needs at least one trial");
    if (successes > trials) throw DomainError("successes exceed trials");
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1 + z2 / n;
    const double center = (p + z2 / (2 * n)) / denom;
    const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
    return {std::clamp(center - half, 0.0, p), std::clamp(center + half, p, 1.0)};
}

unsigned default_workers() noexcept
{
    return std::max(1u, std::thread::hardware_concurrency());
}

void validate(const McConfig& cfg, bool need_eps_grid)
{
    validate(cfg.params);
    if (cfg.N < 2) throw DomainError("N must be >= 2");
    if (cfg.runs < 1) throw DomainError("runs must be >= 1");
    if (need_eps_grid && cfg.eps_grid.empty()) throw DomainError("eps grid must not be empty");
    for (std::size_t i = 0; i < cfg.eps_grid.size(); ++i) {
        const double e = cfg.eps_grid[i];
        if (!(e >= 0) || !std::isfinite(e)) throw DomainError("eps values must be finite and >= 0");
        if (i > 0 && !(e > cfg.eps_grid[i - 1])) throw DomainError("eps grid must be strictly increasing");
    }
}

std::vector<McEstimate> estimate_deviation_probs(const McConfig& cfg, unsigned workers)
{
    validate(cfg, true);
    const auto& grid = cfg.eps_grid;

    struct Acc {
        std::vector<std::uint64_t> histogram; // [k] = runs with exactly k grid values strictly below d
        std::uint64_t failed = 0;
    };
    const auto partials = run_chunks<Acc>(
        cfg, workers, [&] { return Acc{std::vector<std::uint64_t>(grid.size() + 1, 0), 0}; },
        [&](Acc& acc, std::uint64_t, double a_hat) {
            if (std::isnan(a_hat)) {
                ++acc.failed;
                return;
            }
            const double d = a_hat - cfg.params.a0;
            const auto k = std::lower_bound(grid.begin(), grid.end(), d) - grid.begin();
            ++acc.histogram[static_cast<std::size_t>(k)];
        });

    std::vector<std::uint64_t> histogram(grid.size() + 1, 0);
    std::uint64_t failed = 0;
    for (const auto& p : partials) {
        for (std::size_t k = 0; k < histogram.size(); ++k) histogram[k] += p.histogram[k];
        failed += p.failed;
    }
    const std::uint64_t valid = cfg.runs - failed;
    if (valid == 0) throw DegenerateDenominator("every run had a degenerate denominator");

    std::vector<McEstimate> out(grid.size());
    std::uint64_t exceed = 0;
    for (std::size_t i = grid.size(); i-- > 0;) {
        exceed += histogram[i + 1]; // d > eps_i  <=>  more than i grid values lie below d
        const double n = static_cast<double>(valid);
        const double p = static_cast<double>(exceed) / n;
        const auto ci = wilson_interval(exceed, valid);
        out[i] = {{StatisticKind::DeviationProb, grid[i]}, p, valid, failed, std::sqrt(p * (1 - p) / n), ci.low,
                  ci.high, false};
    }
    return out;
}

McEstimate estimate_variance(const McConfig& cfg, unsigned workers)
{
    validate(cfg, false);

    struct Acc {
        CompensatedSum second;
        CompensatedSum fourth;
        std::uint64_t failed = 0;
    };
    const auto partials = run_chunks<Acc>(
        cfg, workers, [] { return Acc{}; },
        [&](Acc& acc, std::uint64_t, double a_hat) {
            if (std::isnan(a_hat)) {
                ++acc.failed;
                return;
            }
            const double d2 = (a_hat - cfg.params.a0) * (a_hat - cfg.params.a0);
            acc.second.add(d2);
            acc.fourth.add(d2 * d2);
        });

    CompensatedSum second;
    CompensatedSum fourth;
    std::uint64_t failed = 0;
    for (const auto& p : partials) {
        second.add(p.second.value());
        fourth.add(p.fourth.value());
        failed += p.failed;
    }
    const std::uint64_t valid = cfg.runs - failed;
    if (valid == 0) throw DegenerateDenominator("every run had a degenerate denominator");

    const double n = static_cast<double>(valid);
    const double m2 = second.value() / n;
    const double m4 = fourth.value() / n;
    const double se = std::sqrt(std::max(0.0, m4 - m2 * m2) / n);
    return {{StatisticKind::Variance, 0.0},
            m2,
            valid,
            failed,
            se,
            std::max(0.0, m2 - z95 * se),
            m2 + z95 * se,
            cfg.N < 7};
}

std::vector<double> sample_estimates(const McConfig& cfg, unsigned workers)
{
    validate(cfg, false);
    struct Acc {
        std::vector<double> values;
    };
    const auto partials = run_chunks<Acc>(
        cfg, workers, [] { return Acc{}; },
        [](Acc& acc, std::uint64_t, double a_hat) { acc.values.push_back(a_hat); });
    std::vector<double> out;
    out.reserve(cfg.runs);
    for (const auto& p : partials) out.insert(out.end(), p.values.begin(), p.values.end());
    return out;
}

} // namespace ar1
