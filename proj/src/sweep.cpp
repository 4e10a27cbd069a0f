#include "ar1/sweep.hpp"

#include "ar1/bounds.hpp"
#include "ar1/errors.hpp"
#include "ar1/linalg_oracle.hpp"
#include "ar1/monte_carlo.hpp"
#include "ar1/rng.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

namespace ar1 {

void validate(const SweepSpec& spec)
{
    if (spec.a0_list.empty()) throw DomainError("a0 list must not be empty");
    if (spec.eps_list.empty()) throw DomainError("eps list must not be empty");
    if (spec.N_list.empty()) throw DomainError("N list must not be empty");
    for (double a0 : spec.a0_list) regime_of(a0);
    for (std::size_t i = 0; i < spec.eps_list.size(); ++i) {
        const double e = spec.eps_list[i];
        if (!(e >= 0) || !std::isfinite(e)) throw DomainError("eps values must be finite and >= 0");
        if (i > 0 && !(e > spec.eps_list[i - 1])) throw DomainError("eps list must be strictly increasing");
    }
    for (int n : spec.N_list)
        if (n < 2) throw DomainError("N must be >= 2");
    if (spec.runs < 1) throw DomainError("runs must be >= 1");
    if (!(spec.sigma > 0) || !std::isfinite(spec.sigma)) throw DomainError("sigma must be finite and > 0");
}

std::uint64_t cell_seed(std::uint64_t base_seed, double a0, int N) noexcept
{
    const std::uint64_t a_bits = std::bit_cast<std::uint64_t>(a0);
    return splitmix64_mix(base_seed ^ splitmix64_mix(a_bits) ^
                          splitmix64_mix(static_cast<std::uint64_t>(N) * golden_gamma));
}

namespace {

McConfig cell_config(double a0, int N, double sigma, std::uint64_t runs, std::uint64_t base_seed)
{
    McConfig cfg;
    cfg.params.a0 = a0;
    cfg.params.sigma = sigma;
    cfg.params.regime = regime_of(a0);
    cfg.N = N;
    cfg.runs = runs;
    cfg.base_seed = cell_seed(base_seed, a0, N);
    return cfg;
}

} // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned workers)
{
    validate(spec);
    std::vector<SweepRow> rows;
    rows.reserve(spec.a0_list.size() * spec.N_list.size() * spec.eps_list.size());
    for (double a0 : spec.a0_list) {
        const Regime regime = regime_of(a0);
        for (int N : spec.N_list) {
            McConfig cfg = cell_config(a0, N, spec.sigma, spec.runs, spec.base_seed);
            cfg.eps_grid = spec.eps_list;
            const auto estimates = estimate_deviation_probs(cfg, workers);
            for (std::size_t i = 0; i < spec.eps_list.size(); ++i) {
                const double eps = spec.eps_list[i];
                const auto& e = estimates[i];
                rows.push_back({a0, eps, N, e.runs, e.value, e.ci_low, e.ci_high, e.std_err,
                                deviation_bound(DeviationQuery<double>{a0, eps, N}).value,
                                exact_det_bound(a0, spec.sigma, eps, N), to_string(regime)});
            }
        }
    }
    return rows;
}

std::string format_double(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return {buf, res.ptr};
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows)
{
    out << sweep_csv_header << '\n';
    for (const auto& r : rows) {
        out << format_double(r.a0) << ',' << format_double(r.eps) << ',' << r.N << ',' << r.runs << ','
            << format_double(r.empirical_prob) << ',' << format_double(r.ci_low) << ','
            << format_double(r.ci_high) << ',' << format_double(r.std_err) << ','
            << format_double(r.bound_closed) << ',' << format_double(r.bound_det_exact) << ',' << r.regime
            << '\n';
    }
}

void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& writer)
{
    auto cleanup = [&] {
        std::error_code ec;
        std::filesystem::remove(path, ec);
    };
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    try {
        writer(out);
        out.flush();
    } catch (...) {
        out.close();
        cleanup();
        throw;
    }
    out.close();
    if (!out) {
        cleanup();
        throw IoError("failed writing " + path.string());
    }
}

std::vector<double> fig1_eps_values()
{
    std::vector<double> eps(20);
    for (int k = 0; k < 20; ++k) eps[k] = 0.01 * std::pow(500.0, k / 19.0);
    eps.front() = 0.01;
    eps.back() = 5.0;
    return eps;
}

std::vector<std::filesystem::path> reproduce_figure(Figure figure, std::uint64_t runs, std::uint64_t base_seed,
                                                    const std::filesystem::path& out_dir, unsigned workers)
{
    if (runs < 1000) throw DomainError("runs must be >= 1000 for figure reproduction");
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

    std::vector<std::filesystem::path> paths;
    for (double a0 : figure_a0_values) {
        const std::string stem = (figure == Figure::Fig1 ? "fig1_a0_" : "fig2_a0_") + format_double(a0);
        const auto path = out_dir / (stem + ".csv");
        if (figure == Figure::Fig1) {
            SweepSpec spec;
            spec.a0_list = {a0};
            spec.eps_list = fig1_eps_values();
            spec.N_list.assign(fig1_N_values.begin(), fig1_N_values.end());
            spec.runs = runs;
            spec.base_seed = base_seed;
            const auto rows = run_sweep(spec, workers);
            write_file(path, [&](std::ostream& out) { write_sweep_csv(out, rows); });
        } else {
            const Regime regime = regime_of(a0);
            std::string body;
            for (int N : fig2_N_values) {
                const auto e = estimate_variance(cell_config(a0, N, 1.0, runs, base_seed), workers);
                const double bound = variance_bound(a0, N).value;
                const std::string cr =
                    regime == Regime::StableStationary ? format_double(cramer_rao_asymptote(a0, N)) : "";
                body += format_double(a0) + ',' + std::to_string(N) + ',' + std::to_string(e.runs) + ',' +
                        format_double(e.value) + ',' + format_double(e.std_err) + ',' + format_double(e.ci_low) +
                        ',' + format_double(e.ci_high) + ',' + format_double(bound) + ',' + cr + ',' +
                        std::string(to_string(regime)) + '\n';
            }
            write_file(path, [&](std::ostream& out) { out << fig2_csv_header << '\n' << body; });
        }
        paths.push_back(path);
    }
    return paths;
}

} // namespace ar1
