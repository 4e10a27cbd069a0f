// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.
//
//   ar1_acceptance <path-to-ar1-cli> [scratch-dir]

#include "ar1/bounds.hpp"
#include "ar1/linalg_oracle.hpp"
#include "ar1/monte_carlo.hpp"
#include "ar1/quadrature.hpp"
#include "ar1/rng.hpp"
#include "ar1/sweep.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace ar1;
using Q = DeviationQuery<double>;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::vector<double> linspace(double lo, double hi, int n)
{
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

std::vector<double> geomspace(double lo, double hi, int n)
{
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[i] = lo * std::pow(hi / lo, double(i) / (n - 1));
    return v;
}

double rel_diff(double x, double ref)
{
    return std::abs(x - ref) / std::abs(ref);
}

Outcome deviation_dominance()
{
    SweepSpec spec;
    spec.a0_list = {0.5, 0.98, 1.01, 1.1};
    spec.eps_list = {0.01, 0.1, 0.5, 1, 2, 5};
    spec.N_list = {2, 5, 10, 25, 50, 100};
    spec.runs = 10000;
    spec.base_seed = 20240601;
    const auto rows = run_sweep(spec);

    const double resolution = minimum_resolvable_probability(spec.runs);
    int resolvable = 0, dominated = 0;
    for (const auto& r : rows) {
        if (!(r.bound_closed > resolution)) continue;
        ++resolvable;
        if (r.empirical_prob <= r.bound_closed + 3 * r.std_err) ++dominated;
    }
    const double share = resolvable ? double(dominated) / resolvable : 0.0;
    return {resolvable > 0 && share >= 0.99,
            fmt("%d/%d resolvable cells dominated (%.2f%%, need >= 99%%); %zu cells total", dominated, resolvable,
                100 * share, rows.size())};
}

Outcome variance_dominance()
{
    int cells = 0, dominated = 0;
    double worst_ratio = 0.0;
    for (double a0 : {0.5, 0.98, 1.01, 1.1})
        for (int N : {7, 10, 20, 50, 100, 200, 500, 1000}) {
            McConfig cfg{Ar1Params{a0, 1.0, regime_of(a0), 0, std::nullopt}, N, 100000, cell_seed(424242, a0, N), {}};
            const double v = estimate_variance(cfg).value;
            const double bound = variance_bound(a0, N).value;
            ++cells;
            if (v <= bound) ++dominated;
            worst_ratio = std::max(worst_ratio, v / bound);
        }
    return {dominated == cells,
            fmt("%d/%d cells with empirical variance <= bound; max empirical/bound = %.4f", dominated, cells,
                worst_ratio)};
}

Outcome unstable_exactness()
{
    int n = 0;
    double worst = 0.0;
    for (double a0 : {1.01, 1.1, 1.5, 2.0})
        for (double eps : {0.1, 0.5, 1.0})
            for (int N : {2, 10, 30, 60}) {
                const double closed = unstable_deviation_bound(Q{a0, eps, N}).log_value;
                worst = std::max(worst, std::abs(std::expm1(closed - exact_det_log_bound(a0, 1.0, eps, N))));
                ++n;
            }
    return {n == 48 && worst <= 1e-8, fmt("%d combinations, max relative difference %.3g (tol 1e-8)", n, worst)};
}

Outcome stable_dominance()
{
    int n = 0, ok = 0;
    double worst = -INFINITY;
    for (double a0 : {0.1, 0.5, 0.9, 0.98})
        for (double eps : {0.1, 1.0, 5.0})
            for (int N : {2, 10, 50, 200}) {
                const double excess = exact_det_bound(a0, 1.0, eps, N) - stable_deviation_bound(Q{a0, eps, N}).value;
                worst = std::max(worst, excess);
                ++n;
                if (excess <= 1e-12) ++ok;
            }
    return {ok == n, fmt("%d/%d points with det <= closed form + 1e-12; max excess %.3g", ok, n, worst)};
}

Outcome szego_quadrature()
{
    double worst = 0.0;
    int n = 0;
    for (double a0 : linspace(-0.99, 0.99, 20))
        for (double eps : linspace(0.0, 5.0, 20)) {
            worst = std::max(worst, std::abs(szego_log_factor(a0, eps) - szego_integral_quadrature(a0, eps).value));
            ++n;
        }
    return {worst < 1e-8, fmt("%d grid points, max |closed - quadrature| %.3g (tol 1e-8)", n, worst)};
}

Outcome variance_integral()
{
    double worst = 0.0;
    for (int N : {7, 10, 50, 500})
        for (double a0 : {0.0, 0.5, 0.9})
            worst = std::max(worst, rel_diff(stable_variance_quadrature(a0, N).value, stable_variance_bound(a0, N).value));
    return {worst <= 1e-6, fmt("12 points, max relative difference %.3g (tol 1e-6)", worst)};
}

Outcome matrix_identities()
{
    double inverse = 0.0;
    for (double a0 : {1.01, 1.1, 1.5})
        for (double sigma : {1.0, 3.0})
            for (int dim = 2; dim <= 50; ++dim) inverse = std::max(inverse, inverse_identity_residual(a0, sigma, dim));

    double eigen = 0.0;
    for (double a0 : {1.01, 1.1, 1.3, 1.5, 2.0})
        for (int dim = 1; dim <= 25; ++dim) {
            const auto closed = perturbed_tridiag_eigenvalues(a0, dim);
            const auto dense = dense_perturbed_tridiag_eigenvalues(a0, dim);
            for (int k = 0; k < dim; ++k) eigen = std::max(eigen, std::abs(closed[k] - dense[k]));
        }

    double tridiag = 0.0;
    Xoshiro256pp rng(7);
    auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * rng.uniform(); };
    for (int size = 1; size <= 12; ++size)
        for (int trial = 0; trial < 20; ++trial) {
            const TridiagonalSpec<double> spec{uniform(-1, 1), uniform(2, 3), uniform(-1, 1), size};
            const double dense = assemble_tridiagonal(spec).partialPivLu().determinant();
            tridiag = std::max(tridiag, rel_diff(tridiag_det_sequence(spec).back().value(), dense));
        }

    double continuant = 0.0;
    for (double a0 : {1.01, 1.1, 1.5, 2.0})
        for (double eps : {0.1, 0.5, 1.0})
            for (int N = 3; N <= 40; ++N) {
                const auto lhs = continuant_identity_lhs(a0, eps, N);
                const auto rhs = continuant_closed_form(a0, eps, N);
                continuant = std::max(continuant, lhs.sign == rhs.sign ? std::abs(std::expm1(lhs.log_abs - rhs.log_abs))
                                                                       : INFINITY);
            }

    const bool pass = inverse <= 1e-8 && eigen <= 1e-8 && tridiag <= 1e-10 && continuant <= 1e-8;
    return {pass, fmt("inverse residual %.3g (1e-8), eigenvalues %.3g (1e-8), tridiagonal vs LU %.3g (1e-10), "
                      "continuant %.3g (1e-8)",
                      inverse, eigen, tridiag, continuant)};
}

Outcome variance_reassembly()
{
    double worst = 0.0;
    for (double a0 : {1.01, 1.1, 2.0})
        for (int N : {7, 20, 100}) {
            const auto xz = xstar_zstar(a0, N, 1.25);
            const double m = std::abs(a0);
            const double rebuilt =
                2 * xz.xstar + 8 / std::pow(xz.xstar, 0.25) *
                                   (std::pow(m, 3 - N / 2.0) / (N - 6) - std::pow(m, 1 - N / 2.0) / (N + 2));
            worst = std::max(worst, rel_diff(rebuilt, unstable_variance_bound(a0, N).value));
        }
    return {worst <= 1e-12, fmt("9 points, max relative difference %.3g (tol 1e-12)", worst)};
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome sweep_determinism(const std::string& cli, const fs::path& scratch)
{
    if (cli.empty()) return {false, "no CLI path given"};
    fs::create_directories(scratch);
    const std::string base = "\"" + cli + "\" sweep --a0 0.5 0.98 1.1 --eps 0.01 0.1 1 --n 2 10 50 --runs 5000 "
                                          "--seed 77";
    std::vector<std::string> outputs;
    int idx = 0;
    for (int workers : {1, 4, 16, 16}) {
        const auto path = scratch / ("sweep_" + std::to_string(idx++) + ".csv");
        const std::string cmd = base + " --workers " + std::to_string(workers) + " --out \"" + path.string() + "\"";
        if (std::system(cmd.c_str()) != 0) return {false, "sweep command failed: " + cmd};
        outputs.push_back(slurp(path));
    }
    bool same = !outputs[0].empty();
    for (const auto& o : outputs) same = same && o == outputs[0];
    fs::remove_all(scratch);
    return {same, fmt("workers 1/4/16 plus a repeated invocation: %s (%zu bytes)",
                      same ? "byte-identical" : "DIFFERENT", outputs[0].size())};
}

Outcome monotonicity()
{
    bool quotients = true;
    for (double a0 : {0.5, 0.98})
        for (double eps : {0.01, 1.0}) quotients = quotients && det_quotient_monotonicity_check(a0, eps, 100);

    long checked = 0, violations = 0;
    const auto eps_grid = geomspace(1e-3, 10.0, 200);
    for (double a0 : {-0.99, -0.5, 0.0, 0.3, 0.5, 0.9, 0.98, 0.999, 1.001, 1.01, 1.1, 1.5, 2.0, -3.0}) {
        for (int N : {2, 3, 5, 10, 25, 50, 100, 250, 1000}) {
            double prev = 0.0;
            for (double eps : eps_grid) {
                const double cur = deviation_bound(Q{a0, eps, N}).log_value;
                ++checked;
                if (cur > prev + 1e-12) ++violations;
                prev = cur;
            }
        }
        for (double eps : {0.001, 0.01, 0.1, 0.5, 1.0, 2.0, 5.0}) {
            double prev = 0.0;
            for (int N = 2; N <= 1000; ++N) {
                const double cur = deviation_bound(Q{a0, eps, N}).log_value;
                ++checked;
                if (cur > prev + 1e-12) ++violations;
                prev = cur;
            }
        }
    }
    return {quotients && violations == 0,
            fmt("determinant quotients %s; %ld/%ld bound steps non-increasing in eps and N",
                quotients ? "non-increasing" : "INCREASE", checked - violations, checked)};
}

} // namespace

int main(int argc, char** argv)
{
    const std::string cli = argc > 1 ? argv[1] : "";
    const fs::path scratch = argc > 2 ? fs::path(argv[2]) : fs::temp_directory_path() / "ar1_acceptance";

    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "deviation-bound dominance", deviation_dominance},
        {2, "variance-bound dominance", variance_dominance},
        {3, "unstable exactness", unstable_exactness},
        {4, "stable dominance", stable_dominance},
        {5, "Szego closed form vs quadrature", szego_quadrature},
        {6, "variance-integral identity", variance_integral},
        {7, "matrix identities", matrix_identities},
        {8, "unstable variance reassembly", variance_reassembly},
        {9, "sweep determinism", [&] { return sweep_determinism(cli, scratch); }},
        {10, "monotonicity suite", monotonicity},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!o.pass) ++failures;
        std::printf("criterion %2d %s  %s: %s [%.1fs]\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(),
                    secs);
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
    return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
