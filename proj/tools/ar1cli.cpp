// ar1: finite-sample bounds for the least-squares AR(1) estimate.
//
//   ar1 bound <kind> --a0 A [--eps E] --n N [--m M] [--sigma S]
//   ar1 simulate --a0 A --n N [--sigma S] [--seed K]
//   ar1 sweep --a0 A... --eps E... --n N... [--runs R] [--seed K] [--sigma S] --out PATH
//   ar1 validate [--json]
//   ar1 reproduce fig1|fig2 [--runs R] [--seed K] [--out DIR]
//
// Exit codes: 0 success, 1 validation failure, 2 usage or domain error, 3 I/O error.

#include "ar1/bounds.hpp"
#include "ar1/errors.hpp"
#include "ar1/linalg_oracle.hpp"
#include "ar1/monte_carlo.hpp"
#include "ar1/process.hpp"
#include "ar1/sweep.hpp"
#include "ar1/validation.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_validation_failed = 1;
constexpr int exit_usage = 2;
constexpr int exit_io = 3;

using json = nlohmann::json;

struct Options {
    std::string bound_kind;
    double a0 = 0.0;
    std::optional<double> eps;
    int n = 0;
    double m = 1.25;
    double sigma = 1.0;
    std::uint64_t seed = 0;
    std::uint64_t runs = 10000;
    unsigned workers = 0;
    std::string out;
    bool json = false;
    bool inject_fault = false;
    std::string config;
    std::vector<double> a0_list;
    std::vector<double> eps_list;
    std::vector<int> n_list;
    std::string figure;
};

/// Reads `key = value...` lines ('#' starts a comment, commas separate list
/// items) and returns them as flag tokens.
std::vector<std::string> config_tokens(const std::string& path, const std::vector<std::string>& cli_args)
{
    std::ifstream in(path);
    if (!in) throw ar1::IoError("cannot read config file " + path);

    auto given_on_cli = [&](const std::string& flag) {
        return std::any_of(cli_args.begin(), cli_args.end(),
                           [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
    };

    std::vector<std::string> tokens;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ar1::DomainError(path + ":" + std::to_string(line_no) + ": expected key = value");
        std::string key = line.substr(0, eq);
        key.erase(std::remove_if(key.begin(), key.end(), [](unsigned char c) { return std::isspace(c); }),
                  key.end());
        std::string value = line.substr(eq + 1);
        std::replace(value.begin(), value.end(), ',', ' ');
        const std::string flag = "--" + key;
        if (given_on_cli(flag)) continue;
        tokens.push_back(flag);
        std::istringstream words(value);
        for (std::string w; words >> w;) tokens.push_back(w);
    }
    return tokens;
}

/// Splices config-file flags right after the subcommand so command-line flags win.
std::vector<std::string> expand_config(std::vector<std::string> args)
{
    for (std::size_t i = 1; i < args.size(); ++i) {
        std::string path;
        if (args[i] == "--config" && i + 1 < args.size())
            path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0)
            path = args[i].substr(9);
        else
            continue;
        auto extra = config_tokens(path, args);
        args.insert(args.begin() + 2, extra.begin(), extra.end());
        break;
    }
    return args;
}

std::string provenance_of(ar1::BoundKind k)
{
    return k == ar1::BoundKind::RelaxedUnstableDeviation ? "relaxed" : "closed_form";
}

json bound_json(const ar1::BoundValue<double>& b)
{
    json j{{"kind", std::string(ar1::to_string(b.kind))},
           {"provenance", provenance_of(b.kind)},
           {"value", b.value},
           {"log_value", b.log_value},
           {"a0", b.a0},
           {"N", b.N}};
    if (b.eps) j["eps"] = *b.eps;
    return j;
}

double require_eps(const Options& o)
{
    if (!o.eps) throw ar1::DomainError("--eps is required for deviation bounds");
    return *o.eps;
}

int cmd_bound(const Options& o)
{
    using ar1::DeviationQuery;
    const std::string& k = o.bound_kind;
    json out;
    if (k == "stable-dev") {
        out = bound_json(ar1::stable_deviation_bound(DeviationQuery<double>{o.a0, require_eps(o), o.n}));
    } else if (k == "unstable-dev") {
        out = bound_json(ar1::unstable_deviation_bound(DeviationQuery<double>{o.a0, require_eps(o), o.n}));
    } else if (k == "relaxed-dev") {
        out = bound_json(ar1::relaxed_unstable_bound(DeviationQuery<double>{o.a0, require_eps(o), o.n}, o.m));
        out["m"] = o.m;
    } else if (k == "stable-var") {
        out = bound_json(ar1::stable_variance_bound(o.a0, o.n));
    } else if (k == "unstable-var") {
        out = bound_json(ar1::unstable_variance_bound(o.a0, o.n));
    } else if (k == "cramer-rao") {
        out = json{{"kind", std::string(ar1::to_string(ar1::BoundKind::CramerRaoAsymptotic))},
                   {"provenance", "closed_form"},
                   {"value", ar1::cramer_rao_asymptote(o.a0, o.n)},
                   {"a0", o.a0},
                   {"N", o.n}};
    } else if (k == "det-exact") {
        const double eps = require_eps(o);
        const double log_value = ar1::exact_det_log_bound(o.a0, o.sigma, eps, o.n);
        out = json{{"kind", "determinant_exact"}, {"provenance", "determinant_exact"},
                   {"value", std::exp(log_value)}, {"log_value", log_value},
                   {"a0", o.a0},  {"eps", eps},
                   {"N", o.n},    {"sigma", o.sigma}};
    }
    std::cout << out.dump() << '\n';
    return exit_ok;
}

int cmd_simulate(const Options& o)
{
    ar1::Ar1Params params{o.a0, o.sigma, ar1::regime_of(o.a0), o.seed, std::nullopt};
    const auto traj = ar1::simulate(params, o.n);
    const auto est = ar1::ls_estimate(traj);
    json out{{"a0", o.a0},
             {"sigma", o.sigma},
             {"seed", o.seed},
             {"regime", std::string(ar1::to_string(params.regime))},
             {"N", traj.N()},
             {"samples", traj.samples},
             {"a_hat", est.a_hat}};
    std::cout << out.dump() << '\n';
    return exit_ok;
}

int cmd_sweep(const Options& o)
{
    ar1::SweepSpec spec;
    spec.a0_list = o.a0_list;
    spec.eps_list = o.eps_list;
    spec.N_list = o.n_list;
    spec.runs = o.runs;
    spec.base_seed = o.seed;
    spec.sigma = o.sigma;
    spec.output_path = o.out;
    ar1::validate(spec);
    if (spec.output_path.empty()) throw ar1::DomainError("--out is required (use - for standard output)");

    const auto rows = ar1::run_sweep(spec, o.workers);
    if (spec.output_path == "-") {
        ar1::write_sweep_csv(std::cout, rows);
    } else {
        ar1::write_file(spec.output_path, [&](std::ostream& out) { ar1::write_sweep_csv(out, rows); });
    }
    return exit_ok;
}

int cmd_validate(const Options& o)
{
    ar1::ValidationOptions options;
    options.flip_continuant_sign = o.inject_fault;
    const auto results = ar1::run_validation(options);
    const bool all = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });

    if (o.json) {
        json arr = json::array();
        for (const auto& r : results)
            arr.push_back({{"check", r.check}, {"pass", r.pass}, {"residual", r.residual}, {"tolerance", r.tolerance}});
        std::cout << arr.dump(2) << '\n';
    } else {
        for (const auto& r : results) {
            std::cout << (r.pass ? "PASS " : "FAIL ") << r.check << "  residual=" << ar1::format_double(r.residual)
                      << "  tolerance=" << ar1::format_double(r.tolerance) << '\n';
        }
        std::cout << (all ? "all checks passed" : "validation FAILED") << '\n';
    }
    if (!all) {
        for (const auto& r : results)
            if (!r.pass) std::cerr << "failed check: " << r.check << '\n';
    }
    return all ? exit_ok : exit_validation_failed;
}

int cmd_reproduce(const Options& o)
{
    const auto figure = o.figure == "fig1" ? ar1::Figure::Fig1 : ar1::Figure::Fig2;
    const auto paths = ar1::reproduce_figure(figure, o.runs, o.seed, o.out.empty() ? "." : o.out, o.workers);
    for (const auto& p : paths) std::cout << p.string() << '\n';
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    Options o;
    CLI::App app{"Finite-sample deviation and variance bounds for the least-squares AR(1) estimate"};
    app.require_subcommand(1);

    auto add_workers = [&](CLI::App* sub) {
        sub->add_option("--workers", o.workers, "Worker threads (default: available parallelism)");
    };
    auto add_config = [&](CLI::App* sub) {
        sub->add_option("--config", o.config, "Flat key = value file mirroring the flags; flags override it");
    };

    auto* bound = app.add_subcommand("bound", "Evaluate one bound and print it as JSON");
    bound->add_option("kind", o.bound_kind, "Bound kind")
        ->required()
        ->check(CLI::IsMember(
            {"stable-dev", "unstable-dev", "relaxed-dev", "stable-var", "unstable-var", "cramer-rao", "det-exact"}));
    bound->add_option("--a0", o.a0, "True AR coefficient")->required();
    bound->add_option("--eps", o.eps, "Deviation threshold (deviation kinds)");
    bound->add_option("--n", o.n, "Sample size N")->required();
    bound->add_option("--m", o.m, "Relaxation exponent for relaxed-dev (>= 1/4)")->capture_default_str();
    bound->add_option("--sigma", o.sigma, "Noise std for det-exact (the value does not depend on it)")
        ->capture_default_str();
    add_config(bound);

    auto* simulate = app.add_subcommand("simulate", "Simulate one trajectory and print it with its estimate");
    simulate->add_option("--a0", o.a0, "True AR coefficient (|a0| != 1)")->required();
    simulate->add_option("--n", o.n, "Sample size N")->required();
    simulate->add_option("--sigma", o.sigma, "Noise standard deviation")->capture_default_str();
    simulate->add_option("--seed", o.seed, "Seed")->capture_default_str();
    add_config(simulate);

    auto* sweep = app.add_subcommand("sweep", "Monte Carlo deviation probabilities against bounds, as CSV");
    sweep->add_option("--a0", o.a0_list, "AR coefficients")->required();
    sweep->add_option("--eps", o.eps_list, "Deviation thresholds, strictly increasing")->required();
    sweep->add_option("--n", o.n_list, "Sample sizes")->required();
    sweep->add_option("--runs", o.runs, "Monte Carlo runs per cell")->capture_default_str();
    sweep->add_option("--seed", o.seed, "Base seed")->capture_default_str();
    sweep->add_option("--sigma", o.sigma, "Noise standard deviation")->capture_default_str();
    sweep->add_option("--out", o.out, "Output CSV path, - for standard output")->required();
    add_workers(sweep);
    add_config(sweep);

    auto* validate = app.add_subcommand("validate", "Run the identity and dominance checks");
    validate->add_flag("--json", o.json, "Machine-readable report");
    validate->add_flag("--inject-fault", o.inject_fault, "Corrupt the continuant closed form (self-test)")
        ->group("");
    add_config(validate);

    auto* reproduce = app.add_subcommand(
        "reproduce",
        "Write figure data as CSV. fig1: eps 0.01..5 (20 log-spaced) x N 2..100 (13 points) per a0; "
        "fig2: N 7..1000 (25 log-spaced) per a0; a0 in {0.5, 0.98, 1.01, 1.1}");
    reproduce->add_option("figure", o.figure, "fig1 or fig2")->required()->check(CLI::IsMember({"fig1", "fig2"}));
    reproduce->add_option("--runs", o.runs, "Monte Carlo runs per cell (>= 1000)")->capture_default_str();
    reproduce->add_option("--seed", o.seed, "Base seed")->capture_default_str();
    reproduce->add_option("--out", o.out, "Output directory (default: current directory)");
    add_workers(reproduce);
    add_config(reproduce);

    try {
        std::vector<std::string> args(argv, argv + argc);
        args = expand_config(std::move(args));
        std::vector<const char*> cargs;
        for (const auto& a : args) cargs.push_back(a.c_str());
        try {
            app.parse(static_cast<int>(cargs.size()), cargs.data());
        } catch (const CLI::CallForHelp& e) {
            return app.exit(e);
        } catch (const CLI::CallForAllHelp& e) {
            return app.exit(e);
        } catch (const CLI::ParseError& e) {
            app.exit(e);
            return exit_usage;
        }

        if (*bound) return cmd_bound(o);
        if (*simulate) return cmd_simulate(o);
        if (*sweep) return cmd_sweep(o);
        if (*validate) return cmd_validate(o);
        if (*reproduce) return cmd_reproduce(o);
    } catch (const ar1::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_io;
    } catch (const ar1::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}
