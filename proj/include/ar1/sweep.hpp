#ifndef AR1_SWEEP_HPP
#define AR1_SWEEP_HPP

// Grid experiments: empirical deviation probabilities and variances next to
// their closed-form and determinant-exact bounds, written as CSV.

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace ar1 {

struct SweepSpec {
    std::vector<double> a0_list;
    std::vector<double> eps_list;
    std::vector<int> N_list;
    std::uint64_t runs = 10000;
    std::uint64_t base_seed = 0;
    double sigma = 1.0;
    std::string output_path; ///< "-" writes to standard output
};

/// Throws DomainError naming the violated condition.
void validate(const SweepSpec& spec);

inline constexpr std::string_view sweep_csv_header =
    "a0,eps,N,runs,empirical_prob,ci_low,ci_high,std_err,bound_closed,bound_det_exact,regime";

struct SweepRow {
    double a0 = 0.0;
    double eps = 0.0;
    int N = 0;
    std::uint64_t runs = 0;
    double empirical_prob = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double std_err = 0.0;
    double bound_closed = 0.0;
    double bound_det_exact = 0.0;
    std::string_view regime;
};

/// Seed of the (a0, N) cell: mixes base_seed with the bit patterns of a0 and N,
/// so a cell's runs do not depend on the rest of the grid.
std::uint64_t cell_seed(std::uint64_t base_seed, double a0, int N) noexcept;

/// One row per (a0, eps, N) in list order (a0 outermost, then N, then eps).
std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned workers = 0);

/// Shortest decimal string that parses back to exactly x.
std::string format_double(double x);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// Streams `writer` into `path`. On any failure the partial file is removed
/// and IoError is thrown; exceptions from writer propagate after cleanup.
void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& writer);

// Fixed grids for figure reproduction.
inline constexpr std::array<double, 4> figure_a0_values{0.5, 0.98, 1.01, 1.1};
/// 13 points, round(2 * 50^{k/12}), k = 0..12.
inline constexpr std::array<int, 13> fig1_N_values{2, 3, 4, 5, 7, 10, 14, 20, 27, 38, 52, 72, 100};
/// 25 points, round(7 * (1000/7)^{k/24}), k = 0..24.
inline constexpr std::array<int, 25> fig2_N_values{7,   9,   11,  13,  16,  20,  24,  30,  37,  45,  55,  68,  84,
                                                   103, 127, 156, 191, 235, 289, 356, 437, 538, 661, 813, 1000};
/// 20 log-spaced values from 0.01 to 5: 0.01 * 500^{k/19}.
std::vector<double> fig1_eps_values();

inline constexpr std::string_view fig2_csv_header =
    "a0,N,runs,empirical_var,std_err,ci_low,ci_high,bound,cramer_rao,regime";

enum class Figure { Fig1, Fig2 };

/// Writes one CSV per a0 in figure_a0_values into out_dir and returns the paths.
/// fig1 files use the sweep schema; fig2 files use fig2_csv_header, with an empty
/// cramer_rao field for unstable a0. Requires runs >= 1000.
std::vector<std::filesystem::path> reproduce_figure(Figure figure, std::uint64_t runs, std::uint64_t base_seed,
                                                    const std::filesystem::path& out_dir, unsigned workers = 0);

} // namespace ar1

#endif // AR1_SWEEP_HPP
