#ifndef AR1_RNG_HPP
#define AR1_RNG_HPP

// Portable random streams.
//
// Uniform bits come from xoshiro256++ (Blackman & Vigna), seeded by expanding a
// single 64-bit seed through splitmix64. Gaussian variates use the Marsaglia
// polar method. Integer arithmetic is exact everywhere; the Gaussian path
// additionally depends on std::log and std::sqrt, so bit-identical streams are
// guaranteed across platforms sharing an IEEE-754 libm.

#include <array>
#include <cmath>
#include <cstdint>

namespace ar1 {

/// splitmix64 output function (Steele, Lea & Flood).
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t golden_gamma = 0x9E3779B97F4A7C15ULL;

/// Seed of Monte Carlo run `run` under `base_seed`:
/// splitmix64_mix(base_seed + (run + 1) * golden_gamma), arithmetic mod 2^64.
/// Depends on nothing but its arguments, so scheduling cannot change results.
constexpr std::uint64_t derive_run_seed(std::uint64_t base_seed, std::uint64_t run) noexcept
{
    return splitmix64_mix(base_seed + (run + 1) * golden_gamma);
}

class Xoshiro256pp {
public:
    using result_type = std::uint64_t;

    explicit constexpr Xoshiro256pp(std::uint64_t seed) noexcept
    {
        std::uint64_t x = seed;
        for (auto& s : state_) {
            x += golden_gamma;
            s = splitmix64_mix(x);
        }
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    constexpr result_type operator()() noexcept
    {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform on [0, 1) with 53 random bits.
    constexpr double uniform() noexcept
    {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept
    {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
};

/// Standard normal variates by the polar method; the second variate of each
/// accepted pair is cached and returned by the next call.
class NormalSampler {
public:
    explicit NormalSampler(std::uint64_t seed) noexcept : engine_(seed) {}

    double operator()() noexcept
    {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u = 0.0;
        double v = 0.0;
        double s = 0.0;
        do {
            u = 2.0 * engine_.uniform() - 1.0;
            v = 2.0 * engine_.uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double factor = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * factor;
        has_spare_ = true;
        return u * factor;
    }

private:
    Xoshiro256pp engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace ar1

#endif // AR1_RNG_HPP
