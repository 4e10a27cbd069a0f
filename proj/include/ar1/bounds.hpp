#ifndef AR1_BOUNDS_HPP
#define AR1_BOUNDS_HPP

// Closed-form finite-sample bounds for the least-squares AR(1) estimate.
//
// Deviation bounds control P(a_hat_N - a0 > eps); variance bounds control
// E[(a_hat_N - a0)^2]. None of them depends on the noise level sigma.
//
// Everything containing lambda^N or |a0|^{cN} is evaluated in log domain, and
// the roots of lambda^2 - (1 + a0^2 + eps^2) lambda + a0^2 are produced
// together with their differences from one and from each other, all formed
// without subtractive cancellation.

#include "ar1/errors.hpp"
#include "ar1/log_domain.hpp"

#include <cmath>
#include <concepts>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

namespace ar1 {

template <std::floating_point Scalar = double>
struct DeviationQuery {
    Scalar a0{};
    Scalar eps{};
    int N = 2;
};

enum class BoundKind {
    StableDeviation,
    UnstableDeviation,
    RelaxedUnstableDeviation,
    StableVariance,
    UnstableVariance,
    CramerRaoAsymptotic,
};

constexpr std::string_view to_string(BoundKind k) noexcept
{
    switch (k) {
    case BoundKind::StableDeviation: return "stable_deviation";
    case BoundKind::UnstableDeviation: return "unstable_deviation";
    case BoundKind::RelaxedUnstableDeviation: return "relaxed_unstable_deviation";
    case BoundKind::StableVariance: return "stable_variance";
    case BoundKind::UnstableVariance: return "unstable_variance";
    case BoundKind::CramerRaoAsymptotic: return "cramer_rao_asymptotic";
    }
    return "unknown";
}

template <std::floating_point Scalar = double>
struct BoundValue {
    Scalar value{};
    /// Natural log of value; stays meaningful when value underflows to zero.
    Scalar log_value{};
    BoundKind kind{};
    Scalar a0{};
    std::optional<Scalar> eps; ///< empty for variance kinds
    int N = 0;
};

/// Roots 0 < lambda1 <= lambda2 of lambda^2 - (1 + a0^2 + eps^2) lambda + a0^2.
template <std::floating_point Scalar = double>
struct RootPair {
    Scalar lambda1{};
    Scalar lambda2{};
    Scalar gap{};               ///< lambda2 - lambda1
    Scalar lambda2_minus_one{}; ///< lambda2 - 1, >= 0
    Scalar one_minus_lambda1{}; ///< 1 - lambda1, may be negative when |a0| < 1 and eps is small
};

namespace detail {

template <std::floating_point Scalar>
void require(bool ok, const char* message)
{
    if (!ok) throw DomainError(message);
}

template <std::floating_point Scalar>
void require_finite(Scalar a0, Scalar eps)
{
    require<Scalar>(std::isfinite(a0), "a0 must be finite");
    require<Scalar>(std::isfinite(eps) && eps >= 0, "eps must be finite and >= 0");
}

/// Roots for any (a0, eps) with a0 != 0 or eps > 0. Uses
///   lambda2 - lambda1 = 2R,  R^2 = ((1-|a0|)^2 + eps^2)((1+|a0|)^2 + eps^2) / 4,
///   (lambda2 - 1)(1 - lambda1) = eps^2,
/// picking the additive branch for whichever of lambda2 - 1, 1 - lambda1 has one.
template <std::floating_point Scalar>
RootPair<Scalar> quadratic_roots(Scalar a0, Scalar eps)
{
    const Scalar m = std::abs(a0);
    const Scalar e2 = eps * eps;
    const Scalar lo = (1 - m) * (1 - m) + e2;
    const Scalar hi = (1 + m) * (1 + m) + e2;
    const Scalar r = std::sqrt(lo) * std::sqrt(hi) / 2;
    const Scalar c = ((m - 1) * (m + 1) + e2) / 2; // S - 1

    RootPair<Scalar> p;
    p.gap = 2 * r;
    if (c >= 0) {
        p.lambda2_minus_one = c + r;
        p.one_minus_lambda1 = p.lambda2_minus_one > 0 ? e2 / p.lambda2_minus_one : Scalar(0);
    } else {
        p.one_minus_lambda1 = r - c;
        p.lambda2_minus_one = e2 / p.one_minus_lambda1;
    }
    p.lambda2 = 1 + p.lambda2_minus_one;
    p.lambda1 = (m * m) / p.lambda2;
    return p;
}

template <std::floating_point Scalar>
BoundValue<Scalar> make_bound(Scalar log_value, BoundKind kind, Scalar a0, std::optional<Scalar> eps, int N)
{
    return {std::exp(log_value), log_value, kind, a0, eps, N};
}

} // namespace detail

/// log(S + sqrt(S^2 - a0^2)) with S = (1 + a0^2 + eps^2) / 2, the closed form
/// of (1/2pi) * integral over [-pi, pi] of log(1 + eps^2 / |e^{jw} - a0|^2).
template <std::floating_point Scalar>
Scalar szego_log_factor(Scalar a0, Scalar eps)
{
    detail::require_finite(a0, eps);
    detail::require<Scalar>(std::abs(a0) < 1, "szego_log_factor requires |a0| < 1");
    return std::log1p(detail::quadratic_roots(a0, eps).lambda2_minus_one);
}

/// ((1 - a0^2) / (1 - a0^2 + eps^2))^{1/4} * (S + sqrt(S^2 - a0^2))^{-(N-2)/4}.
template <std::floating_point Scalar>
BoundValue<Scalar> stable_deviation_bound(const DeviationQuery<Scalar>& q)
{
    detail::require_finite(q.a0, q.eps);
    detail::require<Scalar>(std::abs(q.a0) < 1, "stable bounds require |a0| < 1");
    detail::require<Scalar>(q.N >= 2, "N must be >= 2 for deviation bounds");

    const Scalar m = std::abs(q.a0);
    const Scalar first = -std::log1p(q.eps * q.eps / ((1 - m) * (1 + m))) / 4;
    const Scalar second = -Scalar(q.N - 2) / 4 * szego_log_factor(q.a0, q.eps);
    return detail::make_bound<Scalar>(std::min(Scalar(0), first + second), BoundKind::StableDeviation, q.a0,
                                      q.eps, q.N);
}

/// 8/(N-6) - 8 a0^2/(N+2), valid for N >= 7.
template <std::floating_point Scalar>
BoundValue<Scalar> stable_variance_bound(Scalar a0, int N)
{
    detail::require<Scalar>(std::isfinite(a0) && std::abs(a0) < 1, "stable bounds require |a0| < 1");
    detail::require<Scalar>(N >= 7, "N must be >= 7 for variance bounds");
    const Scalar v = 8 / Scalar(N - 6) - 8 * a0 * a0 / Scalar(N + 2);
    return {v, std::log(v), BoundKind::StableVariance, a0, std::nullopt, N};
}

template <std::floating_point Scalar>
RootPair<Scalar> unstable_roots(Scalar a0, Scalar eps)
{
    detail::require_finite(a0, eps);
    detail::require<Scalar>(std::abs(a0) > 1, "unstable bounds require |a0| > 1");
    return detail::quadratic_roots(a0, eps);
}

/// ((lambda2 - lambda1) / ((1 - lambda1) lambda2^N + (lambda2 - 1) lambda1^N))^{1/4}.
template <std::floating_point Scalar>
BoundValue<Scalar> unstable_deviation_bound(const DeviationQuery<Scalar>& q)
{
    const RootPair<Scalar> p = unstable_roots(q.a0, q.eps);
    detail::require<Scalar>(q.N >= 2, "N must be >= 2 for deviation bounds");
    if (q.eps == 0) return detail::make_bound<Scalar>(0, BoundKind::UnstableDeviation, q.a0, q.eps, q.N);

    const Scalar n = q.N;
    const Scalar log_den = log_add_exp(std::log(p.one_minus_lambda1) + n * std::log(p.lambda2),
                                       std::log(p.lambda2_minus_one) + n * std::log(p.lambda1));
    const Scalar log_value = (std::log(p.gap) - log_den) / 4;
    if (!std::isfinite(log_value)) throw Overflow("unstable deviation bound out of range even in log domain");
    return detail::make_bound<Scalar>(std::min(Scalar(0), log_value), BoundKind::UnstableDeviation, q.a0, q.eps,
                                      q.N);
}

/// min{1, lambda2^{-N/4} ((lambda2 - lambda1)/(1 - lambda1))^m}, m >= 1/4.
template <std::floating_point Scalar>
BoundValue<Scalar> relaxed_unstable_bound(const DeviationQuery<Scalar>& q, Scalar m = Scalar(5) / 4)
{
    const RootPair<Scalar> p = unstable_roots(q.a0, q.eps);
    detail::require<Scalar>(q.N >= 2, "N must be >= 2 for deviation bounds");
    detail::require<Scalar>(q.eps > 0, "relaxed bound requires eps > 0");
    detail::require<Scalar>(m >= Scalar(0.25), "relaxation exponent m must be >= 1/4");

    const Scalar log_value =
        -Scalar(q.N) / 4 * std::log(p.lambda2) + m * (std::log(p.gap) - std::log(p.one_minus_lambda1));
    return detail::make_bound<Scalar>(std::min(Scalar(0), log_value), BoundKind::RelaxedUnstableDeviation, q.a0,
                                      q.eps, q.N);
}

template <std::floating_point Scalar = double>
struct XZStar {
    Scalar xstar{};
    Scalar zstar{};
};

/// xstar = |a0|^{4 - N/(2m)} (N + 4m)/N and zstar = a0^2 + xstar.
template <std::floating_point Scalar>
XZStar<Scalar> xstar_zstar(Scalar a0, int N, Scalar m = Scalar(5) / 4)
{
    detail::require<Scalar>(std::isfinite(a0) && std::abs(a0) > 1, "unstable bounds require |a0| > 1");
    detail::require<Scalar>(N >= 7, "N must be >= 7 for variance bounds");
    detail::require<Scalar>(m >= Scalar(0.25), "relaxation exponent m must be >= 1/4");

    const Scalar n = N;
    const Scalar log_x = (4 - n / (2 * m)) * std::log(std::abs(a0)) + std::log((n + 4 * m) / n);
    const Scalar x = std::exp(log_x);
    return {x, a0 * a0 + x};
}

/// |a0|^{-2N/5} [2 a0^4 (N+5)/N + 8 (N/(N+5))^{1/4} (a0^2/(N-6) - 1/(N+2))], N >= 7.
template <std::floating_point Scalar>
BoundValue<Scalar> unstable_variance_bound(Scalar a0, int N)
{
    detail::require<Scalar>(std::isfinite(a0) && std::abs(a0) > 1, "unstable bounds require |a0| > 1");
    detail::require<Scalar>(N >= 7, "N must be >= 7 for variance bounds");

    const Scalar n = N;
    const Scalar a2 = a0 * a0;
    const Scalar bracket = 2 * a2 * a2 * (n + 5) / n +
                           8 * std::pow(n / (n + 5), Scalar(0.25)) * (a2 / (n - 6) - 1 / (n + 2));
    const Scalar log_value = -2 * n / 5 * std::log(std::abs(a0)) + std::log(bracket);
    return detail::make_bound<Scalar>(log_value, BoundKind::UnstableVariance, a0, std::nullopt, N);
}

/// (1 - a0^2)/(N - 1). Large-N reference curve, not a finite-sample guarantee.
template <std::floating_point Scalar>
Scalar cramer_rao_asymptote(Scalar a0, int N)
{
    detail::require<Scalar>(std::isfinite(a0) && std::abs(a0) < 1, "Cramer-Rao asymptote requires |a0| < 1");
    detail::require<Scalar>(N >= 2, "N must be >= 2");
    return (1 - a0) * (1 + a0) / Scalar(N - 1);
}

/// Regime-dispatched deviation bound used by sweeps: stable or exact unstable form.
template <std::floating_point Scalar>
BoundValue<Scalar> deviation_bound(const DeviationQuery<Scalar>& q)
{
    return std::abs(q.a0) < 1 ? stable_deviation_bound(q) : unstable_deviation_bound(q);
}

template <std::floating_point Scalar>
BoundValue<Scalar> variance_bound(Scalar a0, int N)
{
    return std::abs(a0) < 1 ? stable_variance_bound(a0, N) : unstable_variance_bound(a0, N);
}

} // namespace ar1

#endif // AR1_BOUNDS_HPP
