#include "ar1/linalg_oracle.hpp"

#include "ar1/bounds.hpp"
#include "ar1/precision.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace ar1 {

namespace {

void check_common(double a0, double sigma, double eps)
{
    if (!std::isfinite(a0)) throw DomainError("a0 must be finite");
    if (!(sigma > 0) || !std::isfinite(sigma)) throw DomainError("sigma must be finite and > 0");
    if (!(eps >= 0) || !std::isfinite(eps)) throw DomainError("eps must be finite and >= 0");
    if (std::abs(a0) == 1.0) throw DomainError("|a0| must differ from 1");
}

/// Digits lost to cancellation when factorizing or multiplying matrices whose
/// entries grow like |a0|^{2 dim}, plus guard digits.
double growth_digits(double a0, int dim, double extra_scale)
{
    const double m = std::abs(a0);
    double digits = 2.0 * dim * std::log10(m) + std::abs(std::log10((m - 1) * (m + 1)));
    if (extra_scale > 0) digits += std::abs(std::log10(extra_scale));
    return digits + guard_digits;
}

template <class Scalar>
Matrix<Scalar> precision_matrix(const Scalar& a0, int dim)
{
    TridiagonalSpec<Scalar> spec{-a0, a0 * a0 + 1, -a0, dim};
    Matrix<Scalar> m = assemble_tridiagonal(spec);
    m(dim - 1, dim - 1) = Scalar(1);
    return m;
}

} // namespace

double exact_det_working_digits(double a0, double eps, int N)
{
    if (std::abs(a0) < 1) return std::numeric_limits<double>::digits10;
    return growth_digits(a0, N - 1, eps * eps);
}

double exact_det_log_bound(double a0, double sigma, double eps, int N)
{
    check_common(a0, sigma, eps);
    if (N < 2) throw DomainError("N must be >= 2");
    if (eps == 0) return 0.0;
    if (std::abs(a0) < 1) return exact_det_log_bound_in<double>(a0, sigma, eps, N);
    return with_working_digits(exact_det_working_digits(a0, eps, N), [&]<class S>() {
        return static_cast<double>(exact_det_log_bound_in<S>(S(a0), S(sigma), S(eps), N));
    });
}

double exact_det_bound(double a0, double sigma, double eps, int N)
{
    return std::exp(exact_det_log_bound(a0, sigma, eps, N));
}

SignedLog<double> continuant_identity_lhs(double a0, double eps, int N)
{
    check_common(a0, 1.0, eps);
    if (N < 3) throw DomainError("N must be >= 3 for the continuant identity");
    const double a2 = a0 * a0;
    TridiagDetRecursion<double> rec(TridiagonalSpec<double>{-a0, a2 + 1 + eps * eps, -a0, N - 1});
    while (rec.order() < N - 1) rec.step();
    return rec.unscale(rec.current() - a2 * rec.previous());
}

namespace detail {

SignedLog<double> continuant_closed_form_signed(double a0, double eps, int N, int cross_sign)
{
    check_common(a0, 1.0, eps);
    if (N < 2) throw DomainError("N must be >= 2");
    const RootPair<double> p = quadratic_roots(a0, eps);
    const double n = N;
    // (lambda2 - 1) lambda1^N + (1 - lambda1) lambda2^N, both terms as signed logs.
    auto term = [n](double coeff, double lambda) {
        auto s = SignedLog<double>::from_value(coeff);
        if (s.sign != 0) s.log_abs += n * std::log(lambda);
        return s;
    };
    SignedLog<double> first = term(p.lambda2_minus_one, p.lambda1);
    SignedLog<double> second = term(p.one_minus_lambda1, p.lambda2);
    second.sign *= cross_sign;
    SignedLog<double> sum = signed_log_add(first, second);
    if (sum.sign != 0) sum.log_abs -= std::log(p.gap);
    return sum;
}

} // namespace detail

SignedLog<double> continuant_closed_form(double a0, double eps, int N)
{
    return detail::continuant_closed_form_signed(a0, eps, N, +1);
}

Matrix<double> zero_init_precision_matrix(double a0, int dim)
{
    if (!(std::abs(a0) > 1)) throw DomainError("zero-init precision matrix requires |a0| > 1");
    if (dim < 1) throw DomainError("dim must be >= 1");
    return precision_matrix(a0, dim);
}

double inverse_identity_residual(double a0, double sigma, int dim)
{
    check_common(a0, sigma, 0.0);
    if (!(std::abs(a0) > 1)) throw DomainError("inverse identity requires |a0| > 1");
    if (dim < 2) throw DomainError("dim must be >= 2");
    return with_working_digits(growth_digits(a0, dim, sigma * sigma), [&]<class S>() {
        const S s(sigma);
        const auto cov = build_covariance(CovarianceKind::UnstableZeroInit, S(a0), s, dim);
        Matrix<S> j = cov.entries * precision_matrix(S(a0), dim) / (s * s);
        j -= Matrix<S>::Identity(dim, dim);
        return static_cast<double>(j.cwiseAbs().maxCoeff());
    });
}

std::vector<double> perturbed_tridiag_eigenvalues(double a0, int dim)
{
    if (!(std::abs(a0) > 1) || !std::isfinite(a0)) throw DomainError("eigenvalue formula requires |a0| > 1");
    if (dim < 1) throw DomainError("dim must be >= 1");
    const double m = std::abs(a0);
    std::vector<double> out(static_cast<std::size_t>(dim));
    for (int k = 1; k <= dim; ++k)
        out[k - 1] = m * m + 1 - 2 * m * std::cos(k * std::numbers::pi / (dim + 1));
    return out;
}

std::vector<double> dense_perturbed_tridiag_eigenvalues(double a0, int dim)
{
    Matrix<double> m = zero_init_precision_matrix(a0, dim);
    m(dim - 1, dim - 1) += a0 * a0;
    Eigen::SelfAdjointEigenSolver<Matrix<double>> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalFailure("symmetric eigensolver failed");
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

std::vector<double> det_quotient_log_sequence(double a0, double eps, int upto)
{
    check_common(a0, 1.0, eps);
    if (!(std::abs(a0) < 1)) throw DomainError("Toeplitz quotients require |a0| < 1");
    if (upto < 1) throw DomainError("upto must be >= 1");
    const auto cov = build_covariance(CovarianceKind::StationaryToeplitz, a0, 1.0, upto);
    Matrix<double> t = eps * eps * cov.entries;
    t.diagonal().array() += 1.0;
    Eigen::LLT<Matrix<double>> llt(t);
    if (llt.info() != Eigen::Success) throw NumericalFailure("Cholesky factorization failed");
    std::vector<double> out(static_cast<std::size_t>(upto));
    for (int i = 0; i < upto; ++i) out[i] = 2 * std::log(llt.matrixLLT()(i, i));
    return out;
}

bool det_quotient_monotonicity_check(double a0, double eps, int upto)
{
    if (!(eps > 0)) throw DomainError("eps must be > 0");
    if (upto < 3) throw DomainError("upto must be >= 3");
    const auto q = det_quotient_log_sequence(a0, eps, upto);
    const double slack = std::log1p(1e-10);
    // q[n] is log(det T_{n+1} / det T_n); compare n + 1 = 3..upto against its predecessor.
    for (int n = 2; n < upto; ++n)
        if (!(q[n] <= q[n - 1] + slack)) return false;
    return true;
}

} // namespace ar1
