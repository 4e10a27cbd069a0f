#ifndef AR1_LINALG_ORACLE_HPP
#define AR1_LINALG_ORACLE_HPP

// Exact matrix-level counterparts of the closed-form bounds.
//
// The closed forms either equal (unstable regime) or upper-bound (stable
// regime) det(I + (eps^2/sigma^2) Cov)^{-1/4}, where Cov is the covariance of
// the regressors y_1..y_{N-1}. This header builds those covariances, evaluates
// the determinant densely, and exposes the tridiagonal and Toeplitz identities
// the closed forms are assembled from.
//
// Templates accept any Eigen-compatible scalar (double, long double,
// ar1::MpFloat<D>); the non-template entry points pick the working precision.

#include "ar1/errors.hpp"
#include "ar1/log_domain.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <vector>

namespace ar1 {

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

enum class CovarianceKind {
    StationaryToeplitz, ///< sigma^2 a0^{|i-j|} / (1 - a0^2)
    UnstableZeroInit,   ///< sigma^2 a0^{|i-j|} (a0^{2 min(i,j)} - 1) / (a0^2 - 1), 1-based i, j
};

template <class Scalar = double>
struct CovarianceMatrix {
    Matrix<Scalar> entries;
    CovarianceKind kind{};
    Scalar a0{};
    Scalar sigma{};
};

/// Tridiagonal Toeplitz matrix with constant sub-diagonal alpha, diagonal beta
/// and super-diagonal gamma.
template <class Scalar = double>
struct TridiagonalSpec {
    Scalar alpha{};
    Scalar beta{};
    Scalar gamma{};
    int size = 1;
};

namespace detail {

/// a^0 .. a^count by repeated multiplication.
template <class Scalar>
std::vector<Scalar> powers(const Scalar& a, int count)
{
    std::vector<Scalar> p(static_cast<std::size_t>(count) + 1);
    p[0] = Scalar(1);
    for (int k = 1; k <= count; ++k) p[k] = p[k - 1] * a;
    return p;
}

template <class Scalar>
bool all_finite(const Matrix<Scalar>& m)
{
    using std::isfinite;
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (!isfinite(m(i, j))) return false;
    return true;
}

} // namespace detail

template <class Scalar>
CovarianceMatrix<Scalar> build_covariance(CovarianceKind kind, const Scalar& a0, const Scalar& sigma, int dim)
{
    using std::abs;
    if (dim < 1) throw DomainError("covariance dimension must be >= 1");
    if (!(sigma > 0)) throw DomainError("sigma must be > 0");
    if (kind == CovarianceKind::StationaryToeplitz && !(abs(a0) < 1))
        throw DomainError("stationary covariance requires |a0| < 1");
    if (kind == CovarianceKind::UnstableZeroInit && !(abs(a0) > 1))
        throw DomainError("zero-init covariance requires |a0| > 1");

    const Scalar s2 = sigma * sigma;
    const Scalar a2m1 = (a0 - 1) * (a0 + 1);
    Matrix<Scalar> c(dim, dim);
    if (kind == CovarianceKind::StationaryToeplitz) {
        const auto p = detail::powers(a0, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) c(i, j) = s2 * p[std::abs(i - j)] / -a2m1;
    } else {
        const auto p = detail::powers(a0, 2 * dim);
        for (int i = 1; i <= dim; ++i)
            for (int j = 1; j <= dim; ++j)
                c(i - 1, j - 1) = s2 * p[std::abs(i - j)] * ((p[2 * std::min(i, j)] - 1) / a2m1);
    }
    if (!detail::all_finite(c)) throw Overflow("covariance entries exceed the representable range");
    return {std::move(c), kind, a0, sigma};
}

/// log det of a symmetric positive-definite matrix via Cholesky.
template <class Scalar>
Scalar log_det_spd(const Matrix<Scalar>& m)
{
    using std::log;
    Eigen::LLT<Matrix<Scalar>> llt(m);
    if (llt.info() != Eigen::Success) throw NumericalFailure("Cholesky factorization failed");
    Scalar sum(0);
    for (Eigen::Index i = 0; i < m.rows(); ++i) sum += log(llt.matrixLLT()(i, i));
    return 2 * sum;
}

/// log of det^{-1/4}(I + (eps^2/sigma^2) Cov) at the precision of Scalar.
template <class Scalar>
Scalar exact_det_log_bound_in(const Scalar& a0, const Scalar& sigma, const Scalar& eps, int N)
{
    using std::abs;
    if (N < 2) throw DomainError("N must be >= 2");
    if (!(eps >= 0)) throw DomainError("eps must be >= 0");
    const auto kind = abs(a0) < 1 ? CovarianceKind::StationaryToeplitz : CovarianceKind::UnstableZeroInit;
    auto cov = build_covariance(kind, a0, sigma, N - 1);
    Matrix<Scalar> t = (eps * eps / (sigma * sigma)) * cov.entries;
    t.diagonal().array() += Scalar(1);
    return -log_det_spd(t) / 4;
}

/// Decimal digits the dense oracle needs for this configuration.
double exact_det_working_digits(double a0, double eps, int N);

/// det^{-1/4}(I_{N-1} + (eps^2/sigma^2) Cov) for the regime of a0, by dense
/// Cholesky. Stable inputs run in double; unstable inputs in a multiprecision
/// type wide enough for the |a0|^{2N} dynamic range.
/// Throws DomainError (|a0| == 1, N < 2, eps < 0, sigma <= 0) or NumericalFailure.
double exact_det_bound(double a0, double sigma, double eps, int N);
/// Natural log of exact_det_bound; finite where the value itself underflows.
double exact_det_log_bound(double a0, double sigma, double eps, int N);

/// Steps det(T_n) = beta det(T_{n-1}) - alpha gamma det(T_{n-2}) from
/// det(T_0) = 1, det(T_1) = beta. The pair of running determinants shares a
/// power-of-two scale that is renormalized exactly, so the stored mantissas
/// equal the unscaled recursion's values and magnitudes beyond the double range survive.
template <class Scalar>
class TridiagDetRecursion {
public:
    explicit TridiagDetRecursion(const TridiagonalSpec<Scalar>& spec)
        : beta_(spec.beta), alpha_gamma_(spec.alpha * spec.gamma), cur_(spec.beta)
    {
    }

    int order() const noexcept { return order_; }
    /// det(T_order) = current() * 2^scale()
    const Scalar& current() const noexcept { return cur_; }
    /// det(T_{order-1}) = previous() * 2^scale()
    const Scalar& previous() const noexcept { return prev_; }
    long scale() const noexcept { return scale_; }

    void step()
    {
        using std::abs;
        using std::frexp;
        using std::ldexp;
        const Scalar next = beta_ * cur_ - alpha_gamma_ * prev_;
        prev_ = cur_;
        cur_ = next;
        ++order_;
        const Scalar big = abs(cur_) > abs(prev_) ? abs(cur_) : abs(prev_);
        if (big != 0) {
            int e = 0;
            frexp(big, &e);
            if (e > 256 || e < -256) {
                cur_ = ldexp(cur_, -e);
                prev_ = ldexp(prev_, -e);
                scale_ += e;
            }
        }
    }

    /// Signed-log form of mantissa * 2^scale().
    SignedLog<Scalar> unscale(const Scalar& mantissa) const
    {
        using std::log;
        auto s = SignedLog<Scalar>::from_value(mantissa);
        if (s.sign != 0) s.log_abs += Scalar(scale_) * log(Scalar(2));
        return s;
    }

private:
    Scalar beta_;
    Scalar alpha_gamma_;
    Scalar prev_ = Scalar(1);
    Scalar cur_;
    long scale_ = 0;
    int order_ = 1;
};

/// det(T_1) .. det(T_upto) via TridiagDetRecursion, in signed-log form.
template <class Scalar>
std::vector<SignedLog<Scalar>> tridiag_det_sequence(const TridiagonalSpec<Scalar>& spec, int upto)
{
    if (upto < 1) throw DomainError("upto must be >= 1");
    std::vector<SignedLog<Scalar>> out;
    out.reserve(static_cast<std::size_t>(upto));
    TridiagDetRecursion<Scalar> rec(spec);
    out.push_back(rec.unscale(rec.current()));
    while (rec.order() < upto) {
        rec.step();
        out.push_back(rec.unscale(rec.current()));
    }
    return out;
}

template <class Scalar>
std::vector<SignedLog<Scalar>> tridiag_det_sequence(const TridiagonalSpec<Scalar>& spec)
{
    return tridiag_det_sequence(spec, spec.size);
}

/// Dense tridiagonal Toeplitz matrix of the given size.
template <class Scalar>
Matrix<Scalar> assemble_tridiagonal(const TridiagonalSpec<Scalar>& spec)
{
    Matrix<Scalar> m = Matrix<Scalar>::Zero(spec.size, spec.size);
    for (int i = 0; i < spec.size; ++i) {
        m(i, i) = spec.beta;
        if (i > 0) m(i, i - 1) = spec.alpha;
        if (i + 1 < spec.size) m(i, i + 1) = spec.gamma;
    }
    return m;
}

/// det(Tb_{N-1} + eps^2 I) - a0^2 det(Tb_{N-2} + eps^2 I), Tb the tridiagonal
/// Toeplitz matrix (-a0, a0^2 + 1, -a0), via TridiagDetRecursion. N >= 3.
/// Evaluated from the scaled mantissas, so it is exactly 1 at eps = 0 whenever
/// the determinants themselves are exact in double.
SignedLog<double> continuant_identity_lhs(double a0, double eps, int N);

/// ((lambda2 - 1) lambda1^N - (lambda1 - 1) lambda2^N) / (lambda2 - lambda1), log domain.
SignedLog<double> continuant_closed_form(double a0, double eps, int N);

namespace detail {
/// Closed form with the sign of the (lambda1 - 1) lambda2^N term multiplied by
/// cross_sign; -1 gives a deliberately wrong identity for harness self-tests.
SignedLog<double> continuant_closed_form_signed(double a0, double eps, int N, int cross_sign);
} // namespace detail

/// Tridiagonal inverse of the zero-init covariance (scaled by sigma^2):
/// diagonal a0^2 + 1 except a final 1, off-diagonals -a0.
Matrix<double> zero_init_precision_matrix(double a0, int dim);

/// max |Rb M / sigma^2 - I| with Rb the zero-init covariance and M its claimed
/// tridiagonal inverse. Evaluated at a precision that absorbs the |a0|^{2 dim}
/// entry growth, so the residual measures the identity rather than rounding.
double inverse_identity_residual(double a0, double sigma, int dim);

/// a0^2 + 1 - 2|a0| cos(k pi/(dim + 1)), k = 1..dim, ascending.
std::vector<double> perturbed_tridiag_eigenvalues(double a0, int dim);

/// Eigenvalues of the assembled matrix M + a0^2 e_dim e_dim^T by a dense
/// symmetric eigensolver, ascending.
std::vector<double> dense_perturbed_tridiag_eigenvalues(double a0, int dim);

/// log(det T_n / det T_{n-1}) for n = 1..upto, T_n = I + eps^2 R_n with R_n the
/// stationary Toeplitz covariance at unit noise (det T_0 = 1). These are the
/// Cholesky pivots of T_upto.
std::vector<double> det_quotient_log_sequence(double a0, double eps, int upto);

/// True iff det(T_{n+1})/det(T_n) <= det(T_n)/det(T_{n-1}) (1 + 1e-10) for 2 <= n < upto.
bool det_quotient_monotonicity_check(double a0, double eps, int upto);

} // namespace ar1

#endif // AR1_LINALG_ORACLE_HPP
