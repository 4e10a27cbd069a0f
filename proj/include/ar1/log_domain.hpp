#ifndef AR1_LOG_DOMAIN_HPP
#define AR1_LOG_DOMAIN_HPP

#include <algorithm>
#include <cmath>
#include <limits>

namespace ar1 {

/// log(exp(x) + exp(y)) without overflow. Either argument may be -inf.
template <class Scalar>
Scalar log_add_exp(Scalar x, Scalar y)
{
    using std::exp;
    using std::log1p;
    if (x < y) std::swap(x, y);
    if (y == -std::numeric_limits<Scalar>::infinity()) return x;
    return x + log1p(exp(y - x));
}

/// A real number stored as sign and natural log of its magnitude.
/// sign == 0 encodes an exact zero (log_abs is then -inf).
template <class Scalar>
struct SignedLog {
    int sign = 0;
    Scalar log_abs = -std::numeric_limits<Scalar>::infinity();

    static SignedLog from_value(Scalar v)
    {
        using std::abs;
        using std::log;
        if (v == Scalar(0)) return {};
        return {v > 0 ? 1 : -1, log(abs(v))};
    }

    /// Converts back; overflows to +-inf and underflows to 0 like exp does.
    Scalar value() const
    {
        using std::exp;
        return sign == 0 ? Scalar(0) : Scalar(sign) * exp(log_abs);
    }
};

/// Signed sum of two log-represented reals.
template <class Scalar>
SignedLog<Scalar> signed_log_add(SignedLog<Scalar> x, SignedLog<Scalar> y)
{
    using std::exp;
    using std::log1p;
    if (x.sign == 0) return y;
    if (y.sign == 0) return x;
    if (x.log_abs < y.log_abs) std::swap(x, y);
    const Scalar r = exp(y.log_abs - x.log_abs);
    if (x.sign == y.sign) return {x.sign, x.log_abs + log1p(r)};
    if (r == Scalar(1)) return {};
    return {x.sign, x.log_abs + log1p(-r)};
}

} // namespace ar1

#endif // AR1_LOG_DOMAIN_HPP
