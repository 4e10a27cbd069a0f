#ifndef AR1_PRECISION_HPP
#define AR1_PRECISION_HPP

// Working-precision selection for the dense oracles.
//
// Dense factorizations of the zero-initialized unstable covariance lose about
// 2 * dim * log10|a0| decimal digits to cancellation, which double cannot
// absorb beyond a handful of samples. Those computations run in a binary
// floating type from a fixed ladder of precisions instead.

#include "ar1/errors.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <cmath>
#include <string>

namespace ar1 {

template <unsigned Digits>
using MpFloat = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<Digits>,
                                              boost::multiprecision::et_off>;

/// Guard digits kept on top of the predicted cancellation.
inline constexpr double guard_digits = 30.0;
inline constexpr unsigned max_working_digits = 800;

/// Calls fn.template operator()<Scalar>() with the smallest ladder type that
/// carries at least `digits` decimal digits. Throws NumericalFailure beyond the ladder.
template <class Fn>
decltype(auto) with_working_digits(double digits, Fn&& fn)
{
    if (!(digits <= max_working_digits))
        throw NumericalFailure("oracle would need " + std::to_string(static_cast<long>(std::ceil(digits))) +
                               " decimal digits; the supported maximum is " + std::to_string(max_working_digits));
    if (digits <= 50) return fn.template operator()<MpFloat<50>>();
    if (digits <= 100) return fn.template operator()<MpFloat<100>>();
    if (digits <= 200) return fn.template operator()<MpFloat<200>>();
    if (digits <= 400) return fn.template operator()<MpFloat<400>>();
    return fn.template operator()<MpFloat<800>>();
}

} // namespace ar1

#endif // AR1_PRECISION_HPP
