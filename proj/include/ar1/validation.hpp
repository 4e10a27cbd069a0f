#ifndef AR1_VALIDATION_HPP
#define AR1_VALIDATION_HPP

// Identity and dominance checks tying the closed-form bounds to their exact
// matrix and quadrature counterparts.

#include <string>
#include <vector>

namespace ar1 {

struct CheckResult {
    std::string check;
    bool pass = false;
    double residual = 0.0;
    double tolerance = 0.0;
};

struct ValidationOptions {
    /// Harness self-test: flips the sign of the lambda2^N term in the
    /// continuant closed form so that check must fail.
    bool flip_continuant_sign = false;
};

std::vector<CheckResult> run_validation(const ValidationOptions& options = {});

} // namespace ar1

#endif // AR1_VALIDATION_HPP
