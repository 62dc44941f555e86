#pragma once

#include <stdexcept>
#include <string>

namespace gcslab {

/// Numerical failure outside the caller's control: quadrature that did not
/// converge, probability leaking off the propagation box, a root bracket
/// without a sign change.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// sigma_z * sigma_pz dropped below hbar/2 (or the dimensionless sigma_q *
/// sigma_p below 1/2). Carries the offending product for diagnostics.
class HeisenbergViolation : public std::invalid_argument {
public:
    HeisenbergViolation(const std::string& what, double product)
        : std::invalid_argument(what), product_(product) {}

    double product() const noexcept { return product_; }

private:
    double product_;
};

}  // namespace gcslab
