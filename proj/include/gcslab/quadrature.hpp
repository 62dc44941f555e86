#pragma once

#include <functional>

#include "gcslab/errors.hpp"

namespace gcslab {

struct QuadratureResult {
    double value;
    double error_estimate;
    int subdivisions;
};

/// Adaptive Gauss-Legendre integration of a real integrand on [a, b].
///
/// Each interval is accepted once the whole-vs-halves discrepancy of the
/// 15-point rule fits into its share of the absolute tolerance. Throws
/// NumericError (with the achieved error estimate in the message) when the
/// subdivision budget runs out before convergence.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    double abs_tol = 1e-12,
                                    int max_subdivisions = 60);

}  // namespace gcslab
