#pragma once

#include <random>
#include <string>
#include <vector>

#include "gcslab/classifier.hpp"
#include "gcslab/gcs_state.hpp"

namespace gcslab::verify {

struct SuiteResult {
    std::string suite;
    bool passed = false;
    int cases = 0;
    double tolerance = 0.0;
    double max_error = 0.0;
    std::vector<std::string> notes;
};

/// sigma_q^2 sigma_p^2 - sigma_qp^2 = 1/4 over random states and tau in [0, 10].
SuiteResult run_rs_identity(int cases = 1000, unsigned seed = 20260808);

/// Quadrature normalization of sampled wavefunctions at tau in {0, 0.7, 2.3}.
SuiteResult run_norm();

/// Free-particle exact solution: split-operator propagation of the minimal
/// Gaussian to tau = 1 against the closed form.
SuiteResult run_propagate_free();

/// Random (seed, zeta, Xi, alpha) cases propagated to tau = 0.5 with
/// dt = 1e-4 on a 4096-point box, compared with the closed form.
SuiteResult run_propagate_random(int cases = 20, unsigned seed = 20260808,
                                 unsigned threads = 0);

/// Schrodinger residual bounds plus the phase-mutation sensitivity check.
SuiteResult run_residual();

/// Bisection roots of R(t) = 1 against the three closed-form critical times.
SuiteResult run_critical_times();

/// Random seed generator shared by verification code: draws (f0, g0) with
/// Re(f0 conj(g0)) = 1 exactly and O(1) magnitudes.
SeedCoefficients random_seed(std::mt19937& rng);

std::vector<std::string> suite_names();

/// Runs one of the named suites: rs-identity | norm | propagate | residual |
/// critical-times. Throws std::invalid_argument for an unknown name.
SuiteResult run_suite(const std::string& name, unsigned threads = 0);

}  // namespace gcslab::verify
