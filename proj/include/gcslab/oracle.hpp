#pragma once

#include <string>
#include <vector>

#include "gcslab/gcs_state.hpp"

namespace gcslab::oracle {

/// Uniform periodic grid on [q_min, q_max); n_points is a power of two so the
/// spectral machinery applies directly.
struct SpatialGrid {
    double q_min;
    double q_max;
    std::size_t n_points;
    double dq;

    SpatialGrid(double q_min_, double q_max_, std::size_t n_points_);

    double point(std::size_t i) const noexcept { return q_min + static_cast<double>(i) * dq; }
    std::vector<double> points() const;

    /// Wavenumbers in FFT ordering (positive then negative frequencies).
    std::vector<double> wavenumbers() const;

    bool operator==(const SpatialGrid& other) const noexcept {
        return q_min == other.q_min && q_max == other.q_max && n_points == other.n_points;
    }
};

struct WavefunctionSample {
    SpatialGrid grid;
    double tau;
    std::vector<Complex> values;

    double norm() const;  // sqrt(sum |psi|^2 dq)
};

/// Sample a state's wavefunction on a grid; the discrete norm must come out
/// within 1e-6 of unity (box and resolution adequate) or this throws.
WavefunctionSample sample_state(const GcsState& state, const SpatialGrid& grid, double tau,
                                const EvalOptions& opts = {});

/// Default verification box [-20, 20] with 4096 points, doubled (range and
/// point count together, keeping dq) until mean +- 8 sigma fits at both ends
/// of the run. The field accelerates the packet, so the box must track it.
SpatialGrid verification_grid(const GcsState& state, double tau_final,
                              double half_width = 20.0, std::size_t n_points = 4096);

struct PropagateOptions {
    double dt = 1e-4;                       // must be <= 1e-3
    double edge_density_threshold = 1e-12;  // relative to the instantaneous peak
    std::vector<std::string>* warnings = nullptr;
};

/// Second-order split-operator propagation of the Schrodinger equation with
/// Hamiltonian p^2/2 + Xi tau p cos^2(alpha) - Xi q sin^2(alpha)
/// + Xi^2 tau^2 cos^4(alpha) / 2. Momentum half-step (spectral), position
/// full step, momentum half-step; explicit tau dependence evaluated at each
/// step midpoint. Unitary up to rounding.
WavefunctionSample propagate(const WavefunctionSample& initial, double Xi, double alpha,
                             double tau_final, const PropagateOptions& opts = {});

/// Moments extracted from a sampled wavefunction alone: position moments from
/// |psi|^2 sums, momentum moments spectrally, the covariance from the
/// symmetrized product. Requires a normalized sample.
MomentSet quadrature_moments(const WavefunctionSample& sample);

/// Grid L2 norm of (d_tau + i H) Phi with the time derivative from 5-point
/// central differences of evaluate_gcs and spatial derivatives spectral.
/// h must lie in [1e-6, 1e-3] and tau >= 2h.
double schrodinger_residual(const GcsState& state, const SpatialGrid& grid, double tau, double h,
                            const EvalOptions& opts = {});

/// ||a - b||_2 sqrt(dq); with phase_aligned the global phase of b is first
/// chosen to minimize the distance.
double l2_distance(const WavefunctionSample& a, const WavefunctionSample& b,
                   bool phase_aligned = false);

}  // namespace gcslab::oracle
