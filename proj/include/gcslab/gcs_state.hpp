#pragma once

#include <span>
#include <vector>

#include "gcslab/dynamics.hpp"

namespace gcslab {

/// A generalized coherent state: squeezed Gaussian wavepacket whose center
/// follows the classical trajectory. Fully specified by the seed pair
/// (f0, g0), the dimensionless field strength Xi, the gauge angle alpha and
/// the eigenvalue zeta of the annihilation-type integral of motion.
class GcsState {
public:
    GcsState(SeedCoefficients seed, double Xi, double alpha, Complex zeta);

    static GcsState from_initial_means(SeedCoefficients seed, double Xi, double alpha,
                                       double mean_q0, double mean_p0);

    const SeedCoefficients& seed() const noexcept { return seed_; }
    double Xi() const noexcept { return Xi_; }
    double alpha() const noexcept { return alpha_; }
    Complex zeta() const noexcept { return zeta_; }

    double mean_q0() const noexcept;
    double mean_p0() const noexcept;

private:
    SeedCoefficients seed_;
    double Xi_;
    double alpha_;
    Complex zeta_;
};

/// zeta = (f0 mean_q0 + i g0 mean_p0) / sqrt(2); inverse of the mean-value
/// relations mean_q0 = sqrt(2) Re(conj(g0) zeta), mean_p0 = sqrt(2) Im(conj(f0) zeta).
Complex zeta_from_initial(const SeedCoefficients& seed, double mean_q0, double mean_p0);

/// First and second moments of a state at fixed tau. sigma_p is constant in
/// time; sigma_q^2 sigma_p^2 - sigma_qp^2 = 1/4 holds identically.
struct MomentSet {
    double tau;
    double mean_q;
    double mean_p;
    double sigma_q;
    double sigma_p;
    double sigma_qp;
};

MomentSet moments(const GcsState& state, double tau);

struct EvalOptions {
    /// Verification hook: dropping the integral of Re Q / 2 must break the
    /// Schrodinger equation detectably.
    bool include_phase_integral = true;
};

/// Wavefunction amplitude Phi_zeta(q, tau) assembled from the coefficient
/// functions and the phase integral (the square-integrable closed form).
Complex evaluate_gcs(const GcsState& state, double q, double tau, const EvalOptions& opts = {});

/// Same state evaluated on a grid; the tau-dependent pieces (including the
/// phase integral) are computed once.
std::vector<Complex> evaluate_gcs_grid(const GcsState& state, std::span<const double> q,
                                       double tau, const EvalOptions& opts = {});

/// The algebraically repacked form written in terms of the mean values
/// mean_q(tau), mean_p(tau) and a real phase. Agrees with evaluate_gcs
/// pointwise; kept separate as an internal cross-check.
Complex evaluate_gcs_repacked(const GcsState& state, double q, double tau);

/// Probability density (2 pi)^{-1/2} sigma_q^{-1} exp(-(q - mean_q)^2 / (2 sigma_q^2)).
double density(const GcsState& state, double q, double tau);

/// Closed form sigma_q(tau) = sqrt(sq0^2 + branch * sqrt(4 sq0^2 sp0^2 - 1) tau + sp0^2 tau^2).
/// Matches |g(tau)| / sqrt(2) for a seed with Im(f0 conj(g0)) = -branch * sqrt(4 sq0^2 sp0^2 - 1).
double sigma_q_closed_form(double sigma_q0, double sigma_p0, int branch, double tau);

struct UncertaintyReport {
    double heisenberg_product;  // sigma_q(tau) * sigma_p
    double rs_residual;         // sigma_q^2 sigma_p^2 - sigma_qp^2 - 1/4
};

/// Reports, never throws.
UncertaintyReport check_uncertainty(const GcsState& state, double tau);

/// Coherent-state specialization: real seed g0 = sqrt(2) sigma_q0, f0 = 1/g0,
/// which minimizes the Heisenberg product at tau = 0.
SeedCoefficients cs_specialize(double sigma_q0);

struct CorrespondencePoint {
    double z0;
    double p0;
};

/// Initial classical data (z0, p0) matching the state's mean values, in
/// dimensional units: z0 = 2 sigma_z Re(e^{-i arg g0} zeta),
/// p0 = 2 sigma_pz Im(e^{-i arg f0} zeta).
CorrespondencePoint classical_correspondence(const GcsState& state, const PhysicalSetup& setup);

}  // namespace gcslab
