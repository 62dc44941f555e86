#pragma once

#include <functional>
#include <optional>
#include <string>

#include "gcslab/dynamics.hpp"

namespace gcslab {

/// Dimensional inputs of the semiclassicality analysis: initial coordinate and
/// momentum spreads, initial momentum, and the particle/field constants.
/// Magnitudes drive the analysis; a momentum anti-aligned with the electric
/// force (a decelerating configuration) is out of scope and rejected.
struct SemiclassicalInput {
    double sigma_z;
    double sigma_pz;
    double p_z;
    PhysicalSetup setup;

    SemiclassicalInput(double sigma_z_, double sigma_pz_, double p_z_, PhysicalSetup setup_);

    /// Intrinsic spreading time m sigma_z / sigma_pz.
    double t_sigma() const noexcept { return setup.mass * sigma_z / sigma_pz; }
};

/// The dimensionless ratios the regime analysis runs on.
///   X       = |p_z| / sigma_pz
///   Y       = sqrt(1 - (hbar / 2 sigma_z sigma_pz)^2)
///   X_sigma = 2 |p_z| sigma_z / hbar
///   W       = (1/2) (m c / sigma_pz)^2 (sigma_z / compton) (E / E_c)
///   W_sigma = 2 (sigma_z / compton)^3 (E / E_c)
struct RatioSet {
    double X = 0.0;
    double Y = 0.0;
    double X_sigma = 0.0;
    double W = 0.0;
    double W_sigma = 0.0;
    double t_sigma = 1.0;
    double delta = 0.0;        // 2 |X - Y|
    double Delta = 0.0;        // |X^2 + 2W - 1|
    double Delta_sigma = 0.0;  // |X_sigma^2 + 2 W_sigma - 1|

    static RatioSet from_input(const SemiclassicalInput& input);

    /// Build directly from (X, Y, W); X_sigma and W_sigma follow from the
    /// identities X_sigma = X / sqrt(1 - Y^2), W_sigma = W / (1 - Y^2).
    static RatioSet from_values(double X, double Y, double W, double t_sigma = 1.0);
};

enum class Regime {
    SemiclassicalAlways,
    SemiclassicalUntil,  // R(t) <= 1 only for t <= time
    SemiclassicalAfter,  // R(t) <= 1 guaranteed for t >= time
    QuantumAlways,
};

enum class ConditionLabel { I, II, III, IV, V, VI, VII, VIII, IX, Quantum66b };

std::string to_string(Regime regime);
std::string to_string(ConditionLabel label);

struct RegimeVerdict {
    Regime regime;
    ConditionLabel label;
    std::optional<double> time;  // same unit as t_sigma; present iff the regime carries a time

    bool has_time() const noexcept { return time.has_value(); }
};

/// Growth of the coordinate spread, sigma_z [sqrt(1 + 2 (t/ts) Y + (t/ts)^2) - 1].
double spread(const SemiclassicalInput& input, double t);

/// Classical displacement |z(t) - z0| = sigma_z [(t/ts) X + (t/ts)^2 W].
double displacement(const SemiclassicalInput& input, double t);

/// R(t) = spread / displacement; the t -> 0 limit (0 when X > 0) is used at
/// t = 0. Throws when the particle never displaces (X = W = 0).
double ratio_R(const SemiclassicalInput& input, double t);
double ratio_R(const RatioSet& r, double t);

RegimeVerdict classify_free_gcs(const RatioSet& r);
RegimeVerdict classify_free_cs(const RatioSet& r);
RegimeVerdict classify_field_gcs(const RatioSet& r);
RegimeVerdict classify_field_cs(const RatioSet& r);

/// Dimensional entry points; `free` variants require E = 0, `field` E > 0,
/// and the CS variants a minimal pair sigma_z sigma_pz = hbar/2 (1e-9).
RegimeVerdict classify_free_gcs(const SemiclassicalInput& input);
RegimeVerdict classify_free_cs(const SemiclassicalInput& input);
RegimeVerdict classify_field_gcs(const SemiclassicalInput& input);
RegimeVerdict classify_field_cs(const SemiclassicalInput& input);

/// Bisection of R(t) = threshold on [t_lo, t_hi] to relative tolerance
/// rel_tol. The endpoints must straddle the threshold. This is the oracle
/// validating every closed-form critical time.
double brute_force_crossing(const std::function<double(double)>& R, double threshold,
                            double t_lo, double t_hi, double rel_tol = 1e-10);

/// Physical-unit inequalities of the regime analysis, each paired with the
/// soft (order-of-magnitude) reading. Construction asserts that every exact
/// flag agrees with its dimensionless counterpart.
struct PhysicalConditionsReport {
    double soft_factor;
    double lambda;  // de Broglie wavelength of the initial momentum

    // free-particle GCS conditions
    bool gcs_spread_small_exact;  // sigma_pz <= 2 pi hbar / lambda        <=> X >= 1
    bool gcs_spread_small_soft;   // sigma_pz <= (2 pi hbar / lambda) / factor
    bool gcs_interval_exact;      // 2 pi hbar/lambda < sigma_pz <= ...    <=> Y <= X < 1
    bool gcs_quantum_exact;       // beyond the interval                   <=> X < Y

    // GCS in the field
    bool field_strong_exact;    // E >= (sigma_pz/mc)^2 (compton/sigma_z) E_c  <=> 2W >= 1
    bool field_strong_soft;
    bool field_moderate_exact;  // moderate window in E/E_c                    <=> 1-X^2 <= 2W < 1
    bool xy_weak_exact;         // X = Y with weak field
    bool sigma_large_exact;     // sigma_pz above the interval                 <=> X < Y

    // CS (minimal pair) conditions
    bool cs_sigma_z_large_exact;  // sigma_z >= lambda / 4 pi              <=> X_sigma >= 1
    bool cs_sigma_z_large_soft;
    bool cs_field_strong_exact;   // E >= (1/4) (compton/sigma_z)^3 E_c    <=> 2 W_sigma >= 1
    bool cs_field_strong_soft;    // E >= factor * (1/2) (compton/sigma_z)^3 E_c
    bool cs_weak_exact;           // weak window with sigma_z <= lambda/4pi <=> condition (ix)
};

/// Requires p_z != 0 (the de Broglie wavelength must exist). The soft factor
/// quantifies the "much less/greater than" readings; it defaults to 10x.
PhysicalConditionsReport physical_conditions_report(const SemiclassicalInput& input,
                                                    double soft_factor = 10.0);

/// Construct a physical input realizing prescribed ratios (X, Y, W) on top of
/// the particle constants in `base`; used to drive the dimensional paths from
/// dimensionless parameter draws.
SemiclassicalInput realize_ratios(double X, double Y, double W, const PhysicalSetup& base);

}  // namespace gcslab
