#pragma once

#include <complex>

#include "gcslab/errors.hpp"

namespace gcslab {

using Complex = std::complex<double>;

/// Charged particle in a constant uniform electric field E pointing along z,
/// described in the one-parameter gauge family
///   A0(z) = -z E sin^2(alpha),   A(t) = -c t E cos^2(alpha).
///
/// The charge is stored signed (an electron carries charge = -|e|), so the
/// acceleration xi = eE/m and the dimensionless field strength Xi inherit the
/// sign. The length scale l fixes the dimensionless units q = z/l,
/// p = l p_z / hbar, tau = hbar t / (m l^2).
struct PhysicalSetup {
    double mass;          // m > 0
    double charge;        // signed
    double light_speed;   // c > 0
    double planck;        // hbar > 0
    double field;         // E >= 0
    double alpha;         // gauge mixing angle in [0, pi/2]
    double length_scale;  // l > 0

    PhysicalSetup(double mass_, double charge_, double light_speed_, double planck_,
                  double field_, double alpha_, double length_scale_);

    double xi() const noexcept { return charge * field / mass; }

    /// Xi = m^2 l^3 xi / hbar^2, the field strength in dimensionless units.
    double dimensionless_field() const noexcept;

    double scalar_potential(double z) const noexcept;  // A0(z)
    double vector_potential(double t) const noexcept;  // A(t)

    /// hbar = m = c = 1, |charge| = 1, l = 1.
    static PhysicalSetup natural(double field = 0.0, double alpha = default_alpha(),
                                 double charge = 1.0, double length_scale = 1.0);

    /// SI constants for an electron-mass particle; the charge sign is the
    /// caller's choice (`+` by default so xi >= 0 for E >= 0). The length
    /// scale defaults to the Compton wavelength.
    static PhysicalSetup si(double field = 0.0, double alpha = default_alpha(),
                            double charge_sign = +1.0);

    static constexpr double default_alpha() { return 1.5707963267948966; }  // pi/2
};

/// Scales derived from the particle constants.
struct DerivedScales {
    double compton;         // hbar / (m c)
    double critical_field;  // m^2 c^3 / (|e| hbar)

    explicit DerivedScales(const PhysicalSetup& setup);

    /// de Broglie wavelength 2 pi hbar / p_z; requires p_z != 0.
    double de_broglie(double p_z) const;

private:
    double planck_;
};

/// The constant pair (f0, g0) seeding the integral-of-motion coefficients.
/// The commutator normalization requires Re(f0 conj(g0)) = 1; the constructor
/// enforces it to 1e-12.
class SeedCoefficients {
public:
    SeedCoefficients(Complex f0, Complex g0);

    Complex f0() const noexcept { return f0_; }
    Complex g0() const noexcept { return g0_; }

    /// g(tau) = g0 + i f0 tau.
    Complex g(double tau) const noexcept { return g0_ + Complex(0.0, 1.0) * f0_ * tau; }

    /// Real seed with given initial deviations sigma_q(0), sigma_p(0) and the
    /// sign branch of the cross term: Im(f0 conj(g0)) = -branch * sqrt(4 sq^2 sp^2 - 1).
    /// branch = +1 reproduces the spreading closed form for sigma_q(tau).
    static SeedCoefficients from_deviations(double sigma_q0, double sigma_p0, int branch = +1);

private:
    Complex f0_;
    Complex g0_;
};

struct TrajectoryPoint {
    double z;
    double p;
};

/// Solution of the classical Cauchy problem:
///   z(t) = z0 + (p0/m) t + xi t^2 / 2,   p(t) = p0 + m xi t sin^2(alpha).
TrajectoryPoint classical_trajectory(const PhysicalSetup& setup, double z0, double p0, double t);

struct DimensionlessPoint {
    double q;
    double p;
    double tau;
};

struct DimensionalPoint {
    double z;
    double p_z;
    double t;
};

DimensionlessPoint to_dimensionless(const PhysicalSetup& setup, double z, double p_z, double t);
DimensionalPoint from_dimensionless(const PhysicalSetup& setup, double q, double p, double tau);

struct CoefficientSet {
    Complex f;
    Complex g;
    Complex phi;
};

/// Time-dependent coefficients of the integral of motion:
///   f(tau) = f0,  g(tau) = g0 + i f0 tau,
///   phi(tau) = -[i g(tau) sin^2(alpha) + f0 tau / 2] Xi tau / sqrt(2),
/// with phi(0) = 0 fixed so wavefunction phases are deterministic.
CoefficientSet coefficient_functions(const SeedCoefficients& seed, double Xi, double alpha,
                                     double tau);

/// Q(tau) = (1 - i f0 tau / (2 g(tau)))^2 Xi^2 tau^2, the squared drift term
/// entering the phase integral. Independent of alpha.
Complex q_function(const SeedCoefficients& seed, double Xi, double alpha, double tau);

/// Integral_0^tau Re Q(s) / 2 ds by adaptive Gauss-Legendre quadrature
/// (absolute tolerance abs_tol, lower limit fixed at 0). Requires tau >= 0.
double phase_integral(const SeedCoefficients& seed, double Xi, double alpha, double tau,
                      double abs_tol = 1e-12);

}  // namespace gcslab
