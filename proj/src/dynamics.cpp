#include "gcslab/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "gcslab/quadrature.hpp"

namespace gcslab {

namespace {

constexpr double kSeedTol = 1e-12;

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace

PhysicalSetup::PhysicalSetup(double mass_, double charge_, double light_speed_, double planck_,
                             double field_, double alpha_, double length_scale_)
    : mass(mass_),
      charge(charge_),
      light_speed(light_speed_),
      planck(planck_),
      field(field_),
      alpha(alpha_),
      length_scale(length_scale_) {
    require(std::isfinite(mass) && mass > 0.0, "PhysicalSetup: mass must be positive");
    require(std::isfinite(charge) && charge != 0.0, "PhysicalSetup: charge must be nonzero");
    require(std::isfinite(light_speed) && light_speed > 0.0,
            "PhysicalSetup: light_speed must be positive");
    require(std::isfinite(planck) && planck > 0.0, "PhysicalSetup: planck must be positive");
    require(std::isfinite(field) && field >= 0.0, "PhysicalSetup: field must be >= 0");
    require(std::isfinite(alpha) && alpha >= 0.0 && alpha <= default_alpha() * (1.0 + 1e-12),
            "PhysicalSetup: alpha must lie in [0, pi/2]");
    require(std::isfinite(length_scale) && length_scale > 0.0,
            "PhysicalSetup: length_scale must be positive");
}

double PhysicalSetup::dimensionless_field() const noexcept {
    const double l3 = length_scale * length_scale * length_scale;
    return mass * mass * l3 * xi() / (planck * planck);
}

double PhysicalSetup::scalar_potential(double z) const noexcept {
    const double s = std::sin(alpha);
    return -z * field * s * s;
}

double PhysicalSetup::vector_potential(double t) const noexcept {
    const double c = std::cos(alpha);
    return -light_speed * t * field * c * c;
}

PhysicalSetup PhysicalSetup::natural(double field, double alpha, double charge,
                                     double length_scale) {
    return PhysicalSetup(1.0, charge, 1.0, 1.0, field, alpha, length_scale);
}

PhysicalSetup PhysicalSetup::si(double field, double alpha, double charge_sign) {
    constexpr double kElectronMass = 9.1093837015e-31;  // kg
    constexpr double kElementary = 1.602176634e-19;     // C
    constexpr double kLightSpeed = 2.99792458e8;        // m/s
    constexpr double kHbar = 1.054571817e-34;           // J s
    const double compton = kHbar / (kElectronMass * kLightSpeed);
    return PhysicalSetup(kElectronMass, charge_sign * kElementary, kLightSpeed, kHbar, field,
                         alpha, compton);
}

DerivedScales::DerivedScales(const PhysicalSetup& setup) : planck_(setup.planck) {
    compton = setup.planck / (setup.mass * setup.light_speed);
    const double c3 = std::pow(setup.light_speed, 3);
    critical_field = setup.mass * setup.mass * c3 / (std::abs(setup.charge) * setup.planck);
}

double DerivedScales::de_broglie(double p_z) const {
    require(p_z != 0.0, "de_broglie: p_z must be nonzero");
    return 2.0 * M_PI * planck_ / std::abs(p_z);
}

SeedCoefficients::SeedCoefficients(Complex f0, Complex g0) : f0_(f0), g0_(g0) {
    require(std::isfinite(f0.real()) && std::isfinite(f0.imag()) && std::isfinite(g0.real()) &&
                std::isfinite(g0.imag()),
            "SeedCoefficients: entries must be finite");
    const double constraint = std::real(f0 * std::conj(g0));
    if (std::abs(constraint - 1.0) > kSeedTol) {
        std::ostringstream msg;
        msg << "SeedCoefficients: Re(f0 conj(g0)) = " << constraint << ", expected 1";
        throw std::invalid_argument(msg.str());
    }
}

SeedCoefficients SeedCoefficients::from_deviations(double sigma_q0, double sigma_p0, int branch) {
    require(sigma_q0 > 0.0 && sigma_p0 > 0.0, "from_deviations: deviations must be positive");
    require(branch == 1 || branch == -1, "from_deviations: branch must be +1 or -1");
    const double product = sigma_q0 * sigma_p0;
    if (product < 0.5 - 1e-12)
        throw HeisenbergViolation("from_deviations: sigma_q0 * sigma_p0 < 1/2", product);
    const double cross = std::sqrt(std::max(0.0, 4.0 * product * product - 1.0));
    const double g0 = std::sqrt(2.0) * sigma_q0;  // real by convention
    const Complex f0 = Complex(1.0, -branch * cross) / g0;
    return SeedCoefficients(f0, Complex(g0, 0.0));
}

TrajectoryPoint classical_trajectory(const PhysicalSetup& setup, double z0, double p0, double t) {
    const double xi = setup.xi();
    const double s = std::sin(setup.alpha);
    const double z = z0 + (p0 / setup.mass) * t + 0.5 * xi * t * t;
    const double p = p0 + setup.mass * xi * t * s * s;
    return {z, p};
}

DimensionlessPoint to_dimensionless(const PhysicalSetup& setup, double z, double p_z, double t) {
    const double l = setup.length_scale;
    return {z / l, l * p_z / setup.planck, setup.planck * t / (setup.mass * l * l)};
}

DimensionalPoint from_dimensionless(const PhysicalSetup& setup, double q, double p, double tau) {
    const double l = setup.length_scale;
    return {q * l, p * setup.planck / l, tau * setup.mass * l * l / setup.planck};
}

CoefficientSet coefficient_functions(const SeedCoefficients& seed, double Xi, double alpha,
                                     double tau) {
    const Complex i(0.0, 1.0);
    const Complex f = seed.f0();
    const Complex g = seed.g(tau);
    const double s = std::sin(alpha);
    const Complex phi = -(i * g * s * s + f * tau * 0.5) * (Xi * tau / std::sqrt(2.0));
    return {f, g, phi};
}

Complex q_function(const SeedCoefficients& seed, double Xi, double alpha, double tau) {
    (void)alpha;  // Q is gauge independent; kept in the signature for symmetry
    const Complex g = seed.g(tau);
    if (std::abs(g) < 1e-300) throw NumericError("q_function: degenerate seed, |g(tau)| ~ 0");
    const Complex i(0.0, 1.0);
    const Complex w = 1.0 - i * seed.f0() * tau / (2.0 * g);
    return w * w * (Xi * Xi * tau * tau);
}

double phase_integral(const SeedCoefficients& seed, double Xi, double alpha, double tau,
                      double abs_tol) {
    require(tau >= 0.0, "phase_integral: tau must be >= 0");
    if (tau == 0.0 || Xi == 0.0) return 0.0;
    auto integrand = [&](double s) { return 0.5 * std::real(q_function(seed, Xi, alpha, s)); };
    return integrate_adaptive(integrand, 0.0, tau, abs_tol).value;
}

}  // namespace gcslab
