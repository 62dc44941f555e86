#include <cmath>
#include <random>

#include "doctest.h"
#include "gcslab/gcs_state.hpp"
#include "gcslab/oracle.hpp"
#include "gcslab/verify.hpp"

using namespace gcslab;

namespace {

const double kPiHalf = PhysicalSetup::default_alpha();
const double kSqrt2 = std::sqrt(2.0);

GcsState minimal_free_state() {
    return GcsState(SeedCoefficients(Complex(1.0, 0.0), Complex(1.0, 0.0)), 0.0, kPiHalf,
                    Complex(0.0, 0.0));
}

}  // namespace

TEST_SUITE_BEGIN("gcs");

TEST_CASE("zeta from initial means: worked examples") {
    const SeedCoefficients seed(Complex(1.0, 0.0), Complex(1.0, 0.0));
    CHECK(std::abs(zeta_from_initial(seed, kSqrt2, 0.0) - Complex(1.0, 0.0)) < 1e-14);
    CHECK(std::abs(zeta_from_initial(seed, 0.0, 0.0)) == 0.0);
}

TEST_CASE("zeta and initial means are a bijective pair") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> part(-2.0, 2.0);
    for (int i = 0; i < 200; ++i) {
        const Complex g0(1.1 + 0.3 * part(rng), 0.5 * part(rng));
        const SeedCoefficients seed(Complex(1.0, part(rng)) / std::conj(g0), g0);
        const double q0 = part(rng), p0 = part(rng);
        const GcsState state = GcsState::from_initial_means(seed, 0.7, 0.5, q0, p0);
        CHECK(state.mean_q0() == doctest::Approx(q0).epsilon(1e-12));
        CHECK(state.mean_p0() == doctest::Approx(p0).epsilon(1e-12));
    }
}

TEST_CASE("ground Gaussian amplitude at the origin") {
    const Complex value = evaluate_gcs(minimal_free_state(), 0.0, 0.0);
    CHECK(value.real() == doctest::Approx(std::pow(M_PI, -0.25)).epsilon(1e-12));
    CHECK(std::abs(value.imag()) < 1e-14);
}

TEST_CASE("wavefunction stays normalized under evolution") {
    const GcsState state(SeedCoefficients::from_deviations(1.0, 1.0, +1), 1.0, M_PI / 4.0,
                         Complex(1.0, 0.5));
    for (double tau : {0.0, 0.7, 2.3}) {
        const auto grid = oracle::verification_grid(state, tau);
        const auto sample = oracle::sample_state(state, grid, tau);
        CHECK(std::abs(sample.norm() - 1.0) < 1e-8);
    }
}

TEST_CASE("density equals the squared amplitude pointwise") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> part(-1.5, 1.5);
    std::uniform_real_distribution<double> field(0.0, 2.0);
    std::uniform_real_distribution<double> angle(0.0, kPiHalf);
    std::uniform_real_distribution<double> tau_dist(0.0, 3.0);
    std::uniform_real_distribution<double> q_dist(-6.0, 6.0);

    for (int i = 0; i < 60; ++i) {
        std::mt19937 seed_rng(rng());
        const GcsState state(verify::random_seed(seed_rng), field(rng), angle(rng),
                             Complex(part(rng), part(rng)));
        const double tau = tau_dist(rng);
        const double q = q_dist(rng);
        const double from_amplitude = std::norm(evaluate_gcs(state, q, tau));
        CHECK(density(state, q, tau) == doctest::Approx(from_amplitude).epsilon(1e-10));
    }
}

TEST_CASE("density peak and normalization") {
    const GcsState state = minimal_free_state();
    const MomentSet m = moments(state, 1.0);
    CHECK(m.sigma_q == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(density(state, m.mean_q, 1.0) ==
          doctest::Approx(1.0 / std::sqrt(2.0 * M_PI)).epsilon(1e-13));

    // quadrature of the closed-form density
    const auto grid = oracle::SpatialGrid(-20.0, 20.0, 4096);
    double sum = 0.0;
    for (std::size_t i = 0; i < grid.n_points; ++i) sum += density(state, grid.point(i), 1.0);
    CHECK(sum * grid.dq == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("moments follow the classical closed forms") {
    const GcsState accelerated(SeedCoefficients(Complex(1.0, 0.0), Complex(1.0, 0.0)), 1.0,
                               kPiHalf, Complex(0.0, 0.0));
    for (double tau : {0.0, 0.5, 1.0, 2.0}) {
        const MomentSet m = moments(accelerated, tau);
        CHECK(m.mean_q == doctest::Approx(0.5 * tau * tau).epsilon(1e-14));
        CHECK(m.mean_p == doctest::Approx(tau).epsilon(1e-14));
    }

    const MomentSet m1 = moments(minimal_free_state(), 1.0);
    CHECK(m1.sigma_q == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(m1.sigma_p == doctest::Approx(1.0 / kSqrt2).epsilon(1e-14));
    CHECK(m1.sigma_qp == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("the two wavefunction assemblies agree pointwise") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> part(-1.5, 1.5);
    std::uniform_real_distribution<double> field(0.0, 2.0);
    std::uniform_real_distribution<double> angle(0.0, kPiHalf);
    std::uniform_real_distribution<double> tau_dist(0.0, 2.5);
    std::uniform_real_distribution<double> q_dist(-5.0, 5.0);

    for (int i = 0; i < 60; ++i) {
        std::mt19937 seed_rng(rng());
        const GcsState state(verify::random_seed(seed_rng), field(rng), angle(rng),
                             Complex(part(rng), part(rng)));
        const double tau = tau_dist(rng);
        const double q = q_dist(rng);
        const Complex construction = evaluate_gcs(state, q, tau);
        const Complex repacked = evaluate_gcs_repacked(state, q, tau);
        CHECK(std::abs(construction - repacked) <
              1e-10 * std::max(1.0, std::abs(construction)));
    }
}

TEST_CASE("closed-form sigma_q: minimal pair and explicit seed") {
    const double inv_sqrt2 = 1.0 / kSqrt2;
    CHECK(sigma_q_closed_form(inv_sqrt2, inv_sqrt2, +1, 1.0) == doctest::Approx(1.0));
    CHECK(sigma_q_closed_form(inv_sqrt2, inv_sqrt2, +1, 0.0) == doctest::Approx(inv_sqrt2));

    // seed with |g0| = sqrt(2), |f0| = sqrt(2), Im(f0 conj(g0)) = -sqrt(3)
    const SeedCoefficients seed = SeedCoefficients::from_deviations(1.0, 1.0, +1);
    const double tau = 0.5;
    const double from_seed = std::abs(seed.g(tau)) / kSqrt2;
    CHECK(sigma_q_closed_form(1.0, 1.0, +1, tau) == doctest::Approx(from_seed).epsilon(1e-12));

    // the opposite branch contracts before it spreads
    const SeedCoefficients other = SeedCoefficients::from_deviations(1.0, 1.0, -1);
    CHECK(sigma_q_closed_form(1.0, 1.0, -1, tau) ==
          doctest::Approx(std::abs(other.g(tau)) / kSqrt2).epsilon(1e-12));

    CHECK_THROWS_AS(sigma_q_closed_form(0.4, 0.4, +1, 1.0), HeisenbergViolation);
}

TEST_CASE("uncertainty report: worked values") {
    const GcsState state = minimal_free_state();
    const UncertaintyReport at2 = check_uncertainty(state, 2.0);
    // sigma_q(2)^2 sigma_p^2 = 5/4, sigma_qp = 1
    CHECK(at2.heisenberg_product == doctest::Approx(std::sqrt(5.0) / 2.0).epsilon(1e-14));
    CHECK(std::abs(at2.rs_residual) < 1e-14);

    const UncertaintyReport at0 = check_uncertainty(state, 0.0);
    CHECK(at0.heisenberg_product == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("robertson-schrodinger identity over random states") {
    const auto result = verify::run_rs_identity(1000);
    CHECK(result.passed);
    CHECK(result.max_error < 1e-12);
}

TEST_CASE("sigma_q never dips below the branch minimum") {
    std::mt19937 rng(47);
    std::uniform_real_distribution<double> part(-1.2, 1.2);
    std::uniform_real_distribution<double> tau_dist(0.0, 6.0);
    for (int i = 0; i < 200; ++i) {
        std::mt19937 seed_rng(rng());
        const SeedCoefficients seed = verify::random_seed(seed_rng);
        const GcsState state(seed, 0.0, kPiHalf, Complex(part(rng), part(rng)));
        const MomentSet m0 = moments(state, 0.0);
        const MomentSet m = moments(state, tau_dist(rng));
        if (std::imag(seed.f0() * std::conj(seed.g0())) <= 0.0) {
            CHECK(m.sigma_q >= m0.sigma_q - 1e-13);
        }
        // parabola minimum of sigma_q(tau)^2 is 1 / (4 sigma_p^2)
        CHECK(m.sigma_q * m.sigma_q >=
              1.0 / (4.0 * m.sigma_p * m.sigma_p) - 1e-13);
    }
}

TEST_CASE("cs specialization minimizes the Heisenberg product") {
    const SeedCoefficients unit = cs_specialize(1.0 / kSqrt2);
    CHECK(std::abs(unit.f0() - Complex(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(unit.g0() - Complex(1.0, 0.0)) < 1e-15);

    const SeedCoefficients one = cs_specialize(1.0);
    CHECK(one.f0().real() == doctest::Approx(1.0 / kSqrt2).epsilon(1e-15));
    CHECK(one.g0().real() == doctest::Approx(kSqrt2).epsilon(1e-15));
    const GcsState state(one, 0.0, kPiHalf, Complex(0.0, 0.0));
    CHECK(moments(state, 0.0).sigma_p == doctest::Approx(0.5).epsilon(1e-15));

    for (double sq : {0.11, 0.5, 0.9, 3.7}) {
        const SeedCoefficients seed = cs_specialize(sq);
        CHECK(std::real(seed.f0() * std::conj(seed.g0())) == doctest::Approx(1.0).epsilon(1e-15));
    }
    CHECK_THROWS_AS(cs_specialize(0.0), std::invalid_argument);
}

TEST_CASE("classical correspondence recovers the initial data") {
    const PhysicalSetup unit = PhysicalSetup::natural();
    const SeedCoefficients seed(Complex(1.0, 0.0), Complex(1.0, 0.0));

    const GcsState vacuum(seed, 0.0, kPiHalf, Complex(0.0, 0.0));
    const auto zero = classical_correspondence(vacuum, unit);
    CHECK(zero.z0 == 0.0);
    CHECK(zero.p0 == 0.0);

    const GcsState displaced(seed, 0.0, kPiHalf, Complex(1.0, 0.0));
    const auto point = classical_correspondence(displaced, unit);
    CHECK(point.z0 == doctest::Approx(kSqrt2).epsilon(1e-14));
    CHECK(point.p0 == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("density mean follows the classical trajectory") {
    const PhysicalSetup setup = PhysicalSetup::natural(0.8, 0.9);
    const SeedCoefficients seed = cs_specialize(0.9);
    const GcsState state = GcsState::from_initial_means(seed, setup.dimensionless_field(),
                                                        setup.alpha, 0.6, -0.4);
    const auto start = classical_correspondence(state, setup);

    for (double tau : {0.5, 1.3}) {
        const auto grid = oracle::verification_grid(state, tau);
        const auto sample = oracle::sample_state(state, grid, tau);
        const MomentSet quad = oracle::quadrature_moments(sample);

        const double t = from_dimensionless(setup, 0.0, 0.0, tau).t;
        const auto classical = classical_trajectory(setup, start.z0, start.p0, t);
        const double expected_q = to_dimensionless(setup, classical.z, classical.p, t).q;
        CHECK(quad.mean_q == doctest::Approx(expected_q).epsilon(1e-9));
    }
}

TEST_CASE("field switch-off limit is continuous") {
    const SeedCoefficients seed = SeedCoefficients::from_deviations(0.8, 0.9, +1);
    const GcsState off(seed, 0.0, 0.7, Complex(0.5, -0.3));
    const GcsState tiny(seed, 1e-12, 0.7, Complex(0.5, -0.3));
    for (double tau : {0.3, 1.1, 2.0}) {
        for (double q : {-2.0, 0.0, 1.5}) {
            CHECK(std::abs(evaluate_gcs(off, q, tau) - evaluate_gcs(tiny, q, tau)) < 1e-8);
        }
        const MomentSet a = moments(off, tau);
        const MomentSet b = moments(tiny, tau);
        CHECK(std::abs(a.mean_q - b.mean_q) < 1e-8);
        CHECK(std::abs(a.sigma_q - b.sigma_q) < 1e-8);
    }
}

TEST_SUITE_END();
