#include "gcslab/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "gcslab/oracle.hpp"

namespace gcslab::verify {

namespace {

using oracle::SpatialGrid;
using oracle::WavefunctionSample;

unsigned effective_threads(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("GCSLAB_THREADS")) {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed > 0) return static_cast<unsigned>(parsed);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

std::string describe_case(const GcsState& state) {
    std::ostringstream os;
    os << "f0=(" << state.seed().f0().real() << "," << state.seed().f0().imag() << ") g0=("
       << state.seed().g0().real() << "," << state.seed().g0().imag() << ") zeta=("
       << state.zeta().real() << "," << state.zeta().imag() << ") Xi=" << state.Xi()
       << " alpha=" << state.alpha();
    return os.str();
}

}  // namespace

SeedCoefficients random_seed(std::mt19937& rng) {
    std::uniform_real_distribution<double> mag(0.6, 1.8);
    std::uniform_real_distribution<double> angle(-M_PI, M_PI);
    std::uniform_real_distribution<double> cross(-1.5, 1.5);
    const Complex g0 = std::polar(mag(rng), angle(rng));
    // f0 = (1 + i s) / conj(g0) makes Re(f0 conj(g0)) = 1 identically
    const Complex f0 = Complex(1.0, cross(rng)) / std::conj(g0);
    return SeedCoefficients(f0, g0);
}

SuiteResult run_rs_identity(int cases, unsigned seed) {
    SuiteResult result;
    result.suite = "rs-identity";
    result.tolerance = 1e-12;
    result.cases = cases;

    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> zeta_part(-2.0, 2.0);
    std::uniform_real_distribution<double> field(0.0, 2.0);
    std::uniform_real_distribution<double> angle(0.0, M_PI / 2.0);
    std::uniform_real_distribution<double> time(0.0, 10.0);

    double worst = 0.0;
    for (int i = 0; i < cases; ++i) {
        const GcsState state(random_seed(rng), field(rng), angle(rng),
                             Complex(zeta_part(rng), zeta_part(rng)));
        const UncertaintyReport rep = check_uncertainty(state, time(rng));
        worst = std::max(worst, std::abs(rep.rs_residual));
    }
    result.max_error = worst;
    result.passed = worst < result.tolerance;
    return result;
}

SuiteResult run_norm() {
    SuiteResult result;
    result.suite = "norm";
    result.tolerance = 1e-8;

    const std::vector<GcsState> states = {
        GcsState(cs_specialize(1.0 / std::sqrt(2.0)), 0.0, PhysicalSetup::default_alpha(),
                 Complex(0.0, 0.0)),
        GcsState(SeedCoefficients::from_deviations(1.0, 1.0, +1), 1.0, M_PI / 4.0,
                 Complex(1.0, 0.5)),
        GcsState(cs_specialize(0.8), 1.5, 0.0, Complex(-0.7, 1.1)),
    };
    const std::vector<double> taus = {0.0, 0.7, 2.3};

    double worst = 0.0;
    for (const GcsState& state : states) {
        for (double tau : taus) {
            const SpatialGrid grid = oracle::verification_grid(state, tau);
            const WavefunctionSample sample = oracle::sample_state(state, grid, tau);
            const double deviation = std::abs(sample.norm() - 1.0);
            worst = std::max(worst, deviation);
            ++result.cases;
        }
    }
    result.max_error = worst;
    result.passed = worst < result.tolerance;
    return result;
}

SuiteResult run_propagate_free() {
    SuiteResult result;
    result.suite = "propagate-free";
    result.tolerance = 1e-7;
    result.cases = 1;

    const GcsState state(cs_specialize(1.0 / std::sqrt(2.0)), 0.0,
                         PhysicalSetup::default_alpha(), Complex(0.0, 0.0));
    const SpatialGrid grid = oracle::verification_grid(state, 1.0);
    const WavefunctionSample start = oracle::sample_state(state, grid, 0.0);
    const WavefunctionSample end = oracle::propagate(start, 0.0, state.alpha(), 1.0);
    const WavefunctionSample exact = oracle::sample_state(state, grid, 1.0);

    result.max_error = oracle::l2_distance(end, exact);
    result.passed = result.max_error < result.tolerance;
    return result;
}

SuiteResult run_propagate_random(int cases, unsigned seed, unsigned threads) {
    SuiteResult result;
    result.suite = "propagate-random";
    result.tolerance = 1e-5;
    result.cases = cases;

    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> field(0.0, 2.0);
    std::uniform_real_distribution<double> zeta_part(-std::sqrt(2.0), std::sqrt(2.0));
    const double angles[3] = {0.0, M_PI / 4.0, M_PI / 2.0};
    std::uniform_int_distribution<int> angle_pick(0, 2);

    std::vector<GcsState> states;
    states.reserve(cases);
    for (int i = 0; i < cases; ++i)
        states.emplace_back(random_seed(rng), field(rng), angles[angle_pick(rng)],
                            Complex(zeta_part(rng), zeta_part(rng)));

    const double tau_final = 0.5;
    auto one_case = [tau_final](const GcsState& state) {
        const SpatialGrid grid = oracle::verification_grid(state, tau_final);
        const WavefunctionSample start = oracle::sample_state(state, grid, 0.0);
        oracle::PropagateOptions opts;
        opts.dt = 1e-4;
        const WavefunctionSample end = oracle::propagate(start, state.Xi(), state.alpha(),
                                                         tau_final, opts);
        const WavefunctionSample exact = oracle::sample_state(state, grid, tau_final);
        return oracle::l2_distance(end, exact);
    };

    const unsigned n_threads = std::min<unsigned>(effective_threads(threads),
                                                  static_cast<unsigned>(states.size()));
    std::vector<double> distances(states.size(), 0.0);
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = next.fetch_add(1); i < states.size();
                     i = next.fetch_add(1))
                    distances[i] = one_case(states[i]);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& err : errors)
        if (err) std::rethrow_exception(err);

    double worst = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i) {
        worst = std::max(worst, distances[i]);
        if (distances[i] >= result.tolerance)
            result.notes.push_back("distance " + std::to_string(distances[i]) + " for " +
                                   describe_case(states[i]));
    }
    result.max_error = worst;
    result.passed = worst < result.tolerance;
    return result;
}

SuiteResult run_residual() {
    SuiteResult result;
    result.suite = "residual";
    result.tolerance = 1e-5;

    const GcsState free_state(cs_specialize(1.0 / std::sqrt(2.0)), 0.0,
                              PhysicalSetup::default_alpha(), Complex(0.0, 0.0));
    const GcsState field_state(SeedCoefficients(Complex(1.0, 0.0), Complex(1.0, 0.0)), 1.0,
                               PhysicalSetup::default_alpha(), Complex(1.0, 0.0));
    const SpatialGrid grid(-20.0, 20.0, 4096);

    const double free_residual = oracle::schrodinger_residual(free_state, grid, 0.5, 1e-4);
    const double field_residual = oracle::schrodinger_residual(field_state, grid, 0.5, 1e-4);

    EvalOptions mutated;
    mutated.include_phase_integral = false;
    const double mutated_residual =
        oracle::schrodinger_residual(field_state, grid, 0.5, 1e-4, mutated);

    result.cases = 3;
    result.max_error = std::max(free_residual, field_residual);
    result.passed = free_residual < 1e-6 && field_residual < 1e-5 && mutated_residual > 1e-2;
    {
        std::ostringstream os;
        os << "free=" << free_residual << " field=" << field_residual
           << " phase-dropped=" << mutated_residual << " (must exceed 1e-2)";
        result.notes.push_back(os.str());
    }
    return result;
}

SuiteResult run_critical_times() {
    SuiteResult result;
    result.suite = "critical-times";
    result.tolerance = 1e-8;
    result.cases = 3;

    struct Case {
        RatioSet ratios;
        double closed_form;  // in units of t_sigma
        double bracket_lo;
        double bracket_hi;
    };

    const RatioSet free_gcs = RatioSet::from_values(0.9, 0.5, 0.0);
    const RatioSet free_cs = RatioSet::from_values(0.5, 0.0, 0.0);
    const RatioSet field_vi = RatioSet::from_values(0.6, 0.6, 0.2);

    const std::vector<Case> cases = {
        {free_gcs, classify_free_gcs(free_gcs).time.value(), 1e-3, 1e3},
        {free_cs, classify_free_cs(free_cs).time.value(), 1e-3, 1e3},
        {field_vi, classify_field_gcs(field_vi).time.value(), 1e-3, 1e3},
    };

    double worst = 0.0;
    for (const Case& c : cases) {
        auto R = [&](double t) { return ratio_R(c.ratios, t); };
        const double crossed = brute_force_crossing(R, 1.0, c.bracket_lo, c.bracket_hi);
        worst = std::max(worst, std::abs(crossed - c.closed_form) / c.closed_form);
    }
    result.max_error = worst;
    result.passed = worst < result.tolerance;
    return result;
}

std::vector<std::string> suite_names() {
    return {"rs-identity", "norm", "propagate", "residual", "critical-times"};
}

SuiteResult run_suite(const std::string& name, unsigned threads) {
    if (name == "rs-identity") return run_rs_identity();
    if (name == "norm") return run_norm();
    if (name == "propagate") {
        SuiteResult free_part = run_propagate_free();
        SuiteResult random_part = run_propagate_random(20, 20260808, threads);
        SuiteResult combined;
        combined.suite = "propagate";
        combined.cases = free_part.cases + random_part.cases;
        combined.tolerance = random_part.tolerance;
        combined.max_error = std::max(free_part.max_error, random_part.max_error);
        combined.passed = free_part.passed && random_part.passed;
        combined.notes.push_back("free-particle distance " +
                                 std::to_string(free_part.max_error) + " (tol 1e-7)");
        for (const auto& n : random_part.notes) combined.notes.push_back(n);
        return combined;
    }
    if (name == "residual") return run_residual();
    if (name == "critical-times") return run_critical_times();
    throw std::invalid_argument("unknown verification suite: " + name);
}

}  // namespace gcslab::verify
