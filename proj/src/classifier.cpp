#include "gcslab/classifier.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <sstream>

namespace gcslab {

namespace {

constexpr double kXyEqualTol = 1e-12;    // relative, detects X = Y
constexpr double kMinimalTol = 1e-9;     // relative, detects a minimal pair

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

bool xy_equal(const RatioSet& r) {
    const double scale = std::max(r.X, r.Y);
    return std::abs(r.X - r.Y) <= kXyEqualTol * scale;
}

// R(t) <= 1 is exactly equivalent to C(s) >= 0 with s = t / t_sigma and
//   C(s) = W^2 s^3 + 2 X W s^2 + (X^2 + 2W - 1) s + 2 (X - Y).
double cubic_eval(const RatioSet& r, double s) {
    const double c3 = r.W * r.W;
    const double c2 = 2.0 * r.X * r.W;
    const double c1 = r.X * r.X + 2.0 * r.W - 1.0;
    const double c0 = 2.0 * (r.X - r.Y);
    return ((c3 * s + c2) * s + c1) * s + c0;
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double rel_tol) {
    double f_lo = f(lo);
    for (int iter = 0; iter < 400; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= rel_tol * std::max(std::abs(mid), std::numeric_limits<double>::min()))
            return mid;
        const double f_mid = f(mid);
        if ((f_lo <= 0.0) == (f_mid <= 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Unique positive root when C(0) < 0 and C has a single sign change.
double cubic_single_root(const RatioSet& r) {
    double hi = 1.0;
    while (cubic_eval(r, hi) <= 0.0) {
        hi *= 2.0;
        if (hi > 1e300) throw NumericError("classifier: cubic root bracket overflow");
    }
    return bisect([&](double s) { return cubic_eval(r, s); }, 0.0, hi, 1e-12);
}

RegimeVerdict verdict(Regime regime, ConditionLabel label) { return {regime, label, {}}; }

RegimeVerdict verdict(Regime regime, ConditionLabel label, double time) {
    return {regime, label, time};
}

void check_field_free(const SemiclassicalInput& input) {
    require(input.setup.field == 0.0, "classifier: free-particle variant requires E = 0");
}

void check_field_present(const SemiclassicalInput& input) {
    require(input.setup.field > 0.0, "classifier: field variant requires E > 0");
}

void check_minimal(const SemiclassicalInput& input) {
    const double product = input.sigma_z * input.sigma_pz;
    const double minimal = 0.5 * input.setup.planck;
    if (std::abs(product / minimal - 1.0) > kMinimalTol) {
        std::ostringstream msg;
        msg << "classifier: CS variant requires the minimal pair sigma_z sigma_pz = hbar/2,"
            << " got product " << product << " vs " << minimal;
        throw std::invalid_argument(msg.str());
    }
}

void check_minimal(const RatioSet& r) {
    // A minimal physical pair maps to Y = 0 up to rounding of the 1e-9 window.
    if (r.Y > 1e-4)
        throw std::invalid_argument("classifier: CS variant requires a minimal pair (Y = 0)");
}

}  // namespace

SemiclassicalInput::SemiclassicalInput(double sigma_z_, double sigma_pz_, double p_z_,
                                       PhysicalSetup setup_)
    : sigma_z(sigma_z_), sigma_pz(sigma_pz_), p_z(p_z_), setup(setup_) {
    require(std::isfinite(sigma_z) && sigma_z > 0.0, "SemiclassicalInput: sigma_z must be > 0");
    require(std::isfinite(sigma_pz) && sigma_pz > 0.0,
            "SemiclassicalInput: sigma_pz must be > 0");
    require(std::isfinite(p_z), "SemiclassicalInput: p_z must be finite");

    const double product = sigma_z * sigma_pz;
    const double minimal = 0.5 * setup.planck;
    if (product < minimal * (1.0 - 1e-12)) {
        std::ostringstream msg;
        msg << "SemiclassicalInput: sigma_z * sigma_pz = " << product
            << " violates the Heisenberg bound " << minimal;
        throw HeisenbergViolation(msg.str(), product);
    }

    // The regime formulas assume displacement and acceleration share a
    // direction; a momentum opposing the electric force decelerates first and
    // is outside the analysis.
    const double force = setup.charge * setup.field;
    if (setup.field > 0.0 && p_z != 0.0 && p_z * force < 0.0)
        throw std::invalid_argument(
            "SemiclassicalInput: initial momentum opposes the electric force (decelerating "
            "configuration); flip the charge or momentum sign");
}

RatioSet RatioSet::from_input(const SemiclassicalInput& input) {
    const PhysicalSetup& s = input.setup;
    const DerivedScales scales(s);

    RatioSet r;
    r.t_sigma = input.t_sigma();

    const double ratio = s.planck / (2.0 * input.sigma_z * input.sigma_pz);
    r.Y = std::sqrt(std::max(0.0, 1.0 - std::min(1.0, ratio) * std::min(1.0, ratio)));

    const double p_abs = std::abs(input.p_z);
    r.X = p_abs / input.sigma_pz;
    r.X_sigma = 2.0 * p_abs * input.sigma_z / s.planck;

    const double field_ratio = s.field / scales.critical_field;
    const double mc = s.mass * s.light_speed;
    r.W = 0.5 * (mc / input.sigma_pz) * (mc / input.sigma_pz) * (input.sigma_z / scales.compton) *
          field_ratio;
    // same quantity from the acceleration route, xi t_sigma^2 / (2 sigma_z)
    const double xi_abs = std::abs(s.charge) * s.field / s.mass;
    const double w_kinematic = xi_abs * r.t_sigma * r.t_sigma / (2.0 * input.sigma_z);
    assert(std::abs(w_kinematic - r.W) <= 1e-12 * std::max(1.0, r.W));
    (void)w_kinematic;

    const double sz_over_compton = input.sigma_z / scales.compton;
    r.W_sigma = 2.0 * sz_over_compton * sz_over_compton * sz_over_compton * field_ratio;

    r.delta = 2.0 * std::abs(r.X - r.Y);
    r.Delta = std::abs(r.X * r.X + 2.0 * r.W - 1.0);
    r.Delta_sigma = std::abs(r.X_sigma * r.X_sigma + 2.0 * r.W_sigma - 1.0);
    return r;
}

RatioSet RatioSet::from_values(double X, double Y, double W, double t_sigma) {
    require(std::isfinite(X) && X >= 0.0, "RatioSet: X must be >= 0");
    require(std::isfinite(Y) && Y >= 0.0 && Y < 1.0, "RatioSet: Y must lie in [0, 1)");
    require(std::isfinite(W) && W >= 0.0, "RatioSet: W must be >= 0");
    require(std::isfinite(t_sigma) && t_sigma > 0.0, "RatioSet: t_sigma must be > 0");

    RatioSet r;
    r.X = X;
    r.Y = Y;
    r.W = W;
    r.t_sigma = t_sigma;
    const double one_minus_y2 = 1.0 - Y * Y;
    r.X_sigma = X / std::sqrt(one_minus_y2);
    r.W_sigma = W / one_minus_y2;
    r.delta = 2.0 * std::abs(X - Y);
    r.Delta = std::abs(X * X + 2.0 * W - 1.0);
    r.Delta_sigma = std::abs(r.X_sigma * r.X_sigma + 2.0 * r.W_sigma - 1.0);
    return r;
}

double spread(const SemiclassicalInput& input, double t) {
    require(t >= 0.0, "spread: t must be >= 0");
    const RatioSet r = RatioSet::from_input(input);
    const double s = t / r.t_sigma;
    return input.sigma_z * (std::sqrt(1.0 + 2.0 * s * r.Y + s * s) - 1.0);
}

double displacement(const SemiclassicalInput& input, double t) {
    require(t >= 0.0, "displacement: t must be >= 0");
    const RatioSet r = RatioSet::from_input(input);
    const double s = t / r.t_sigma;
    return input.sigma_z * (s * r.X + s * s * r.W);
}

double ratio_R(const RatioSet& r, double t) {
    require(t >= 0.0, "ratio_R: t must be >= 0");
    if (r.X == 0.0 && r.W == 0.0)
        throw NumericError("ratio_R: stationary particle in zero field, R is undefined");
    const double s = t / r.t_sigma;
    if (s == 0.0) {
        if (r.X > 0.0) return 0.0;
        return std::numeric_limits<double>::infinity();
    }
    const double numerator = std::sqrt(1.0 + 2.0 * s * r.Y + s * s) - 1.0;
    const double denominator = s * r.X + s * s * r.W;
    return numerator / denominator;
}

double ratio_R(const SemiclassicalInput& input, double t) {
    return ratio_R(RatioSet::from_input(input), t);
}

RegimeVerdict classify_free_gcs(const RatioSet& r) {
    if (r.X >= 1.0) return verdict(Regime::SemiclassicalAlways, ConditionLabel::I);
    // A packet with no initial momentum spreads without displacing, and
    // X = Y < 1 pins R(0+) = 1 with R rising immediately; neither ever
    // has a positive window below one.
    if (r.X == 0.0 || xy_equal(r))
        return verdict(Regime::QuantumAlways, ConditionLabel::Quantum66b);
    if (r.Y < r.X) {
        const double t_c = r.delta * r.t_sigma / std::abs(r.X * r.X - 1.0);
        return verdict(Regime::SemiclassicalUntil, ConditionLabel::II, t_c);
    }
    return verdict(Regime::QuantumAlways, ConditionLabel::Quantum66b);
}

RegimeVerdict classify_free_cs(const RatioSet& r) {
    check_minimal(r);
    if (r.X_sigma >= 1.0) return verdict(Regime::SemiclassicalAlways, ConditionLabel::I);
    if (r.X_sigma == 0.0) return verdict(Regime::QuantumAlways, ConditionLabel::Quantum66b);
    const double t_c =
        2.0 * r.t_sigma * r.X_sigma / std::abs(r.X_sigma * r.X_sigma - 1.0);
    return verdict(Regime::SemiclassicalUntil, ConditionLabel::II, t_c);
}

RegimeVerdict classify_field_gcs(const RatioSet& r) {
    if (r.X == 0.0 && r.W == 0.0)
        throw std::invalid_argument("classify_field_gcs: no motion (X = 0 and W = 0)");
    require(r.W > 0.0, "classify_field_gcs: requires W > 0 (use the free variant when E = 0)");

    if (r.X >= 1.0) return verdict(Regime::SemiclassicalAlways, ConditionLabel::III);

    if (2.0 * r.W >= 1.0) {
        if (r.X >= r.Y || xy_equal(r))
            return verdict(Regime::SemiclassicalAlways, ConditionLabel::IV);
        // Strong field but X < Y: R starts at Y/X > 1 and crosses down once.
        const double s_c = cubic_single_root(r);
        return verdict(Regime::SemiclassicalAfter, ConditionLabel::IV, s_c * r.t_sigma);
    }

    const bool moderate = 1.0 - r.X * r.X <= 2.0 * r.W;

    if (xy_equal(r)) {
        if (moderate) return verdict(Regime::SemiclassicalAlways, ConditionLabel::V);
        // weak field, X = Y: exact crossing time of condition (vi)
        const double s_c = r.X > 0.0
                               ? (r.X / r.W) * (std::sqrt(1.0 + r.Delta / (r.X * r.X)) - 1.0)
                               : std::sqrt(r.Delta) / r.W;  // X -> 0 limit
        return verdict(Regime::SemiclassicalAfter, ConditionLabel::VI, s_c * r.t_sigma);
    }

    if (r.X > r.Y) {
        if (moderate) return verdict(Regime::SemiclassicalAlways, ConditionLabel::V);
        // Weak field with Y < X < 1: free-like behaviour. The cubic starts
        // positive and may dip below zero on an intermediate window; if it
        // does, the state is semiclassical only until the first crossing.
        const double delta_w = 1.0 - r.X * r.X - 2.0 * r.W;  // > 0 here
        const double s_min =
            (-2.0 * r.X + std::sqrt(4.0 * r.X * r.X + 3.0 * delta_w)) / (3.0 * r.W);
        if (cubic_eval(r, s_min) > 0.0)
            return verdict(Regime::SemiclassicalAlways, ConditionLabel::II);
        const double s_c =
            bisect([&](double s) { return -cubic_eval(r, s); }, 0.0, s_min, 1e-12);
        return verdict(Regime::SemiclassicalUntil, ConditionLabel::II, s_c * r.t_sigma);
    }

    // X < Y from here on; R starts above 1.
    if (moderate) {
        const double inf = std::numeric_limits<double>::infinity();
        const double by_linear = r.Delta > 0.0 ? r.delta / r.Delta : inf;
        const double by_quadratic = r.X > 0.0 ? std::sqrt(r.delta / (2.0 * r.X * r.W)) : inf;
        const double by_cubic = std::cbrt(r.delta / (r.W * r.W));
        const double s_ref = std::min({by_linear, by_quadratic, by_cubic});
        return verdict(Regime::SemiclassicalAfter, ConditionLabel::VII, s_ref * r.t_sigma);
    }

    if (r.X > 0.0) {
        const double ratio = 8.0 * r.X * r.W * r.delta / (r.Delta * r.Delta);
        const double s_ref = r.Delta / (4.0 * r.X * r.W) * (1.0 + std::sqrt(1.0 + ratio));
        return verdict(Regime::SemiclassicalAfter, ConditionLabel::VIII, s_ref * r.t_sigma);
    }
    // X = 0: the printed bound degenerates; fall back to the exact crossing.
    const double s_c = cubic_single_root(r);
    return verdict(Regime::SemiclassicalAfter, ConditionLabel::VIII, s_c * r.t_sigma);
}

RegimeVerdict classify_field_cs(const RatioSet& r) {
    check_minimal(r);
    require(r.W_sigma > 0.0, "classify_field_cs: requires E > 0");
    if (r.X_sigma >= 1.0) return verdict(Regime::SemiclassicalAlways, ConditionLabel::III);
    if (2.0 * r.W_sigma >= 1.0) return verdict(Regime::SemiclassicalAlways, ConditionLabel::IV);
    if (1.0 - r.X_sigma * r.X_sigma <= 2.0 * r.W_sigma)
        return verdict(Regime::SemiclassicalAlways, ConditionLabel::V);

    const double root = std::sqrt(r.Delta_sigma);
    const double shrink = r.X_sigma > 0.0 ? std::min(1.0, root / (2.0 * r.X_sigma)) : 1.0;
    const double s_ref = root / r.W_sigma * shrink;
    return verdict(Regime::SemiclassicalAfter, ConditionLabel::IX, s_ref * r.t_sigma);
}

RegimeVerdict classify_free_gcs(const SemiclassicalInput& input) {
    check_field_free(input);
    return classify_free_gcs(RatioSet::from_input(input));
}

RegimeVerdict classify_free_cs(const SemiclassicalInput& input) {
    check_field_free(input);
    check_minimal(input);
    return classify_free_cs(RatioSet::from_input(input));
}

RegimeVerdict classify_field_gcs(const SemiclassicalInput& input) {
    check_field_present(input);
    return classify_field_gcs(RatioSet::from_input(input));
}

RegimeVerdict classify_field_cs(const SemiclassicalInput& input) {
    check_field_present(input);
    check_minimal(input);
    return classify_field_cs(RatioSet::from_input(input));
}

double brute_force_crossing(const std::function<double(double)>& R, double threshold,
                            double t_lo, double t_hi, double rel_tol) {
    require(t_lo >= 0.0 && t_hi > t_lo, "brute_force_crossing: need 0 <= t_lo < t_hi");
    const double f_lo = R(t_lo) - threshold;
    const double f_hi = R(t_hi) - threshold;
    if (!std::isfinite(f_lo) || !std::isfinite(f_hi))
        throw NumericError("brute_force_crossing: non-finite ratio at a bracket endpoint");
    if ((f_lo <= 0.0) == (f_hi <= 0.0))
        throw NumericError("brute_force_crossing: bracket endpoints do not straddle the threshold");
    return bisect([&](double t) { return R(t) - threshold; }, t_lo, t_hi, rel_tol);
}

std::string to_string(Regime regime) {
    switch (regime) {
        case Regime::SemiclassicalAlways: return "SemiclassicalAlways";
        case Regime::SemiclassicalUntil: return "SemiclassicalUntil";
        case Regime::SemiclassicalAfter: return "SemiclassicalAfter";
        case Regime::QuantumAlways: return "QuantumAlways";
    }
    return "?";
}

std::string to_string(ConditionLabel label) {
    switch (label) {
        case ConditionLabel::I: return "i";
        case ConditionLabel::II: return "ii";
        case ConditionLabel::III: return "iii";
        case ConditionLabel::IV: return "iv";
        case ConditionLabel::V: return "v";
        case ConditionLabel::VI: return "vi";
        case ConditionLabel::VII: return "vii";
        case ConditionLabel::VIII: return "viii";
        case ConditionLabel::IX: return "ix";
        case ConditionLabel::Quantum66b: return "quantum-(6.6b)";
    }
    return "?";
}

PhysicalConditionsReport physical_conditions_report(const SemiclassicalInput& input,
                                                    double soft_factor) {
    require(input.p_z != 0.0, "physical_conditions_report: p_z must be nonzero");
    require(soft_factor >= 1.0, "physical_conditions_report: soft_factor must be >= 1");

    const PhysicalSetup& s = input.setup;
    const DerivedScales scales(s);
    const RatioSet r = RatioSet::from_input(input);

    PhysicalConditionsReport rep{};
    rep.soft_factor = soft_factor;
    rep.lambda = scales.de_broglie(input.p_z);

    const double inv_wavelength_momentum = 2.0 * M_PI * s.planck / rep.lambda;  // equals |p_z|
    const double lam_over_4pi_sz = rep.lambda / (4.0 * M_PI * input.sigma_z);
    const double interval_top =
        inv_wavelength_momentum * std::sqrt(1.0 + lam_over_4pi_sz * lam_over_4pi_sz);

    rep.gcs_spread_small_exact = input.sigma_pz <= inv_wavelength_momentum;
    rep.gcs_spread_small_soft = soft_factor * input.sigma_pz <= inv_wavelength_momentum;
    rep.gcs_interval_exact =
        input.sigma_pz > inv_wavelength_momentum && input.sigma_pz <= interval_top;
    rep.gcs_quantum_exact = input.sigma_pz > interval_top;

    const double mc = s.mass * s.light_speed;
    const double field_scale_gcs = (input.sigma_pz / mc) * (input.sigma_pz / mc) *
                                   (scales.compton / input.sigma_z) * scales.critical_field;
    rep.field_strong_exact = s.field >= field_scale_gcs;
    rep.field_strong_soft = s.field >= soft_factor * field_scale_gcs;

    const double x2 = r.X * r.X;
    const double moderate_low = field_scale_gcs * (1.0 - x2);
    rep.field_moderate_exact = s.field >= moderate_low && s.field < field_scale_gcs;
    rep.xy_weak_exact = xy_equal(r) && s.field > 0.0 && s.field < moderate_low;
    rep.sigma_large_exact = input.sigma_pz > interval_top;

    const double quarter_lambda = rep.lambda / (4.0 * M_PI);
    rep.cs_sigma_z_large_exact = input.sigma_z >= quarter_lambda;
    rep.cs_sigma_z_large_soft = input.sigma_z >= soft_factor * quarter_lambda;

    const double compton_cubed_ratio = std::pow(scales.compton / input.sigma_z, 3);
    // exact complement of condition (ix): 2 W_sigma >= 1
    rep.cs_field_strong_exact = s.field >= 0.25 * compton_cubed_ratio * scales.critical_field;
    // the order-of-magnitude reading keeps the printed 1/2 coefficient
    rep.cs_field_strong_soft =
        s.field >= soft_factor * 0.5 * compton_cubed_ratio * scales.critical_field;
    rep.cs_weak_exact = input.sigma_z <= quarter_lambda && s.field > 0.0 &&
                        s.field < 0.25 * compton_cubed_ratio * scales.critical_field *
                                      (1.0 - r.X_sigma * r.X_sigma);

    // Every exact physical inequality must agree with its dimensionless twin.
    assert(rep.gcs_spread_small_exact == (r.X >= 1.0));
    assert(rep.gcs_interval_exact == (r.Y <= r.X && r.X < 1.0));
    assert(rep.gcs_quantum_exact == (r.X < r.Y));
    assert(rep.field_strong_exact == (2.0 * r.W >= 1.0));
    assert(rep.field_moderate_exact == (1.0 - x2 <= 2.0 * r.W && 2.0 * r.W < 1.0));
    assert(rep.cs_sigma_z_large_exact == (r.X_sigma >= 1.0));
    assert(rep.cs_field_strong_exact == (2.0 * r.W_sigma >= 1.0));
    return rep;
}

SemiclassicalInput realize_ratios(double X, double Y, double W, const PhysicalSetup& base) {
    require(X >= 0.0, "realize_ratios: X must be >= 0");
    require(Y >= 0.0 && Y < 1.0, "realize_ratios: Y must lie in [0, 1)");
    require(W >= 0.0, "realize_ratios: W must be >= 0");

    const double mc = base.mass * base.light_speed;
    const double sigma_pz = mc / 20.0;  // nonrelativistic reference spread
    const double sigma_z = base.planck / (2.0 * sigma_pz * std::sqrt(1.0 - Y * Y));
    const double p_z = X * sigma_pz;

    const DerivedScales scales(base);
    const double field = 2.0 * W * (sigma_pz / mc) * (sigma_pz / mc) *
                         (scales.compton / sigma_z) * scales.critical_field;

    PhysicalSetup setup(base.mass, std::abs(base.charge), base.light_speed, base.planck, field,
                        base.alpha, base.length_scale);
    return SemiclassicalInput(sigma_z, sigma_pz, p_z, setup);
}

}  // namespace gcslab
