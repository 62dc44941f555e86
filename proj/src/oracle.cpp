#include "gcslab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gcslab/fft.hpp"

namespace gcslab::oracle {

namespace {

const Complex kI(0.0, 1.0);

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

double squared_norm(const std::vector<Complex>& values, double weight) {
    double sum = 0.0;
    for (const Complex& v : values) sum += std::norm(v);
    return sum * weight;
}

}  // namespace

SpatialGrid::SpatialGrid(double q_min_, double q_max_, std::size_t n_points_)
    : q_min(q_min_), q_max(q_max_), n_points(n_points_) {
    require(q_max > q_min, "SpatialGrid: q_max must exceed q_min");
    require(n_points >= 256, "SpatialGrid: need at least 256 points");
    require(is_power_of_two(n_points), "SpatialGrid: n_points must be a power of two");
    dq = (q_max - q_min) / static_cast<double>(n_points);
}

std::vector<double> SpatialGrid::points() const {
    std::vector<double> q(n_points);
    for (std::size_t i = 0; i < n_points; ++i) q[i] = point(i);
    return q;
}

std::vector<double> SpatialGrid::wavenumbers() const {
    std::vector<double> k(n_points);
    const double dk = 2.0 * M_PI / (q_max - q_min);
    const auto n = static_cast<std::ptrdiff_t>(n_points);
    for (std::ptrdiff_t j = 0; j < n; ++j) {
        const std::ptrdiff_t idx = j < n / 2 ? j : j - n;
        k[static_cast<std::size_t>(j)] = dk * static_cast<double>(idx);
    }
    return k;
}

double WavefunctionSample::norm() const { return std::sqrt(squared_norm(values, grid.dq)); }

WavefunctionSample sample_state(const GcsState& state, const SpatialGrid& grid, double tau,
                                const EvalOptions& opts) {
    WavefunctionSample sample{grid, tau, evaluate_gcs_grid(state, grid.points(), tau, opts)};
    const double n = sample.norm();
    if (std::abs(n - 1.0) > 1e-6) {
        std::ostringstream msg;
        msg << "sample_state: discrete norm " << n << " too far from 1 (box too small?)";
        throw NumericError(msg.str());
    }
    return sample;
}

SpatialGrid verification_grid(const GcsState& state, double tau_final, double half_width,
                              std::size_t n_points) {
    const MomentSet m0 = moments(state, 0.0);
    const MomentSet mf = moments(state, tau_final);
    const double lo = std::min(m0.mean_q - 8.0 * m0.sigma_q, mf.mean_q - 8.0 * mf.sigma_q);
    const double hi = std::max(m0.mean_q + 8.0 * m0.sigma_q, mf.mean_q + 8.0 * mf.sigma_q);

    double w = half_width;
    std::size_t n = n_points;
    while (lo < -w || hi > w) {
        w *= 2.0;
        n *= 2;
        if (n > (std::size_t{1} << 24))
            throw NumericError("verification_grid: state runs away beyond any sane box");
    }
    return SpatialGrid(-w, w, n);
}

WavefunctionSample propagate(const WavefunctionSample& initial, double Xi, double alpha,
                             double tau_final, const PropagateOptions& opts) {
    require(opts.dt > 0.0 && opts.dt <= 1e-3, "propagate: dt must lie in (0, 1e-3]");
    require(tau_final >= initial.tau, "propagate: tau_final must be >= the sample's tau");
    if (tau_final == initial.tau) return initial;

    const double interval = tau_final - initial.tau;
    const auto n_steps = static_cast<std::size_t>(std::ceil(interval / opts.dt - 1e-12));
    const double dt = interval / static_cast<double>(n_steps);

    const SpatialGrid& grid = initial.grid;
    const std::size_t n = grid.n_points;
    const std::vector<double> k = grid.wavenumbers();
    const std::vector<double> q = grid.points();

    const double cos_a = std::cos(alpha);
    const double sin_a = std::sin(alpha);
    const double cos2 = cos_a * cos_a;
    const double sin2 = sin_a * sin_a;
    const double cos4 = cos2 * cos2;

    if (opts.warnings) {
        // the global splitting error grows like dt^2 * |commutator| * interval;
        // flag steps that cannot plausibly deliver oracle-grade accuracy
        const double k_max = M_PI / grid.dq;
        const double q_max = std::max(std::abs(grid.q_min), std::abs(grid.q_max));
        const double scale = std::abs(Xi) * (k_max * cos2 + q_max * sin2 + 1.0);
        if (dt * dt * scale * interval > 1e-5)
            opts.warnings->push_back("propagate: dt is large for oracle-grade accuracy");
    }

    Radix2Fft fft(n);
    std::vector<Complex> psi = initial.values;
    std::vector<Complex> kin_half(n);

    const double initial_norm_sq = squared_norm(psi, grid.dq);

    for (std::size_t step = 0; step < n_steps; ++step) {
        const double tau_mid = initial.tau + (static_cast<double>(step) + 0.5) * dt;

        for (std::size_t j = 0; j < n; ++j) {
            const double omega = 0.5 * k[j] * k[j] + Xi * tau_mid * k[j] * cos2;
            kin_half[j] = std::exp(Complex(0.0, -0.5 * dt * omega));
        }

        fft.forward(psi);
        for (std::size_t j = 0; j < n; ++j) psi[j] *= kin_half[j];
        fft.inverse(psi);

        const double constant = 0.5 * Xi * Xi * tau_mid * tau_mid * cos4;
        double peak = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double v = -Xi * q[j] * sin2 + constant;
            psi[j] *= std::exp(Complex(0.0, -dt * v));
            peak = std::max(peak, std::norm(psi[j]));
        }

        const double edge = std::max(std::norm(psi.front()), std::norm(psi.back()));
        if (edge > opts.edge_density_threshold * peak) {
            std::ostringstream msg;
            msg << "propagate: probability density reached the box edge at tau = "
                << initial.tau + (static_cast<double>(step) + 1.0) * dt << " (edge/peak = "
                << edge / peak << ")";
            throw NumericError(msg.str());
        }

        fft.forward(psi);
        for (std::size_t j = 0; j < n; ++j) psi[j] *= kin_half[j];
        fft.inverse(psi);
    }

    const double final_norm_sq = squared_norm(psi, grid.dq);
    if (std::abs(final_norm_sq - initial_norm_sq) > 1e-9 * std::max(1.0, interval))
        throw NumericError("propagate: norm drifted beyond the unitarity budget");

    return {grid, tau_final, std::move(psi)};
}

MomentSet quadrature_moments(const WavefunctionSample& sample) {
    const SpatialGrid& grid = sample.grid;
    const std::size_t n = grid.n_points;
    const double dq = grid.dq;

    const double norm_sq = squared_norm(sample.values, dq);
    if (std::abs(norm_sq - 1.0) > 2e-6)
        throw NumericError("quadrature_moments: sample is not normalized");

    double mean_q = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean_q += grid.point(i) * std::norm(sample.values[i]);
    mean_q *= dq / norm_sq;

    double var_q = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = grid.point(i) - mean_q;
        var_q += d * d * std::norm(sample.values[i]);
    }
    var_q *= dq / norm_sq;

    Radix2Fft fft(n);
    std::vector<Complex> spectrum = sample.values;
    fft.forward(spectrum);
    const std::vector<double> k = grid.wavenumbers();

    double spectral_weight = 0.0, mean_p = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double w = std::norm(spectrum[j]);
        spectral_weight += w;
        mean_p += k[j] * w;
    }
    mean_p /= spectral_weight;

    double var_p = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double d = k[j] - mean_p;
        var_p += d * d * std::norm(spectrum[j]);
    }
    var_p /= spectral_weight;

    // covariance from Re <psi| (q - mean_q)(p_op - mean_p) |psi>
    std::vector<Complex> p_psi = spectrum;
    for (std::size_t j = 0; j < n; ++j) p_psi[j] *= k[j];
    fft.inverse(p_psi);

    double cov = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Complex centered = p_psi[i] - mean_p * sample.values[i];
        cov += std::real(std::conj(sample.values[i]) * (grid.point(i) - mean_q) * centered);
    }
    cov *= dq / norm_sq;

    MomentSet m;
    m.tau = sample.tau;
    m.mean_q = mean_q;
    m.mean_p = mean_p;
    m.sigma_q = std::sqrt(var_q);
    m.sigma_p = std::sqrt(var_p);
    m.sigma_qp = cov;
    return m;
}

double schrodinger_residual(const GcsState& state, const SpatialGrid& grid, double tau, double h,
                            const EvalOptions& opts) {
    require(h >= 1e-6 && h <= 1e-3, "schrodinger_residual: h must lie in [1e-6, 1e-3]");
    require(tau >= 2.0 * h, "schrodinger_residual: need tau >= 2h for the central stencil");

    const std::vector<double> q = grid.points();
    const auto at = [&](double t) { return evaluate_gcs_grid(state, q, t, opts); };

    const std::vector<Complex> m2 = at(tau - 2.0 * h);
    const std::vector<Complex> m1 = at(tau - h);
    const std::vector<Complex> p1 = at(tau + h);
    const std::vector<Complex> p2 = at(tau + 2.0 * h);
    const std::vector<Complex> psi = at(tau);

    const std::size_t n = grid.n_points;
    const double cos2 = std::cos(state.alpha()) * std::cos(state.alpha());
    const double sin2 = std::sin(state.alpha()) * std::sin(state.alpha());
    const double Xi = state.Xi();

    Radix2Fft fft(n);
    std::vector<Complex> h_psi = psi;
    fft.forward(h_psi);
    const std::vector<double> k = grid.wavenumbers();
    for (std::size_t j = 0; j < n; ++j)
        h_psi[j] *= 0.5 * k[j] * k[j] + Xi * tau * k[j] * cos2;
    fft.inverse(h_psi);

    const double constant = 0.5 * Xi * Xi * tau * tau * cos2 * cos2;
    double residual_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Complex d_tau = (m2[i] - 8.0 * m1[i] + 8.0 * p1[i] - p2[i]) / (12.0 * h);
        const Complex h_total = h_psi[i] + (-Xi * q[i] * sin2 + constant) * psi[i];
        residual_sq += std::norm(d_tau + kI * h_total);
    }
    return std::sqrt(residual_sq * grid.dq);
}

double l2_distance(const WavefunctionSample& a, const WavefunctionSample& b, bool phase_aligned) {
    if (!(a.grid == b.grid)) throw std::invalid_argument("l2_distance: grid mismatch");
    if (std::abs(a.tau - b.tau) > 1e-12)
        throw std::invalid_argument("l2_distance: samples live at different tau");

    const double dq = a.grid.dq;
    if (!phase_aligned) {
        double sum = 0.0;
        for (std::size_t i = 0; i < a.values.size(); ++i)
            sum += std::norm(a.values[i] - b.values[i]);
        return std::sqrt(sum * dq);
    }

    Complex inner(0.0, 0.0);
    for (std::size_t i = 0; i < a.values.size(); ++i)
        inner += std::conj(a.values[i]) * b.values[i];
    if (std::abs(inner) == 0.0) return l2_distance(a, b, false);

    // apply the minimizing global phase, then difference directly; the
    // closed form na + nb - 2|<a,b>| cancels catastrophically when a ~ b
    const Complex phase = std::conj(inner) / std::abs(inner);
    double sum = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        sum += std::norm(a.values[i] - phase * b.values[i]);
    return std::sqrt(sum * dq);
}

}  // namespace gcslab::oracle
