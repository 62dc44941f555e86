#include "gcslab/cli.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include "json.hpp"

#include "gcslab/classifier.hpp"
#include "gcslab/gcs_state.hpp"
#include "gcslab/oracle.hpp"
#include "gcslab/output.hpp"
#include "gcslab/verify.hpp"

namespace gcslab::cli {

namespace {

using nlohmann::json;

struct SweepAxis {
    std::string var;
    double from = 0.0;
    double to = 0.0;
    std::size_t count = 0;
    bool log = false;
};

struct RunConfig {
    std::string mode;
    std::string units = "natural";
    json setup_block;
    json state_block;
    json classify_block;
    json grid_block;
    json tau_block;
    std::optional<SweepAxis> sweep_x;
    std::optional<SweepAxis> sweep_y;
    std::string out_path = "-";
    std::string out_format = "csv";
    int precision = 12;
    std::string suite;
    unsigned threads = 0;
};

double get_number(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) throw ConfigError(std::string("field '") + key + "' must be a number");
    return j.at(key).get<double>();
}

Complex get_complex(const json& j, const char* key, Complex fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (v.is_number()) return Complex(v.get<double>(), 0.0);
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return Complex(v[0].get<double>(), v[1].get<double>());
    throw ConfigError(std::string("field '") + key + "' must be a number or [re, im]");
}

PhysicalSetup build_setup(const RunConfig& cfg) {
    const json& s = cfg.setup_block;
    PhysicalSetup base = cfg.units == "si" ? PhysicalSetup::si() : PhysicalSetup::natural();
    if (cfg.units != "si" && cfg.units != "natural")
        throw ConfigError("units must be 'natural' or 'si'");
    try {
        return PhysicalSetup(get_number(s, "mass", base.mass),
                             get_number(s, "charge", base.charge),
                             get_number(s, "light_speed", base.light_speed),
                             get_number(s, "planck", base.planck),
                             get_number(s, "E", base.field),
                             get_number(s, "alpha", base.alpha),
                             get_number(s, "length_scale", base.length_scale));
    } catch (const std::invalid_argument& err) {
        throw ConfigError(std::string("setup: ") + err.what());
    }
}

SeedCoefficients build_seed(const json& state) {
    if (state.contains("sigma_q0")) {
        const double sigma_q0 = state.at("sigma_q0").get<double>();
        if (state.contains("sigma_p0")) {
            const int branch = static_cast<int>(get_number(state, "branch", 1.0));
            return SeedCoefficients::from_deviations(sigma_q0,
                                                     state.at("sigma_p0").get<double>(), branch);
        }
        return cs_specialize(sigma_q0);
    }
    return SeedCoefficients(get_complex(state, "f0", Complex(1.0, 0.0)),
                            get_complex(state, "g0", Complex(1.0, 0.0)));
}

GcsState build_state(const RunConfig& cfg, const PhysicalSetup& setup) {
    const json& s = cfg.state_block;
    const SeedCoefficients seed = build_seed(s);
    const double Xi = setup.dimensionless_field();
    if (s.contains("mean_q0") || s.contains("mean_p0")) {
        if (s.contains("zeta"))
            throw ConfigError("state: give either zeta or mean_q0/mean_p0, not both");
        return GcsState::from_initial_means(seed, Xi, setup.alpha,
                                            get_number(s, "mean_q0", 0.0),
                                            get_number(s, "mean_p0", 0.0));
    }
    return GcsState(seed, Xi, setup.alpha, get_complex(s, "zeta", Complex(0.0, 0.0)));
}

std::vector<double> build_tau_list(const json& tau) {
    if (tau.is_null()) return {0.0};
    if (tau.is_number()) return {tau.get<double>()};
    if (tau.is_array()) {
        std::vector<double> values;
        for (const auto& v : tau) {
            if (!v.is_number()) throw ConfigError("tau: list entries must be numbers");
            values.push_back(v.get<double>());
        }
        if (values.empty()) throw ConfigError("tau: list must not be empty");
        return values;
    }
    if (tau.is_object()) {
        const double from = get_number(tau, "from", 0.0);
        const double to = get_number(tau, "to", from);
        const auto count = static_cast<std::size_t>(get_number(tau, "count", 1.0));
        if (count < 1) throw ConfigError("tau: count must be >= 1");
        std::vector<double> values(count);
        for (std::size_t i = 0; i < count; ++i)
            values[i] = count == 1 ? from
                                   : from + (to - from) * static_cast<double>(i) /
                                                 static_cast<double>(count - 1);
        return values;
    }
    throw ConfigError("tau: expected a number, list or {from, to, count}");
}

oracle::SpatialGrid build_grid(const json& grid) {
    try {
        return oracle::SpatialGrid(get_number(grid, "q_min", -20.0),
                                   get_number(grid, "q_max", 20.0),
                                   static_cast<std::size_t>(get_number(grid, "n_points", 4096.0)));
    } catch (const std::invalid_argument& err) {
        throw ConfigError(std::string("grid: ") + err.what());
    }
}

SweepAxis parse_axis(const json& axis, const char* name) {
    if (!axis.is_object()) throw ConfigError(std::string("sweep.") + name + " must be an object");
    SweepAxis a;
    if (!axis.contains("var")) throw ConfigError(std::string("sweep.") + name + " needs 'var'");
    a.var = axis.at("var").get<std::string>();
    const bool known = a.var == "E" || a.var == "sigma_z" || a.var == "sigma_pz" ||
                       a.var == "p_z" || a.var == "alpha";
    if (!known) throw ConfigError("sweep: unknown axis variable '" + a.var + "'");
    a.from = get_number(axis, "from", 0.0);
    a.to = get_number(axis, "to", a.from);
    a.count = static_cast<std::size_t>(get_number(axis, "count", 1.0));
    a.log = axis.contains("log") && axis.at("log").get<bool>();
    if (a.count < 1) throw ConfigError("sweep: axis count must be >= 1");
    if (a.log && (a.from <= 0.0 || a.to <= 0.0))
        throw ConfigError("sweep: log axes need positive bounds");
    return a;
}

std::vector<double> axis_values(const SweepAxis& a) {
    std::vector<double> v(a.count);
    for (std::size_t i = 0; i < a.count; ++i) {
        const double frac =
            a.count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(a.count - 1);
        v[i] = a.log ? a.from * std::pow(a.to / a.from, frac) : a.from + (a.to - a.from) * frac;
    }
    return v;
}

RunConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");
    RunConfig cfg;
    if (doc.contains("mode")) cfg.mode = doc.at("mode").get<std::string>();
    if (doc.contains("units")) cfg.units = doc.at("units").get<std::string>();
    cfg.setup_block = doc.value("setup", json::object());
    cfg.state_block = doc.value("state", json::object());
    cfg.classify_block = doc.value("classify", json::object());
    cfg.grid_block = doc.value("grid", json::object());
    cfg.tau_block = doc.contains("tau") ? doc.at("tau") : json();

    if (doc.contains("sweep")) {
        const json& sweep = doc.at("sweep");
        if (sweep.contains("x")) cfg.sweep_x = parse_axis(sweep.at("x"), "x");
        if (sweep.contains("y")) cfg.sweep_y = parse_axis(sweep.at("y"), "y");
    }

    const json out = doc.value("output", json::object());
    if (out.contains("path")) cfg.out_path = out.at("path").get<std::string>();
    if (out.contains("format")) cfg.out_format = out.at("format").get<std::string>();
    cfg.precision = static_cast<int>(get_number(out, "precision", 12.0));
    if (cfg.out_format != "csv" && cfg.out_format != "json")
        throw ConfigError("output.format must be 'csv' or 'json'");
    if (cfg.precision < 1 || cfg.precision > 17)
        throw ConfigError("output.precision must lie in [1, 17]");

    const json verify_block = doc.value("verify", json::object());
    if (verify_block.contains("suite")) cfg.suite = verify_block.at("suite").get<std::string>();
    cfg.threads = static_cast<unsigned>(get_number(verify_block, "threads", 0.0));
    return cfg;
}

class OutputTarget {
public:
    explicit OutputTarget(const std::string& path) : path_(path) {
        if (path != "-") {
            file_.open(path, std::ios::binary | std::ios::trunc);
            if (!file_) throw ConfigError("cannot open output path '" + path + "'");
        }
    }
    std::ostream& stream() { return path_ == "-" ? std::cout : file_; }
    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::ofstream file_;
};

void write_csv_header(std::ostream& os, const RunConfig& cfg, const char* mode) {
    os << "# gcslab mode=" << mode << " units=" << cfg.units
       << " precision=" << cfg.precision << '\n';
}

unsigned pick_threads(const RunConfig& cfg) {
    if (cfg.threads > 0) return cfg.threads;
    if (const char* env = std::getenv("GCSLAB_THREADS")) {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed > 0) return static_cast<unsigned>(parsed);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// ---------------------------------------------------------------- eval mode

int run_eval(const RunConfig& cfg) {
    const PhysicalSetup setup = build_setup(cfg);
    const GcsState state = build_state(cfg, setup);
    const oracle::SpatialGrid grid = build_grid(cfg.grid_block);
    const std::vector<double> taus = build_tau_list(cfg.tau_block);
    const std::vector<double> qs = grid.points();

    OutputTarget target(cfg.out_path);
    std::ostream& os = target.stream();
    const int digits = cfg.precision;
    const auto fmt = [&](double v) { return out::format_double(v, digits); };

    if (cfg.out_format == "csv") {
        write_csv_header(os, cfg, "eval");
        const std::vector<std::string> header = {"q", "tau", "re_phi", "im_phi", "abs2_phi"};
        out::write_csv_row(os, header);
        for (double tau : taus) {
            const std::vector<Complex> values = evaluate_gcs_grid(state, qs, tau);
            for (std::size_t i = 0; i < qs.size(); ++i) {
                const std::vector<std::string> row = {fmt(qs[i]), fmt(tau),
                                                      fmt(values[i].real()), fmt(values[i].imag()),
                                                      fmt(std::norm(values[i]))};
                out::write_csv_row(os, row);
            }
        }
    } else {
        const out::JsonWriter jw(17);
        std::vector<std::string> rows;
        for (double tau : taus) {
            const std::vector<Complex> values = evaluate_gcs_grid(state, qs, tau);
            for (std::size_t i = 0; i < qs.size(); ++i) {
                const std::vector<std::string> cells = {
                    jw.number(qs[i]), jw.number(tau), jw.number(values[i].real()),
                    jw.number(values[i].imag()), jw.number(std::norm(values[i]))};
                rows.push_back(jw.array(cells));
            }
        }
        const std::vector<std::pair<std::string, std::string>> members = {
            {"mode", jw.string("eval")},
            {"units", jw.string(cfg.units)},
            {"columns", jw.array(std::vector<std::string>{
                            jw.string("q"), jw.string("tau"), jw.string("re_phi"),
                            jw.string("im_phi"), jw.string("abs2_phi")})},
            {"rows", jw.array(rows)},
        };
        os << jw.object(members) << '\n';
    }
    return 0;
}

// ------------------------------------------------------------- moments mode

int run_moments(const RunConfig& cfg) {
    const PhysicalSetup setup = build_setup(cfg);
    const GcsState state = build_state(cfg, setup);
    const std::vector<double> taus = build_tau_list(cfg.tau_block);

    OutputTarget target(cfg.out_path);
    std::ostream& os = target.stream();
    const auto fmt = [&](double v) { return out::format_double(v, cfg.precision); };

    const std::vector<std::string> columns = {"tau",     "mean_q",   "mean_p",
                                              "sigma_q", "sigma_p",  "sigma_qp",
                                              "heisenberg_product",  "rs_residual"};
    if (cfg.out_format == "csv") {
        write_csv_header(os, cfg, "moments");
        out::write_csv_row(os, columns);
        for (double tau : taus) {
            const MomentSet m = moments(state, tau);
            const UncertaintyReport u = check_uncertainty(state, tau);
            const std::vector<std::string> row = {
                fmt(m.tau),     fmt(m.mean_q),  fmt(m.mean_p),
                fmt(m.sigma_q), fmt(m.sigma_p), fmt(m.sigma_qp),
                fmt(u.heisenberg_product),      fmt(u.rs_residual)};
            out::write_csv_row(os, row);
        }
    } else {
        const out::JsonWriter jw(17);
        std::vector<std::string> rows;
        std::vector<std::string> column_names;
        for (const auto& c : columns) column_names.push_back(jw.string(c));
        for (double tau : taus) {
            const MomentSet m = moments(state, tau);
            const UncertaintyReport u = check_uncertainty(state, tau);
            const std::vector<std::string> cells = {
                jw.number(m.tau),     jw.number(m.mean_q),  jw.number(m.mean_p),
                jw.number(m.sigma_q), jw.number(m.sigma_p), jw.number(m.sigma_qp),
                jw.number(u.heisenberg_product),            jw.number(u.rs_residual)};
            rows.push_back(jw.array(cells));
        }
        const std::vector<std::pair<std::string, std::string>> members = {
            {"mode", jw.string("moments")},
            {"units", jw.string(cfg.units)},
            {"columns", jw.array(column_names)},
            {"rows", jw.array(rows)},
        };
        os << jw.object(members) << '\n';
    }
    return 0;
}

// -------------------------------------------------------------- regime mode

struct RegimeRequest {
    std::string kind;          // gcs | cs
    std::string field_regime;  // free | electric
    double sigma_z = 0.0;
    double sigma_pz = 0.0;
    double p_z = 0.0;
};

RegimeRequest parse_regime_request(const RunConfig& cfg, const PhysicalSetup& setup) {
    const json& c = cfg.classify_block;
    RegimeRequest req;
    req.kind = c.value("kind", "gcs");
    req.field_regime = c.value("field", setup.field > 0.0 ? "electric" : "free");
    if (req.kind != "gcs" && req.kind != "cs")
        throw ConfigError("classify.kind must be 'gcs' or 'cs'");
    if (req.field_regime != "free" && req.field_regime != "electric")
        throw ConfigError("classify.field must be 'free' or 'electric'");
    if (!c.contains("sigma_z")) throw ConfigError("classify.sigma_z is required");
    req.sigma_z = c.at("sigma_z").get<double>();
    if (c.contains("sigma_pz")) {
        req.sigma_pz = c.at("sigma_pz").get<double>();
    } else if (req.kind == "cs") {
        req.sigma_pz = 0.5 * setup.planck / req.sigma_z;  // minimal pair
    } else {
        throw ConfigError("classify.sigma_pz is required for kind=gcs");
    }
    req.p_z = get_number(c, "p_z", 0.0);
    return req;
}

RegimeVerdict classify(const RegimeRequest& req, const SemiclassicalInput& input) {
    if (req.field_regime == "free")
        return req.kind == "cs" ? classify_free_cs(input) : classify_free_gcs(input);
    return req.kind == "cs" ? classify_field_cs(input) : classify_field_gcs(input);
}

int run_regime(const RunConfig& cfg) {
    const PhysicalSetup setup = build_setup(cfg);
    const RegimeRequest req = parse_regime_request(cfg, setup);
    if (req.field_regime == "free" && setup.field != 0.0)
        throw ConfigError("classify.field=free requires setup.E = 0");
    if (req.field_regime == "electric" && setup.field <= 0.0)
        throw ConfigError("classify.field=electric requires setup.E > 0");

    const SemiclassicalInput input(req.sigma_z, req.sigma_pz, req.p_z, setup);
    const RatioSet ratios = RatioSet::from_input(input);
    const RegimeVerdict v = classify(req, input);
    const PhysicalConditionsReport rep = physical_conditions_report(input);

    OutputTarget target(cfg.out_path);
    std::ostream& os = target.stream();
    const out::JsonWriter jw(17);
    const auto fmtn = [&](double x) { return jw.number(x); };

    const std::vector<std::pair<std::string, std::string>> flags = {
        {"gcs_spread_small_exact", jw.boolean(rep.gcs_spread_small_exact)},
        {"gcs_spread_small_soft", jw.boolean(rep.gcs_spread_small_soft)},
        {"gcs_interval_exact", jw.boolean(rep.gcs_interval_exact)},
        {"gcs_quantum_exact", jw.boolean(rep.gcs_quantum_exact)},
        {"field_strong_exact", jw.boolean(rep.field_strong_exact)},
        {"field_strong_soft", jw.boolean(rep.field_strong_soft)},
        {"field_moderate_exact", jw.boolean(rep.field_moderate_exact)},
        {"xy_weak_exact", jw.boolean(rep.xy_weak_exact)},
        {"sigma_large_exact", jw.boolean(rep.sigma_large_exact)},
        {"cs_sigma_z_large_exact", jw.boolean(rep.cs_sigma_z_large_exact)},
        {"cs_sigma_z_large_soft", jw.boolean(rep.cs_sigma_z_large_soft)},
        {"cs_field_strong_exact", jw.boolean(rep.cs_field_strong_exact)},
        {"cs_field_strong_soft", jw.boolean(rep.cs_field_strong_soft)},
        {"cs_weak_exact", jw.boolean(rep.cs_weak_exact)},
    };

    if (cfg.out_format == "json") {
        std::vector<std::pair<std::string, std::string>> members = {
            {"mode", jw.string("regime")},
            {"units", jw.string(cfg.units)},
            {"time_unit", jw.string(cfg.units == "si" ? "s" : "natural")},
            {"kind", jw.string(req.kind)},
            {"field", jw.string(req.field_regime)},
            {"regime", jw.string(to_string(v.regime))},
            {"condition_label", jw.string(to_string(v.label))},
            {"time_value", v.has_time() ? fmtn(*v.time) : "null"},
            {"X", fmtn(ratios.X)},
            {"Y", fmtn(ratios.Y)},
            {"X_sigma", fmtn(ratios.X_sigma)},
            {"W", fmtn(ratios.W)},
            {"W_sigma", fmtn(ratios.W_sigma)},
            {"t_sigma", fmtn(ratios.t_sigma)},
            {"physical_conditions", jw.object(flags)},
        };
        os << jw.object(members) << '\n';
    } else {
        write_csv_header(os, cfg, "regime");
        std::vector<std::string> columns = {"regime", "condition_label", "time_value",
                                            "X", "Y", "X_sigma", "W", "W_sigma", "t_sigma"};
        std::vector<std::string> row = {
            to_string(v.regime),
            to_string(v.label),
            v.has_time() ? out::format_double(*v.time, cfg.precision) : "",
            out::format_double(ratios.X, cfg.precision),
            out::format_double(ratios.Y, cfg.precision),
            out::format_double(ratios.X_sigma, cfg.precision),
            out::format_double(ratios.W, cfg.precision),
            out::format_double(ratios.W_sigma, cfg.precision),
            out::format_double(ratios.t_sigma, cfg.precision)};
        for (const auto& [name, value] : flags) {
            columns.push_back(name);
            row.push_back(value);
        }
        out::write_csv_row(os, columns);
        out::write_csv_row(os, row);
    }
    return 0;
}

// ----------------------------------------------------------------- map mode

int run_map(const RunConfig& cfg) {
    if (!cfg.sweep_x || !cfg.sweep_y) throw ConfigError("map mode needs sweep.x and sweep.y");
    if (cfg.out_path == "-")
        throw ConfigError("map mode writes a sidecar file and needs output.path");
    const std::size_t cells = cfg.sweep_x->count * cfg.sweep_y->count;
    if (cells > 1000000) throw ConfigError("map: sweep exceeds 10^6 cells");

    if (cfg.sweep_x->var == cfg.sweep_y->var)
        throw ConfigError("map: sweep axes must differ");

    const PhysicalSetup base = build_setup(cfg);
    const RegimeRequest req = parse_regime_request(cfg, base);
    const std::vector<double> xs = axis_values(*cfg.sweep_x);
    const std::vector<double> ys = axis_values(*cfg.sweep_y);
    const bool sigma_pz_swept =
        cfg.sweep_x->var == "sigma_pz" || cfg.sweep_y->var == "sigma_pz";

    auto cell_label = [&](double x_value, double y_value) -> std::string {
        double sigma_z = req.sigma_z, sigma_pz = req.sigma_pz, p_z = req.p_z;
        double field = base.field, alpha = base.alpha;
        const auto apply = [&](const std::string& var, double value) {
            if (var == "E") field = value;
            else if (var == "sigma_z") sigma_z = value;
            else if (var == "sigma_pz") sigma_pz = value;
            else if (var == "p_z") p_z = value;
            else alpha = value;
        };
        apply(cfg.sweep_x->var, x_value);
        apply(cfg.sweep_y->var, y_value);
        try {
            const PhysicalSetup setup(base.mass, base.charge, base.light_speed, base.planck,
                                      field, alpha, base.length_scale);
            RegimeRequest local = req;
            local.field_regime = field > 0.0 ? "electric" : "free";
            if (local.kind == "cs" && !cfg.classify_block.contains("sigma_pz") &&
                !sigma_pz_swept)
                sigma_pz = 0.5 * setup.planck / sigma_z;  // keep the pair minimal per cell
            const SemiclassicalInput input(sigma_z, sigma_pz, p_z, setup);
            return to_string(classify(local, input).label);
        } catch (const std::exception&) {
            return "invalid";
        }
    };

    std::vector<std::string> labels(cells);
    std::atomic<std::size_t> next{0};
    const unsigned n_threads =
        std::min<std::size_t>(pick_threads(cfg), std::max<std::size_t>(1, cells));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < cells; i = next.fetch_add(1))
                labels[i] = cell_label(xs[i % xs.size()], ys[i / xs.size()]);
        });
    }
    for (auto& th : pool) th.join();

    OutputTarget target(cfg.out_path);
    std::ostream& os = target.stream();
    for (std::size_t row = 0; row < ys.size(); ++row) {
        std::vector<std::string> fields(xs.size());
        for (std::size_t col = 0; col < xs.size(); ++col) fields[col] = labels[row * xs.size() + col];
        out::write_csv_row(os, fields);
    }

    const out::JsonWriter jw(17);
    std::vector<std::string> x_vals, y_vals;
    for (double v : xs) x_vals.push_back(jw.number(v));
    for (double v : ys) y_vals.push_back(jw.number(v));
    const std::vector<std::pair<std::string, std::string>> sidecar = {
        {"mode", jw.string("map")},
        {"units", jw.string(cfg.units)},
        {"kind", jw.string(req.kind)},
        {"x_var", jw.string(cfg.sweep_x->var)},
        {"y_var", jw.string(cfg.sweep_y->var)},
        {"x_values", jw.array(x_vals)},
        {"y_values", jw.array(y_vals)},
        {"cell_order", jw.string("row-major, rows follow y_values")},
    };
    std::ofstream side(cfg.out_path + ".axes.json", std::ios::binary | std::ios::trunc);
    if (!side) throw ConfigError("cannot open sidecar path");
    side << jw.object(sidecar) << '\n';
    return 0;
}

// -------------------------------------------------------------- verify mode

int run_verify(const RunConfig& cfg) {
    std::string suite = cfg.suite;
    if (suite.empty()) throw ConfigError("verify mode needs verify.suite (or --suite)");

    std::vector<verify::SuiteResult> results;
    if (suite == "all") {
        for (const std::string& name : verify::suite_names())
            results.push_back(verify::run_suite(name, cfg.threads));
    } else {
        try {
            results.push_back(verify::run_suite(suite, cfg.threads));
        } catch (const std::invalid_argument& err) {
            throw ConfigError(err.what());
        }
    }

    OutputTarget target(cfg.out_path);
    std::ostream& os = target.stream();
    const out::JsonWriter jw(17);
    bool all_passed = true;
    std::vector<std::string> suite_objects;
    for (const auto& r : results) {
        all_passed = all_passed && r.passed;
        std::vector<std::string> notes;
        for (const auto& n : r.notes) notes.push_back(jw.string(n));
        const std::vector<std::pair<std::string, std::string>> members = {
            {"suite", jw.string(r.suite)},
            {"passed", jw.boolean(r.passed)},
            {"cases", out::format_double(r.cases, 17)},
            {"tolerance", jw.number(r.tolerance)},
            {"max_error", jw.number(r.max_error)},
            {"notes", jw.array(notes)},
        };
        suite_objects.push_back(jw.object(members));
    }
    const std::vector<std::pair<std::string, std::string>> report = {
        {"report", jw.string("verification")},
        {"units", jw.string(cfg.units)},
        {"suites", jw.array(suite_objects)},
        {"all_passed", jw.boolean(all_passed)},
    };
    os << jw.object(report) << '\n';
    return all_passed ? 0 : 3;
}

// ------------------------------------------------------------ entry point

json load_config(const std::string& path) {
    try {
        if (path.empty()) return json::object();
        if (path == "-") return json::parse(std::cin);
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file '" + path + "'");
        return json::parse(in);
    } catch (const json::parse_error& err) {
        throw ConfigError(std::string("config parse error: ") + err.what());
    }
}

json parse_override_value(const std::string& text) {
    if (text == "true") return true;
    if (text == "false") return false;
    if (!text.empty() && (text.front() == '[' || text.front() == '{' || text.front() == '"')) {
        try {
            return json::parse(text);
        } catch (const json::parse_error& err) {
            throw ConfigError("override value '" + text + "' is not valid JSON");
        }
    }
    char* end = nullptr;
    const double number = std::strtod(text.c_str(), &end);
    if (end && *end == '\0' && end != text.c_str()) return number;
    return text;
}

void apply_override(json& doc, const std::string& dotted, const std::string& value) {
    std::string pointer = "/";
    for (char c : dotted) pointer += c == '.' ? '/' : c;
    try {
        doc[json::json_pointer(pointer)] = parse_override_value(value);
    } catch (const json::exception& err) {
        throw ConfigError("cannot apply override '" + dotted + "': " + err.what());
    }
}

void print_usage(std::ostream& os) {
    os << "usage: gcslab <eval|moments|regime|map|verify> [--config <path|->]\n"
          "              [--suite <name>] [--threads N] [--set key.path=value]\n"
          "              [--key.path value]...\n";
}

}  // namespace

int run(int argc, const char* const* argv) {
    try {
        if (argc < 2) {
            print_usage(std::cerr);
            return 2;
        }
        const std::string mode = argv[1];
        if (mode == "--help" || mode == "-h" || mode == "help") {
            print_usage(std::cout);
            return 0;
        }

        std::string config_path;
        std::vector<std::pair<std::string, std::string>> overrides;
        std::string suite_flag;
        unsigned threads_flag = 0;

        for (int i = 2; i < argc; ++i) {
            const std::string arg = argv[i];
            const auto next_value = [&](const char* flag) -> std::string {
                if (i + 1 >= argc) throw ConfigError(std::string(flag) + " needs a value");
                return argv[++i];
            };
            if (arg == "--config") {
                config_path = next_value("--config");
            } else if (arg == "--suite") {
                suite_flag = next_value("--suite");
            } else if (arg == "--threads") {
                threads_flag = static_cast<unsigned>(std::stoul(next_value("--threads")));
            } else if (arg == "--set") {
                const std::string kv = next_value("--set");
                const std::size_t eq = kv.find('=');
                if (eq == std::string::npos)
                    throw ConfigError("--set expects key.path=value, got '" + kv + "'");
                overrides.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
            } else if (arg.rfind("--", 0) == 0 && arg.find('.') != std::string::npos) {
                overrides.emplace_back(arg.substr(2), next_value(arg.c_str()));
            } else {
                throw ConfigError("unknown argument '" + arg + "'");
            }
        }

        json doc = load_config(config_path);
        for (const auto& [key, value] : overrides) apply_override(doc, key, value);

        RunConfig cfg = parse_config(doc);
        cfg.mode = mode;
        if (!suite_flag.empty()) cfg.suite = suite_flag;
        if (threads_flag > 0) cfg.threads = threads_flag;

        if (cfg.mode == "eval") return run_eval(cfg);
        if (cfg.mode == "moments") return run_moments(cfg);
        if (cfg.mode == "regime") return run_regime(cfg);
        if (cfg.mode == "map") return run_map(cfg);
        if (cfg.mode == "verify") return run_verify(cfg);
        throw ConfigError("unknown mode '" + cfg.mode + "'");
    } catch (const ConfigError& err) {
        std::cerr << "config error: " << err.what() << '\n';
        return 2;
    } catch (const HeisenbergViolation& err) {
        std::cerr << "domain error: " << err.what() << " (product = " << err.product() << ")\n";
        return 4;
    } catch (const NumericError& err) {
        std::cerr << "numeric error: " << err.what() << '\n';
        return 4;
    } catch (const std::invalid_argument& err) {
        std::cerr << "domain error: " << err.what() << '\n';
        return 4;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 4;
    }
}

}  // namespace gcslab::cli
