// Batch driver: resolve a run configuration (preset, JSON file, flag
// overrides), run the pipeline profile -> powers -> fit -> solve, and write
// the field grids plus reports. Artifacts are deterministic for a fixed
// configuration; wall-clock timings go to stdout and the summary.json
// "timing" block only.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "layerwave/formal_powers.hpp"
#include "layerwave/medium.hpp"
#include "layerwave/oracles.hpp"
#include "layerwave/signals.hpp"
#include "layerwave/solver.hpp"
#include "layerwave/transmutation.hpp"

using namespace layerwave;
using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(const Clock::time_point& t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Configuration mistakes; reported with the offending key and exit status 2.
class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Pipeline failures; reported with the stage name and exit status 1.
class StageError : public std::runtime_error {
  public:
    StageError(const std::string& stage, const std::string& what)
        : std::runtime_error("stage " + stage + ": " + what) {}
};

struct RunConfig {
    std::string from_preset;  // which preset seeded this config, if any

    // medium
    std::string medium_family = "power_law";  // power_law | constant | table
    double medium_alpha = 2.0, medium_beta = 1.0, medium_exponent = -2.0;
    double medium_eps0 = 1.0;
    std::string medium_table;
    double mu = 1.0;
    double x_max = 5.0;
    int mesh_points = 2001;
    bool mesh_points_set = false, x_max_set = false;

    // signal
    std::string signal_kind = "trig";  // trig | gaussian | psk | sampled
    double omega0 = 1.0, omega = 0.0;
    std::vector<cplx> alpha{cplx(1.0, 0.0)}, beta{cplx(0.0, 0.0)};
    double gauss_decay = 1.0, gauss_center = 0.0;
    cplx gauss_amplitude{1.0, 0.0};
    std::string branch = "minus";  // characteristic component carrying the data
    std::string signal_path;
    double symbol_duration = 1.0;
    int sampled_l_max = 24;

    // grid
    double t_min = 0.0, t_max = 5.0;
    int x_count = 201, t_count = 201;

    // solver
    int n_max = 20;
    int order = 0;  // 0 = automatic selection
    bool single_wave = false;

    // output
    std::string out_dir = "layerwave_out";
    bool write_w = false;
    std::string oracle;  // "", example1, example2, example3
};

RunConfig preset_config(const std::string& name) {
    RunConfig cfg;
    cfg.from_preset = name;
    if (name == "example1") {
        cfg.medium_family = "power_law";
        cfg.medium_alpha = 2.0;
        cfg.medium_beta = 1.0;
        cfg.medium_exponent = -2.0;
        cfg.mu = 1.0;
        cfg.x_max = 5.0;
        cfg.mesh_points = 5001;
        cfg.signal_kind = "trig";
        cfg.omega0 = 1.0;
        cfg.omega = 0.0;
        cfg.alpha = {cplx(3.0, 0.0)};
        cfg.beta = {cplx(-4.0, 0.0)};
        cfg.t_min = 0.0;
        cfg.t_max = 5.0;
        cfg.oracle = "example1";
    } else if (name == "example2") {
        cfg.medium_family = "power_law";
        cfg.medium_alpha = 2.0;
        cfg.medium_beta = 1.0;
        cfg.medium_exponent = -2.0;
        cfg.mu = 1.0;
        cfg.x_max = 6.0;
        cfg.mesh_points = 5001;
        cfg.signal_kind = "trig";
        cfg.omega0 = 0.0;
        cfg.omega = 1.0;
        cfg.alpha = {cplx(2.0, 0.0), cplx(2.0, 0.0), cplx(0.0, 0.0), cplx(0.0, 0.0),
                     cplx(0.0, 0.0), cplx(2.0, 0.0), cplx(2.0, 0.0)};
        cfg.beta = std::vector<cplx>(7, cplx(0.0, 0.0));
        cfg.t_min = 0.0;
        cfg.t_max = 6.0;
        cfg.oracle = "example2";
    } else if (name == "example3") {
        cfg.medium_family = "power_law";
        cfg.medium_alpha = 5.0;
        cfg.medium_beta = 1.0;
        cfg.medium_exponent = -1.6;
        cfg.mu = 1.0;
        cfg.x_max = 2.0;
        cfg.mesh_points = 2001;
        cfg.signal_kind = "gaussian";
        cfg.gauss_decay = 4.0;
        cfg.gauss_amplitude = cplx(1.0, 0.0);
        cfg.gauss_center = 0.0;
        cfg.branch = "minus";
        cfg.t_min = -2.0;
        cfg.t_max = 2.0;
        cfg.oracle = "example3";
    } else {
        throw ConfigError("preset: unknown preset '" + name +
                          "' (expected example1, example2, or example3)");
    }
    return cfg;
}

// --- JSON helpers -------------------------------------------------------------

double need_number(const json& j, const std::string& key) {
    if (!j.is_number()) throw ConfigError(key + ": expected a number");
    return j.get<double>();
}

int need_int(const json& j, const std::string& key) {
    if (!j.is_number_integer()) throw ConfigError(key + ": expected an integer");
    return j.get<int>();
}

bool need_bool(const json& j, const std::string& key) {
    if (!j.is_boolean()) throw ConfigError(key + ": expected true or false");
    return j.get<bool>();
}

std::string need_string(const json& j, const std::string& key) {
    if (!j.is_string()) throw ConfigError(key + ": expected a string");
    return j.get<std::string>();
}

cplx need_complex(const json& j, const std::string& key) {
    if (j.is_number()) return cplx(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return cplx(j[0].get<double>(), j[1].get<double>());
    }
    throw ConfigError(key + ": expected a number or [re, im]");
}

std::vector<cplx> need_complex_list(const json& j, const std::string& key) {
    if (!j.is_array()) throw ConfigError(key + ": expected an array");
    std::vector<cplx> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(need_complex(j[i], key + "[" + std::to_string(i) + "]"));
    }
    return out;
}

void check_keys(const json& section, const std::string& name,
                std::initializer_list<const char*> known) {
    for (auto it = section.begin(); it != section.end(); ++it) {
        if (std::none_of(known.begin(), known.end(),
                         [&](const char* k) { return it.key() == k; })) {
            throw ConfigError(name + "." + it.key() + ": unrecognized key");
        }
    }
}

std::string resolve_path(const std::string& raw, const std::filesystem::path& base) {
    std::filesystem::path p(raw);
    if (p.is_absolute() || base.empty()) return p.string();
    return (base / p).string();
}

void apply_json(RunConfig& cfg, const json& root, const std::filesystem::path& config_dir) {
    if (!root.is_object()) throw ConfigError("config: top level must be an object");
    check_keys(root, "config", {"preset", "medium", "signal", "grid", "solver", "output"});

    if (root.contains("medium")) {
        const json& m = root["medium"];
        check_keys(m, "medium", {"family", "alpha", "beta", "exponent", "eps0", "table", "mu",
                                 "x_max", "mesh_points"});
        if (m.contains("family")) cfg.medium_family = need_string(m["family"], "medium.family");
        if (m.contains("alpha")) cfg.medium_alpha = need_number(m["alpha"], "medium.alpha");
        if (m.contains("beta")) cfg.medium_beta = need_number(m["beta"], "medium.beta");
        if (m.contains("exponent")) cfg.medium_exponent = need_number(m["exponent"], "medium.exponent");
        if (m.contains("eps0")) cfg.medium_eps0 = need_number(m["eps0"], "medium.eps0");
        if (m.contains("table")) {
            cfg.medium_table = resolve_path(need_string(m["table"], "medium.table"), config_dir);
        }
        if (m.contains("mu")) cfg.mu = need_number(m["mu"], "medium.mu");
        if (m.contains("x_max")) {
            cfg.x_max = need_number(m["x_max"], "medium.x_max");
            cfg.x_max_set = true;
        }
        if (m.contains("mesh_points")) {
            cfg.mesh_points = need_int(m["mesh_points"], "medium.mesh_points");
            cfg.mesh_points_set = true;
        }
    }
    if (root.contains("signal")) {
        const json& s = root["signal"];
        check_keys(s, "signal", {"kind", "omega0", "omega", "alpha", "beta", "decay", "amplitude",
                                 "center", "branch", "path", "symbol_duration", "l_max"});
        if (s.contains("kind")) cfg.signal_kind = need_string(s["kind"], "signal.kind");
        if (s.contains("omega0")) cfg.omega0 = need_number(s["omega0"], "signal.omega0");
        if (s.contains("omega")) cfg.omega = need_number(s["omega"], "signal.omega");
        if (s.contains("alpha")) cfg.alpha = need_complex_list(s["alpha"], "signal.alpha");
        if (s.contains("beta")) cfg.beta = need_complex_list(s["beta"], "signal.beta");
        if (s.contains("decay")) cfg.gauss_decay = need_number(s["decay"], "signal.decay");
        if (s.contains("amplitude")) cfg.gauss_amplitude = need_complex(s["amplitude"], "signal.amplitude");
        if (s.contains("center")) cfg.gauss_center = need_number(s["center"], "signal.center");
        if (s.contains("branch")) cfg.branch = need_string(s["branch"], "signal.branch");
        if (s.contains("path")) {
            cfg.signal_path = resolve_path(need_string(s["path"], "signal.path"), config_dir);
        }
        if (s.contains("symbol_duration")) {
            cfg.symbol_duration = need_number(s["symbol_duration"], "signal.symbol_duration");
        }
        if (s.contains("l_max")) cfg.sampled_l_max = need_int(s["l_max"], "signal.l_max");
    }
    if (root.contains("grid")) {
        const json& g = root["grid"];
        check_keys(g, "grid", {"t_min", "t_max", "x_count", "t_count"});
        if (g.contains("t_min")) cfg.t_min = need_number(g["t_min"], "grid.t_min");
        if (g.contains("t_max")) cfg.t_max = need_number(g["t_max"], "grid.t_max");
        if (g.contains("x_count")) cfg.x_count = need_int(g["x_count"], "grid.x_count");
        if (g.contains("t_count")) cfg.t_count = need_int(g["t_count"], "grid.t_count");
    }
    if (root.contains("solver")) {
        const json& s = root["solver"];
        check_keys(s, "solver", {"n_max", "order", "single_wave"});
        if (s.contains("n_max")) cfg.n_max = need_int(s["n_max"], "solver.n_max");
        if (s.contains("order")) cfg.order = need_int(s["order"], "solver.order");
        if (s.contains("single_wave")) cfg.single_wave = need_bool(s["single_wave"], "solver.single_wave");
    }
    if (root.contains("output")) {
        const json& o = root["output"];
        check_keys(o, "output", {"directory", "write_w", "oracle"});
        if (o.contains("directory")) cfg.out_dir = need_string(o["directory"], "output.directory");
        if (o.contains("write_w")) cfg.write_w = need_bool(o["write_w"], "output.write_w");
        if (o.contains("oracle")) {
            cfg.oracle = need_string(o["oracle"], "output.oracle");
            if (cfg.oracle == "none") cfg.oracle.clear();
        }
    }
}

// First config key on which this run differs from the named closed-form
// setup; the error report is only meaningful when medium and signal match.
std::string oracle_mismatch(const RunConfig& cfg, const RunConfig& ref) {
    if (cfg.medium_family != ref.medium_family) return "medium.family";
    if (cfg.medium_family == "power_law") {
        if (cfg.medium_alpha != ref.medium_alpha) return "medium.alpha";
        if (cfg.medium_beta != ref.medium_beta) return "medium.beta";
        if (cfg.medium_exponent != ref.medium_exponent) return "medium.exponent";
    }
    if (cfg.medium_family == "constant" && cfg.medium_eps0 != ref.medium_eps0) return "medium.eps0";
    if (cfg.mu != ref.mu) return "medium.mu";
    if (cfg.x_max > ref.x_max) return "medium.x_max";
    if (cfg.signal_kind != ref.signal_kind) return "signal.kind";
    if (cfg.signal_kind == "trig") {
        if (cfg.omega0 != ref.omega0) return "signal.omega0";
        if (cfg.omega != ref.omega) return "signal.omega";
        if (cfg.alpha != ref.alpha) return "signal.alpha";
        if (cfg.beta != ref.beta) return "signal.beta";
    } else {
        if (cfg.gauss_decay != ref.gauss_decay) return "signal.decay";
        if (cfg.gauss_amplitude != ref.gauss_amplitude) return "signal.amplitude";
        if (cfg.gauss_center != ref.gauss_center) return "signal.center";
        if (cfg.branch != ref.branch) return "signal.branch";
    }
    return "";
}

void validate(const RunConfig& cfg) {
    if (cfg.medium_family != "power_law" && cfg.medium_family != "constant" &&
        cfg.medium_family != "table") {
        throw ConfigError("medium.family: expected power_law, constant, or table, got '" +
                          cfg.medium_family + "'");
    }
    if (cfg.medium_family == "table") {
        if (cfg.medium_table.empty()) throw ConfigError("medium.table: path required for family 'table'");
        if (cfg.mesh_points_set) {
            throw ConfigError("medium.mesh_points: the mesh comes from the table file");
        }
        if (cfg.x_max_set) throw ConfigError("medium.x_max: the range comes from the table file");
    } else {
        if (!(cfg.x_max > 0.0)) throw ConfigError("medium.x_max: must be positive");
        if (cfg.mesh_points < 7) throw ConfigError("medium.mesh_points: must be at least 7");
    }
    if (!(cfg.mu > 0.0)) throw ConfigError("medium.mu: must be positive");
    if (cfg.medium_family == "constant" && !(cfg.medium_eps0 > 0.0)) {
        throw ConfigError("medium.eps0: must be positive");
    }
    if (cfg.medium_family == "power_law") {
        if (!(cfg.medium_beta > 0.0)) throw ConfigError("medium.beta: must be positive");
        if (!(cfg.medium_alpha * cfg.x_max + cfg.medium_beta > 0.0)) {
            throw ConfigError("medium.alpha: alpha*x_max + beta must stay positive");
        }
    }

    if (cfg.signal_kind == "trig") {
        if (cfg.alpha.size() != cfg.beta.size()) {
            throw ConfigError("signal.beta: must have the same length as signal.alpha");
        }
        if (cfg.alpha.empty() || cfg.alpha.size() % 2 == 0) {
            throw ConfigError("signal.alpha: length must be odd (terms m = -M..M), got " +
                              std::to_string(cfg.alpha.size()));
        }
    } else if (cfg.signal_kind == "gaussian") {
        if (!(cfg.gauss_decay > 0.0)) throw ConfigError("signal.decay: must be positive");
    } else if (cfg.signal_kind == "psk") {
        if (cfg.signal_path.empty()) throw ConfigError("signal.path: required for kind 'psk'");
        if (!(cfg.symbol_duration > 0.0)) throw ConfigError("signal.symbol_duration: must be positive");
    } else if (cfg.signal_kind == "sampled") {
        if (cfg.signal_path.empty()) throw ConfigError("signal.path: required for kind 'sampled'");
        if (cfg.sampled_l_max < 1) throw ConfigError("signal.l_max: must be at least 1");
    } else {
        throw ConfigError("signal.kind: expected trig, gaussian, psk, or sampled, got '" +
                          cfg.signal_kind + "'");
    }
    if (cfg.signal_kind != "trig" && cfg.branch != "plus" && cfg.branch != "minus") {
        throw ConfigError("signal.branch: expected plus or minus, got '" + cfg.branch + "'");
    }

    if (!(cfg.t_max > cfg.t_min)) throw ConfigError("grid.t_max: must exceed grid.t_min");
    if (cfg.x_count < 2) throw ConfigError("grid.x_count: must be at least 2");
    if (cfg.t_count < 2) throw ConfigError("grid.t_count: must be at least 2");

    if (cfg.n_max < 1 || cfg.n_max > k_max_power_order) {
        throw ConfigError("solver.n_max: must be in [1, " + std::to_string(k_max_power_order) + "]");
    }
    if (cfg.order < 0 || cfg.order > cfg.n_max) {
        throw ConfigError("solver.order: must be in [0, n_max] (0 = automatic)");
    }

    if (!cfg.oracle.empty()) {
        if (cfg.oracle != "example1" && cfg.oracle != "example2" && cfg.oracle != "example3") {
            throw ConfigError("output.oracle: expected none, example1, example2, or example3, got '" +
                              cfg.oracle + "'");
        }
        const std::string key = oracle_mismatch(cfg, preset_config(cfg.oracle));
        if (!key.empty()) {
            throw ConfigError("output.oracle: configuration does not match '" + cfg.oracle +
                              "' (differs at " + key + ")");
        }
    }
}

// --- pipeline -----------------------------------------------------------------

using Timings = std::vector<std::pair<std::string, double>>;

template <typename F>
auto run_stage(const char* name, Timings& timings, F&& body) {
    const auto t0 = Clock::now();
    try {
        if constexpr (std::is_void_v<decltype(body())>) {
            body();
            timings.emplace_back(name, seconds_since(t0));
        } else {
            auto result = body();
            timings.emplace_back(name, seconds_since(t0));
            return result;
        }
    } catch (const std::exception& err) {
        throw StageError(name, err.what());
    }
}

Eigen::ArrayXcd to_array(const std::vector<cplx>& values) {
    Eigen::ArrayXcd out(static_cast<Eigen::Index>(values.size()));
    for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = values[static_cast<std::size_t>(i)];
    return out;
}

std::pair<cplx, cplx> oracle_fields(const std::string& oracle, double x, double t) {
    if (oracle == "example1") {
        return example1_fields(Example1Params{}, x, t);
    }
    if (oracle == "example2") {
        cplx e = 0.0, h = 0.0;
        for (const double freq : {2.0, -2.0, 3.0, -3.0}) {
            Example2Params p;
            p.omega = cplx(freq, 0.0);
            p.amplitude = (p.root() - p.rate()) / p.root();
            const auto [e1, h1] = example2_fields(p, x, t);
            e += e1;
            h += h1;
        }
        return {e, h};
    }
    return example3_reference(Example3Params{}, 4.0, cplx(1.0, 0.0), x, t);
}

void write_field_grid(const std::filesystem::path& path, const FieldGrid& grid,
                      const Eigen::MatrixXcd& values, const char* re_name, const char* im_name) {
    std::FILE* out = std::fopen(path.string().c_str(), "w");
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    std::fprintf(out, "x,t,%s,%s\n", re_name, im_name);
    for (Eigen::Index ix = 0; ix < grid.x.size(); ++ix) {
        for (Eigen::Index it = 0; it < grid.t.size(); ++it) {
            std::fprintf(out, "%.17g,%.17g,%.17g,%.17g\n", grid.x(ix), grid.t(it),
                         values(ix, it).real(), values(ix, it).imag());
        }
    }
    if (std::fclose(out) != 0) throw std::runtime_error("cannot finish writing '" + path.string() + "'");
}

void write_w_grid(const std::filesystem::path& path, const FieldGrid& grid) {
    std::FILE* out = std::fopen(path.string().c_str(), "w");
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    std::fprintf(out, "x,t,re_u,im_u,re_v,im_v\n");
    for (Eigen::Index ix = 0; ix < grid.x.size(); ++ix) {
        for (Eigen::Index it = 0; it < grid.t.size(); ++it) {
            std::fprintf(out, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", grid.x(ix), grid.t(it),
                         grid.u(ix, it).real(), grid.u(ix, it).imag(), grid.v(ix, it).real(),
                         grid.v(ix, it).imag());
        }
    }
    if (std::fclose(out) != 0) throw std::runtime_error("cannot finish writing '" + path.string() + "'");
}

std::string num(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return buf;
}

std::string fmt_seconds(double secs) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3fs", secs);
    return buf;
}

struct ErrorStats {
    double max_e = 0.0, mean_e = 0.0, max_h = 0.0, mean_h = 0.0;
};

int run_pipeline(const RunConfig& cfg) {
    Timings timings;
    const auto t_start = Clock::now();

    const MediumProfile profile = run_stage("medium", timings, [&] {
        if (cfg.medium_family == "table") {
            return build_profile(load_medium_table(cfg.medium_table), cfg.mu);
        }
        if (cfg.medium_family == "constant") {
            return build_profile(constant_permittivity(cfg.medium_eps0), cfg.mu, cfg.x_max,
                                 cfg.mesh_points);
        }
        return build_profile(
            power_law_permittivity(cfg.medium_alpha, cfg.medium_beta, cfg.medium_exponent),
            cfg.mu, cfg.x_max, cfg.mesh_points);
    });

    const FormalPowersTable powers =
        run_stage("powers", timings, [&] { return build_powers(profile, cfg.n_max); });

    int order = 0;
    bool auto_order = false;
    TransmutationCoeffs coeffs;
    OrderSweep sweep;
    if (!cfg.single_wave) {
        run_stage("fit", timings, [&] {
            if (cfg.order > 0) {
                order = cfg.order;
            } else {
                sweep = select_order(profile, powers, cfg.n_max);
                order = sweep.selected;
                auto_order = true;
            }
            coeffs = fit_coefficients(profile, powers, order);
        });
    }

    const bool trig_kind = cfg.signal_kind == "trig";
    TrigInitialData trig_data;
    GeneralInitialData general_data;
    run_stage("signal", timings, [&] {
        if (trig_kind) {
            trig_data = trig_data_from_fields(to_array(cfg.alpha), to_array(cfg.beta), cfg.omega0,
                                              cfg.omega, profile);
            return;
        }
        GeneralBranchData carrier;
        if (cfg.signal_kind == "gaussian") {
            carrier = gaussian_branch(cfg.gauss_decay, cfg.gauss_amplitude, cfg.gauss_center);
        } else if (cfg.signal_kind == "psk") {
            const auto [c, s] = load_symbol_stream(cfg.signal_path);
            SymbolStream stream;
            stream.c = c;
            stream.s = s;
            stream.omega0 = cfg.omega0;
            stream.symbol_duration = cfg.symbol_duration;
            carrier = psk_branch(stream);
        } else {
            const SampledSignal signal = load_sampled_signal(cfg.signal_path, cfg.sampled_l_max);
            if (!cfg.single_wave && signal.moment_order() < order) {
                throw std::runtime_error(
                    "sampled signal moments cover order " + std::to_string(signal.moment_order()) +
                    " but the kernel fit uses order " + std::to_string(order) +
                    "; raise signal.l_max");
            }
            general_data.z_min = signal.t_min();
            general_data.z_max = signal.t_max();
            carrier = sampled_branch(signal);
        }
        general_data.plus = cfg.branch == "plus" ? carrier : zero_branch();
        general_data.minus = cfg.branch == "minus" ? carrier : zero_branch();
    });

    GridSpec spec;
    spec.x_count = cfg.x_count;
    spec.t_min = cfg.t_min;
    spec.t_max = cfg.t_max;
    spec.t_count = cfg.t_count;
    const FieldGrid grid = run_stage("solve", timings, [&] {
        if (cfg.single_wave) {
            return trig_kind ? single_wave(trig_data, profile, spec)
                             : single_wave(general_data, profile, spec);
        }
        return trig_kind ? solve_trig(trig_data, coeffs, powers, profile, spec)
                         : solve_general(general_data, coeffs, powers, profile, spec);
    });

    const bool have_residuals = cfg.x_count >= 3 && cfg.t_count >= 3;
    double residual_vekua = 0.0, residual_maxwell = 0.0;
    if (have_residuals) {
        run_stage("residuals", timings, [&] {
            residual_vekua = vekua_residual(grid, profile);
            residual_maxwell = maxwell_residual(grid, profile);
        });
    }

    ErrorStats err;
    const bool have_oracle = !cfg.oracle.empty();
    if (have_oracle) {
        run_stage("oracle", timings, [&] {
            double sum_e = 0.0, sum_h = 0.0;
            for (Eigen::Index ix = 0; ix < grid.x.size(); ++ix) {
                for (Eigen::Index it = 0; it < grid.t.size(); ++it) {
                    const auto [e_ref, h_ref] = oracle_fields(cfg.oracle, grid.x(ix), grid.t(it));
                    const double de = std::abs(grid.e(ix, it) - e_ref);
                    const double dh = std::abs(grid.h(ix, it) - h_ref);
                    err.max_e = std::max(err.max_e, de);
                    err.max_h = std::max(err.max_h, dh);
                    sum_e += de;
                    sum_h += dh;
                }
            }
            const double count = static_cast<double>(grid.x.size()) * grid.t.size();
            err.mean_e = sum_e / count;
            err.mean_h = sum_h / count;
        });
    }

    std::vector<std::string> files;
    run_stage("output", timings, [&] {
        const std::filesystem::path dir(cfg.out_dir);
        std::filesystem::create_directories(dir);

        write_field_grid(dir / "fields_E.csv", grid, grid.e, "re_e", "im_e");
        files.push_back("fields_E.csv");
        write_field_grid(dir / "fields_H.csv", grid, grid.h, "re_h", "im_h");
        files.push_back("fields_H.csv");
        if (cfg.write_w) {
            write_w_grid(dir / "fields_W.csv", grid);
            files.push_back("fields_W.csv");
        }

        std::ofstream coeff_out(dir / "coeffs.txt");
        if (!coeff_out) throw std::runtime_error("cannot open coeffs.txt for writing");
        coeff_out.precision(17);
        if (cfg.single_wave) {
            coeff_out << "# single-wave run: no kernel fit\n";
        } else {
            write_coefficient_report(coeffs, coeff_out);
        }
        if (!coeff_out.good()) throw std::runtime_error("cannot finish writing coeffs.txt");
        files.push_back("coeffs.txt");

        std::ostringstream text;
        text << "transmitted-field run summary\n";
        if (!cfg.from_preset.empty()) text << "preset: " << cfg.from_preset << '\n';
        text << "medium: family=" << cfg.medium_family;
        if (cfg.medium_family == "power_law") {
            text << " alpha=" << num(cfg.medium_alpha) << " beta=" << num(cfg.medium_beta)
                 << " exponent=" << num(cfg.medium_exponent);
        } else if (cfg.medium_family == "constant") {
            text << " eps0=" << num(cfg.medium_eps0);
        } else {
            text << " table=" << cfg.medium_table;
        }
        text << " mu=" << num(cfg.mu) << " mesh_points=" << profile.x_mesh.count
             << " x_max=" << num(profile.x_mesh.stop()) << '\n';
        text << "signal: kind=" << cfg.signal_kind;
        if (trig_kind) {
            text << " omega0=" << num(cfg.omega0) << " omega=" << num(cfg.omega)
                 << " terms=" << cfg.alpha.size();
        } else if (cfg.signal_kind == "gaussian") {
            text << " decay=" << num(cfg.gauss_decay) << " amplitude=("
                 << num(cfg.gauss_amplitude.real()) << "," << num(cfg.gauss_amplitude.imag())
                 << ") center=" << num(cfg.gauss_center) << " branch=" << cfg.branch;
        } else {
            text << " path=" << cfg.signal_path << " branch=" << cfg.branch;
        }
        text << '\n';
        text << "grid: x_count=" << cfg.x_count << " t_count=" << cfg.t_count
             << " t_min=" << num(cfg.t_min) << " t_max=" << num(cfg.t_max) << '\n';
        text << "solver: single_wave=" << (cfg.single_wave ? "on" : "off");
        if (cfg.single_wave) {
            text << " order=none";
        } else {
            text << " order=" << order << " order_mode=" << (auto_order ? "auto" : "fixed")
                 << " n_max=" << cfg.n_max;
        }
        text << '\n';
        if (!cfg.single_wave) {
            text << "fit: residual_even=" << num(coeffs.residual_a)
                 << " residual_odd=" << num(coeffs.residual_b)
                 << " xi_max=" << num(coeffs.xi_max) << '\n';
        }
        if (have_residuals) {
            text << "residuals: vekua=" << num(residual_vekua)
                 << " maxwell=" << num(residual_maxwell) << '\n';
        }
        if (have_oracle) {
            text << "oracle=" << cfg.oracle << ": max_abs_e=" << num(err.max_e)
                 << " mean_abs_e=" << num(err.mean_e) << " max_abs_h=" << num(err.max_h)
                 << " mean_abs_h=" << num(err.mean_h) << '\n';
        }

        std::ofstream summary_out(dir / "summary.txt");
        if (!summary_out) throw std::runtime_error("cannot open summary.txt for writing");
        summary_out << text.str();
        if (!summary_out.good()) throw std::runtime_error("cannot finish writing summary.txt");
        files.push_back("summary.txt");
        files.push_back("summary.json");
    });

    // summary.json is written outside the timed stages so its timing block can
    // include every stage; it is the one artifact that varies run to run.
    json js;
    js["preset"] = cfg.from_preset;
    js["medium"] = {{"family", cfg.medium_family},
                    {"mu", cfg.mu},
                    {"mesh_points", profile.x_mesh.count},
                    {"x_max", profile.x_mesh.stop()}};
    if (cfg.medium_family == "power_law") {
        js["medium"]["alpha"] = cfg.medium_alpha;
        js["medium"]["beta"] = cfg.medium_beta;
        js["medium"]["exponent"] = cfg.medium_exponent;
    } else if (cfg.medium_family == "constant") {
        js["medium"]["eps0"] = cfg.medium_eps0;
    } else {
        js["medium"]["table"] = cfg.medium_table;
    }
    js["signal"]["kind"] = cfg.signal_kind;
    if (trig_kind) {
        js["signal"]["omega0"] = cfg.omega0;
        js["signal"]["omega"] = cfg.omega;
        json alpha_list = json::array(), beta_list = json::array();
        for (const cplx& a : cfg.alpha) alpha_list.push_back({a.real(), a.imag()});
        for (const cplx& b : cfg.beta) beta_list.push_back({b.real(), b.imag()});
        js["signal"]["alpha"] = alpha_list;
        js["signal"]["beta"] = beta_list;
    } else if (cfg.signal_kind == "gaussian") {
        js["signal"]["decay"] = cfg.gauss_decay;
        js["signal"]["amplitude"] = {cfg.gauss_amplitude.real(), cfg.gauss_amplitude.imag()};
        js["signal"]["center"] = cfg.gauss_center;
        js["signal"]["branch"] = cfg.branch;
    } else {
        js["signal"]["path"] = cfg.signal_path;
        js["signal"]["branch"] = cfg.branch;
        if (cfg.signal_kind == "psk") {
            js["signal"]["omega0"] = cfg.omega0;
            js["signal"]["symbol_duration"] = cfg.symbol_duration;
        } else {
            js["signal"]["l_max"] = cfg.sampled_l_max;
        }
    }
    js["grid"] = {{"x_count", cfg.x_count},
                  {"t_count", cfg.t_count},
                  {"t_min", cfg.t_min},
                  {"t_max", cfg.t_max}};
    js["solver"] = {{"single_wave", cfg.single_wave}, {"n_max", cfg.n_max}};
    if (!cfg.single_wave) {
        js["solver"]["order"] = order;
        js["solver"]["order_mode"] = auto_order ? "auto" : "fixed";
        js["fit"] = {{"residual_even", coeffs.residual_a},
                     {"residual_odd", coeffs.residual_b},
                     {"xi_max", coeffs.xi_max}};
        if (auto_order) {
            js["fit"]["order_residuals"] =
                std::vector<double>(sweep.residual.data(), sweep.residual.data() + sweep.residual.size());
        }
    }
    if (have_residuals) {
        js["residuals"] = {{"vekua", residual_vekua}, {"maxwell", residual_maxwell}};
    }
    if (have_oracle) {
        js["errors"] = {{"oracle", cfg.oracle},
                        {"max_abs_e", err.max_e},
                        {"mean_abs_e", err.mean_e},
                        {"max_abs_h", err.max_h},
                        {"mean_abs_h", err.mean_h}};
    }
    js["files"] = files;
    json timing_block;
    for (const auto& [name, secs] : timings) timing_block[name] = secs;
    timing_block["total"] = seconds_since(t_start);
    js["timing"] = timing_block;

    {
        std::ofstream json_out(std::filesystem::path(cfg.out_dir) / "summary.json");
        if (!json_out) throw StageError("output", "cannot open summary.json for writing");
        json_out << js.dump(2) << '\n';
        if (!json_out.good()) throw StageError("output", "cannot finish writing summary.json");
    }

    if (cfg.single_wave) {
        std::printf("single-wave run: kernel fit skipped\n");
    } else {
        std::printf("selected order: %d (%s, n_max=%d)\n", order, auto_order ? "auto" : "fixed",
                    cfg.n_max);
    }
    if (have_residuals) {
        std::printf("residuals: vekua=%.3g maxwell=%.3g\n", residual_vekua, residual_maxwell);
    }
    if (have_oracle) {
        std::printf("oracle %s: max|dE|=%.3g mean|dE|=%.3g max|dH|=%.3g mean|dH|=%.3g\n",
                    cfg.oracle.c_str(), err.max_e, err.mean_e, err.max_h, err.mean_h);
    }
    std::string timing_line = "timing:";
    for (const auto& [name, secs] : timings) timing_line += " " + name + "=" + fmt_seconds(secs);
    timing_line += " total=" + fmt_seconds(seconds_since(t_start));
    std::printf("%s\n", timing_line.c_str());
    std::printf("wrote %zu files to %s\n", files.size(), cfg.out_dir.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"transmitted-field solver for one-dimensional dielectric layers"};
    std::string config_path, preset_name, output_dir;
    int order_flag = -1, mesh_points_flag = -1;
    bool oracle_on = false, oracle_off = false, single_wave_flag = false, write_w_flag = false;
    app.add_option("--config", config_path, "JSON run configuration file");
    app.add_option("--preset", preset_name,
                   "built-in configuration: example1, example2, or example3");
    app.add_option("--output-dir", output_dir, "artifact directory (overrides output.directory)");
    app.add_option("--order", order_flag, "kernel expansion order, 0 = automatic (overrides solver.order)");
    app.add_option("--mesh-points", mesh_points_flag, "profile mesh size (overrides medium.mesh_points)");
    app.add_flag("--oracle", oracle_on, "enable the closed-form error report");
    app.add_flag("--no-oracle", oracle_off, "disable the closed-form error report");
    app.add_flag("--single-wave", single_wave_flag, "skip the kernel correction (leading-order picture)");
    app.add_flag("--write-w", write_w_flag, "also write the characteristic-component grid");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // --help exits 0; any command-line mistake is a configuration error.
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (config_path.empty() && preset_name.empty()) {
            throw ConfigError("no configuration given (use --preset or --config)");
        }

        json file_json;
        std::filesystem::path config_dir;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw ConfigError("--config: cannot open '" + config_path + "'");
            try {
                file_json = json::parse(in, nullptr, true, /*ignore_comments=*/true);
            } catch (const json::parse_error& err) {
                throw ConfigError("--config: " + std::string(err.what()));
            }
            config_dir = std::filesystem::path(config_path).parent_path();
        }

        std::string base_preset = preset_name;
        if (base_preset.empty() && file_json.is_object() && file_json.contains("preset")) {
            base_preset = need_string(file_json["preset"], "preset");
        }
        RunConfig cfg = base_preset.empty() ? RunConfig{} : preset_config(base_preset);
        if (!file_json.is_null()) apply_json(cfg, file_json, config_dir);

        if (!output_dir.empty()) cfg.out_dir = output_dir;
        if (order_flag >= 0) cfg.order = order_flag;
        if (mesh_points_flag >= 0) {
            cfg.mesh_points = mesh_points_flag;
            cfg.mesh_points_set = true;
        }
        if (single_wave_flag) cfg.single_wave = true;
        if (write_w_flag) cfg.write_w = true;
        if (oracle_on && oracle_off) throw ConfigError("--oracle: given together with --no-oracle");
        if (oracle_off) cfg.oracle.clear();
        if (oracle_on && cfg.oracle.empty()) {
            if (cfg.from_preset.empty()) {
                throw ConfigError("--oracle: no preset in effect; set output.oracle in the config file");
            }
            cfg.oracle = cfg.from_preset;
        }

        validate(cfg);
        return run_pipeline(cfg);
    } catch (const ConfigError& err) {
        std::cerr << "config error: " << err.what() << '\n';
        return 2;
    } catch (const StageError& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
}
