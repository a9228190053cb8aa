#include "ftl/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ftl/csv.hpp"
#include "ftl/errors.hpp"

namespace ftl {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<double> parse_double_list(const std::string& s, const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stod(trim(tok)));
        } catch (...) {
            throw config_error("config: cannot parse number '" + tok + "' in " + key);
        }
    }
    if (out.empty()) throw config_error("config: empty list for " + key);
    return out;
}

double parse_double(const std::string& s, const std::string& key) {
    try {
        return std::stod(s);
    } catch (...) {
        throw config_error("config: cannot parse number '" + s + "' for " + key);
    }
}

long long parse_int(const std::string& s, const std::string& key) {
    try {
        return std::stoll(s);
    } catch (...) {
        throw config_error("config: cannot parse integer '" + s + "' for " + key);
    }
}

bool parse_bool(const std::string& s, const std::string& key) {
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw config_error("config: expected true/false for " + key + ", got '" + s + "'");
}

std::string join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += format_double(v[i]);
    }
    return s;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw config_error("config line " + std::to_string(lineno) +
                               ": expected 'key = value'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string val = trim(stripped.substr(eq + 1));

        if (key == "model") cfg.model = val;
        else if (key == "weights") cfg.weights = val;
        else if (key == "kappa") cfg.kappa = parse_double(val, key);
        else if (key == "profile") cfg.profile = val;
        else if (key == "profile_breaks") cfg.profile_breaks = parse_double_list(val, key);
        else if (key == "profile_values") cfg.profile_values = parse_double_list(val, key);
        else if (key == "profile_mean") cfg.profile_mean = parse_double(val, key);
        else if (key == "profile_amplitude") cfg.profile_amplitude = parse_double(val, key);
        else if (key == "profile_wavenumber") cfg.profile_wavenumber = static_cast<int>(parse_int(val, key));
        else if (key == "period") cfg.period = parse_double(val, key);
        else if (key == "nu") cfg.nu = parse_double(val, key);
        else if (key == "M") cfg.M = static_cast<std::size_t>(parse_int(val, key));
        else if (key == "target_ell") cfg.target_ell = parse_double(val, key);
        else if (key == "scheme") cfg.scheme = val;
        else if (key == "dt") cfg.dt = parse_double(val, key);
        else if (key == "dt_mult_ell") cfg.dt_mult_ell = parse_double(val, key);
        else if (key == "T") cfg.T = parse_double(val, key);
        else if (key == "samples") cfg.samples = static_cast<std::size_t>(parse_int(val, key));
        else if (key == "out") cfg.out = val;
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_int(val, key));
        else if (key == "unsafe_dt") cfg.unsafe_dt = parse_bool(val, key);
        else if (key == "literal_weights") cfg.literal_weights = parse_bool(val, key);
        else
            throw config_error("config line " + std::to_string(lineno) +
                               ": unknown key '" + key + "'");
    }
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("config: cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::vector<std::string> preset_names() {
    return {"figure1", "uniform-steady", "converge-smooth", "converge-jumps"};
}

RunConfig preset_config(const std::string& name) {
    RunConfig cfg;
    cfg.preset_name = name;
    if (name == "figure1") {
        // Dense block on a sparse ring; ten-vehicle uniform lookahead, no rear
        // coupling, Euler at the largest safe step. The symmetric domain is
        // shifted so the dense block occupies [1.5, 2.5) of [0, 4).
        cfg.model = "greenshields";
        cfg.weights = "uniform:10";
        cfg.kappa = 0.0;
        cfg.profile = "piecewise";
        cfg.profile_breaks = {0.0, 1.5, 2.5};
        cfg.profile_values = {0.05, 1.0, 0.05};
        cfg.period = 4.0;
        cfg.nu = 0.05;
        cfg.M = 52;  // round(mass / (1/45)); ell is recomputed as mass / M
        cfg.scheme = "euler";
        cfg.dt_mult_ell = 1.0;
        cfg.T = 4.0;
        cfg.samples = 0;  // diagnostics after every step
        cfg.out = "out/figure1";
        return cfg;
    }
    if (name == "uniform-steady") {
        cfg.model = "greenshields";
        cfg.weights = "uniform:2";
        cfg.kappa = 0.25;
        cfg.profile = "piecewise";
        cfg.profile_breaks = {0.0};
        cfg.profile_values = {0.5};
        cfg.period = 2.0;
        cfg.nu = 0.5;
        cfg.M = 8;
        cfg.scheme = "euler";
        cfg.dt_mult_ell = 0.25;
        cfg.T = 1.0;
        cfg.samples = 5;
        cfg.out = "out/uniform-steady";
        return cfg;
    }
    if (name == "converge-smooth") {
        cfg.model = "greenshields";
        cfg.weights = "uniform:3";
        cfg.kappa = 0.0;
        cfg.profile = "sinusoid";
        cfg.profile_mean = 0.5;
        cfg.profile_amplitude = 0.3;
        cfg.profile_wavenumber = 1;
        cfg.period = 4.0;
        cfg.nu = 0.2;
        cfg.M = 64;
        cfg.scheme = "euler";
        cfg.dt_mult_ell = 1.0;
        cfg.T = 1.0;
        cfg.samples = 2;
        cfg.out = "out/converge-smooth";
        return cfg;
    }
    if (name == "converge-jumps") {
        cfg = preset_config("figure1");
        cfg.preset_name = name;
        cfg.weights = "uniform:3";
        cfg.M = 64;
        cfg.T = 1.0;
        cfg.samples = 2;
        cfg.out = "out/converge-jumps";
        return cfg;
    }
    throw config_error("unknown preset '" + name + "'");
}

namespace {

WeightProfile figure1_literal_weights(double kappa) {
    // The as-printed five taps of the packaged demo sum to 1/2; renormalized
    // they become 1/5 on the first five lookahead gaps.
    WeightProfile w;
    w.N = 10;
    w.c.assign(11, 0.0);
    for (int j = 0; j < 5; ++j) w.c[static_cast<std::size_t>(j)] = 0.2;
    w.kappa = kappa;
    w.validate();
    return w;
}

}  // namespace

ResolvedRun resolve(const RunConfig& cfg) {
    ResolvedRun run;
    run.config = cfg;

    run.model = velocity_model_by_name(cfg.model);

    if (cfg.literal_weights) {
        if (cfg.preset_name != "figure1")
            throw config_error("literal_weights only applies to the figure1 preset");
        run.weights = figure1_literal_weights(cfg.kappa);
    } else {
        run.weights = weights_by_name(cfg.weights, cfg.kappa);
    }

    if (cfg.profile == "piecewise") {
        run.profile = piecewise_profile(cfg.profile_breaks, cfg.profile_values,
                                        cfg.period, cfg.nu);
    } else if (cfg.profile == "sinusoid") {
        run.profile = sinusoid_profile(cfg.profile_mean, cfg.profile_amplitude,
                                       cfg.profile_wavenumber, cfg.period, cfg.nu);
    } else {
        throw config_error("config: profile must be 'piecewise' or 'sinusoid'");
    }

    if (cfg.M.has_value() == cfg.target_ell.has_value())
        throw config_error("config: exactly one of M / target_ell must be set");
    run.initial = cfg.M ? equal_mass_partition(run.profile, *cfg.M)
                        : equal_mass_partition_target_ell(run.profile, *cfg.target_ell);

    if (run.initial.size() < static_cast<std::size_t>(run.weights.N) + 2)
        throw config_error("config: M must be at least N+2 so the lookahead "
                           "stencil fits on the ring");

    if (cfg.scheme == "euler") run.scheme = Scheme::euler;
    else if (cfg.scheme == "rk4") run.scheme = Scheme::rk4;
    else throw config_error("config: scheme must be 'euler' or 'rk4'");

    if (cfg.dt.has_value() == cfg.dt_mult_ell.has_value())
        throw config_error("config: exactly one of dt / dt_mult_ell must be set");
    run.dt = cfg.dt ? *cfg.dt : *cfg.dt_mult_ell * run.initial.ell;
    if (!(run.dt > 0.0)) throw config_error("config: step size must be positive");
    if (!cfg.unsafe_dt) {
        const double bound = step_bound(run.initial, run.weights, run.model);
        if (run.dt > bound * (1.0 + 1e-12))
            throw config_error("config: dt " + format_double(run.dt) +
                               " exceeds the collision-safe bound " +
                               format_double(bound) + " (set unsafe_dt to override)");
    }

    run.T = cfg.T;
    if (!(run.T >= 0.0)) throw config_error("config: horizon T must be nonnegative");

    if (cfg.samples == 1)
        throw config_error("config: samples must be 0 (every step) or >= 2");
    for (std::size_t i = 0; i < cfg.samples; ++i)
        run.sample_times.push_back(run.T * static_cast<double>(i) /
                                   static_cast<double>(cfg.samples - 1));
    return run;
}

std::string run_manifest(const ResolvedRun& run) {
    const RunConfig& cfg = run.config;
    std::ostringstream out;
    out << "# run manifest: loadable as a config file; derived values below\n";
    if (!cfg.preset_name.empty()) out << "# preset: " << cfg.preset_name << "\n";
    out << "model = " << run.model.name << "\n";
    out << "weights = " << join(run.weights.c) << "\n";
    out << "kappa = " << format_double(run.weights.kappa) << "\n";
    if (run.profile.kind == InitialProfile::Kind::piecewise_constant) {
        out << "profile = piecewise\n";
        out << "profile_breaks = " << join(run.profile.breaks) << "\n";
        out << "profile_values = " << join(run.profile.vals) << "\n";
    } else {
        out << "profile = sinusoid\n";
        out << "profile_mean = " << format_double(run.profile.mean) << "\n";
        out << "profile_amplitude = " << format_double(run.profile.amplitude) << "\n";
        out << "profile_wavenumber = " << run.profile.wavenumber << "\n";
    }
    out << "period = " << format_double(run.profile.P) << "\n";
    out << "nu = " << format_double(run.profile.nu) << "\n";
    out << "M = " << run.initial.size() << "\n";
    out << "scheme = " << (run.scheme == Scheme::euler ? "euler" : "rk4") << "\n";
    out << "dt = " << format_double(run.dt) << "\n";
    out << "T = " << format_double(run.T) << "\n";
    out << "samples = " << cfg.samples << "\n";
    out << "out = " << cfg.out << "\n";
    out << "seed = " << cfg.seed << "\n";
    out << "unsafe_dt = " << (cfg.unsafe_dt ? "true" : "false") << "\n";
    out << "literal_weights = false\n";  // weights above are already resolved
    out << "# derived: ell = " << format_double(run.initial.ell) << "\n";
    out << "# derived: mass = " << format_double(run.profile.mass()) << "\n";
    out << "# derived: lookahead N = " << run.weights.N << "\n";
    if (cfg.literal_weights)
        out << "# note: literal_weights renormalized the as-printed taps "
               "(five at 1/10, sum 1/2) to five at 1/5\n";
    if (cfg.target_ell)
        out << "# note: target_ell = " << format_double(*cfg.target_ell)
            << " rounded to M = " << run.initial.size()
            << ", ell recomputed as mass / M\n";
    return out.str();
}

}  // namespace ftl
