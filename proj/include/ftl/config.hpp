#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ftl/dynamics.hpp"
#include "ftl/eulerian.hpp"
#include "ftl/velocity.hpp"

namespace ftl {

// One run, fully described. Parsed from a flat key = value file (arrays as
// comma lists, see docs/config.md) or built from a named preset.
struct RunConfig {
    std::string model = "greenshields";
    std::string weights = "uniform:1";  // scheme name or explicit comma list
    double kappa = 0.0;

    // profile
    std::string profile = "piecewise";  // piecewise | sinusoid
    std::vector<double> profile_breaks;
    std::vector<double> profile_values;
    double profile_mean = 0.0;
    double profile_amplitude = 0.0;
    int profile_wavenumber = 1;
    double period = 1.0;
    double nu = 0.0;

    // discretization: exactly one of M / target_ell
    std::optional<std::size_t> M;
    std::optional<double> target_ell;

    std::string scheme = "euler";  // euler | rk4
    // step policy: exactly one of dt / dt_mult_ell
    std::optional<double> dt;
    std::optional<double> dt_mult_ell;

    double T = 1.0;
    std::size_t samples = 0;  // 0 = snapshot every step
    std::string out = "out";
    std::uint64_t seed = 0;
    bool unsafe_dt = false;
    bool literal_weights = false;

    std::string preset_name;  // set when built from a preset
};

// Everything derived from a RunConfig, validated and ready to run.
struct ResolvedRun {
    VelocityModel model;
    WeightProfile weights;
    InitialProfile profile;
    RingState initial;
    Scheme scheme = Scheme::euler;
    double dt = 0.0;
    double T = 0.0;
    std::vector<double> sample_times;
    RunConfig config;  // the echoed inputs
};

RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text);

// Known presets: "figure1" (dense two-jump ring, uniform ten-vehicle lookahead,
// kappa = 0, dt = ell), "uniform-steady", "converge-smooth", "converge-jumps".
RunConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

// Validates every invariant (weights, profile, stencil fit M >= N+2, step
// bound) and derives the initial state. Throws config_error / vacuum_error
// with a message naming the violated invariant.
ResolvedRun resolve(const RunConfig& cfg);

// key = value echo of the resolved run: loadable as a config file again, with
// derived quantities (ell, M, dt, resolved weights) as comments.
std::string run_manifest(const ResolvedRun& run);

}  // namespace ftl
