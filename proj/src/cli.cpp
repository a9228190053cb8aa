#include "ftl/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ftl/csv.hpp"
#include "ftl/diagnostics.hpp"
#include "ftl/errors.hpp"
#include "ftl/godunov.hpp"

namespace fs = std::filesystem;

namespace ftl {

namespace {

std::string effective_out(const std::string& flag_out) {
    if (const char* env = std::getenv("FTL_OUT_DIR"); env != nullptr && *env != '\0')
        return env;
    return flag_out;
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
    std::ofstream out(path);
    if (!out) throw config_error("cannot open '" + path + "' for writing");
    out << "t,x,rho\n";
    for (const auto& snap : traj.snapshots) {
        const auto rho = snap.densities();
        for (std::size_t i = 0; i < snap.size(); ++i)
            out << format_double(snap.t) << ',' << format_double(snap.x[i])
                << ',' << format_double(rho.raw(i)) << '\n';
    }
}

int report_error(const std::exception& e, int code) {
    std::cerr << "error: " << e.what() << "\n";
    return code;
}

}  // namespace

int cmd_simulate(const RunConfig& cfg_in) {
    RunConfig cfg = cfg_in;
    cfg.out = effective_out(cfg.out);
    try {
        ResolvedRun run = resolve(cfg);
        fs::create_directories(cfg.out);

        Trajectory traj =
            run.sample_times.empty()
                ? simulate_every_step(run.initial, run.weights, run.model,
                                      run.scheme, run.dt, run.T, cfg.unsafe_dt)
                : simulate(run.initial, run.weights, run.model, run.scheme,
                           run.dt, run.T, run.sample_times, cfg.unsafe_dt);

        write_trajectory_csv(cfg.out + "/trajectory.csv", traj);

        const auto battery = default_entropy_battery(run.model);
        std::vector<DiagnosticsRecord> recs;
        recs.reserve(traj.snapshots.size());
        for (const auto& snap : traj.snapshots)
            recs.push_back(record(snap, run.weights, run.model, battery));
        write_diagnostics_csv(cfg.out + "/diagnostics.csv", recs, battery);

        std::ofstream manifest(cfg.out + "/run_manifest.txt");
        manifest << run_manifest(run);
        manifest << "# result: steps = " << traj.steps
                 << ", min speed seen = " << format_double(traj.min_speed) << "\n";
        return exit_ok;
    } catch (const collision_error& e) {
        return report_error(e, exit_collision);
    } catch (const config_error& e) {
        return report_error(e, exit_config);
    } catch (const vacuum_error& e) {
        return report_error(e, exit_config);
    }
}

int cmd_converge(const RunConfig& cfg_in, const std::vector<std::size_t>& M_list,
                 std::size_t ref_cells) {
    RunConfig cfg = cfg_in;
    cfg.out = effective_out(cfg.out);
    try {
        if (M_list.empty())
            throw config_error("converge: M list must not be empty");
        for (std::size_t i = 0; i + 1 < M_list.size(); ++i)
            if (M_list[i] >= M_list[i + 1])
                throw config_error("converge: M list must be strictly increasing");
        if (ref_cells < 4 * M_list.back())
            throw config_error("converge: reference grid must have at least "
                               "4 * max(M) cells");

        // Resolve once for validation and for the shared profile/weights.
        RunConfig base = cfg;
        base.M = M_list.front();
        base.target_ell.reset();
        ResolvedRun run = resolve(base);
        fs::create_directories(cfg.out);

        const UniformGrid ref = godunov_solve(
            grid_average(run.profile, ref_cells), run.model, run.T, 0.9);
        write_grid_csv(cfg.out + "/godunov_reference.csv", ref);

        struct CaseResult {
            double ell = 0.0;
            double err = 0.0;
            std::string error_msg;
            int error_code = 0;
        };
        std::vector<CaseResult> results(M_list.size());

        // Independent cases; results are joined in list order, so the output
        // does not depend on the schedule.
        const auto n_cases = static_cast<std::ptrdiff_t>(M_list.size());
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t idx = 0; idx < n_cases; ++idx) {
            auto& res = results[static_cast<std::size_t>(idx)];
            try {
                const std::size_t M = M_list[static_cast<std::size_t>(idx)];
                RingState init = equal_mass_partition(run.profile, M);
                if (init.size() < static_cast<std::size_t>(run.weights.N) + 2)
                    throw config_error("converge: M = " + std::to_string(M) +
                                       " is below N+2");
                const double dt = cfg.dt ? *cfg.dt : *cfg.dt_mult_ell * init.ell;
                const std::vector<double> samples = {run.T};
                Trajectory traj = simulate(init, run.weights, run.model,
                                           run.scheme, dt, run.T, samples,
                                           cfg.unsafe_dt);
                res.ell = init.ell;
                res.err = l1_distance_fields(
                    resample_to_grid(density_field(traj.snapshots.back()), ref_cells),
                    ref);
            } catch (const collision_error& e) {
                res.error_msg = e.what();
                res.error_code = exit_collision;
            } catch (const config_error& e) {
                res.error_msg = e.what();
                res.error_code = exit_config;
            }
        }

        for (const auto& res : results)
            if (res.error_code != 0) {
                std::cerr << "error: " << res.error_msg << "\n";
                return res.error_code;
            }

        std::ofstream out(cfg.out + "/convergence.csv");
        if (!out) throw config_error("cannot open convergence.csv for writing");
        out << "M,ell,l1_error,observed_order\n";
        for (std::size_t i = 0; i < M_list.size(); ++i) {
            out << M_list[i] << ',' << format_double(results[i].ell) << ','
                << format_double(results[i].err) << ',';
            if (i > 0 && results[i].err > 0.0)
                out << format_double(std::log2(results[i - 1].err / results[i].err));
            out << '\n';
        }

        std::ofstream manifest(cfg.out + "/run_manifest.txt");
        manifest << run_manifest(run);
        manifest << "# converge: M list =";
        for (auto M : M_list) manifest << ' ' << M;
        manifest << "\n# converge: reference cells = " << ref_cells << "\n";
        manifest << "# converge: frozen thresholds: smooth profile < "
                 << format_double(converge_threshold_smooth)
                 << ", two-jump profile < "
                 << format_double(converge_threshold_jumps) << "\n";
        return exit_ok;
    } catch (const config_error& e) {
        return report_error(e, exit_config);
    } catch (const vacuum_error& e) {
        return report_error(e, exit_config);
    }
}

int cmd_godunov_validate(const std::vector<std::size_t>& m_list,
                         const std::string& out_dir_in) {
    const std::string out_dir = effective_out(out_dir_in);
    try {
        if (m_list.empty())
            throw config_error("godunov-validate: m list must not be empty");
        const VelocityModel model = greenshields();
        const double P = 4.0, T = 0.5;

        struct Case {
            const char* name;
            double rhoL, rhoR;
        };
        const Case cases[] = {{"rarefaction", 1.0, 0.05}, {"shock", 0.2, 0.8}};

        fs::create_directories(out_dir);
        std::ofstream out(out_dir + "/godunov_validation.csv");
        if (!out) throw config_error("cannot open godunov_validation.csv for writing");
        out << "case,m,l1_error,observed_order\n";

        bool ok = true;
        for (const auto& c : cases) {
            const InitialProfile data =
                piecewise_profile({0.0, P / 2.0}, {c.rhoL, c.rhoR}, P,
                                  std::min(c.rhoL, c.rhoR));
            double prev_err = 0.0;
            for (std::size_t i = 0; i < m_list.size(); ++i) {
                const std::size_t m = m_list[i];
                const UniformGrid sol =
                    godunov_solve(grid_average(data, m), model, T, 0.9);
                write_grid_csv(out_dir + "/solution_" + c.name + "_" +
                                   std::to_string(m) + ".csv",
                               sol);
                const double err =
                    l1_error_vs_riemann_ring(sol, model, c.rhoL, c.rhoR, T);
                out << c.name << ',' << m << ',' << format_double(err) << ',';
                if (i > 0) {
                    out << format_double(std::log2(prev_err / err));
                    if (err >= prev_err) ok = false;  // must decrease with refinement
                }
                out << '\n';
                // the absolute threshold is calibrated for the m = 1024 grid
                if (i + 1 == m_list.size() && m >= 1024 && err >= 0.02) ok = false;
                prev_err = err;
            }

            // Per-step Kruzkov entropy residual on the coarsest grid.
            UniformGrid grid = grid_average(data, m_list.front());
            const double dt = 0.9 * grid.h() / model.max_char_speed;
            while (grid.t < T) {
                const double step = std::min(dt, T - grid.t);
                const UniformGrid next = godunov_step(grid, model, step);
                for (double k : {0.25, 0.5, 0.75})
                    if (kruzkov_step_residual(grid, next, model, step, k) > 1e-10)
                        ok = false;
                grid = next;
            }
        }
        if (!ok) {
            std::cerr << "error: godunov oracle failed its exactness properties\n";
            return exit_property;
        }
        return exit_ok;
    } catch (const config_error& e) {
        return report_error(e, exit_config);
    }
}

namespace {

std::vector<std::size_t> parse_size_list(const std::string& s, const char* what) {
    std::vector<std::size_t> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(static_cast<std::size_t>(std::stoull(tok)));
        } catch (...) {
            throw config_error(std::string("cannot parse ") + what + " entry '" + tok + "'");
        }
    }
    return out;
}

RunConfig load_config(const std::string& config_path, const std::string& preset) {
    if (config_path.empty() == preset.empty())
        throw config_error("exactly one of --config / --preset is required");
    return config_path.empty() ? preset_config(preset)
                               : parse_config_file(config_path);
}

void apply_overrides(RunConfig& cfg, const std::string& out, bool unsafe_dt,
                     bool literal_weights, std::optional<std::uint64_t> seed) {
    if (!out.empty()) cfg.out = out;
    if (unsafe_dt) cfg.unsafe_dt = true;
    if (literal_weights) cfg.literal_weights = true;
    if (seed) cfg.seed = *seed;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"non-local follow-the-leader ring model with an LWR reference solver"};
    app.require_subcommand(1);

    std::string config_path, preset, out;
    bool unsafe_dt = false, literal_weights = false;
    std::optional<std::uint64_t> seed;
    std::string M_list_str = "64,128,256,512,1024";
    std::size_t ref_cells = 4096;
    std::string m_list_str = "128,256,512,1024";

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "path to a key = value config file");
        cmd->add_option("--preset", preset, "named preset (figure1, uniform-steady, converge-smooth, converge-jumps)");
        cmd->add_option("--out", out, "output directory (FTL_OUT_DIR overrides)");
        cmd->add_flag("--unsafe-dt", unsafe_dt, "disable the collision-safe step bound");
        cmd->add_flag("--literal-weights", literal_weights,
                      "figure1 only: renormalized as-printed five-tap weights");
        cmd->add_option("--seed", seed, "seed echoed into the manifest");
    };

    CLI::App* sim = app.add_subcommand("simulate", "run one configuration");
    add_common(sim);
    CLI::App* fig = app.add_subcommand("figure1", "alias for simulate --preset figure1");
    add_common(fig);
    CLI::App* conv = app.add_subcommand("converge", "mesh-refinement study against the LWR solver");
    add_common(conv);
    conv->add_option("--M-list", M_list_str, "comma list of vehicle counts");
    conv->add_option("--ref-cells", ref_cells, "reference grid resolution");
    CLI::App* gv = app.add_subcommand("godunov-validate", "self-test the LWR solver against closed forms");
    gv->add_option("--m-list", m_list_str, "comma list of grid resolutions");
    gv->add_option("--out", out, "output directory (FTL_OUT_DIR overrides)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config;
    }

    try {
        if (sim->parsed() || fig->parsed()) {
            RunConfig cfg = fig->parsed() && config_path.empty() && preset.empty()
                                ? preset_config("figure1")
                                : load_config(config_path, preset);
            apply_overrides(cfg, out, unsafe_dt, literal_weights, seed);
            return cmd_simulate(cfg);
        }
        if (conv->parsed()) {
            RunConfig cfg = load_config(config_path, preset);
            apply_overrides(cfg, out, unsafe_dt, literal_weights, seed);
            return cmd_converge(cfg, parse_size_list(M_list_str, "--M-list"), ref_cells);
        }
        if (gv->parsed()) {
            return cmd_godunov_validate(parse_size_list(m_list_str, "--m-list"),
                                        out.empty() ? "out/godunov" : out);
        }
    } catch (const config_error& e) {
        return report_error(e, exit_config);
    } catch (const vacuum_error& e) {
        return report_error(e, exit_config);
    }
    return exit_config;
}

}  // namespace ftl
