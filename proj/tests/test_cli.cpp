#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "ftl/cli.hpp"
#include "ftl/config.hpp"
#include "ftl/errors.hpp"

using namespace ftl;
namespace fs = std::filesystem;

namespace {

int run(std::vector<std::string> args) {
    std::vector<const char*> argv{"ftl"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("ftl_test_" + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

const char* valid_config = R"(
# minimal valid run
model = greenshields
weights = uniform:2
kappa = 0.1
profile = piecewise
profile_breaks = 0,1
profile_values = 0.4,0.8
period = 2
nu = 0.4
M = 16
scheme = euler
dt_mult_ell = 0.5
T = 0.5
samples = 3
seed = 42
)";

}  // namespace

TEST_CASE("config parsing") {
    const RunConfig cfg = parse_config_text(valid_config);
    CHECK(cfg.model == "greenshields");
    CHECK(cfg.weights == "uniform:2");
    CHECK(cfg.kappa == doctest::Approx(0.1));
    CHECK(cfg.profile_breaks == std::vector<double>{0.0, 1.0});
    CHECK(cfg.M.has_value());
    CHECK(*cfg.M == 16);
    CHECK(cfg.samples == 3);
    CHECK(cfg.seed == 42);

    CHECK_THROWS_AS(parse_config_text("bogus_key = 1\n"), config_error);
    CHECK_THROWS_AS(parse_config_text("model\n"), config_error);
}

TEST_CASE("resolve validates the invariants") {
    RunConfig cfg = parse_config_text(valid_config);

    SUBCASE("valid config resolves") {
        const auto run = resolve(cfg);
        CHECK(run.initial.size() == 16);
        CHECK(run.dt == doctest::Approx(0.5 * run.initial.ell));
        CHECK(run.sample_times.size() == 3);
    }

    SUBCASE("weight sum violation is named") {
        cfg.weights = "0.3,0.2,0";
        CHECK_THROWS_WITH_AS(resolve(cfg), doctest::Contains("sum to 1"),
                             config_error);
    }

    SUBCASE("M and target_ell are exclusive") {
        cfg.target_ell = 0.01;
        CHECK_THROWS_WITH_AS(resolve(cfg), doctest::Contains("exactly one"),
                             config_error);
    }

    SUBCASE("stencil must fit") {
        cfg.weights = "uniform:20";
        CHECK_THROWS_WITH_AS(resolve(cfg), doctest::Contains("N+2"), config_error);
    }

    SUBCASE("step bound enforced unless overridden") {
        cfg.dt_mult_ell = 2.0;
        CHECK_THROWS_WITH_AS(resolve(cfg), doctest::Contains("collision-safe"),
                             config_error);
        cfg.unsafe_dt = true;
        CHECK_NOTHROW(resolve(cfg));
    }

    SUBCASE("dt policy is exclusive") {
        cfg.dt = 0.001;
        CHECK_THROWS_AS(resolve(cfg), config_error);
    }

    SUBCASE("power-law model and target_ell both resolve") {
        cfg.model = "power:2";
        cfg.dt_mult_ell = 0.25;  // lip = 2 halves the safe step
        cfg.M.reset();
        cfg.target_ell = 0.05;  // mass 1.2 -> M = 24
        const auto run = resolve(cfg);
        CHECK(run.model.kind == VelocityModel::Kind::power);
        CHECK(run.initial.size() == 24);
        CHECK(run.initial.ell == doctest::Approx(1.2 / 24.0).epsilon(1e-12));
    }
}

TEST_CASE("presets resolve and echo a manifest") {
    for (const auto& name : preset_names()) {
        const auto run = resolve(preset_config(name));
        const std::string manifest = run_manifest(run);
        CHECK(manifest.find("model = ") != std::string::npos);
        CHECK(manifest.find("# derived: ell = ") != std::string::npos);
        // the manifest reloads as a config
        const RunConfig again = parse_config_text(manifest);
        CHECK(again.model == run.config.model);
    }
    const auto fig = resolve(preset_config("figure1"));
    CHECK(fig.initial.size() == 52);
    CHECK(fig.initial.ell == doctest::Approx(1.15 / 52.0).epsilon(1e-12));
    CHECK(fig.dt == doctest::Approx(fig.initial.ell).epsilon(1e-12));
    CHECK(fig.weights.N == 10);
}

TEST_CASE("simulate command writes its artifacts and is deterministic") {
    TempDir tmp("simulate");
    RunConfig cfg = parse_config_text(valid_config);
    cfg.out = (tmp.path / "a").string();
    REQUIRE(cmd_simulate(cfg) == exit_ok);
    CHECK(fs::exists(tmp.path / "a" / "trajectory.csv"));
    CHECK(fs::exists(tmp.path / "a" / "diagnostics.csv"));
    CHECK(fs::exists(tmp.path / "a" / "run_manifest.txt"));

    const std::string traj_a = slurp(tmp.path / "a" / "trajectory.csv");
    CHECK(traj_a.rfind("t,x,rho\n", 0) == 0);

    cfg.out = (tmp.path / "b").string();
    REQUIRE(cmd_simulate(cfg) == exit_ok);
    CHECK(traj_a == slurp(tmp.path / "b" / "trajectory.csv"));
    CHECK(slurp(tmp.path / "a" / "diagnostics.csv") ==
          slurp(tmp.path / "b" / "diagnostics.csv"));
}

TEST_CASE("cli surface") {
    TempDir tmp("cli");

    SUBCASE("config file with a bad weight sum exits 2") {
        const auto cfg_path = tmp.path / "bad.cfg";
        std::string text = valid_config;
        text += "weights = 0.3,0.2,0\n";
        write_file(cfg_path, text);
        CHECK(run({"simulate", "--config", cfg_path.string(), "--out",
                   (tmp.path / "bad_out").string()}) == exit_config);
    }

    SUBCASE("missing config and preset exits 2") {
        CHECK(run({"simulate"}) == exit_config);
    }

    SUBCASE("steady preset runs; gaps never change") {
        const auto out = tmp.path / "steady";
        CHECK(run({"simulate", "--preset", "uniform-steady", "--out",
                   out.string()}) == exit_ok);
        // every snapshot of the constant profile has identical densities
        std::ifstream in(out / "trajectory.csv");
        std::string line;
        std::getline(in, line);  // header
        std::string first_rho;
        while (std::getline(in, line)) {
            const auto comma = line.rfind(',');
            const std::string rho = line.substr(comma + 1);
            if (first_rho.empty()) first_rho = rho;
            CHECK(rho == first_rho);
        }
    }

    SUBCASE("figure1 alias honours FTL_OUT_DIR") {
        const auto out = tmp.path / "env_out";
        setenv("FTL_OUT_DIR", out.string().c_str(), 1);
        CHECK(run({"figure1"}) == exit_ok);
        unsetenv("FTL_OUT_DIR");
        CHECK(fs::exists(out / "diagnostics.csv"));
        // diagnostics span t in [0, 4]
        std::ifstream in(out / "diagnostics.csv");
        std::string line, last;
        std::getline(in, line);
        std::string first;
        while (std::getline(in, line))
            if (!line.empty()) {
                if (first.empty()) first = line;
                last = line;
            }
        CHECK(first.rfind("0,", 0) == 0);
        CHECK(last.rfind("4,", 0) == 0);
    }

    SUBCASE("unknown preset exits 2") {
        CHECK(run({"simulate", "--preset", "nonsense"}) == exit_config);
    }
}

TEST_CASE("converge command") {
    TempDir tmp("converge");
    RunConfig cfg = preset_config("converge-smooth");
    cfg.out = (tmp.path / "conv").string();

    SUBCASE("refinement list must increase") {
        CHECK(cmd_converge(cfg, {64, 32}, 512) == exit_config);
    }

    SUBCASE("reference must be fine enough") {
        CHECK(cmd_converge(cfg, {16, 32}, 64) == exit_config);
    }

    SUBCASE("single-entry list leaves the order column empty") {
        REQUIRE(cmd_converge(cfg, {24}, 128) == exit_ok);
        std::ifstream in(tmp.path / "conv" / "convergence.csv");
        std::string header, row;
        std::getline(in, header);
        CHECK(header == "M,ell,l1_error,observed_order");
        std::getline(in, row);
        CHECK(row.back() == ',');
    }

    SUBCASE("errors shrink with refinement") {
        REQUIRE(cmd_converge(cfg, {16, 32, 64}, 512) == exit_ok);
        std::ifstream in(tmp.path / "conv" / "convergence.csv");
        std::string line;
        std::getline(in, line);
        std::vector<double> errs;
        while (std::getline(in, line)) {
            const auto a = line.find(',');
            const auto b = line.find(',', a + 1);
            const auto c = line.find(',', b + 1);
            errs.push_back(std::stod(line.substr(b + 1, c - b - 1)));
        }
        REQUIRE(errs.size() == 3);
        CHECK(errs[1] < errs[0]);
        CHECK(errs[2] < errs[1]);
    }
}

TEST_CASE("godunov-validate command") {
    TempDir tmp("gv");
    CHECK(cmd_godunov_validate({32, 64, 128}, (tmp.path / "gv").string()) ==
          exit_ok);
    CHECK(fs::exists(tmp.path / "gv" / "godunov_validation.csv"));
    // grid exports with the x_center,rho layout
    REQUIRE(fs::exists(tmp.path / "gv" / "solution_shock_128.csv"));
    const std::string grid_csv = slurp(tmp.path / "gv" / "solution_shock_128.csv");
    CHECK(grid_csv.rfind("x_center,rho\n", 0) == 0);
    // a single coarse resolution runs without tripping the threshold policy
    CHECK(cmd_godunov_validate({8}, (tmp.path / "gv8").string()) == exit_ok);
}

TEST_CASE("converge exports its reference grid") {
    TempDir tmp("convref");
    RunConfig cfg = preset_config("converge-smooth");
    cfg.out = (tmp.path / "c").string();
    REQUIRE(cmd_converge(cfg, {16}, 128) == exit_ok);
    const std::string grid_csv = slurp(tmp.path / "c" / "godunov_reference.csv");
    CHECK(grid_csv.rfind("x_center,rho\n", 0) == 0);
}

TEST_CASE("literal weights variant of the figure1 preset") {
    RunConfig cfg = preset_config("figure1");
    cfg.literal_weights = true;
    const auto run = resolve(cfg);
    REQUIRE(run.weights.N == 10);
    for (int j = 0; j < 5; ++j)
        CHECK(run.weights.c[static_cast<std::size_t>(j)] ==
              doctest::Approx(0.2).epsilon(1e-15));
    for (int j = 5; j <= 10; ++j)
        CHECK(run.weights.c[static_cast<std::size_t>(j)] == 0.0);
    CHECK(run_manifest(run).find("renormalized") != std::string::npos);

    // rejected outside its preset
    RunConfig other = parse_config_text(valid_config);
    other.literal_weights = true;
    CHECK_THROWS_AS(resolve(other), config_error);

    // the full run completes collision-free
    TempDir tmp("litw");
    cfg.out = (tmp.path / "out").string();
    CHECK(cmd_simulate(cfg) == exit_ok);
}
