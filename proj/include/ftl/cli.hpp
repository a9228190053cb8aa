#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ftl/config.hpp"

namespace ftl {

// Exit codes: 0 success, 2 config validation failure, 3 collision at
// runtime, 4 oracle property failure.
inline constexpr int exit_ok = 0;
inline constexpr int exit_config = 2;
inline constexpr int exit_collision = 3;
inline constexpr int exit_property = 4;

// Run a preset/config simulation; writes trajectory.csv, diagnostics.csv and
// run_manifest.txt into the output directory.
int cmd_simulate(const RunConfig& cfg);

// Mesh-refinement study: for each M, partition / simulate to T / resample /
// compare against a Godunov reference on ref_cells cells. Writes
// convergence.csv (M, ell, l1_error, observed_order).
int cmd_converge(const RunConfig& cfg, const std::vector<std::size_t>& M_list,
                 std::size_t ref_cells);

// Self-test of the Godunov solver against the closed-form Riemann solutions;
// writes godunov_validation.csv. The error threshold applies at the largest
// m only.
int cmd_godunov_validate(const std::vector<std::size_t>& m_list,
                         const std::string& out_dir);

// Frozen acceptance thresholds for the refinement study at M = 1024
// (calibrated once against the 4096-cell reference, then pinned; the
// measured errors were 0.0084 and 0.0126).
inline constexpr double converge_threshold_smooth = 0.02;
inline constexpr double converge_threshold_jumps = 0.03;

// Full command-line front end (subcommands: simulate, converge,
// godunov-validate, figure1). Returns the process exit code.
int run_cli(int argc, const char* const* argv);

}  // namespace ftl
