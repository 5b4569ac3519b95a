#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qst/cli/config.hpp"
#include "qst/cli/suites.hpp"

namespace qst::cli {

// Flags shared by every subcommand; unset fields leave the config value alone.
struct GlobalOptions {
    std::optional<std::string> config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> jobs;
    std::optional<std::string> out;
    std::optional<std::string> format;
    std::vector<std::string> tol_overrides;
};

// Reads the config file when given, applies flag overrides and fixes the seed.
// env_seed is the raw QSTKIT_SEED value, null when unset.
RunConfig resolve_config(const GlobalOptions& options, const char* env_seed);

struct CommandResult {
    int exit_code = exit_code::ok;
    std::string text;
};

// "-" is standard output.
void write_output(const std::string& path, std::string_view text);

// Comma-separated reals.
Momentum parse_momentum(std::string_view text);

CommandResult run_command(Suite s, const RunConfig& cfg);

enum class GroupOp { add, inv, modular, haar_check, delta_solve };
GroupOp parse_group_op(std::string_view name);
// add p q, inv p, modular p, haar-check q p, delta-solve p q (with k0).
CommandResult group_command(GroupOp op, const RunConfig& cfg, const std::vector<std::string>& momenta, double k0);

// Empty generator list means every generator.
CommandResult hopf_command(const std::vector<std::string>& generators);

// check is one of all, product, involution, trace, partition.
CommandResult matrix_basis_command(int truncation, double theta, std::string_view check, std::uint64_t seed);

struct MixingRequest {
    std::string space = "kappa";  // kappa or moyal
    int d = 3;
    double deformation = 1.0;
    double mass = 1.0;
    std::string lambda_grid = "1:1e4:10";
    std::string inverse_momentum_grid = "1:1e3:10";
    int jobs = 1;
};
// CSV: the three sweeps in one table; JSON: the full report.
CommandResult mixing_command(const MixingRequest& request, Format format);

CommandResult bessel_command(const std::vector<double>& grid, const std::vector<int>& dims, int jobs, Format format);

// d_range is "first:last".
CommandResult dimension_scan_command(double kappa, std::string_view d_range, const std::vector<double>& energies,
                                     Format format);

// Input: {"variables": n, "theta": [[...]], "field": [poly...], "alpha": poly (optional)},
// each poly a list of {"exponents": [...], "coefficient": "p/q"}.
CommandResult seiberg_witten_command(std::string_view input_json);

struct ConeRequest {
    double kappa = 1.0;
    std::string slopes = "-1:1:0.25";
    int grid_points = 256;
    int states = 200;
    std::uint64_t seed = default_seed;
    int jobs = 1;
};
// One row per slope with the smaller margin over both branches and both representation signs.
CommandResult cone_command(const ConeRequest& request, Format format);

}  // namespace qst::cli
