#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qst/cli/commands.hpp"

namespace {

using namespace qst::cli;

std::vector<double> split_reals(const std::string& text)
{
    std::vector<double> out;
    for (double v : parse_momentum(text)) out.push_back(v);
    return out;
}

std::vector<int> split_ints(const std::string& text)
{
    std::vector<int> out;
    for (double v : parse_momentum(text)) {
        if (v != static_cast<int>(v)) throw UsageError("'" + text + "' must list integers");
        out.push_back(static_cast<int>(v));
    }
    return out;
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Checks and reports for Lie-algebra-type quantum spacetimes"};
    app.fallthrough();
    app.require_subcommand(1);

    GlobalOptions global;
    std::string config_path, out, format;
    std::uint64_t seed = 0;
    int jobs = 1;
    auto* config_opt = app.add_option("--config", config_path, "JSON run configuration");
    auto* seed_opt = app.add_option("--seed", seed, "RNG seed (falls back to the config, then QSTKIT_SEED)");
    auto* jobs_opt = app.add_option("--jobs", jobs, "worker threads for parallel sweeps");
    auto* out_opt = app.add_option("--out", out, "output path, - for stdout");
    auto* format_opt = app.add_option("--format", format, "csv or json");
    app.add_option("--tol-override", global.tol_overrides, "key=value tolerance override")->take_all();

    // Each subcommand registers the action that runs once parsing is complete.
    std::function<CommandResult(const RunConfig&)> action;

    auto* run = app.add_subcommand("run", "run a check suite");
    std::string suite_name;
    run->add_option("suite", suite_name, "group, hopf, twist, trace, mixing, gauge, causality or all")->required();
    run->callback([&] { action = [&](const RunConfig& cfg) { return run_command(parse_suite(suite_name), cfg); }; });

    auto* group = app.add_subcommand("group", "momentum group operations");
    std::string group_op, spacetime;
    std::vector<std::string> momenta;
    double deformation = 1.0, k0 = 0.0;
    int dim = 3;
    group->add_option("op", group_op, "add, inv, modular, haar-check or delta-solve")->required();
    group->add_option("momenta", momenta, "comma-separated components");
    auto* spacetime_opt = group->add_option("--spacetime", spacetime, "preset name, overrides the config");
    auto* deformation_opt = group->add_option("--deformation", deformation, "deformation parameter of the preset");
    auto* dim_opt = group->add_option("--d", dim, "spatial or base dimension of the preset");
    group->add_option("--k0", k0, "loop energy for delta-solve");
    group->callback([&] {
        action = [&](RunConfig cfg) {
            if (*spacetime_opt) cfg.spacetime = qst::parse_preset(spacetime);
            if (*deformation_opt) cfg.deformation = deformation;
            if (*dim_opt) cfg.d = dim;
            return group_command(parse_group_op(group_op), cfg, momenta, k0);
        };
    });

    auto* hopf = app.add_subcommand("hopf", "Hopf algebra checks");
    auto* hopf_check = hopf->add_subcommand("check", "axiom and bialgebra checks per generator");
    std::string algebra = "kappa-poincare";
    std::vector<std::string> generators;
    bool every = false;
    hopf_check->add_option("--algebra", algebra, "only kappa-poincare is built in");
    hopf_check->add_option("--generator", generators, "generator names, e.g. K1 P0");
    hopf_check->add_flag("--all", every, "every generator");
    hopf->require_subcommand(1);
    hopf_check->callback([&] {
        action = [&](const RunConfig&) {
            if (algebra != "kappa-poincare") throw UsageError("unknown algebra '" + algebra + "'");
            return hopf_command(every ? std::vector<std::string>{} : generators);
        };
    });

    auto* matrix = app.add_subcommand("matrix-basis", "truncated Moyal matrix basis identities");
    int truncation = 32;
    double theta = 1.0;
    std::string check = "all";
    matrix->add_option("--N", truncation, "truncation");
    matrix->add_option("--theta", theta, "noncommutativity");
    matrix->add_option("--check", check, "all, product, involution, trace or partition");
    matrix->callback([&] {
        action = [&](const RunConfig& cfg) { return matrix_basis_command(truncation, theta, check, *cfg.seed); };
    });

    auto* loop = app.add_subcommand("loop", "one-loop computations");
    loop->require_subcommand(1);
    auto* mixing = loop->add_subcommand("mixing", "UV/IR mixing classification");
    MixingRequest mix;
    mixing->add_option("--space", mix.space, "kappa or moyal");
    mixing->add_option("--d", mix.d, "spatial (kappa) or base (moyal) dimension");
    mixing->add_option("--deformation", mix.deformation, "kappa or theta");
    mixing->add_option("--mass", mix.mass, "field mass");
    mixing->add_option("--lambda-grid", mix.lambda_grid, "cutoff grid start:stop:factor");
    mixing->add_option("--p-grid", mix.inverse_momentum_grid, "inverse external momentum grid start:stop:factor");
    mixing->callback([&] {
        action = [&](const RunConfig& cfg) {
            mix.jobs = cfg.jobs;
            return mixing_command(mix, cfg.format);
        };
    });
    auto* bessel = loop->add_subcommand("bessel-check", "quadrature against the Bessel closed form");
    std::string bessel_grid = "0.5,1,2", bessel_dims = "2,3";
    bessel->add_option("--grid", bessel_grid, "comma-separated masses, also used for kappa");
    bessel->add_option("--dims", bessel_dims, "comma-separated spatial dimensions");
    bessel->callback([&] {
        action = [&](const RunConfig& cfg) {
            return bessel_command(split_reals(bessel_grid), split_ints(bessel_dims), cfg.jobs, cfg.format);
        };
    });

    auto* gauge = app.add_subcommand("gauge", "twisted gauge theory");
    gauge->require_subcommand(1);
    auto* dim_scan = gauge->add_subcommand("dim-scan", "dimension constraint of the gauge prefactor");
    double scan_kappa = 1.0;
    std::string d_range = "1:8", energies = "-1,-0.3,0.5,1";
    dim_scan->add_option("--kappa", scan_kappa, "deformation");
    dim_scan->add_option("--d", d_range, "first:last");
    dim_scan->add_option("--energies", energies, "comma-separated plane-wave energies");
    dim_scan->callback([&] {
        action = [&](const RunConfig& cfg) {
            return dimension_scan_command(scan_kappa, d_range, split_reals(energies), cfg.format);
        };
    });
    auto* sw = gauge->add_subcommand("sw", "first-order Seiberg-Witten map");
    std::string fields;
    sw->add_option("--input", fields, "fields JSON")->required();
    sw->callback([&] { action = [&](const RunConfig&) { return seiberg_witten_command(slurp(fields)); }; });

    auto* causality = app.add_subcommand("causality", "causal structure in 1+1 dimensions");
    causality->require_subcommand(1);
    auto* cone = causality->add_subcommand("cone", "cone condition over a slope grid");
    ConeRequest cone_request;
    cone->add_option("--kappa", cone_request.kappa, "deformation");
    cone->add_option("--v", cone_request.slopes, "slope grid start:stop:step");
    cone->add_option("--grid", cone_request.grid_points, "grid points");
    cone->add_option("--states", cone_request.states, "Gaussian test states");
    cone->callback([&] {
        action = [&](const RunConfig& cfg) {
            cone_request.seed = *cfg.seed;
            cone_request.jobs = cfg.jobs;
            return cone_command(cone_request, cfg.format);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_code::ok : exit_code::usage;
    }

    try {
        if (*config_opt) global.config_path = config_path;
        if (*seed_opt) global.seed = seed;
        if (*jobs_opt) global.jobs = jobs;
        if (*out_opt) global.out = out;
        if (*format_opt) global.format = format;
        const RunConfig cfg = resolve_config(global, std::getenv("QSTKIT_SEED"));
        const CommandResult result = action(cfg);
        write_output(cfg.output, result.text);
        return result.exit_code;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
    }
    return exit_code::usage;
}
