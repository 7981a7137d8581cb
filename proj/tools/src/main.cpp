#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "output.hpp"

using namespace majam;
using namespace majam::cli;

namespace {

void add_override_flags(CLI::App* cmd, Overrides& o, std::uint64_t& seed, int& runs, std::string& modes,
                        std::string& strategy)
{
    cmd->add_option("--seed", seed, "Master seed (overrides algorithm.master_seed)");
    cmd->add_option("--runs", runs, "Monte-Carlo realizations (overrides algorithm.monte_carlo_runs)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--modes", modes, "Comma-separated jamming modes (overrides sweep.modes)");
    cmd->add_option("--partial-strategy", strategy, "paper-sca or mrt-equal-power");
    cmd->add_flag("--paper-faithful", o.paper_faithful, "Disable the position trust region");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Movable-antenna jammer optimization and Monte-Carlo sweeps"};
    app.set_version_flag("--version", std::string(MAJAM_VERSION));
    app.require_subcommand(1);

    std::string config_path, out_dir, mode_name = "ma-partial", axis = "power", manifest_path;
    Overrides overrides;
    std::uint64_t seed = 0;
    int runs = 0, jobs = 0, instances = 100;
    std::uint64_t realization = 0;
    std::string modes, strategy;
    bool quiet = false, print = false;
    double step_m = 1e-7, tolerance = 1e-5;

    auto* optimize = app.add_subcommand("optimize", "Optimize the jammer on one seeded scenario");
    optimize->add_option("-c,--config", config_path, "Config file (built-in defaults when omitted)");
    optimize->add_option("--mode", mode_name, "none, fpa-partial, fpa-full, ma-partial or ma-full");
    optimize->add_option("--realization", realization, "Realization index within the seed");
    optimize->add_option("-o,--out", out_dir, "Output directory (default $MAJAM_OUT_DIR or ./out)");
    add_override_flags(optimize, overrides, seed, runs, modes, strategy);

    auto* sweep = app.add_subcommand("sweep", "Monte-Carlo sweep over jammer power or location");
    sweep->add_option("-c,--config", config_path, "Config file (built-in defaults when omitted)");
    sweep->add_option("--axis", axis, "power or location")->check(CLI::IsMember({"power", "location"}));
    sweep->add_option("-j,--jobs", jobs, "Worker threads (default: all cores)")->check(CLI::NonNegativeNumber);
    sweep->add_option("-o,--out", out_dir, "Output directory (default $MAJAM_OUT_DIR or ./out)");
    sweep->add_flag("-q,--quiet", quiet, "No progress on stderr");
    add_override_flags(sweep, overrides, seed, runs, modes, strategy);

    auto* rerun = app.add_subcommand("rerun", "Repeat the run recorded in a manifest");
    rerun->add_option("manifest", manifest_path, "manifest.json of an earlier run")->required();
    rerun->add_option("-j,--jobs", jobs, "Worker threads (default: all cores)")->check(CLI::NonNegativeNumber);
    rerun->add_option("-o,--out", out_dir, "Output directory (default $MAJAM_OUT_DIR or ./out)");
    rerun->add_flag("-q,--quiet", quiet, "No progress on stderr");

    auto* validate_cmd = app.add_subcommand("validate-config", "Parse and check a config file");
    validate_cmd->add_option("config", config_path, "Config file")->required();
    validate_cmd->add_flag("--print", print, "Print the resolved config in canonical form");

    auto* gradcheck = app.add_subcommand("gradcheck", "Compare analytic gradients with finite differences");
    gradcheck->add_option("-c,--config", config_path, "Config file (built-in defaults when omitted)");
    gradcheck->add_option("--instances", instances, "Random instances")->check(CLI::PositiveNumber);
    gradcheck->add_option("--seed", seed, "Seed for the instances");
    gradcheck->add_option("--step", step_m, "Position step in meters");
    gradcheck->add_option("--tolerance", tolerance, "Maximum accepted relative error");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    if (optimize->count("--seed") || sweep->count("--seed")) overrides.seed = seed;
    if (optimize->count("--runs") || sweep->count("--runs")) overrides.runs = runs;
    if (optimize->count("--modes") || sweep->count("--modes")) overrides.modes = modes;
    if (optimize->count("--partial-strategy") || sweep->count("--partial-strategy")) overrides.partial_strategy = strategy;

    RunContext context;
    context.out_dir = resolve_out_dir(out_dir);
    context.command_line.assign(argv, argv + argc);
    context.jobs = jobs;
    context.progress = !quiet;

    try {
        if (*optimize) {
            const auto mode = parse_jam_mode(mode_name);
            if (!mode) throw ConfigError("mode", "unknown mode '" + mode_name + "'");
            return run_optimize({resolve_config(config_path, overrides), *mode, realization}, context);
        }
        if (*sweep) return run_sweep({resolve_config(config_path, overrides), axis}, context);
        if (*rerun) return run_from_manifest(load_manifest(manifest_path), context);
        if (*validate_cmd) return run_validate_config(config_path, print);
        if (*gradcheck) {
            SystemConfig config = resolve_config(config_path, {});
            return run_gradcheck(config, instances, gradcheck->count("--seed") ? seed : config.algorithm.master_seed,
                                 step_m, tolerance);
        }
    } catch (const ConfigError& e) {
        std::cerr << "majam: config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "majam: error: " << e.what() << '\n';
        return kRuntimeError;
    }
    return kOk;
}
