#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <iostream>
#include <sstream>

#include "majam/gradcheck.hpp"
#include "majam/optimizer.hpp"
#include "majam/report.hpp"
#include "majam/simulator.hpp"
#include "output.hpp"

namespace majam::cli {

namespace {

std::vector<JamMode> parse_mode_list(const std::string& list)
{
    std::vector<JamMode> modes;
    std::stringstream in(list);
    std::string name;
    while (std::getline(in, name, ',')) {
        if (name.empty()) continue;
        const auto mode = parse_jam_mode(name);
        if (!mode) throw ConfigError("modes", "unknown mode '" + name + "'");
        modes.push_back(*mode);
    }
    if (modes.empty()) throw ConfigError("modes", "empty mode list");
    return modes;
}

OptimizerTrace trace_for(const std::vector<UserEnvironment>& envs, const SystemConfig& config, JamMode mode)
{
    const bool sca = config.algorithm.partial_strategy == PartialStrategy::PaperSca;
    switch (mode) {
    case JamMode::None:
        return {};
    case JamMode::FpaPartial:
    case JamMode::FpaFull: {
        OptimizerTrace trace;
        const auto fpa = fpa_layout(config);
        const auto channels = jammer_channels(fpa, envs, config.wavelength_m);
        const auto mrt = mrt_equal_power(channels, config.jammer_power_w);
        trace.initial_objective = jamming_objective(channels, mrt.v);
        if (sca) {
            const auto bf = optimize_beamforming(envs, fpa, mrt, config);
            trace.iterations.push_back({bf.objective, (bf.beams.v - mrt.v).norm(), 0.0, bf.iterations, 0});
        }
        return trace;
    }
    case JamMode::MaPartial:
    case JamMode::MaFull:
        return (sca ? run_bcd(envs, config, JammingStrategy::PaperSca) : run_movable_mrt(envs, config)).trace;
    }
    return {};
}

RunManifest base_manifest(const SystemConfig& config, const RunContext& context, std::string command)
{
    RunManifest m;
    m.tool_version = MAJAM_VERSION;
    m.command = std::move(command);
    m.command_line = context.command_line;
    m.master_seed = config.algorithm.master_seed;
    m.config_text = to_config_text(config);
    return m;
}

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

SystemConfig resolve_config(const std::string& path, const Overrides& o)
{
    SystemConfig c = path.empty() ? default_config() : load_config(path);
    if (o.seed) c.algorithm.master_seed = *o.seed;
    if (o.runs) c.algorithm.monte_carlo_runs = *o.runs;
    if (o.modes) c.sweep.modes = parse_mode_list(*o.modes);
    if (o.partial_strategy) {
        const auto s = parse_partial_strategy(*o.partial_strategy);
        if (!s) throw ConfigError("partial-strategy", "unknown partial strategy '" + *o.partial_strategy + "'");
        c.algorithm.partial_strategy = *s;
    }
    if (o.paper_faithful) c.algorithm.paper_faithful = true;
    validate(c);
    return c;
}

int run_optimize(const OptimizeRequest& request, const RunContext& context)
{
    const auto start = std::chrono::steady_clock::now();
    const auto& config = request.config;
    Rng rng = make_stream(config.algorithm.master_seed, request.realization);
    const auto outcome = simulate_realization(config, rng, request.mode);
    const auto trace = trace_for(outcome.envs, config, request.mode);

    const auto& dir = context.out_dir;
    write_atomically(dir / "trace.csv", [&](std::ostream& out) { write_trace_csv(out, trace); });
    write_atomically(dir / "beams.csv", [&](std::ostream& out) {
        out << "user,antenna,re,im\n";
        for (Eigen::Index k = 0; k < outcome.beams.v.cols(); ++k)
            for (Eigen::Index m = 0; m < outcome.beams.v.rows(); ++m)
                out << k + 1 << ',' << m + 1 << ',' << format_real(outcome.beams.v(m, k).real()) << ','
                    << format_real(outcome.beams.v(m, k).imag()) << '\n';
    });
    write_atomically(dir / "positions.csv", [&](std::ostream& out) {
        out << "antenna,x_m,y_m,z_m\n";
        const auto& p = outcome.positions.matrix();
        for (Eigen::Index m = 0; m < p.cols(); ++m)
            out << m + 1 << ',' << format_real(p(0, m)) << ',' << format_real(p(1, m)) << ',' << format_real(p(2, m))
                << '\n';
    });

    auto manifest = base_manifest(config, context, "optimize");
    manifest.mode = std::string(to_string(request.mode));
    manifest.realization = request.realization;
    manifest.outputs = {"trace.csv", "beams.csv", "positions.csv"};
    manifest.wall_clock_s = seconds_since(start);
    write_atomically(dir / "manifest.json", [&](std::ostream& out) { out << to_json_text(manifest); });

    const auto& r = outcome.report;
    std::cout << "mode=" << to_string(request.mode) << " outer_iterations=" << trace.iterations.size()
              << " termination=" << (trace.iterations.empty() ? "none" : to_string(trace.termination))
              << " jamming_objective=" << format_real(r.jamming_objective) << " sum_rate=" << format_real(r.sum_rate)
              << " users_in_outage=" << r.users_in_outage() << '\n';
    return kOk;
}

int run_sweep(const SweepRequest& request, const RunContext& context)
{
    const auto start = std::chrono::steady_clock::now();
    const auto& config = request.config;

    SweepOptions options;
    options.jobs = context.jobs;
    if (context.progress) {
        options.progress = [](std::size_t done, std::size_t total) {
            if (done == total || done % 10 == 0) std::cerr << "\rsweep: " << done << '/' << total << std::flush;
            if (done == total) std::cerr << '\n';
        };
    }

    SweepResult result;
    if (request.axis == "power")
        result = sweep_power(config, config.sweep.powers_w, config.sweep.modes, options);
    else if (request.axis == "location")
        result = sweep_jammer_location(config, config.sweep.jammer_x_m, config.sweep.modes, options);
    else
        throw ConfigError("axis", "unknown sweep axis '" + request.axis + "' (power, location)");

    const auto& dir = context.out_dir;
    const std::string raw = "raw_" + request.axis + ".csv";
    const std::string agg = "aggregate_" + request.axis + ".csv";
    write_atomically(dir / raw, [&](std::ostream& out) { write_raw_csv(out, result); });
    write_atomically(dir / agg, [&](std::ostream& out) { write_aggregate_csv(out, result); });

    auto manifest = base_manifest(config, context, "sweep");
    manifest.axis = request.axis;
    manifest.outputs = {raw, agg};
    manifest.wall_clock_s = seconds_since(start);
    write_atomically(dir / "manifest.json", [&](std::ostream& out) { out << to_json_text(manifest); });

    std::cout << "axis=" << request.axis << " points=" << result.axis.size() << " modes=" << result.modes.size()
              << " runs=" << result.runs << " raw=" << (dir / raw).string() << " aggregate=" << (dir / agg).string()
              << '\n';
    return kOk;
}

int run_from_manifest(const RunManifest& manifest, const RunContext& context)
{
    const SystemConfig config = parse_config(manifest.config_text);
    if (manifest.command == "sweep") return run_sweep({config, manifest.axis}, context);
    const auto mode = parse_jam_mode(manifest.mode);
    if (!mode) throw ConfigError("mode", "manifest names unknown mode '" + manifest.mode + "'");
    return run_optimize({config, *mode, manifest.realization}, context);
}

int run_validate_config(const std::string& path, bool print)
{
    const SystemConfig config = load_config(path);
    if (print)
        std::cout << to_config_text(config);
    else
        std::cout << path << ": ok\n";
    return kOk;
}

int run_gradcheck(const SystemConfig& config, int instances, std::uint64_t seed, double step_m, double tolerance)
{
    const auto report = majam::run_gradcheck(config, instances, seed, step_m);
    const double worst = std::max({report.max_rel_error_positions, report.max_rel_error_beams,
                                   report.max_rel_error_sum_rate});
    std::cout << "instances=" << report.instances
              << " max_rel_err_positions=" << format_real(report.max_rel_error_positions)
              << " max_rel_err_beams=" << format_real(report.max_rel_error_beams)
              << " max_rel_err_sum_rate=" << format_real(report.max_rel_error_sum_rate) << '\n';
    std::cout << (worst < tolerance ? "PASS" : "FAIL") << " (tolerance " << format_real(tolerance) << ")\n";
    return worst < tolerance ? kOk : kCheckFailed;
}

} // namespace majam::cli
