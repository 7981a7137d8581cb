#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "majam/config.hpp"
#include "manifest.hpp"

namespace majam::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kConfigError = 2, kRuntimeError = 3 };

// Values given on the command line; unset ones keep the config file value.
struct Overrides
{
    std::optional<std::uint64_t> seed;
    std::optional<int> runs;
    std::optional<std::string> modes;  // comma separated
    std::optional<std::string> partial_strategy;
    bool paper_faithful = false;
};

// Config file (or built-in defaults when `path` is empty) plus overrides.
SystemConfig resolve_config(const std::string& path, const Overrides& overrides);

struct OptimizeRequest
{
    SystemConfig config;
    JamMode mode = JamMode::MaPartial;
    std::uint64_t realization = 0;
};

struct SweepRequest
{
    SystemConfig config;
    std::string axis = "power";
};

struct RunContext
{
    std::filesystem::path out_dir;
    std::vector<std::string> command_line;
    int jobs = 0;
    bool progress = true;
};

int run_optimize(const OptimizeRequest& request, const RunContext& context);
int run_sweep(const SweepRequest& request, const RunContext& context);
int run_from_manifest(const RunManifest& manifest, const RunContext& context);

int run_validate_config(const std::string& path, bool print);
int run_gradcheck(const SystemConfig& config, int instances, std::uint64_t seed, double step_m, double tolerance);

} // namespace majam::cli
