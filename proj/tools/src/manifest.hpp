#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace majam::cli {

// Everything needed to repeat a run: the merged config in canonical text,
// the subcommand and its result-affecting options. Worker count is not part
// of it; outputs do not depend on it.
struct RunManifest
{
    std::string tool_version;
    std::string command;  // "optimize" or "sweep"
    std::vector<std::string> command_line;
    std::uint64_t master_seed = 0;
    std::string config_text;

    std::string axis;             // sweep: "power" or "location"
    std::string mode;             // optimize
    std::uint64_t realization = 0;  // optimize

    std::vector<std::string> outputs;  // file names relative to the manifest
    double wall_clock_s = 0.0;
};

std::string to_json_text(const RunManifest& manifest);
RunManifest parse_manifest(const std::string& text);
RunManifest load_manifest(const std::filesystem::path& path);

} // namespace majam::cli
