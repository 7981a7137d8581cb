#include "manifest.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "majam/config.hpp"

namespace majam::cli {

std::string to_json_text(const RunManifest& m)
{
    nlohmann::ordered_json j;
    j["tool"] = "majam";
    j["tool_version"] = m.tool_version;
    j["command"] = m.command;
    j["command_line"] = m.command_line;
    j["master_seed"] = m.master_seed;
    if (m.command == "sweep") j["axis"] = m.axis;
    if (m.command == "optimize") {
        j["mode"] = m.mode;
        j["realization"] = m.realization;
    }
    j["config"] = m.config_text;
    j["outputs"] = m.outputs;
    j["wall_clock_s"] = m.wall_clock_s;
    return j.dump(2) + "\n";
}

RunManifest parse_manifest(const std::string& text)
{
    const auto j = nlohmann::json::parse(text);
    RunManifest m;
    m.tool_version = j.at("tool_version").get<std::string>();
    m.command = j.at("command").get<std::string>();
    m.command_line = j.value("command_line", std::vector<std::string>{});
    m.master_seed = j.at("master_seed").get<std::uint64_t>();
    m.config_text = j.at("config").get<std::string>();
    m.axis = j.value("axis", std::string{});
    m.mode = j.value("mode", std::string{});
    m.realization = j.value("realization", std::uint64_t{0});
    m.outputs = j.value("outputs", std::vector<std::string>{});
    m.wall_clock_s = j.value("wall_clock_s", 0.0);
    if (m.command != "optimize" && m.command != "sweep")
        throw ConfigError("command", "manifest command must be 'optimize' or 'sweep', got '" + m.command + "'");
    return m;
}

RunManifest load_manifest(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("", "cannot open manifest '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_manifest(buffer.str());
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("", path.string() + ": " + e.what());
    }
}

} // namespace majam::cli
