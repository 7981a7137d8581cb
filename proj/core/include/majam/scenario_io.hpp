#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "majam/channel.hpp"

namespace majam {

class ScenarioFormatError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Line-oriented text dump of a scenario. Complex scalars are written as
// `re,im` one per line, reals with shortest round-trip formatting, so
// write -> read reproduces every field bit for bit.
void write_scenario(std::ostream& out, const std::vector<UserEnvironment>& envs);
std::vector<UserEnvironment> read_scenario(std::istream& in);

void save_scenario(const std::filesystem::path& path, const std::vector<UserEnvironment>& envs);
std::vector<UserEnvironment> load_scenario(const std::filesystem::path& path);

} // namespace majam
