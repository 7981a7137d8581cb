#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>

namespace majam::cli {

// Writes through a temporary sibling file and renames it into place, so a
// reader never sees a half-written file.
void write_atomically(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body);

// --out, else $MAJAM_OUT_DIR, else ./out.
std::filesystem::path resolve_out_dir(const std::string& flag);

} // namespace majam::cli
