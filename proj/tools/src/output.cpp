#include "output.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace majam::cli {

void write_atomically(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body)
{
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        body(out);
        out.flush();
        if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, path);
}

std::filesystem::path resolve_out_dir(const std::string& flag)
{
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("MAJAM_OUT_DIR"); env && *env) return env;
    return "out";
}

} // namespace majam::cli
