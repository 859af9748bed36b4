#include "swclock/io.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <system_error>

#include "swclock/errors.hpp"

namespace swclock {

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    std::error_code ec;
    const fs::path dir = path.parent_path();
    if (!dir.empty()) {
        fs::create_directories(dir, ec);
        if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
    }
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        if (!out) {
            std::remove(tmp.c_str());
            throw IoError("short write to " + tmp.string());
        }
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        std::remove(tmp.c_str());
        throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
    }
}

std::string iso8601_utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

nlohmann::ordered_json make_manifest(const std::string& subcommand,
                                     const nlohmann::json& config_echo,
                                     const std::vector<std::string>& outputs,
                                     const std::string& version) {
    nlohmann::ordered_json m;
    m["tool"] = "swclock";
    m["version"] = version;
    m["subcommand"] = subcommand;
    m["timestamp"] = iso8601_utc_now();
    m["config"] = config_echo;
    m["outputs"] = outputs;
    return m;
}

}  // namespace swclock
