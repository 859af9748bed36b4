#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace swclock {

/// Writes via a temp file in the same directory plus rename, so readers
/// never observe a partial file. Creates parent directories as needed.
/// Throws IoError on failure.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string iso8601_utc_now();

/// Run manifest naming every artifact the subcommand produced.
nlohmann::ordered_json make_manifest(const std::string& subcommand,
                                     const nlohmann::json& config_echo,
                                     const std::vector<std::string>& outputs,
                                     const std::string& version);

}  // namespace swclock
