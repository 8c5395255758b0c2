#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "acemd/config.hpp"
#include "app/csv_io.hpp"

namespace acemd::app {

/// Lowercase hex SHA-256 of a file's bytes. Throws IoError.
std::string sha256_file(const std::filesystem::path& path);

nlohmann::json to_json(const EnsembleConfig& cfg);
nlohmann::json input_record(const Dataset& d);

/// Run manifest: command, library version, seed, config echo and one
/// record per input (digest, row count, first and last date). It holds no
/// wall-clock time, so identical inputs give an identical manifest.
nlohmann::json make_manifest(const std::string& command, const std::vector<nlohmann::json>& inputs,
                             const nlohmann::json& config, std::uint64_t seed);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace acemd::app
