#pragma once

#include "json_io.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace semdisc::app {

inline constexpr const char* kToolVersion = "0.1.0";

/// Hex SHA-256 of a file's bytes. Throws Error(io) if unreadable.
std::string sha256_file(const std::filesystem::path& file);
std::string sha256_hex(std::string_view bytes);

/// Current UTC time as RFC 3339, e.g. 2026-01-02T03:04:05Z.
std::string rfc3339_now();

/// What produced a set of output files: argv, dataset digests, seed, tool
/// version and time. Rerunning argv against the same dataset reproduces
/// every output except the timestamp.
json run_manifest(const std::vector<std::string>& argv,
                  const std::string& dataset_id,
                  const std::vector<std::filesystem::path>& inputs,
                  std::optional<std::uint64_t> seed,
                  const std::vector<std::string>& outputs);

} // namespace semdisc::app
