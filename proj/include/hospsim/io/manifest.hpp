#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace hospsim {

inline constexpr std::string_view kToolVersion = "0.1.0";

struct RunManifest {
  std::string tool_version{kToolVersion};
  std::string subcommand;
  std::vector<std::string> arguments;
  std::string config_hash;  // empty when the subcommand takes no config
  std::uint64_t master_seed = 0;
  bool has_seed = false;
  std::vector<std::string> outputs;  // relative to the output directory
  std::string started_at;            // UTC, ISO 8601
  std::string finished_at;
};

std::string utc_timestamp();

/// manifest.json in `dir`. The timestamps are the only fields that differ
/// between two identical runs.
void write_manifest(const std::filesystem::path& dir, const RunManifest& manifest);

}  // namespace hospsim
