#include "hospsim/io/manifest.hpp"

#include "hospsim/io/csv.hpp"

#include <json.hpp>

#include <chrono>
#include <ctime>

namespace hospsim {

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_manifest(const std::filesystem::path& dir, const RunManifest& m) {
  nlohmann::ordered_json j;
  j["tool_version"] = m.tool_version;
  j["subcommand"] = m.subcommand;
  j["arguments"] = m.arguments;
  if (!m.config_hash.empty()) j["config_hash"] = m.config_hash;
  if (m.has_seed) j["master_seed"] = m.master_seed;
  j["outputs"] = m.outputs;
  j["started_at"] = m.started_at;
  j["finished_at"] = m.finished_at;
  write_text_file(dir / "manifest.json", j.dump(2) + "\n");
}

}  // namespace hospsim
