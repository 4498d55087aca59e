#pragma once

#include "hospsim/model/config.hpp"

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hospsim {

/// Config problem tied to one field (and line, when read from text).
class ConfigError : public std::runtime_error {
public:
  ConfigError(std::string field, int line, const std::string& what);
  const std::string& field() const { return field_; }
  int line() const { return line_; }  // 0 when not from a file line

private:
  std::string field_;
  int line_;
};

/// Reads `key = value` lines over the baseline preset. '#' starts a comment;
/// keys are dotted (beds.section3, clinical.hosp_pref, behaviour.worry_threshold).
/// Lists are comma separated; triangular values are "min, max, mode" or
/// "min, max" for a symmetric one. The result is validated.
/// Throws ConfigError for unknown or repeated keys, unparsable values and
/// invariant breaches.
ScenarioConfig parse_config(std::string_view text, const ScenarioConfig& base = baseline_config());
ScenarioConfig load_config(const std::filesystem::path& path);

/// Applies one assignment; same errors as parse_config without the final validation.
void set_config_value(ScenarioConfig& config, std::string_view key, std::string_view value);

/// Every key in canonical order with its exact value; parse_config of the
/// dump reproduces the config.
std::string dump_config(const ScenarioConfig& config);
std::vector<std::string> config_keys();

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);
/// Hash of dump_config, as 16 hex digits.
std::string config_hash(const ScenarioConfig& config);

}  // namespace hospsim
